"""Exponent estimation from witness events and psi-limit conversion.

Ordinary exponents get scale-certified lower bounds from explicit witnesses
(each event proves the defining inequality at its own height scale); the
asymptotic value is estimated from the event tail and reported as heuristic.
Uniform exponents come from the parametric link between the first-minimum
upper limit and the exponent, using the tail slope of the level-1 local
extrema; a finite grid can never certify a uniform statement, so these are
heuristic by construction and clamped to the proven feasible range.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from pgnlab.exact import (
    INF,
    ExactError,
    ExtendedNumber,
    RatInterval,
    compare_values,
    format_exact,
    is_infinite,
    log_bounds,
    parse_exact,
)
from pgnlab.lattice import DUAL, PRIMAL
from pgnlab.profiles import ProfileTrace
from pgnlab.realnum import RealNumberSource, VeronesePoint, resolve_source


class ExponentError(ValueError):
    pass


LAMBDA = "lambda"
HAT_LAMBDA = "hat_lambda"
W = "w"
HAT_W = "hat_w"
FAMILIES = (LAMBDA, HAT_LAMBDA, W, HAT_W)


def dirichlet_floor(family: str, N: int) -> Fraction:
    if family in (LAMBDA, HAT_LAMBDA):
        return Fraction(1, N)
    return Fraction(N)


def uniform_cap(family: str, N: int) -> Fraction:
    """Proven upper bound for the uniform exponents (transcendental targets)."""
    if family == HAT_LAMBDA:
        if N == 1:
            return Fraction(1)
        if N == 3:
            return Fraction(4246, 10000)
        return Fraction(2, N + 1)
    if family == HAT_W:
        return Fraction(2 * N - 1)
    raise ExponentError(f"no uniform cap for family {family}")


@dataclass(frozen=True)
class ApproxEvent:
    """One witness: at height scale X the vector achieves the stated error."""

    X: int
    vector: tuple[int, ...]
    error: RatInterval

    def exponent_interval(self, prec: int = 96) -> RatInterval:
        """Enclosure of -log(error)/log(X); requires X >= 2 and error > 0."""
        if self.X < 2:
            raise ExponentError("scale X must be >= 2 for an exponent reading")
        if self.error.lo <= 0:
            raise ExponentError("error interval must be strictly positive")
        num = -RatInterval(log_bounds(self.error.lo, prec).lo,
                           log_bounds(self.error.hi, prec).hi)
        den = log_bounds(Fraction(self.X), prec)
        return num / den


@dataclass
class ExponentEstimate:
    family: str
    N: int
    value_lower: Fraction
    value_upper: object  # Fraction or INF
    status: str  # "certified-lower-bound" | "heuristic"
    heuristic: Optional[Fraction] = None
    witnesses: list[ApproxEvent] = field(default_factory=list)
    note: str = ""


def events_from_convergents(source, count: int) -> list[ApproxEvent]:
    """[N=1] each continued-fraction convergent (p, q) as an event (q, (q, p))."""
    src: RealNumberSource = resolve_source(source)
    events = []
    for p, q in src.convergents(count):
        prec = max(64, 2 * q.bit_length() + 32)
        while True:
            box = src.interval(prec)
            err = (box * q - p).abs()
            if err.lo > 0:
                break
            prec *= 2
            if prec > 1 << 22:
                raise ExponentError(f"cannot separate error at convergent {p}/{q}")
        events.append(ApproxEvent(X=q, vector=(q, p), error=err))
    return events


def events_from_trace(tr: ProfileTrace, precision: int = 128) -> list[ApproxEvent]:
    """Witness events at the detected local minima of the first minimum."""
    from pgnlab.lattice import ParamProblem, build_gauge
    from pgnlab.realnum import AbsReal

    point = _point_from_descriptor(tr.source_descriptor)
    minima, _ = tr.level1_extrema()
    events = []
    seen = set()
    for _, mp in minima:
        vec = mp.witness
        if vec in seen:
            continue
        seen.add(vec)
        if tr.side == PRIMAL:
            x = abs(vec[0])
            if x == 0:
                continue
            err_low, err_high = None, None
            for j, y in enumerate(vec[1:], start=1):
                coeffs = [0] * (tr.N + 1)
                coeffs[0], coeffs[j] = -y, vec[0]
                box = AbsReal(point.linear_form(coeffs)).interval(precision)
                err_low = box.lo if err_low is None else max(err_low, box.lo)
                err_high = box.hi if err_high is None else max(err_high, box.hi)
            events.append(ApproxEvent(X=x, vector=vec,
                                      error=RatInterval(err_low, err_high)))
        else:
            h = max(abs(c) for c in vec)
            form = AbsReal(point.linear_form(list(vec)))
            if form.is_exact_zero():
                continue
            events.append(ApproxEvent(X=h, vector=vec,
                                      error=form.interval(precision)))
    events.sort(key=lambda e: e.X)
    return events


def _point_from_descriptor(desc: dict) -> VeronesePoint:
    if desc.get("point") != "veronese":
        raise ExponentError("trace descriptor is not a Veronese point")
    return VeronesePoint(desc["source"], desc["N"])


def lambda_from_events(events: Sequence[ApproxEvent], N: int,
                       family: str = LAMBDA) -> ExponentEstimate:
    """Estimate an ordinary exponent from approximation events.

    value_lower is the best per-event scale exponent (each event certifies the
    defining inequality at its own X); the tail of the event list gives the
    heuristic asymptotic estimate.
    """
    if family not in (LAMBDA, W):
        raise ExponentError("events estimate ordinary exponents only")
    if len(events) < 3:
        raise ExponentError("need at least 3 events")
    xs = [e.X for e in events]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ExponentError("events must have strictly increasing X")
    for e in events:
        if max(abs(c) for c in e.vector) > e.X:
            raise ExponentError(f"witness {e.vector} exceeds its scale X={e.X}")
        if e.error.lo <= 0:
            raise ExponentError(f"event at X={e.X} has a nonpositive error bound")
    usable = [e for e in events if e.X >= 2]
    if not usable:
        raise ExponentError("all events are below scale X=2")
    floor = dirichlet_floor(family, N)
    lower = max([floor] + [e.exponent_interval().lo for e in usable])
    tail = usable[-max(3, len(usable) // 10):]
    heuristic = max(e.exponent_interval().mid for e in tail)
    return ExponentEstimate(family=family, N=N, value_lower=lower,
                            value_upper=INF, status="certified-lower-bound",
                            heuristic=heuristic, witnesses=list(events))


def uniform_from_trace(tr: ProfileTrace, tail_fraction: Fraction = Fraction(1, 2),
                       min_points: int = 10) -> ExponentEstimate:
    """Uniform-exponent heuristic from the tail slope of level-1 local maxima.

    The upper limit of psi_{N,1} equals the asymptotic growth rate of L_{N,1}
    at its local maxima; a least-squares slope over the tail estimates it, and
    the parametric identity converts it to the uniform exponent.
    """
    N = tr.N
    family = HAT_LAMBDA if tr.side == PRIMAL else HAT_W
    certified = tr.certified_level_points(1)
    if len(certified) < min_points:
        raise ExponentError(f"need {min_points} certified level-1 points, "
                            f"have {len(certified)}")
    _, maxima = tr.level1_extrema()
    if len(maxima) < 2:
        raise ExponentError("need at least 2 local maxima of the first minimum")
    tail_from = tr.grid[-1] * (1 - Fraction(tail_fraction))
    tail = [(q, p) for q, p in maxima if q >= tail_from]
    if len(tail) < 2:
        tail = maxima
    # exact least-squares slope over (q, mid L)
    n = len(tail)
    sq = sum(q for q, _ in tail)
    sv = sum(p.L_value.mid for _, p in tail)
    sqq = sum(q * q for q, _ in tail)
    sqv = sum(q * p.L_value.mid for q, p in tail)
    denom = n * sqq - sq * sq
    if denom == 0:
        raise ExponentError("degenerate maxima configuration")
    rho = (n * sqv - sq * sv) / denom
    if rho <= -1:
        raise ExponentError(f"internal error: psi-bar estimate {rho} <= -1 "
                            "is impossible for certified data")
    if family == HAT_LAMBDA:
        raw = Fraction(N + 1, N) / (1 + rho) - 1
    else:
        raw = Fraction(N + 1) / (1 + N * rho) - 1
    floor, cap = dirichlet_floor(family, N), uniform_cap(family, N)
    clamped = min(max(raw, floor), cap)
    note = "" if clamped == raw else f"raw estimate {float(raw):.6g} clamped to feasible range"
    return ExponentEstimate(family=family, N=N, value_lower=floor,
                            value_upper=cap, status="heuristic",
                            heuristic=clamped, note=note)


# ---------------------------------------------------------------------------
# psi-limit <-> exponent conversions (exact)
# ---------------------------------------------------------------------------

def psi_from_lambda(N: int, lam) -> ExtendedNumber:
    """(1+lambda)(1+psi) = (N+1)/N solved for psi; lam may be INF."""
    if is_infinite(lam):
        return Fraction(-1)
    return Fraction(N + 1, N) / (1 + lam) - 1


def lambda_from_psi(N: int, psi) -> ExtendedNumber:
    if psi == -1:
        return INF
    return Fraction(N + 1, N) / (1 + psi) - 1


def psi_star_from_w(N: int, w) -> ExtendedNumber:
    """(1+w)(1/N + psi*) = (N+1)/N solved for psi*; w may be INF."""
    if is_infinite(w):
        return Fraction(-1, N)
    return Fraction(N + 1, N) / (1 + w) - Fraction(1, N)


def w_from_psi_star(N: int, psi_star) -> ExtendedNumber:
    if psi_star == Fraction(-1, N):
        return INF
    return Fraction(N + 1, N) / (psi_star + Fraction(1, N)) - 1


# ---------------------------------------------------------------------------
# Exponent quadruples and their sanity report
# ---------------------------------------------------------------------------

@dataclass
class ExponentQuad:
    """The four exponents at one dimension N, exact-valued where known."""

    N: int
    lam: Optional[ExtendedNumber] = None
    hat_lam: Optional[ExtendedNumber] = None
    w: Optional[ExtendedNumber] = None
    hat_w: Optional[ExtendedNumber] = None
    source: str = "computed"  # "computed" | "supplied"
    label: str = ""

    _FIELD_KEYS = (("lam", "lambda"), ("hat_lam", "hat_lambda"),
                   ("w", "w"), ("hat_w", "hat_w"))

    def to_json(self) -> dict:
        out = {"N": self.N, "source": self.source, "label": self.label}
        for attr, key in self._FIELD_KEYS:
            v = getattr(self, attr)
            if v is not None:
                out[key] = format_exact(v)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ExponentQuad":
        kwargs = {"N": int(data["N"]),
                  "source": data.get("source", "supplied"),
                  "label": data.get("label", "")}
        for attr, key in cls._FIELD_KEYS:
            if key in data:
                kwargs[attr] = parse_exact(str(data[key]))
        return cls(**kwargs)

    @classmethod
    def load(cls, path) -> "ExponentQuad":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass(frozen=True)
class SanityViolation:
    name: str
    detail: str


def sanity(quad: ExponentQuad) -> list[SanityViolation]:
    """Check the quad against the unconditional exponent inequalities."""
    n = quad.N
    out: list[SanityViolation] = []

    def le(a, b) -> bool:
        return compare_values(a, b) <= 0

    def lt(a, b) -> bool:
        return compare_values(a, b) < 0

    if quad.hat_lam is not None and not le(Fraction(1, n), quad.hat_lam):
        out.append(SanityViolation("hat-lambda-floor",
                                   f"hat_lambda_{n} = {format_exact(quad.hat_lam)} < 1/{n}"))
    if quad.lam is not None and quad.hat_lam is not None and \
            not le(quad.hat_lam, quad.lam):
        out.append(SanityViolation("ordinary-dominates",
                                   f"lambda_{n} < hat_lambda_{n}"))
    if quad.hat_w is not None and not le(Fraction(n), quad.hat_w):
        out.append(SanityViolation("hat-w-floor",
                                   f"hat_w_{n} = {format_exact(quad.hat_w)} < {n}"))
    if quad.w is not None and quad.hat_w is not None and not le(quad.hat_w, quad.w):
        out.append(SanityViolation("ordinary-dominates-w", f"w_{n} < hat_w_{n}"))
    if quad.hat_lam is not None:
        cap = uniform_cap(HAT_LAMBDA, n)
        strict = (n % 2 == 0) or n == 3
        ok = lt(quad.hat_lam, cap) if strict else le(quad.hat_lam, cap)
        if not ok:
            rel = "<" if strict else "<="
            out.append(SanityViolation("uniform-lambda-cap",
                                       f"hat_lambda_{n} must be {rel} {format_exact(cap)}"))
    if quad.hat_w is not None and not le(quad.hat_w, Fraction(2 * n - 1)):
        out.append(SanityViolation("uniform-w-cap", f"hat_w_{n} > {2 * n - 1}"))
    if quad.w is not None and quad.hat_w is not None:
        m = n
        bound = Fraction(m + n - 1)
        both_min = quad.w if lt(quad.w, quad.hat_w) else quad.hat_w
        if not le(both_min, bound):
            out.append(SanityViolation("mixed-height-cap",
                                       f"min(w_{m}, hat_w_{n}) > {bound}"))
    if quad.lam is not None and quad.hat_lam is not None and \
            compare_values(quad.lam, Fraction(1)) > 0 and \
            quad.hat_lam != Fraction(1, n):
        out.append(SanityViolation("large-lambda-forces-floor",
                                   f"lambda_{n} > 1 forces hat_lambda_{n} = 1/{n}"))
    return out


def sanity_pair(quad_m: ExponentQuad, quad_n: ExponentQuad) -> list[SanityViolation]:
    """Cross-dimension check min(w_m, hat_w_n) <= m + n - 1."""
    out = []
    if quad_m.w is not None and quad_n.hat_w is not None:
        m, n = quad_m.N, quad_n.N
        both_min = quad_m.w if compare_values(quad_m.w, quad_n.hat_w) < 0 else quad_n.hat_w
        if compare_values(both_min, Fraction(m + n - 1)) > 0:
            out.append(SanityViolation("mixed-height-cap",
                                       f"min(w_{m}, hat_w_{n}) > {m + n - 1}"))
    return out
