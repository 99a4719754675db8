"""Successive minima of the parametric convex bodies, with exact certification.

For a point xi and a parameter q >= 0 the primal gauge of an integer vector
(x, y_1..y_N) is  max(log|x| - q, max_j log|xi^j x - y_j| + q/N)  and the dual
gauge of (x_0..x_N) is  max(log||x||_inf - q/N, log|x_0 + sum xi^j x_j| + q).
The j-th successive-minimum value L_{N,j}(q) is the j-th smallest gauge over
nonzero integer vectors, filtered greedily for linear independence.

Enumeration is exhaustive over a sup-norm box.  A float64 prefilter with an
explicit error budget discards hopeless vectors; every surviving comparison
is then decided in exact interval arithmetic, so reported values are certified
enclosures and the float stage can only cost speed, never correctness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

import numpy as np

from pgnlab.exact import ExactError, RatInterval, Surd, log_bounds
from pgnlab.realnum import (
    AbsReal,
    ExactReal,
    GeneralPoint,
    RefReal,
    SourceError,
    VeronesePoint,
)


class LatticeError(ValueError):
    """Contract violation (bad levels, mixed q, exhausted refinement)."""


PRIMAL = "primal"
DUAL = "dual"

# float64 prefilter budget: coordinates enter as 96-bit midpoints (error
# <= 2^-52 relative), accumulated dot products stay below ~1e6 in magnitude,
# so float gauges are within 1.5e-4 of truth whenever the linear-form value
# exceeds TINY_ERR; smaller values are kept unconditionally.
PREFILTER_MARGIN = 0.01
TINY_ERR = 1e-5
_COMPARE_LADDER = (64, 128, 256, 512, 1024, 2048, 4096)


def minkowski_bound_integer(N: int) -> int:
    """2^(N+1) (N+1)!; C_N = log of this bounds |sum_j L_{N,j}(q)|."""
    return (2 ** (N + 1)) * math.factorial(N + 1)


def mahler_bound_integer(N: int) -> int:
    """Same integer; c_N = log of it bounds |L_{N,1} + L*_{N,N+1}|."""
    return minkowski_bound_integer(N)


@dataclass(frozen=True)
class ParamProblem:
    """One successive-minima problem: a point, a side, and log-parameter q."""

    point: VeronesePoint | GeneralPoint
    side: str
    q: Fraction

    def __post_init__(self):
        if self.side not in (PRIMAL, DUAL):
            raise LatticeError(f"side must be '{PRIMAL}' or '{DUAL}'")
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q < 0:
            raise LatticeError("q must be >= 0")

    @property
    def N(self) -> int:
        return self.point.N


@dataclass(frozen=True)
class MinimaPoint:
    """One computed successive-minimum value with its integer witness."""

    q: Fraction
    side: str
    level: int
    L_value: RatInterval
    witness: tuple[int, ...]
    certified: bool


# ---------------------------------------------------------------------------
# Gauge values as refinable max-of-logs
# ---------------------------------------------------------------------------

class GaugeTerm:
    """log(payload) + shift for a nonnegative refinable payload."""

    __slots__ = ("payload", "shift")

    def __init__(self, payload: RefReal, shift: Fraction):
        self.payload = payload
        self.shift = Fraction(shift)

    def bounds(self, prec: int) -> tuple[Optional[Fraction], Fraction]:
        box = self.payload.interval(prec)
        if box.hi <= 0:
            raise LatticeError("gauge term payload collapsed to zero")
        hi = log_bounds(box.hi, prec).hi + self.shift
        lo = None if box.lo <= 0 else log_bounds(box.lo, prec).lo + self.shift
        return lo, hi


class Gauge:
    """max of gauge terms; comparisons refine until certified."""

    __slots__ = ("terms", "_cache")

    def __init__(self, terms: Sequence[GaugeTerm]):
        if not terms:
            raise LatticeError("gauge of the zero vector")
        self.terms = tuple(terms)
        self._cache: dict[int, tuple[Optional[Fraction], Fraction]] = {}

    def bounds(self, prec: int) -> tuple[Optional[Fraction], Fraction]:
        got = self._cache.get(prec)
        if got is None:
            los, his = [], []
            for t in self.terms:
                lo, hi = t.bounds(prec)
                los.append(lo)
                his.append(hi)
            known = [x for x in los if x is not None]
            got = (max(known) if known else None, max(his))
            self._cache[prec] = got
        return got

    def interval(self, prec: int) -> RatInterval:
        """Certified enclosure; refines further if the lower end is still open."""
        p = prec
        while True:
            lo, hi = self.bounds(p)
            if lo is not None:
                return RatInterval(lo, hi)
            if p > _COMPARE_LADDER[-1]:
                raise LatticeError("cannot close gauge lower bound; "
                                   "payload may be an undetected exact zero")
            p *= 2

    def float_value(self) -> float:
        lo, hi = self.bounds(64)
        return float(hi if lo is None else (lo + hi) / 2)


class TieUndecided(Exception):
    """Comparison exhausted the refinement ladder without an exact tie proof."""


def _cmp_exact_terms(p1, s1: Fraction, p2, s2: Fraction) -> int:
    """Exact comparison of log(p1)+s1 vs log(p2)+s2 for exact positive payloads.

    With s1 != s2 and p1 != p2 the two values are never equal (the difference
    of logs of algebraic numbers cannot equal a nonzero rational), so interval
    refinement terminates.
    """
    from pgnlab.exact import compare_values, exact_interval

    if s1 == s2:
        return compare_values(p1, p2)
    if p1 == p2:
        return -1 if s1 < s2 else 1
    prec = 64
    while prec <= 1 << 16:
        i1 = exact_interval(p1, prec)
        i2 = exact_interval(p2, prec)
        if i1.lo > 0 and i2.lo > 0:
            a = log_bounds(i1.lo, prec).lo + s1, log_bounds(i1.hi, prec).hi + s1
            b = log_bounds(i2.lo, prec).lo + s2, log_bounds(i2.hi, prec).hi + s2
            if a[1] < b[0]:
                return -1
            if b[1] < a[0]:
                return 1
        prec *= 2
    raise TieUndecided  # pragma: no cover


def compare_gauges(g1: Gauge, g2: Gauge) -> int:
    """-1/0/1 with certified interval separation, falling back to exact ties."""

    def separated(prec):
        lo1, hi1 = g1.bounds(prec)
        lo2, hi2 = g2.bounds(prec)
        if lo2 is not None and hi1 < lo2:
            return -1
        if lo1 is not None and hi2 < lo1:
            return 1
        return None

    for prec in _COMPARE_LADDER[:2]:
        c = separated(prec)
        if c is not None:
            return c
    # exact payloads (rational / quadratic points) decide ties cheaply;
    # otherwise climb the remaining ladder before giving up
    exact1 = [(t.payload.exact(), t.shift) for t in g1.terms]
    exact2 = [(t.payload.exact(), t.shift) for t in g2.terms]
    if all(p is not None for p, _ in exact1) and all(p is not None for p, _ in exact2):
        def argmax(terms):
            best = terms[0]
            for t in terms[1:]:
                if _cmp_exact_terms(t[0], t[1], best[0], best[1]) > 0:
                    best = t
            return best

        m1, m2 = argmax(exact1), argmax(exact2)
        return _cmp_exact_terms(m1[0], m1[1], m2[0], m2[1])
    for prec in _COMPARE_LADDER[2:]:
        c = separated(prec)
        if c is not None:
            return c
    raise TieUndecided


def canonical_sign(vec: Sequence[int]) -> tuple[int, ...]:
    """Flip sign so the first nonzero coordinate is positive (gauge-invariant)."""
    for c in vec:
        if c != 0:
            return tuple(vec) if c > 0 else tuple(-v for v in vec)
    raise LatticeError("zero vector")


def build_gauge(problem: ParamProblem, vector: Sequence[int]) -> Gauge:
    """Gauge of an integer vector; exact-zero payload terms are dropped."""
    N, q = problem.N, problem.q
    vec = tuple(int(v) for v in vector)
    if len(vec) != N + 1:
        raise LatticeError(f"vector must have {N + 1} coordinates")
    if all(v == 0 for v in vec):
        raise LatticeError("zero vector has no gauge")
    terms: list[GaugeTerm] = []
    if problem.side == PRIMAL:
        x, ys = vec[0], vec[1:]
        if x != 0:
            terms.append(GaugeTerm(ExactReal(abs(x)), -q))
        for j, y in enumerate(ys, start=1):
            coeffs = [0] * (N + 1)
            coeffs[0], coeffs[j] = -y, x
            form = AbsReal(problem.point.linear_form(coeffs))
            if not form.is_exact_zero():
                terms.append(GaugeTerm(form, q / N))
    else:
        height = max(abs(v) for v in vec)
        terms.append(GaugeTerm(ExactReal(height), -q / N))
        form = AbsReal(problem.point.linear_form(list(vec)))
        if not form.is_exact_zero():
            terms.append(GaugeTerm(form, q))
    return Gauge(terms)


# ---------------------------------------------------------------------------
# Exact linear independence over Q
# ---------------------------------------------------------------------------

class IndependenceFilter:
    """Greedy rank filter via exact fraction elimination."""

    def __init__(self):
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def try_add(self, vec: Sequence[int]) -> bool:
        row = [Fraction(v) for v in vec]
        for prow, piv in zip(self.rows, self.pivots):
            if row[piv]:
                f = row[piv]
                row = [a - f * b for a, b in zip(row, prow)]
        for i, a in enumerate(row):
            if a:
                self.rows.append([x / a for x in row])
                self.pivots.append(i)
                return True
        return False


# ---------------------------------------------------------------------------
# Enumeration (float64 prefilter + exact confirmation)
# ---------------------------------------------------------------------------

def _coordinate_floats(point, N: int) -> np.ndarray:
    return np.array([point.coordinate_float(j) for j in range(1, N + 1)])


def _basis_vectors(problem: ParamProblem, bound: int) -> list[tuple[int, ...]]:
    """In-box vectors guaranteeing all N+1 greedy levels stay below the a
    priori cutoff (q/N primal, q dual)."""
    N = problem.N
    out = []
    if problem.side == PRIMAL:
        for j in range(1, N + 1):
            v = [0] * (N + 1)
            v[j] = 1
            out.append(tuple(v))
        v = [1] + [int(round(problem.point.coordinate_float(j))) for j in range(1, N + 1)]
        if max(abs(c) for c in v) <= bound:
            out.append(canonical_sign(v))
    else:
        for i in range(N + 1):
            v = [0] * (N + 1)
            v[i] = 1
            out.append(tuple(v))
    return out


class _TopPool:
    """Running pool of the best float-gauge candidates seen so far."""

    def __init__(self, size: int):
        self.size = size
        self.items: list[tuple[float, tuple[int, ...]]] = []
        self.worst = math.inf

    def offer(self, g: float, vec: tuple[int, ...]):
        self.items.append((g, vec))
        if len(self.items) > 4 * self.size:
            self._trim()

    def _trim(self):
        self.items.sort(key=lambda t: (t[0], t[1]))
        del self.items[self.size:]
        self.worst = self.items[-1][0] if len(self.items) == self.size else math.inf

    def sorted_items(self):
        self._trim()
        return list(self.items)


class _PoolPair:
    """Best candidates overall plus best with no near-zero linear form.

    A low-rank sublattice of exact relations (rational or quadratic xi) can
    flood the overall pool; the nondegenerate bucket keeps genuine
    approximation vectors available to the greedy pass.
    """

    def __init__(self, size: int):
        self.any = _TopPool(size)
        self.nondeg = _TopPool(size // 4 + 8)

    @property
    def worst(self) -> float:
        return max(self.any.worst, self.nondeg.worst)

    def merged_items(self):
        return self.any.sorted_items() + self.nondeg.sorted_items()


def _primal_scan(problem: ParamProblem, bound: int, keep_threshold: Optional[float],
                 topk: int) -> tuple[list[tuple[int, ...]], list[tuple[float, tuple[int, ...]]]]:
    N, qf = problem.N, float(problem.q)
    xi = _coordinate_floats(problem.point, N)
    kept: set[tuple[int, ...]] = set()
    pools = _PoolPair(topk) if topk else None
    cut = keep_threshold if keep_threshold is not None else -math.inf
    thresh = cut + PREFILTER_MARGIN
    apriori = qf / N + 0.85
    ceiling = min(thresh if keep_threshold is not None else math.inf, apriori)
    radius = math.exp(min(thresh, apriori) - qf / N) + 0.5
    offs = [0] if topk else range(-int(radius), int(radius) + 1)

    x_cap = int(min(bound, math.exp(min(ceiling + qf, 700.0)) + 1))
    xs = np.arange(1, max(x_cap, 1) + 1, dtype=np.float64)
    logx = np.log(xs) - qf
    s = xs[None, :] * xi[:, None]            # (N, x_cap)
    ybase = np.rint(s)
    for combo in itertools.product(offs, repeat=N):
        ys = ybase + np.array(combo, dtype=np.float64)[:, None]
        err = np.abs(s - ys)
        maxerr = np.max(err, axis=0)
        # necessary condition: the error term alone must already fit below the
        # keep threshold / current pool frontier
        effective = min(max(thresh, pools.worst if pools else -math.inf), ceiling)
        emax = math.exp(min(effective - qf / N, 700.0))
        cand = np.nonzero(maxerr <= max(emax, TINY_ERR))[0]
        if cand.size == 0:
            continue
        # errors below TINY_ERR enter with underestimated logs: sound, since
        # the prefilter may only over-keep, never over-drop
        sub_err = np.maximum(err[:, cand], 1e-300)
        g = np.maximum(logx[cand], np.max(np.log(sub_err), axis=0) + qf / N)
        in_box = np.all(np.abs(ys[:, cand]) <= bound, axis=0)
        g = np.where(in_box, g, np.inf)
        for t in np.nonzero(g <= thresh)[0]:
            i = cand[t]
            vec = (int(xs[i]),) + tuple(int(ys[j, i]) for j in range(N))
            kept.add(canonical_sign(vec))
        if len(kept) > 2_000_000:
            raise LatticeError("prefilter kept-set blow-up; cutoff is not selective")
        if pools:
            def vec_at(t):
                i = cand[t]
                return canonical_sign((int(xs[i]),) + tuple(int(ys[j, i]) for j in range(N)))
            for t in np.argsort(g)[:64]:
                if not np.isfinite(g[t]):
                    break
                pools.any.offer(float(g[t]), vec_at(t))
            g_clean = np.where(np.min(err[:, cand], axis=0) > TINY_ERR, g, np.inf)
            for t in np.argsort(g_clean)[:16]:
                if not np.isfinite(g_clean[t]):
                    break
                pools.nondeg.offer(float(g_clean[t]), vec_at(t))
    # x = 0 rows: gauge = max_j log|y_j| + q/N over nonzero y in the box
    ymax = int(min(bound, math.exp(min(thresh, 0.8))) + 1)
    for y in itertools.product(range(-ymax, ymax + 1), repeat=N):
        if all(v == 0 for v in y):
            continue
        g = math.log(max(abs(v) for v in y)) + qf / N
        vec = canonical_sign((0,) + y)
        if g <= thresh:
            kept.add(vec)
        if pools:
            pools.any.offer(g, vec)
            pools.nondeg.offer(g, vec)
    return sorted(kept), (pools.merged_items() if pools else [])


def _dual_scan(problem: ParamProblem, bound: int, keep_threshold: Optional[float],
               topk: int) -> tuple[list[tuple[int, ...]], list[tuple[float, tuple[int, ...]]]]:
    N, qf = problem.N, float(problem.q)
    xi = _coordinate_floats(problem.point, N)
    cut = keep_threshold if keep_threshold is not None else -math.inf
    thresh = cut + PREFILTER_MARGIN
    # no greedy level can exceed the unit-vector value ~ q, so both the error
    # term and the height term admit a priori necessary bounds
    apriori = qf + 0.85
    ceiling = min(thresh if keep_threshold is not None else math.inf, apriori)
    radius = math.exp(min(thresh, apriori) - qf) + 0.5
    offsets = [0] if topk else [d for d in range(-int(radius), int(radius) + 1)]

    kept: set[tuple[int, ...]] = set()
    pools = _PoolPair(topk) if topk else None
    hb0 = math.exp(min(ceiling + qf / N, 700.0)) + 0.5
    tail_cap = int(min(bound, hb0))
    rng = np.arange(-tail_cap, tail_cap + 1, dtype=np.float64)

    def effective_cut() -> float:
        dyn = max(thresh, pools.worst if pools else -math.inf)
        return min(dyn, ceiling)

    def process(lead: tuple[int, ...], tails: list[np.ndarray],
                s: np.ndarray, lead_habs: float):
        x0c = np.rint(-s)
        for d in offsets:
            if d != 0 and thresh < math.log(max(abs(d) - 0.5, 1e-9)) + qf:
                continue
            x0 = x0c + d
            err = np.abs(s + x0)
            eff = effective_cut()
            emax = math.exp(min(eff - qf, 700.0))
            hmax = math.exp(min(eff + qf / N, 700.0)) + 0.5
            cand = np.nonzero((err <= max(emax, TINY_ERR)) & (np.abs(x0) <= hmax))
            if cand[0].size == 0:
                continue
            x0_c = x0[cand]
            tails_c = [t[cand] for t in tails]
            err_raw = err[cand]
            err_c = np.maximum(err_raw, 1e-300)
            h = np.maximum(np.abs(x0_c), lead_habs)
            for t in tails_c:
                h = np.maximum(h, np.abs(t))
            nz = h > 0
            h = np.maximum(h, 1.0)
            g = np.maximum(np.log(h) - qf / N, np.log(err_c) + qf)
            in_box = np.abs(x0_c) <= bound
            g = np.where(in_box & nz, g, np.inf)

            def vec_at(t):
                return canonical_sign((int(x0_c[t]),) + lead
                                      + tuple(int(a[t]) for a in tails_c))

            for t in np.nonzero(g <= thresh)[0]:
                kept.add(vec_at(t))
            if len(kept) > 2_000_000:
                raise LatticeError("prefilter kept-set blow-up; cutoff is not selective")
            if pools is not None:
                for t in np.argsort(g)[:64]:
                    if not np.isfinite(g[t]):
                        break
                    pools.any.offer(float(g[t]), vec_at(t))
                g_clean = np.where(err_raw > TINY_ERR, g, np.inf)
                for t in np.argsort(g_clean)[:16]:
                    if not np.isfinite(g_clean[t]):
                        break
                    pools.nondeg.offer(float(g_clean[t]), vec_at(t))

    if N == 1:
        s = rng * xi[0]
        process((), [rng], s, 0.0)
    else:
        lead_dims = N - 2
        grid_a, grid_b = np.meshgrid(rng, rng, indexing="ij")
        base = grid_a * xi[-2] + grid_b * xi[-1]
        for lead in itertools.product(range(-tail_cap, tail_cap + 1), repeat=lead_dims):
            lead_habs = float(max((abs(v) for v in lead), default=0))
            if lead_habs > math.exp(min(effective_cut() + qf / N, 700.0)) + 0.5:
                continue
            s = base + float(np.dot(np.array(lead, dtype=np.float64), xi[:lead_dims])) \
                if lead_dims else base
            process(tuple(lead), [grid_a, grid_b], s, lead_habs)
    return sorted(kept), (pools.merged_items() if pools else [])


def _prefilter(problem: ParamProblem, bound: int, levels: int) -> list[tuple[int, ...]]:
    """Two-pass scan: establish a float cutoff from a greedy pass, then keep
    every box vector whose certified gauge could reach it."""
    scan = _primal_scan if problem.side == PRIMAL else _dual_scan
    _, best = scan(problem, bound, None, topk=256)
    pool = [(g, v) for g, v in best]
    for v in _basis_vectors(problem, bound):
        pr = build_gauge(problem, v)
        pool.append((pr.float_value(), canonical_sign(v)))
    pool.sort(key=lambda t: (t[0], t[1]))
    filt = IndependenceFilter()
    values = []
    seen = set()
    for g, v in pool:
        if v in seen:
            continue
        seen.add(v)
        if filt.try_add(v):
            values.append(g)
            if len(values) == levels:
                break
    if len(values) < levels:
        raise LatticeError("prefilter could not assemble enough independent vectors")
    cutoff = values[-1] + 0.02
    kept, _ = scan(problem, bound, cutoff, topk=0)
    merged = set(kept)
    merged.update(v for _, v in pool)
    return sorted(merged)


# ---------------------------------------------------------------------------
# Successive minima
# ---------------------------------------------------------------------------

def _certify(problem: ParamProblem, bound: int, value_hi: Fraction, prec: int) -> bool:
    """True iff no vector outside the sup-norm box can reach value_hi.

    Outside vectors have either a coordinate beyond the box (height term
    > log(bound+1) - q resp. - q/N) or, on the primal side, an approximation
    coordinate whose error term is forced above (bound+1) - sup|xi^j|*bound.
    """
    q, N = problem.q, problem.N
    logB = log_bounds(Fraction(bound + 1), prec).lo
    if problem.side == DUAL:
        return logB - q / N >= value_hi
    if logB - q < value_hi:
        return False
    sup = max(problem.point.coordinate(j, 16).abs().hi for j in range(1, N + 1))
    slack = (bound + 1) - sup * bound
    if slack <= 1:
        return slack > 0 and log_bounds(slack, prec).lo + q / N >= value_hi
    return log_bounds(slack, prec).lo + q / N >= value_hi


def successive_minima(problem: ParamProblem, levels: Optional[int] = None,
                      search_bound: Optional[int] = None,
                      precision: int = 128) -> list[MinimaPoint]:
    """Certified successive minima L_{N,1..levels}(q) with integer witnesses.

    With search_bound=None the box is grown until every requested level is
    certified against out-of-box competitors.
    """
    N = problem.N
    levels = N + 1 if levels is None else int(levels)
    if not 1 <= levels <= N + 1:
        raise LatticeError(f"levels must be in 1..{N + 1}")
    if search_bound is not None:
        return _minima_fixed_bound(problem, levels, int(search_bound), precision)
    # witnesses live near |x| ~ e^q (primal) resp. e^(q/N) (dual); start there
    shift = problem.q if problem.side == PRIMAL else problem.q / N
    bound = min(max(64, int(math.exp(float(shift) + 0.5)) + 1), 50_000_000)
    for _ in range(12):
        pts = _minima_fixed_bound(problem, levels, bound, precision)
        if all(p.certified for p in pts):
            return pts
        if bound >= 50_000_000:
            raise LatticeError("auto search bound exceeded 5e7; pass search_bound")
        worst = max(p.L_value.hi for p in pts)
        needed = int(math.exp(min(float(worst + shift), 18.0))) + 2
        bound = min(max(bound * 2, min(needed, bound * 16)), 50_000_000)
    raise LatticeError("auto bound did not converge")  # pragma: no cover


def _minima_fixed_bound(problem: ParamProblem, levels: int, bound: int,
                        precision: int) -> list[MinimaPoint]:
    if bound < 1:
        raise LatticeError("search_bound must be >= 1")
    candidates = _prefilter(problem, bound, levels)
    gauges = {v: build_gauge(problem, v) for v in candidates}

    def cmp(v1, v2):
        try:
            c = compare_gauges(gauges[v1], gauges[v2])
        except TieUndecided:
            c = 0
        return c if c else ((v1 > v2) - (v1 < v2))

    ordered = sorted(candidates, key=cmp_to_key(cmp))
    filt = IndependenceFilter()
    out: list[MinimaPoint] = []
    for v in ordered:
        if filt.try_add(v):
            box = gauges[v].interval(precision)
            out.append(MinimaPoint(
                q=problem.q, side=problem.side, level=len(out) + 1,
                L_value=box, witness=v,
                certified=_certify(problem, bound, box.hi, precision)))
            if len(out) == levels:
                break
    if len(out) < levels:  # pragma: no cover - basis vectors prevent this
        raise LatticeError("independent candidates exhausted before all levels")
    return out


# ---------------------------------------------------------------------------
# Defect checks (Minkowski second theorem / Mahler duality)
# ---------------------------------------------------------------------------

def minkowski_defect(points: Sequence[MinimaPoint]) -> RatInterval:
    """sum_j L_{N,j}(q) over a complete level set at one q, as an interval."""
    if not points:
        raise LatticeError("no points")
    q, side = points[0].q, points[0].side
    N = len(points) - 1
    expect = set(range(1, N + 2))
    got = {p.level for p in points}
    if got != expect:
        raise LatticeError(f"need levels {sorted(expect)}, got {sorted(got)}")
    if any(p.q != q or p.side != side for p in points):
        raise LatticeError("mixed q or side in defect computation")
    total = RatInterval.point(0)
    for p in points:
        total = total + p.L_value
    return total


def mahler_defect(first: MinimaPoint, last: MinimaPoint) -> RatInterval:
    """L_{N,1}(q) + L*_{N,N+1}(q) (or the mirrored pair) as an interval."""
    if first.q != last.q:
        raise LatticeError("mismatched q")
    if first.side == last.side:
        raise LatticeError("defect needs one primal and one dual point")
    if first.level != 1:
        raise LatticeError("first argument must be a level-1 point")
    n_plus_1 = len(first.witness)
    if last.level != n_plus_1:
        raise LatticeError(f"second argument must be level {n_plus_1}")
    return first.L_value + last.L_value


def defect_within(defect: RatInterval, bound_integer: int, prec: int = 96) -> tuple[bool, Fraction]:
    """Check |defect| <= log(bound_integer); returns (ok, certified margin)."""
    logc = log_bounds(Fraction(bound_integer), prec).lo
    margin = logc - max(abs(defect.lo), abs(defect.hi))
    return margin >= 0, margin
