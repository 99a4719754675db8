"""Exact, refinable representations of the reals under study.

A :class:`RealNumberSource` yields certified rational enclosures of its value
at any requested precision, exposes continued-fraction convergents for the
irrational kinds, and (where the value lives in a computable field) exact
arithmetic hooks used for tie decisions downstream.  A :class:`VeronesePoint`
bundles a source with a dimension N and serves the coordinate intervals for
(xi, xi^2, ..., xi^N).
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Optional, Sequence

import sympy

from pgnlab.exact import (
    ExactError,
    ExactNumber,
    RatInterval,
    Surd,
    exact_interval,
    make_surd,
    parse_exact,
    format_exact,
)


class SourceError(ValueError):
    """Invalid source parameters or operation not supported by the kind."""


def _floor_exact(x: ExactNumber) -> int:
    if isinstance(x, Fraction):
        return x.numerator // x.denominator
    # surd: float guess, then exact adjustment
    f = int(float(x))
    while compare_values_int(x, f) < 0:
        f -= 1
    while compare_values_int(x, f + 1) >= 0:
        f += 1
    return f


def compare_values_int(x, n: int) -> int:
    from pgnlab.exact import compare_values
    return compare_values(x, Fraction(n))


class RealNumberSource:
    """Base class; subclasses implement `_refine` as a pure function of precision."""

    kind: str = "abstract"

    def __init__(self):
        self._cache: dict[int, RatInterval] = {}
        self._lock = threading.Lock()

    # -- enclosure ---------------------------------------------------------

    def interval(self, precision_bits: int) -> RatInterval:
        """Certified enclosure of width <= 2^-precision_bits; nested in precision."""
        if precision_bits < 1:
            raise SourceError("precision_bits must be >= 1")
        with self._lock:
            got = self._cache.get(precision_bits)
            if got is None:
                got = self._refine(precision_bits)
                if got.width > Fraction(1, 2 ** precision_bits):
                    raise SourceError(
                        f"refinement failed to reach 2^-{precision_bits}")
                self._cache[precision_bits] = got
            return got

    def _refine(self, precision_bits: int) -> RatInterval:
        raise NotImplementedError

    def float_value(self) -> float:
        return float(self.interval(64).mid)

    # -- exact hooks ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return False

    def exact(self) -> Optional[ExactNumber]:
        """Exact value when the source lives in Q or a quadratic field."""
        return None

    def power_exact(self, j: int) -> Optional[ExactNumber]:
        v = self.exact()
        if v is None:
            return None
        return v ** j if j else Fraction(1)

    def linear_form_exact(self, coeffs: Sequence[int]):
        """(value, known_nonzero) for sum_j coeffs[j] * xi^j.

        value is an ExactNumber when computable, else None.  known_nonzero is
        True when the form is certainly nonzero even though no exact value is
        available (e.g. degree reasons for algebraic sources).
        """
        v = self.exact()
        if v is not None:
            total: ExactNumber = Fraction(coeffs[0])
            powv: ExactNumber = Fraction(1)
            for c in coeffs[1:]:
                powv = powv * v
                if c:
                    total = total + c * powv
            return total, total != 0
        return None, False

    # -- continued fractions -------------------------------------------------

    def partial_quotients(self, count: int) -> list[int]:
        raise SourceError(f"{self.kind} source has a terminating continued fraction")

    def convergents(self, count: int) -> list[tuple[int, int]]:
        """First `count` continued-fraction convergents (p, q), q strictly increasing."""
        if count < 1:
            raise SourceError("count must be >= 1")
        quots = self.partial_quotients(count + 2)
        ps, qs = [0, 1], [1, 0]  # p_{-2}, p_{-1} / q_{-2}, q_{-1}
        pairs = []
        for a in quots:
            ps.append(a * ps[-1] + ps[-2])
            qs.append(a * qs[-1] + qs[-2])
            pairs.append((ps[-1], qs[-1]))
        # drop leading convergents that do not yet increase q strictly
        start = 1 if quots[0] == 0 else 0
        if len(pairs) > start + 1 and pairs[start + 1][1] == pairs[start][1]:
            start += 1
        return pairs[start:start + count]

    # -- descriptors ----------------------------------------------------------

    def descriptor(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.descriptor()['params']}>"


class RationalSource(RealNumberSource):
    kind = "rational"

    def __init__(self, value):
        super().__init__()
        self.value = Fraction(value)

    def _refine(self, precision_bits: int) -> RatInterval:
        return RatInterval.point(self.value)

    @property
    def is_rational(self) -> bool:
        return True

    def exact(self):
        return self.value

    def descriptor(self):
        return {"kind": self.kind,
                "params": {"p": self.value.numerator, "q": self.value.denominator}}


class QuadraticSource(RealNumberSource):
    """xi = a + b*sqrt(d) with rational a, b != 0 and non-square d > 1."""

    kind = "quadratic-irrational"

    def __init__(self, a, b, d: int):
        super().__init__()
        v = make_surd(a, b, d)
        if not isinstance(v, Surd):
            raise SourceError("parameters give a rational value; use the rational kind")
        self.value = v

    def _refine(self, precision_bits: int) -> RatInterval:
        return self.value.interval(precision_bits + 1)

    def exact(self):
        return self.value

    def partial_quotients(self, count: int) -> list[int]:
        # exact CF recursion in the quadratic field
        out = []
        x: ExactNumber = self.value
        for _ in range(count):
            a = _floor_exact(x)
            out.append(a)
            frac = x - a
            x = 1 / frac
        if any(a < 1 for a in out[1:]):
            raise SourceError("internal CF recursion error")  # pragma: no cover
        return out

    def descriptor(self):
        return {"kind": self.kind,
                "params": {"a": format_exact(self.value.a),
                           "b": format_exact(self.value.b),
                           "d": self.value.d}}


class _CFBackedSource(RealNumberSource):
    """Common machinery for sources defined by their partial quotients."""

    def __init__(self):
        super().__init__()
        self._quots: list[int] = []
        self._conv_p = [0, 1]
        self._conv_q = [1, 0]

    def _next_quotient(self, m: int) -> int:
        raise NotImplementedError

    def _ensure_quotients(self, count: int):
        while len(self._quots) < count:
            m = len(self._quots)
            a = self._next_quotient(m)
            if m == 0:
                if a < 0:
                    raise SourceError("a_0 must be >= 0")
            elif a < 1:
                raise SourceError(f"partial quotient a_{m} = {a} must be >= 1")
            self._quots.append(a)
            self._conv_p.append(a * self._conv_p[-1] + self._conv_p[-2])
            self._conv_q.append(a * self._conv_q[-1] + self._conv_q[-2])

    def partial_quotients(self, count: int) -> list[int]:
        with self._lock:
            self._ensure_quotients(count)
            return list(self._quots[:count])

    def _refine(self, precision_bits: int) -> RatInterval:
        # consecutive convergents straddle the value; width 1/(q_m q_{m+1})
        target = Fraction(1, 2 ** precision_bits)
        m = 1
        while True:
            self._ensure_quotients(m + 2)
            qm, qm1 = self._conv_q[m + 1], self._conv_q[m + 2]
            if Fraction(1, qm * qm1) <= target:
                a = Fraction(self._conv_p[m + 1], qm)
                b = Fraction(self._conv_p[m + 2], qm1)
                return RatInterval(min(a, b), max(a, b))
            m += 1

    def interval(self, precision_bits: int) -> RatInterval:
        if precision_bits < 1:
            raise SourceError("precision_bits must be >= 1")
        with self._lock:
            got = self._cache.get(precision_bits)
            if got is None:
                got = self._refine(precision_bits)
                self._cache[precision_bits] = got
            return got


def _thue_morse_bit(i: int) -> int:
    return bin(i).count("1") & 1


class CFGeneratorSource(_CFBackedSource):
    """Partial quotients from a head list followed by a deterministic rule.

    Rules: an eventually periodic cycle, the Thue-Morse two-letter rule, or a
    Liouville-type growth rule a_m = q_{m-1}^e manufacturing lambda_1 = e + 1.
    """

    kind = "cf-generator"

    def __init__(self, head: Sequence[int], cycle: Sequence[int] | None = None,
                 rule: Callable[[int], int] | None = None,
                 thue_morse_letters: Sequence[int] | None = None,
                 liouville_e: int | None = None):
        super().__init__()
        self.head = [int(a) for a in head]
        if not self.head:
            raise SourceError("head must be nonempty")
        given = [cycle is not None, rule is not None,
                 thue_morse_letters is not None, liouville_e is not None]
        if sum(given) != 1:
            raise SourceError("exactly one of cycle / rule / thue_morse_letters / "
                              "liouville_e must be given")
        self.cycle = [int(a) for a in cycle] if cycle is not None else None
        if self.cycle is not None and (not self.cycle or min(self.cycle) < 1):
            raise SourceError("cycle entries must be >= 1")
        self.rule = rule
        self.letters = tuple(int(a) for a in thue_morse_letters) if thue_morse_letters else None
        if self.letters is not None and (len(self.letters) != 2 or min(self.letters) < 1):
            raise SourceError("thue_morse_letters must be two integers >= 1")
        self.liouville_e = int(liouville_e) if liouville_e is not None else None
        if self.liouville_e is not None and self.liouville_e < 1:
            raise SourceError("liouville exponent must be a positive integer")

    def _next_quotient(self, m: int) -> int:
        if m < len(self.head):
            return self.head[m]
        i = m - len(self.head)
        if self.cycle is not None:
            return self.cycle[i % len(self.cycle)]
        if self.letters is not None:
            return self.letters[_thue_morse_bit(i)]
        if self.liouville_e is not None:
            qprev = self._conv_q[-1]  # q_{m-1}
            return qprev ** self.liouville_e
        return int(self.rule(m))

    def descriptor(self):
        params: dict = {"head": list(self.head)}
        if self.cycle is not None:
            params["cycle"] = list(self.cycle)
        elif self.letters is not None:
            params["rule"] = {"name": "thue-morse", "letters": list(self.letters)}
        elif self.liouville_e is not None:
            params["growth"] = {"name": "liouville", "e": self.liouville_e}
        else:
            raise SourceError("callable rules have no JSON descriptor")
        return {"kind": self.kind, "params": params}


class FibonacciWordCFSource(_CFBackedSource):
    """[0; c_1, c_2, ...] with c following the infinite Fibonacci word on {a, b}.

    The word is the fixed point of a -> ab, b -> a, i.e. abaababa...; shipped
    as the canonical bounded non-periodic test family.
    """

    kind = "fibonacci-word-cf"

    def __init__(self, a: int, b: int):
        super().__init__()
        if a < 1 or b < 1 or a == b:
            raise SourceError("letters must be distinct integers >= 1")
        self.a, self.b = int(a), int(b)
        self._word = "ab"

    def _letter(self, i: int) -> str:
        # w_{n+1} = w_n + w_{n-1}; grow until index is covered
        prev, cur = "a", "ab"
        while len(cur) <= i:
            prev, cur = cur, cur + prev
        return cur[i]

    def _next_quotient(self, m: int) -> int:
        if m == 0:
            return 0
        return self.a if self._letter(m - 1) == "a" else self.b

    def descriptor(self):
        return {"kind": self.kind, "params": {"a": self.a, "b": self.b}}


class AlgebraicSource(RealNumberSource):
    """Root of an irreducible integer polynomial inside an isolating interval."""

    kind = "algebraic-by-minpoly"

    def __init__(self, coeffs: Sequence[int], lo, hi):
        super().__init__()
        self.coeffs = [int(c) for c in coeffs]
        while self.coeffs and self.coeffs[-1] == 0:
            self.coeffs.pop()
        if len(self.coeffs) < 3:
            raise SourceError("degree must be >= 2 (use rational kind otherwise)")
        self.lo, self.hi = Fraction(lo), Fraction(hi)
        if not self.lo < self.hi:
            raise SourceError("empty isolating interval")
        x = sympy.symbols("x")
        self._poly = sympy.Poly(sum(c * x ** j for j, c in enumerate(self.coeffs)), x)
        if not self._poly.is_irreducible:
            raise SourceError("polynomial is reducible; not a minimal polynomial")
        nroots = self._poly.count_roots(sympy.Rational(self.lo.numerator, self.lo.denominator),
                                        sympy.Rational(self.hi.numerator, self.hi.denominator))
        if nroots != 1:
            raise SourceError(f"isolating interval contains {nroots} roots, expected 1")
        if self._eval(self.lo) == 0 or self._eval(self.hi) == 0:
            raise SourceError("isolating endpoints must not be roots")

    def _eval(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _refine(self, precision_bits: int) -> RatInterval:
        target = Fraction(1, 2 ** precision_bits)
        lo, hi = self.lo, self.hi
        slo = self._eval(lo) > 0
        while hi - lo > target:
            mid = (lo + hi) / 2
            v = self._eval(mid)
            if v == 0:  # pragma: no cover - irreducible deg >= 2 has no rational root
                raise SourceError("rational root hit")
            if (v > 0) == slo:
                lo = mid
            else:
                hi = mid
        return RatInterval(lo, hi)

    def linear_form_exact(self, coeffs: Sequence[int]):
        # reduce mod the minimal polynomial: zero iff minpoly divides the form
        x = sympy.symbols("x")
        form = sympy.Poly(sum(int(c) * x ** j for j, c in enumerate(coeffs)), x)
        if form.is_zero:
            return Fraction(0), False
        if form.degree() < self._poly.degree():
            return None, True  # minpoly cannot divide a lower-degree nonzero form
        _, rem = sympy.div(form, self._poly, x)
        if rem.is_zero:
            return Fraction(0), False
        return None, True

    def partial_quotients(self, count: int) -> list[int]:
        # agreed CF prefix of the two interval endpoints certifies the quotients
        prec = 64
        while True:
            box = self.interval(prec)
            a_cf = _cf_of_rational(box.lo)
            b_cf = _cf_of_rational(box.hi)
            common = []
            for u, v in zip(a_cf[:-1], b_cf[:-1]):
                if u != v:
                    break
                common.append(u)
            if len(common) > count:
                return common[:count]
            prec *= 2
            if prec > 1 << 16:  # pragma: no cover
                raise SourceError("CF extraction did not converge")

    def descriptor(self):
        return {"kind": self.kind,
                "params": {"coeffs": list(self.coeffs),
                           "lo": format_exact(self.lo), "hi": format_exact(self.hi)}}


def _cf_of_rational(x: Fraction) -> list[int]:
    out = []
    p, q = x.numerator, x.denominator
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


# ---------------------------------------------------------------------------
# JSON descriptors and named shortcuts
# ---------------------------------------------------------------------------

def source_from_json(desc: dict) -> RealNumberSource:
    """Build a source from {"kind": ..., "params": {...}} (see README for schema)."""
    try:
        kind = desc["kind"]
        params = desc.get("params", {})
    except (TypeError, KeyError) as e:
        raise SourceError(f"bad source descriptor: {e}") from None
    if kind == "rational":
        return RationalSource(Fraction(int(params["p"]), int(params["q"])))
    if kind == "quadratic-irrational":
        return QuadraticSource(parse_exact(str(params["a"])),
                               parse_exact(str(params["b"])), int(params["d"]))
    if kind == "cf-generator":
        head = params.get("head")
        if head is None:
            raise SourceError("cf-generator needs a head list")
        if "cycle" in params:
            return CFGeneratorSource(head, cycle=params["cycle"])
        rule = params.get("rule")
        if rule and rule.get("name") == "thue-morse":
            return CFGeneratorSource(head, thue_morse_letters=rule["letters"])
        growth = params.get("growth")
        if growth and growth.get("name") == "liouville":
            return CFGeneratorSource(head, liouville_e=growth["e"])
        raise SourceError("cf-generator needs one of cycle / rule / growth")
    if kind == "fibonacci-word-cf":
        return FibonacciWordCFSource(int(params["a"]), int(params["b"]))
    if kind == "algebraic-by-minpoly":
        return AlgebraicSource(params["coeffs"],
                               parse_exact(str(params["lo"])),
                               parse_exact(str(params["hi"])))
    raise SourceError(f"unknown source kind {kind!r}")


NAMED_SOURCES: dict[str, dict] = {
    # golden ratio fractional part, (sqrt5 - 1)/2
    "golden": {"kind": "quadratic-irrational",
               "params": {"a": "-1/2", "b": "1/2", "d": 5}},
    "sqrt2m1": {"kind": "quadratic-irrational",
                "params": {"a": "-1", "b": "1", "d": 2}},
    "sqrt5": {"kind": "quadratic-irrational",
              "params": {"a": "0", "b": "1", "d": 5}},
    "third": {"kind": "rational", "params": {"p": 1, "q": 3}},
    # non-periodic bounded quotients near 0.3 (Thue-Morse rule)
    "cf03": {"kind": "cf-generator",
             "params": {"head": [0, 3],
                        "rule": {"name": "thue-morse", "letters": [2, 1]}}},
    "fib12": {"kind": "fibonacci-word-cf", "params": {"a": 1, "b": 2}},
    "liouville2": {"kind": "cf-generator",
                   "params": {"head": [0, 2],
                              "growth": {"name": "liouville", "e": 2}}},
    "plastic": {"kind": "algebraic-by-minpoly",
                "params": {"coeffs": [-1, -1, 0, 1], "lo": "1", "hi": "3/2"}},
}


def resolve_source(spec) -> RealNumberSource:
    """Accept a RealNumberSource, a named shortcut, or a JSON descriptor dict."""
    if isinstance(spec, RealNumberSource):
        return spec
    if isinstance(spec, str):
        if spec in NAMED_SOURCES:
            return source_from_json(NAMED_SOURCES[spec])
        raise SourceError(f"unknown named source {spec!r}; "
                          f"known: {', '.join(sorted(NAMED_SOURCES))}")
    if isinstance(spec, dict):
        return source_from_json(spec)
    raise SourceError(f"cannot interpret source spec {spec!r}")


# ---------------------------------------------------------------------------
# Refinable reals built over points
# ---------------------------------------------------------------------------

class RefReal:
    """A real number known through nested certified enclosures."""

    def interval(self, prec: int) -> RatInterval:
        raise NotImplementedError

    def exact(self) -> Optional[ExactNumber]:
        return None

    def known_nonzero(self) -> bool:
        v = self.exact()
        return v is not None and v != 0

    def is_exact_zero(self) -> bool:
        v = self.exact()
        return v is not None and v == 0

    def float_value(self) -> float:
        return float(self.interval(64).mid)


class ExactReal(RefReal):
    def __init__(self, value: ExactNumber):
        self.value = value if isinstance(value, Surd) else Fraction(value)

    def interval(self, prec: int) -> RatInterval:
        return exact_interval(self.value, prec)

    def exact(self):
        return self.value


class LinearFormReal(RefReal):
    """sum_j coeffs[j] * xi^j over a point's coordinates (coeffs[0] is constant)."""

    def __init__(self, point: "VeronesePoint | GeneralPoint", coeffs: Sequence[int]):
        self.point = point
        self.coeffs = tuple(int(c) for c in coeffs)
        self._exact_known = False
        self._exact_value: Optional[ExactNumber] = None
        self._nonzero = False

    def _resolve_exact(self):
        if not self._exact_known:
            self._exact_value, self._nonzero = self.point.linear_form_exact(self.coeffs)
            if self._exact_value is not None:
                self._nonzero = self._exact_value != 0
            self._exact_known = True

    def exact(self):
        self._resolve_exact()
        return self._exact_value

    def known_nonzero(self) -> bool:
        self._resolve_exact()
        return self._nonzero

    def is_exact_zero(self) -> bool:
        self._resolve_exact()
        return self._exact_value is not None and self._exact_value == 0

    def interval(self, prec: int) -> RatInterval:
        v = self.exact()
        if v is not None:
            return exact_interval(v, prec)
        total_abs = sum(abs(c) for c in self.coeffs) or 1
        pad = total_abs.bit_length() + 2
        acc = RatInterval.point(Fraction(self.coeffs[0]))
        for j, c in enumerate(self.coeffs[1:], start=1):
            if c:
                acc = acc + self.point.coordinate(j, prec + pad) * c
        return acc


class AbsReal(RefReal):
    def __init__(self, inner: RefReal):
        self.inner = inner

    def interval(self, prec: int) -> RatInterval:
        return self.inner.interval(prec).abs()

    def exact(self):
        v = self.inner.exact()
        if v is None:
            return None
        if isinstance(v, Surd):
            return v if v.sign() >= 0 else -v
        return abs(v)

    def known_nonzero(self) -> bool:
        return self.inner.known_nonzero()

    def is_exact_zero(self) -> bool:
        return self.inner.is_exact_zero()


class VeronesePoint:
    """(xi, xi^2, ..., xi^N) for a single source xi."""

    def __init__(self, source, N: int):
        if N < 1:
            raise SourceError("dimension N must be >= 1")
        self.source = resolve_source(source)
        self.N = int(N)
        self._coord_cache: dict[tuple[int, int], RatInterval] = {}
        self._lock = threading.Lock()

    def coordinate(self, j: int, prec: int) -> RatInterval:
        """Enclosure of xi^j of width <= 2^-prec (j = 0 gives the point 1)."""
        if not 0 <= j <= self.N:
            raise SourceError(f"coordinate index {j} outside 0..{self.N}")
        if j == 0:
            return RatInterval.point(Fraction(1))
        key = (j, prec)
        with self._lock:
            got = self._coord_cache.get(key)
        if got is not None:
            return got
        target = Fraction(1, 2 ** prec)
        extra = j + 2
        while True:
            base = self.source.interval(prec + extra)
            acc = base
            for _ in range(j - 1):
                acc = acc * base
            if acc.width <= target:
                with self._lock:
                    self._coord_cache[key] = acc
                return acc
            extra *= 2

    def coordinate_exact(self, j: int) -> Optional[ExactNumber]:
        return self.source.power_exact(j)

    def coordinate_float(self, j: int) -> float:
        v = self.coordinate(j, 96)
        return float(v.mid)

    def linear_form(self, coeffs: Sequence[int]) -> LinearFormReal:
        if len(coeffs) != self.N + 1:
            raise SourceError(f"need {self.N + 1} coefficients")
        return LinearFormReal(self, coeffs)

    def linear_form_exact(self, coeffs: Sequence[int]):
        return self.source.linear_form_exact(coeffs)

    def in_unit_interval(self) -> bool:
        box = self.source.interval(16)
        if 0 < box.lo and box.hi < 1:
            return True
        v = self.source.exact()
        if v is not None:
            from pgnlab.exact import compare_values
            return compare_values(v, Fraction(0)) > 0 and compare_values(v, Fraction(1)) < 0
        box = self.source.interval(128)
        return 0 < box.lo and box.hi < 1

    def descriptor(self) -> dict:
        return {"point": "veronese", "N": self.N, "source": self.source.descriptor()}

    def __repr__(self):
        return f"VeronesePoint(N={self.N}, source={self.source!r})"


class GeneralPoint:
    """A general vector (xi_1, ..., xi_N) of independent coordinate sources."""

    def __init__(self, sources: Sequence):
        if not sources:
            raise SourceError("need at least one coordinate")
        self.sources = [resolve_source(s) for s in sources]
        self.N = len(self.sources)

    def coordinate(self, j: int, prec: int) -> RatInterval:
        if j == 0:
            return RatInterval.point(Fraction(1))
        if not 1 <= j <= self.N:
            raise SourceError(f"coordinate index {j} outside 0..{self.N}")
        return self.sources[j - 1].interval(prec)

    def coordinate_exact(self, j: int) -> Optional[ExactNumber]:
        if j == 0:
            return Fraction(1)
        return self.sources[j - 1].exact()

    def coordinate_float(self, j: int) -> float:
        return float(self.coordinate(j, 96).mid)

    def linear_form(self, coeffs: Sequence[int]) -> LinearFormReal:
        if len(coeffs) != self.N + 1:
            raise SourceError(f"need {self.N + 1} coefficients")
        return LinearFormReal(self, coeffs)

    def linear_form_exact(self, coeffs: Sequence[int]):
        # sum of per-coordinate exact values; surds with distinct radicands are
        # Q-linearly independent, so the aggregated form decides zero exactly
        rational = Fraction(coeffs[0])
        surd_parts: dict[int, ExactNumber] = {}
        for j, c in enumerate(coeffs[1:], start=1):
            if not c:
                continue
            v = self.coordinate_exact(j)
            if v is None:
                return None, False
            if isinstance(v, Surd):
                term = c * v
                if isinstance(term, Surd):
                    prev = surd_parts.get(term.d)
                    merged = term if prev is None else prev + term
                    if isinstance(merged, Surd):
                        surd_parts[term.d] = merged
                    else:
                        surd_parts.pop(term.d, None)
                        rational += merged
            else:
                rational += c * v
        if not surd_parts:
            return rational, rational != 0
        if len(surd_parts) == 1:
            (value,) = surd_parts.values()
            total = value + rational
            return total, True  # a + b*sqrt(d) with b != 0 is never zero
        return None, True  # independent radicands cannot cancel

    def in_unit_interval(self) -> bool:
        return all(0 < s.interval(16).lo and s.interval(16).hi < 1 for s in self.sources)

    def descriptor(self) -> dict:
        return {"point": "general",
                "sources": [s.descriptor() for s in self.sources]}

    def __repr__(self):
        return f"GeneralPoint(N={self.N})"
