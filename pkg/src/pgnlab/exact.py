"""Exact number tower: rationals, quadratic surds, +infinity, certified intervals.

Everything downstream computes over this layer.  Rationals are stdlib
``fractions.Fraction``; elements of a real quadratic field Q(sqrt(d)) are
:class:`Surd`; ordinary exponents may be ``INF``.  Certified enclosures of
logarithms use mpmath's directed-rounding kernels, so every interval endpoint
is again an exact rational.
"""

from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational
from typing import Union

from mpmath import libmp


class ExactError(ValueError):
    """Raised for invalid exact-arithmetic operations or unparsable input."""


# ---------------------------------------------------------------------------
# +infinity (ordinary exponents may take the value +infinity)
# ---------------------------------------------------------------------------

class _Infinity:
    """Positive infinity with just enough arithmetic for exponent formulas."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("pgnlab-inf")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()

ExactNumber = Union[int, Fraction, "Surd"]
ExtendedNumber = Union[int, Fraction, "Surd", _Infinity]


def is_infinite(x) -> bool:
    return x is INF


# ---------------------------------------------------------------------------
# Rational intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatInterval:
    """Closed interval with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ExactError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x) -> "RatInterval":
        f = Fraction(x)
        return RatInterval(f, f)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "RatInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersect(self, other: "RatInterval") -> "RatInterval":
        return RatInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def __add__(self, other):
        if isinstance(other, RatInterval):
            return RatInterval(self.lo + other.lo, self.hi + other.hi)
        f = Fraction(other)
        return RatInterval(self.lo + f, self.hi + f)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RatInterval) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatInterval):
            cands = (self.lo * other.lo, self.lo * other.hi,
                     self.hi * other.lo, self.hi * other.hi)
            return RatInterval(min(cands), max(cands))
        f = Fraction(other)
        if f >= 0:
            return RatInterval(self.lo * f, self.hi * f)
        return RatInterval(self.hi * f, self.lo * f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RatInterval):
            if other.lo <= 0 <= other.hi:
                raise ExactError("interval division by interval containing zero")
            cands = (self.lo / other.lo, self.lo / other.hi,
                     self.hi / other.lo, self.hi / other.hi)
            return RatInterval(min(cands), max(cands))
        f = Fraction(other)
        if f == 0:
            raise ZeroDivisionError("interval division by zero")
        if f > 0:
            return RatInterval(self.lo / f, self.hi / f)
        return RatInterval(self.hi / f, self.lo / f)

    def abs(self) -> "RatInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatInterval(Fraction(0), max(-self.lo, self.hi))

    def strictly_below(self, other: "RatInterval") -> bool:
        return self.hi < other.lo

    def __float__(self) -> float:
        return float(self.mid)


# ---------------------------------------------------------------------------
# Certified elementary enclosures (directed rounding via mpmath.libmp)
# ---------------------------------------------------------------------------

def _raw_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    v = Fraction(int(man) if sign == 0 else -int(man))
    return v * 2 ** exp if exp >= 0 else v / (1 << -exp)


def log_bounds(x: Fraction, prec: int) -> RatInterval:
    """Certified enclosure of log(x) for a positive rational x."""
    if x <= 0:
        raise ExactError("log_bounds needs a positive argument")
    if x == 1:
        return RatInterval.point(0)
    work = prec + 10
    xd = libmp.from_rational(x.numerator, x.denominator, work, "f")
    xu = libmp.from_rational(x.numerator, x.denominator, work, "c")
    lo = _raw_to_fraction(libmp.mpf_log(xd, prec, "f"))
    hi = _raw_to_fraction(libmp.mpf_log(xu, prec, "c"))
    return RatInterval(lo, hi)


def log_interval(x: RatInterval, prec: int) -> RatInterval:
    """Certified enclosure of log over a positive rational interval."""
    return RatInterval(log_bounds(x.lo, prec).lo, log_bounds(x.hi, prec).hi)


def sqrt_int_interval(d: int, prec: int) -> RatInterval:
    """Enclosure of sqrt(d) of width <= 2^-prec, via integer square roots.

    Endpoints are dyadic; successive precisions give nested intervals.
    """
    if d < 0:
        raise ExactError("negative radicand")
    scaled = d << (2 * prec)
    r = isqrt(scaled)
    lo = Fraction(r, 1 << prec)
    hi = lo if r * r == scaled else Fraction(r + 1, 1 << prec)
    return RatInterval(lo, hi)


def sqrt_interval(x: Fraction, prec: int) -> RatInterval:
    """Enclosure of sqrt(x) for a nonnegative rational x."""
    x = Fraction(x)
    if x < 0:
        raise ExactError("negative radicand")
    # sqrt(p/q) = sqrt(p*q)/q
    pq = x.numerator * x.denominator
    extra = max(0, (x.denominator.bit_length()))
    return sqrt_int_interval(pq, prec + extra) / x.denominator


# ---------------------------------------------------------------------------
# Quadratic surds a + b*sqrt(d)
# ---------------------------------------------------------------------------

def _squarefree_split(n: int) -> tuple[int, int]:
    """n = s^2 * f with f squarefree; returns (s, f). Trial division (desk scale)."""
    s, f = 1, 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                f *= p
        p += 1 if p == 2 else 2
    return s, f * m


class Surd:
    """Element a + b*sqrt(d) of a real quadratic field, a,b rational, d squarefree > 1.

    Construction normalizes the radicand to its squarefree part; a Surd with
    b == 0 is never produced (use plain Fraction instead, see :func:`make_surd`).
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        a, b = Fraction(a), Fraction(b)
        if d <= 1:
            raise ExactError("radicand must be an integer > 1")
        s, f = _squarefree_split(d)
        if f == 1:
            raise ExactError(f"radicand {d} is a perfect square; use Fraction")
        a, b, d = a, b * s, f
        if b == 0:
            raise ExactError("b == 0: value is rational, use Fraction")
        self.a, self.b, self.d = a, b, d

    # -- structural ---------------------------------------------------------

    def __repr__(self):
        return f"Surd({self.a}, {self.b}, {self.d})"

    def __str__(self):
        return format_exact(self)

    def __eq__(self, other):
        other = _coerce(other)
        if isinstance(other, Surd):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, Fraction):
            return False  # b != 0 always
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    # -- arithmetic (closed within one field) -------------------------------

    def _check_field(self, other: "Surd"):
        if self.d != other.d:
            raise ExactError(f"mixed radicands sqrt{self.d} vs sqrt{other.d}")

    def __add__(self, other):
        other = _coerce(other)
        if isinstance(other, Fraction):
            return Surd.__new_checked(self.a + other, self.b, self.d)
        if isinstance(other, Surd):
            self._check_field(other)
            return Surd.__new_checked(self.a + other.a, self.b + other.b, self.d)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o if isinstance(o, Surd) else -Fraction(o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if isinstance(other, Fraction):
            if other == 0:
                return Fraction(0)
            return Surd(self.a * other, self.b * other, self.d)
        if isinstance(other, Surd):
            self._check_field(other)
            return Surd.__new_checked(
                self.a * other.a + self.b * other.b * self.d,
                self.a * other.b + self.b * other.a,
                self.d,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if isinstance(other, Fraction):
            if other == 0:
                raise ZeroDivisionError
            return Surd(self.a / other, self.b / other, self.d)
        if isinstance(other, Surd):
            self._check_field(other)
            # multiply by the conjugate; norm is a nonzero rational
            norm = other.a * other.a - other.b * other.b * other.d
            conj = Surd.__new_checked(other.a, -other.b, other.d)
            return (self * conj) / norm if isinstance(conj, Surd) else self / norm
        return NotImplemented

    def __rtruediv__(self, other):
        norm = self.a * self.a - self.b * self.b * self.d
        return (_coerce(other) * Surd(self.a, -self.b, self.d)) / norm

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ExactError("only nonnegative integer powers")
        out: ExactNumber = Fraction(1)
        base: ExactNumber = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @staticmethod
    def __new_checked(a, b, d):
        if b == 0:
            return Fraction(a)
        return Surd(a, b, d)

    # -- order --------------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        a, b, d = self.a, self.b, self.d
        if a == 0:
            return 1 if b > 0 else -1
        if b == 0:  # pragma: no cover - excluded by construction
            return 1 if a > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 d, sign follows the larger side
        lhs, rhs = a * a, b * b * d
        if lhs == rhs:
            return 0  # cannot happen for squarefree d > 1, kept for safety
        bigger_rational = lhs > rhs
        return (1 if a > 0 else -1) if bigger_rational else (1 if b > 0 else -1)

    def __lt__(self, other):
        return compare_values(self, other) < 0

    def __le__(self, other):
        return compare_values(self, other) <= 0

    def __gt__(self, other):
        return compare_values(self, other) > 0

    def __ge__(self, other):
        return compare_values(self, other) >= 0

    # -- numeric views -------------------------------------------------------

    def interval(self, prec: int) -> RatInterval:
        root = sqrt_int_interval(self.d, prec + self.b.denominator.bit_length()
                                 + abs(self.b.numerator).bit_length() + 2)
        return root * self.b + self.a

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)


def _coerce(x):
    if isinstance(x, Surd) or x is INF:
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    return NotImplemented


def make_surd(a, b, d: int) -> ExactNumber:
    """a + b*sqrt(d), collapsing to Fraction when the irrational part vanishes."""
    b = Fraction(b)
    if b == 0:
        return Fraction(a)
    s, f = _squarefree_split(d)
    if f == 1:
        return Fraction(a) + b * s
    return Surd(a, b, d)


def sqrt_exact(x) -> ExactNumber:
    """Exact square root of a nonnegative rational: Fraction or Surd."""
    x = Fraction(x)
    if x < 0:
        raise ExactError("negative radicand")
    if x == 0:
        return Fraction(0)
    rp, rq = isqrt(x.numerator), isqrt(x.denominator)
    if rp * rp == x.numerator and rq * rq == x.denominator:
        return Fraction(rp, rq)
    # sqrt(p/q) = sqrt(pq)/q
    return make_surd(0, Fraction(1, x.denominator), x.numerator * x.denominator)


def exact_interval(x: ExactNumber, prec: int) -> RatInterval:
    if isinstance(x, Surd):
        return x.interval(prec)
    return RatInterval.point(Fraction(x))


def compare_values(x, y) -> int:
    """Exact trichotomy over {rational, surd, INF}.

    Same-field and rational comparisons are purely algebraic; comparisons
    across distinct radicands refine certified intervals (values from distinct
    quadratic fields are never equal, so this terminates).
    """
    if x is INF and y is INF:
        return 0
    if x is INF:
        return 1
    if y is INF:
        return -1
    x, y = _coerce(x), _coerce(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return (x > y) - (x < y)
    if isinstance(x, Surd) and isinstance(y, Surd) and x.d == y.d:
        diff = x - y
        return diff.sign() if isinstance(diff, Surd) else (diff > 0) - (diff < 0)
    if isinstance(x, Surd) and isinstance(y, Fraction):
        diff = x - y
        return diff.sign()
    if isinstance(x, Fraction) and isinstance(y, Surd):
        return -compare_values(y, x)
    # distinct quadratic fields: interval refinement, equality impossible
    for prec in (64, 128, 256, 512, 1024):
        ix, iy = exact_interval(x, prec), exact_interval(y, prec)
        if ix.hi < iy.lo:
            return -1
        if iy.hi < ix.lo:
            return 1
    raise ExactError(f"could not separate {x!r} and {y!r}")  # pragma: no cover


def exact_min(*xs):
    out = xs[0]
    for x in xs[1:]:
        if compare_values(x, out) < 0:
            out = x
    return out


def exact_max(*xs):
    out = xs[0]
    for x in xs[1:]:
        if compare_values(x, out) > 0:
            out = x
    return out


# ---------------------------------------------------------------------------
# Parsing and rendering
# ---------------------------------------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}


def parse_exact(text: str) -> ExtendedNumber:
    """Parse an exact-number expression: '3/7', '(sqrt5-1)/2', '0.27', 'inf'.

    Decimal literals are read as exact decimal fractions.  Names of the form
    sqrt<d> denote exact square roots.
    """
    text = text.strip()
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as e:
        raise ExactError(f"unparsable exact number {text!r}: {e}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int):
                return Fraction(node.value)
            if isinstance(node.value, float):
                return Fraction(str(node.value))
            raise ExactError(f"bad literal {node.value!r}")
        if isinstance(node, ast.Name):
            name = node.id.lower()
            if name in ("inf", "oo", "infinity"):
                return INF
            if name.startswith("sqrt"):
                try:
                    d = int(name[4:])
                except ValueError:
                    raise ExactError(f"unknown name {node.id!r}") from None
                return sqrt_exact(d)
            raise ExactError(f"unknown name {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            if isinstance(node.op, ast.USub):
                if v is INF:
                    raise ExactError("negative infinity is not representable")
                return -v
            return v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            lhs, rhs = ev(node.left), ev(node.right)
            if lhs is INF or rhs is INF:
                raise ExactError("infinity only allowed as a bare value")
            return _BINOPS[type(node.op)](lhs, rhs)
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            base, expo = ev(node.left), ev(node.right)
            if not isinstance(expo, Fraction) or expo.denominator != 1:
                raise ExactError("only integer exponents")
            return base ** int(expo)
        raise ExactError(f"unsupported syntax in {text!r}")

    return ev(tree)


def format_exact(x: ExtendedNumber) -> str:
    """Canonical string: integers/fractions verbatim, surds as '(p+q*sqrtD)/r'."""
    if x is INF:
        return "inf"
    if isinstance(x, Rational):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if not isinstance(x, Surd):
        raise ExactError(f"cannot format {x!r}")
    # write as (p + q*sqrt(d))/r with integers p, q, gcd(p, q, r) = 1, r >= 1
    r = math.lcm(x.a.denominator, x.b.denominator)
    p, q = x.a.numerator * (r // x.a.denominator), x.b.numerator * (r // x.b.denominator)
    g = math.gcd(math.gcd(abs(p), abs(q)), r)
    p, q, r = p // g, q // g, r // g

    def surd_term(coeff: int) -> str:
        if abs(coeff) == 1:
            return f"sqrt{x.d}"
        return f"{abs(coeff)}*sqrt{x.d}"

    if p == 0:
        body = surd_term(q) if q > 0 else f"-{surd_term(q)}"
        return body if r == 1 else f"{body}/{r}"
    # positive term first
    if q > 0:
        first, second = (f"{p}", f"+{surd_term(q)}") if p > 0 else (surd_term(q), f"{p}")
    else:
        first, second = (f"{p}", f"-{surd_term(q)}") if p > 0 else (f"-{surd_term(q)}", f"{p}")
    body = f"{first}{second}"
    if r == 1 and p != 0:
        return f"({body})" if (p != 0 and q != 0) else body
    return f"({body})/{r}"


def decimal_str(x: ExtendedNumber, digits: int = 6) -> str:
    """Presentation-only decimal rendering with the given significant digits."""
    if x is INF:
        return "inf"
    if isinstance(x, Rational):
        f = float(Fraction(x))
    else:
        f = float(x)
    if f == 0:
        return "0"
    return f"{f:.{digits}g}"
