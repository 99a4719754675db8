"""Registry of closed-form transference bounds between Diophantine exponents.

Every entry is a total exact function on an explicit applicability domain:
querying outside the domain reports "inapplicable" with a reason instead of a
wrong number.  Values are exact rationals or quadratic surds; ordinary
exponents may be passed as INF, in which case entries evaluate their exact
limits.  The comparison engine ranks the lower bounds available for a given
(n, k) input set, and the admissibility checker validates candidate exponent
sequences against the going-up constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from pgnlab.exact import (
    INF,
    ExactError,
    ExtendedNumber,
    compare_values,
    exact_max,
    format_exact,
    is_infinite,
    sqrt_exact,
)


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class BoundSpec:
    id: str
    params: tuple[str, ...]
    kind: str  # lower-bound | upper-bound | identity | condition | threshold | dimension-formula | constant
    brief: str
    attribution: str
    func: Callable
    domain: Callable  # (**inputs) -> None (ok) or str (reason inapplicable)
    flags: tuple[str, ...] = ()  # extra boolean inputs (e.g. "assu")


@dataclass
class BoundEvaluation:
    id: str
    inputs: dict
    value: object  # ExtendedNumber or bool
    applicable: bool
    reason: str = ""
    notes: dict = field(default_factory=dict)

    def __str__(self):
        if not self.applicable:
            return f"{self.id}: inapplicable ({self.reason})"
        if isinstance(self.value, bool):
            return f"{self.id} = {self.value}"
        return f"{self.id} = {format_exact(self.value)}"


REGISTRY: dict[str, BoundSpec] = {}


def _register(id: str, params: tuple[str, ...], kind: str, brief: str,
              attribution: str = "", flags: tuple[str, ...] = ()):
    def deco(fn):
        domain_fn = getattr(fn, "_domain", lambda **kw: None)
        REGISTRY[id] = BoundSpec(id=id, params=params, kind=kind, brief=brief,
                                 attribution=attribution, func=fn,
                                 domain=domain_fn, flags=flags)
        return fn
    return deco


def _domain(check: Callable):
    def deco(fn):
        fn._domain = check
        return fn
    return deco


def _require_int(name, v) -> int:
    if isinstance(v, Fraction) and v.denominator == 1:
        v = int(v)
    if not isinstance(v, int):
        raise BoundsError(f"parameter {name} must be an integer, got {v!r}")
    return v


def _finite(name, v):
    if is_infinite(v):
        raise BoundsError(f"parameter {name} must be finite")
    return v


def _ratio_with_inf(num_coeff, num_rest, den_coeff, den_rest, x):
    """(num_coeff*x + num_rest)/(den_coeff*x + den_rest) with exact x=INF limit."""
    if is_infinite(x):
        if den_coeff == 0:
            return INF if compare_values(num_coeff, 0) > 0 else -1
        return num_coeff / den_coeff
    den = den_coeff * x + den_rest
    if den == 0:
        raise ZeroDivisionError
    return (num_coeff * x + num_rest) / den


# ---------------------------------------------------------------------------
# Universal floors and classical transference
# ---------------------------------------------------------------------------

@_register("dirichlet_lambda", ("N",), "lower-bound",
           "universal floor lambda_N >= 1/N", "Dirichlet")
def _dirichlet_lambda(N):
    return Fraction(1, _require_int("N", N))


@_register("dirichlet_w", ("N",), "lower-bound",
           "universal floor w_N >= N", "Dirichlet")
def _dirichlet_w(N):
    return Fraction(_require_int("N", N))


@_register("khintchine_lo", ("N", "w"), "lower-bound",
           "lambda_N from w_N, transference lower side", "Khintchine")
def _khintchine_lo(N, w):
    N = _require_int("N", N)
    return _ratio_with_inf(Fraction(1), Fraction(0), Fraction(N - 1), Fraction(N), w)


@_register("khintchine_hi", ("N", "w"), "upper-bound",
           "lambda_N from w_N, transference upper side", "Khintchine")
def _khintchine_hi(N, w):
    N = _require_int("N", N)
    if is_infinite(w):
        return INF
    return (w - N + 1) / Fraction(N)


@_register("toroben", ("N", "w", "hat_w"), "lower-bound",
           "lambda_N from (w_N, hat_w_N); uniform refinement of transference",
           "Bugeaud-Laurent")
def _toroben(N, w, hat_w):
    N = _require_int("N", N)
    hw = _finite("hat_w", hat_w)
    return _ratio_with_inf(hw - 1, Fraction(0),
                           (N - 2) * hw + 1, (N - 1) * hw, w)


@_register("tur", ("N", "lam", "hat_lam"), "lower-bound",
           "w_N from (lambda_N, hat_lambda_N)", "Bugeaud-Laurent")
@_domain(lambda N, lam, hat_lam: None if compare_values(hat_lam, 1) < 0
         else "needs hat_lam < 1")
def _tur(N, lam, hat_lam):
    N = _require_int("N", N)
    hl = _finite("hat_lam", hat_lam)
    if is_infinite(lam):
        return INF
    return ((N - 1) * lam + hl + N - 2) / (1 - hl)


@_register("ogerman_lo", ("N", "hat_w"), "lower-bound",
           "hat_lambda_N from hat_w_N, lower side", "German")
@_domain(lambda N, hat_w: None if _require_int("N", N) >= 2 else "needs N >= 2")
def _ogerman_lo(N, hat_w):
    N = _require_int("N", N)
    hw = _finite("hat_w", hat_w)
    return (hw - 1) / ((N - 1) * hw)


@_register("ogerman_hi", ("N", "hat_w"), "upper-bound",
           "hat_lambda_N from hat_w_N, upper side", "German")
def _ogerman_hi(N, hat_w):
    N = _require_int("N", N)
    hw = _finite("hat_w", hat_w)
    return (hw - N + 1) / hw


# ---------------------------------------------------------------------------
# Going-up bounds for the simultaneous exponents
# ---------------------------------------------------------------------------

@_register("herz", ("n", "k", "lam"), "lower-bound",
           "lambda_{nk} from lambda_k across a multiplied index", "Bugeaud")
def _herz(n, k, lam):
    n = _require_int("n", n)
    if is_infinite(lam):
        return INF
    return (lam - n + 1) / Fraction(n)


@_register("jippy", ("n", "k", "lam"), "lower-bound",
           "lambda_k from lambda_n alone", "Badziahin-Bugeaud")
@_domain(lambda n, k, lam: None if k >= n >= 1 else "needs k >= n >= 1")
def _jippy(n, k, lam):
    n, k = _require_int("n", n), _require_int("k", k)
    if is_infinite(lam):
        return INF
    return (n * lam + n - k) / Fraction(k)


@_register("folgerunge0", ("n", "k", "lam", "hat_lam"), "lower-bound",
           "lambda_k from (lambda_n, hat_lambda_n); collapses to jippy at "
           "hat_lambda_n = 1/n")
@_domain(lambda n, k, lam, hat_lam: None if k >= n >= 1 else "needs k >= n >= 1")
def _folgerunge0(n, k, lam, hat_lam):
    n, k = _require_int("n", n), _require_int("k", k)
    hl = _finite("hat_lam", hat_lam)
    den = (n - k) * hl + k - 1
    if den == 0:
        raise ZeroDivisionError
    if is_infinite(lam):
        return INF if n >= 2 else -Fraction(1)
    return ((n - 1) * lam + (k - n) * hl + n - k) / den


@_register("wanndenn", ("n", "k", "lam", "hat_lam"), "lower-bound",
           "lambda_k from (lambda_n, hat_lambda_n); alternative that can beat "
           "folgerunge0")
@_domain(lambda n, k, lam, hat_lam: None if k >= n >= 1 else "needs k >= n >= 1")
def _wanndenn(n, k, lam, hat_lam):
    n, k = _require_int("n", n), _require_int("k", k)
    hl = _finite("hat_lam", hat_lam)
    if is_infinite(lam):
        return Fraction(1) if n >= 2 else -Fraction(1)
    den = (n - 1) * lam - (k - 1) * hl + n + k - 2
    if den == 0:
        raise ZeroDivisionError
    return ((n - 1) * lam + (k - 1) * hl + n - k) / den


@_register("hirsch_variant", ("n", "k", "lam"), "lower-bound",
           "wanndenn specialized at the Dirichlet floor; never interesting")
def _hirsch_variant(n, k, lam):
    n, k = _require_int("n", n), _require_int("k", k)
    if is_infinite(lam):
        return Fraction(1)
    return (n * lam + n - k + 1) / (n * lam + k + n - 1)


@_register("rlsc", ("n",), "upper-bound",
           "proven ceiling for hat_lambda_n (strict for even n; sharper at n=3)",
           "Roy; Laurent")
def _rlsc(n):
    n = _require_int("n", n)
    return Fraction(4246, 10000) if n == 3 else Fraction(2, n + 1)


@_register("jarnik_mam", ("hat_lam",), "lower-bound",
           "lambda_2 from hat_lambda_2", "Jarnik")
@_domain(lambda hat_lam: None if compare_values(hat_lam, 1) < 0 else "needs hat_lam < 1")
def _jarnik_mam(hat_lam):
    hl = _finite("hat_lam", hat_lam)
    return hl * hl / (1 - hl)


@_register("lov", ("hat_lam",), "lower-bound",
           "lambda_3 from hat_lambda_2 alone")
def _lov(hat_lam):
    h = _finite("hat_lam", hat_lam)
    return (-h * h + 3 * h - 1) / (3 * h * h - 5 * h + 3)


@_register("lov2", ("hat_lam",), "lower-bound",
           "lambda_4 from hat_lambda_2 alone")
def _lov2(hat_lam):
    h = _finite("hat_lam", hat_lam)
    return (-2 * h * h + 5 * h - 2) / (4 * h * h - 7 * h + 4)


@_register("lov_threshold", (), "constant",
           "hat_lambda_2 above this makes lov exceed 1/3")
def _lov_threshold():
    return (7 - sqrt_exact(13)) / 6


@_register("lov2_threshold", (), "constant",
           "hat_lambda_2 above this makes lov2 exceed 1/4")
def _lov2_threshold():
    return (9 - sqrt_exact(17)) / 8


# ---------------------------------------------------------------------------
# Mixed bounds: lambda_k from linear-form exponents at index n
# ---------------------------------------------------------------------------

@_register("bbs2", ("n", "k", "w"), "lower-bound",
           "lambda_k from w_n; exceeds 1/k iff w_n > k",
           "Badziahin-Bugeaud")
@_domain(lambda n, k, w: None if k >= n >= 1 else "needs k >= n >= 1")
def _bbs2(n, k, w):
    n, k = _require_int("n", n), _require_int("k", k)
    return _ratio_with_inf(Fraction(1), Fraction(n - k),
                           Fraction(n - 1), Fraction(k), w)


@_register("steuern", ("n", "k", "w", "hat_w"), "lower-bound",
           "lambda_k from (w_n, hat_w_n)")
@_domain(lambda n, k, w, hat_w: None if k >= n >= 2 else "needs k >= n >= 2")
def _steuern(n, k, w, hat_w):
    n, k = _require_int("n", n), _require_int("k", k)
    hw = _finite("hat_w", hat_w)
    return _ratio_with_inf(hw - 1, (n - k) * hw,
                           (n - 2) * hw + 1, (k - 1) * hw, w)


@_register("bl_this", ("k", "w", "hat_w"), "lower-bound",
           "lambda_k from (w_k, hat_w_k); the equal-dimension case",
           "Bugeaud-Laurent")
@_domain(lambda k, w, hat_w: None if k >= 2 else "needs k >= 2")
def _bl_this(k, w, hat_w):
    k = _require_int("k", k)
    hw = _finite("hat_w", hat_w)
    return _ratio_with_inf(hw - 1, Fraction(0),
                           (k - 2) * hw + 1, (k - 1) * hw, w)


@_register("ason", ("n", "k", "w"), "threshold",
           "steuern beats bbs2 iff hat_w_n exceeds this")
def _ason(n, k, w):
    n, k = _require_int("n", n), _require_int("k", k)
    if is_infinite(w):
        return Fraction(n)
    den = w - k + n
    if den == 0:
        raise ZeroDivisionError
    return n * w / den


@_register("bush", ("n", "w"), "upper-bound",
           "ceiling for hat_w_n when w_n strictly increased at step n")
def _bush(n, w):
    n = _require_int("n", n)
    if is_infinite(w):
        return Fraction(n)
    den = w - n + 1
    if den == 0:
        raise ZeroDivisionError
    return n * w / den


@_register("tarda", ("n", "k", "w", "hat_w"), "lower-bound",
           "lambda_k from (w_n, hat_w_n) under the strict-growth hypothesis",
           flags=("assu",))
@_domain(lambda n, k, w, hat_w, assu=False:
         None if (2 <= n <= k <= 2 * n - 2 and assu)
         else ("needs 2 <= n <= k <= 2n-2" if not 2 <= n <= k <= 2 * n - 2
               else "needs the strict-growth flag assu=True"))
def _tarda(n, k, w, hat_w, assu=False):
    return _tarda_formula(n, k, w, hat_w)


def _tarda_formula(n, k, w, hat_w):
    n, k = _require_int("n", n), _require_int("k", k)
    hw = _finite("hat_w", hat_w)
    return _ratio_with_inf(hw + n - k - 1, (n - k) * hw,
                           (2 * n - k - 2) * hw + k - n + 1, (n - 1) * hw, w)


@_register("jjj", ("n", "k", "hat_w"), "lower-bound",
           "lambda_k from hat_w_n alone; exceeds 1/k iff hat_w_n > k")
@_domain(lambda n, k, hat_w: None if 2 <= n <= k <= 2 * n - 2
         else "needs 2 <= n <= k <= 2n-2")
def _jjj(n, k, hat_w):
    n, k = _require_int("n", n), _require_int("k", k)
    hw = _finite("hat_w", hat_w)
    den = (2 * n - k - 2) * hw + k
    if den == 0:
        raise ZeroDivisionError
    return (hw + 2 * n - 2 * k - 1) / den


@_register("AA1", ("n", "k", "w", "hat_w"), "lower-bound",
           "sharper form of jjj for k <= 2n-3; min of tarda's formula and a "
           "shifted variant")
@_domain(lambda n, k, w, hat_w: None if 2 <= n <= k <= 2 * n - 3
         else "needs 2 <= n <= k <= 2n-3")
def _aa1(n, k, w, hat_w):
    n, k = _require_int("n", n), _require_int("k", k)
    hw = _finite("hat_w", hat_w)
    theta = _tarda_formula(n, k, w, hat_w)
    den = (2 * n - k - 3) * hw + k
    if den == 0:
        raise ZeroDivisionError
    other = (hw + 2 * n - 2 * k - 2) / den
    return theta if compare_values(theta, other) <= 0 else other


@_register("njor", ("n",), "upper-bound",
           "hat_w_n <= 2n-1", "Davenport-Schmidt")
def _njor(n):
    return Fraction(2 * _require_int("n", n) - 1)


@_register("jhr_identity", ("hat_lam",), "identity",
           "hat_w_2 = 1/(1 - hat_lambda_2)", "Jarnik")
@_domain(lambda hat_lam: None if compare_values(hat_lam, 1) < 0 else "needs hat_lam < 1")
def _jhr_identity(hat_lam):
    return 1 / (1 - _finite("hat_lam", hat_lam))


@_register("jhr_lower", ("hat_w",), "lower-bound",
           "w_2 >= hat_w_2^2 - hat_w_2", "Jarnik")
def _jhr_lower(hat_w):
    hw = _finite("hat_w", hat_w)
    return hw * hw - hw


@_register("rhside", ("n", "k", "hat_w"), "threshold",
           "jjj beats bbs2 iff w_n is below this")
@_domain(lambda n, k, hat_w: None if compare_values(hat_w, 2 * _require_int("n", n) - 1) < 0
         else "needs hat_w < 2n-1")
def _rhside(n, k, hat_w):
    n, k = _require_int("n", n), _require_int("k", k)
    hw = _finite("hat_w", hat_w)
    return ((2 * n - k) * hw - k) / (2 * n - 1 - hw)


@_register("bdbd", ("n", "k", "hat_w"), "threshold",
           "jjj beats steuern iff w_n is below this")
@_domain(lambda n, k, hat_w: None if k > n else "needs k > n")
def _bdbd(n, k, hat_w):
    n, k = _require_int("n", n), _require_int("k", k)
    hw = _finite("hat_w", hat_w)
    num = (3 * k * n - k * k - k - 2 * n * n + 2 * n - 1) * hw \
        + k * n - k * k + k - 2 * n + 1
    den = (n - k) * hw * hw + (3 * n - 2 * k - 1 - 2 * n * n + 2 * k * n) * hw \
        + k + 1 - 2 * n
    if den == 0:
        raise ZeroDivisionError
    # the displayed inequality bounds w_n/hat_w_n; scale to a bound on w_n
    return hw * num / den


@_register("k2n2_affine", ("n", "hat_w"), "lower-bound",
           "jjj at k = 2n-2: affine in hat_w_n")
@_domain(lambda n, hat_w: None if _require_int("n", n) >= 2 else "needs n >= 2")
def _k2n2_affine(n, hat_w):
    n = _require_int("n", n)
    hw = _finite("hat_w", hat_w)
    return (hw - 2 * n + 3) / Fraction(2 * n - 2)


@_register("asymptotic", ("wbar_hat",), "lower-bound",
           "limsup n*lambda_n from limsup hat_w_n/n; increasing bijection of "
           "[1,2] onto itself")
@_domain(lambda wbar_hat: None if (compare_values(wbar_hat, 1) >= 0
                                   and compare_values(wbar_hat, 2) <= 0)
         else "needs 1 <= wbar_hat <= 2")
def _asymptotic(wbar_hat):
    wb = _finite("wbar_hat", wbar_hat)
    t = sqrt_exact(2 - wb) if isinstance(wb, Fraction) else None
    if t is None:
        raise BoundsError("wbar_hat must be rational for the exact square root")
    # (2 - t)(wbar + 2t - 2)/(wbar*t) simplifies to (2 - t)^2/wbar, which is
    # continuous up to wbar = 2
    num = (2 - t) * (2 - t)
    return num / wb


# ---------------------------------------------------------------------------
# Dimension formulas
# ---------------------------------------------------------------------------

@_register("jarn_dim", ("N", "lam"), "dimension-formula",
           "Hausdorff dimension of the lambda_N superlevel set in R^N", "Jarnik")
@_domain(lambda N, lam: None if is_infinite(lam)
         or compare_values(lam, Fraction(1, _require_int("N", N))) >= 0
         else "needs lam >= 1/N")
def _jarn_dim(N, lam):
    N = _require_int("N", N)
    if is_infinite(lam):
        return Fraction(0)
    return (N + 1) / (lam + 1)


@_register("currkn2", ("beta",), "dimension-formula",
           "asymptotic ceiling 1/beta for the normalized w_n superlevel set",
           "Bernik")
@_domain(lambda beta: None if (compare_values(beta, 1) >= 0
                               and compare_values(beta, 2) <= 0)
         else "needs 1 <= beta <= 2")
def _currkn2(beta):
    return 1 / _finite("beta", beta)


@_register("currn", ("k", "lam"), "dimension-formula",
           "conjectured dimension of the lambda_k superlevel set on the line",
           "Beresnevich")
@_domain(lambda k, lam: None if (compare_values(lam, Fraction(1, _require_int("k", k))) >= 0
                                 and compare_values(lam, Fraction(3, 2 * _require_int("k", k) - 1)) <= 0)
         else "needs 1/k <= lam <= 3/(2k-1)")
def _currn(k, lam):
    k = _require_int("k", k)
    lam = _finite("lam", lam)
    return (k + 1) / (lam + 1) - (k - 1)


@_register("bbschronk", ("k", "lam"), "dimension-formula",
           "lower bound for the lambda_k superlevel-set dimension on the line",
           "Badziahin-Bugeaud")
@_domain(lambda k, lam: None if compare_values(lam, -1) > 0 else "needs lam > -1")
def _bbschronk(k, lam):
    k = _require_int("k", k)
    lam = _finite("lam", lam)
    best = None
    for N in range(1, k + 1):
        v = (N + 1) * (1 - (N - 1) * lam) / ((k - N + 1) * (1 + lam))
        best = v if best is None else exact_max(best, v)
    return best


@_register("chrom", ("n", "k", "lam"), "dimension-formula",
           "dimension of the going-up image level set in dimension k")
@_domain(lambda n, k, lam: None if k >= n >= 1 else "needs k >= n >= 1")
def _chrom(n, k, lam):
    n, k = _require_int("n", n), _require_int("k", k)
    lam = _finite("lam", lam)
    image = (n * lam + n - 1) / (n * (k - 1) * (lam + 1) + 1)
    return (k + 1) / (image + 1)


@_register("chrom_gap", ("n", "k", "lam"), "dimension-formula",
           "excess of chrom over the product lower bound; nonnegative iff "
           "lam >= (k-n+1)/n")
@_domain(lambda n, k, lam: None if k >= n >= 1 else "needs k >= n >= 1")
def _chrom_gap(n, k, lam):
    n, k = _require_int("n", n), _require_int("k", k)
    lam = _finite("lam", lam)
    return (lam * n - k + n - 1) * (k * n - 1) / ((1 + lam) * n * k)


# ---------------------------------------------------------------------------
# General Q-linearly independent vectors
# ---------------------------------------------------------------------------

@_register("bo1", ("n", "k", "lam", "hat_lam"), "lower-bound",
           "lambda_k from (lambda_n, hat_lambda_n) for general independent "
           "coordinates")
@_domain(lambda n, k, lam, hat_lam: None if k >= n >= 1 else "needs k >= n >= 1")
def _bo1(n, k, lam, hat_lam):
    n, k = _require_int("n", n), _require_int("k", k)
    hl = _finite("hat_lam", hat_lam)
    return _ratio_with_inf(Fraction(n - 1), hl + n - 2,
                           Fraction((k - 1) * (n - 1)),
                           -hl + k * n - n - k + 2, lam)


@_register("bo2_AB", ("n", "k", "lam", "hat_lam"), "lower-bound",
           "composition bound via intermediate uniform linear-form data")
@_domain(lambda n, k, lam, hat_lam:
         None if (k >= n >= 2 and compare_values(hat_lam, 1) < 0)
         else "needs k >= n >= 2 and hat_lam < 1")
def _bo2_ab(n, k, lam, hat_lam):
    n, k = _require_int("n", n), _require_int("k", k)
    hl = _finite("hat_lam", hat_lam)
    den_a = n * k - k - 2 * n + 3 - hl
    if den_a == 0:
        raise ZeroDivisionError
    A = (n - 1) * (k - 1) ** 2 / den_a
    if is_infinite(lam):
        return (A - 1) / ((k - 2) * A + 1)
    B = ((n - 1) * lam + hl + n - 2) / (1 - hl)
    den = ((k - 2) * A + 1) * B + (k - 1) * A
    if den == 0:
        raise ZeroDivisionError
    return (A - 1) * B / den


@_register("schwachmat", ("n", "k", "lam"), "lower-bound",
           "lambda_k > 1/k for general vectors when lambda_n > (k-n+1)/n")
@_domain(lambda n, k, lam: None if (k >= n >= 1 and (is_infinite(lam) or
         compare_values(lam, Fraction(_require_int("k", k) - _require_int("n", n) + 1,
                                      _require_int("n", n))) > 0))
         else "needs k >= n >= 1 and lam > (k-n+1)/n")
def _schwachmat(n, k, lam):
    n, k = _require_int("n", n), _require_int("k", k)
    return _ratio_with_inf(Fraction(n), Fraction(n - 1),
                           Fraction(n * (k - 1)), Fraction(n * (k - 1) + 1), lam)


@_register("schwachmaten", ("n", "k", "hat_lam"), "lower-bound",
           "hat_lambda_k > 1/k for general vectors when hat_lambda_n > (k-n+1)/n")
@_domain(lambda n, k, hat_lam:
         None if (_require_int("k", k) >= _require_int("n", n) >= 2
                  and _require_int("k", k) >= 2
                  and compare_values(hat_lam,
                                     Fraction(_require_int("k", k) - _require_int("n", n) + 1,
                                              _require_int("n", n))) > 0)
         else "needs k >= n >= 2 and hat_lam > (k-n+1)/n")
def _schwachmaten(n, k, hat_lam):
    n, k = _require_int("n", n), _require_int("k", k)
    hl = _finite("hat_lam", hat_lam)
    return (hl + n - 2) / Fraction((n - 1) * (k - 1))


@_register("consid", ("n", "k", "w", "hat_w"), "lower-bound",
           "lambda_k from index-n linear-form exponents, general vectors")
@_domain(lambda n, k, w, hat_w: None if k >= n >= 1 and k >= 2
         else "needs k >= n >= 1, k >= 2")
def _consid(n, k, w, hat_w):
    k = _require_int("k", k)
    hw = _finite("hat_w", hat_w)
    return _ratio_with_inf(hw - 1, Fraction(0),
                           (k - 2) * hw + 1, (k - 1) * hw, w)


@_register("nonedtor", ("N", "lam", "hat_lam"), "condition",
           "admissibility sum hat^1/lam^0 + ... + hat^N/lam^(N-1); must be <= 1",
           "Marnat-Moshchevitin")
def _nonedtor(N, lam, hat_lam):
    N = _require_int("N", N)
    hl = _finite("hat_lam", hat_lam)
    if is_infinite(lam):
        return hl  # all higher terms vanish in the limit
    if lam == 0:
        raise ZeroDivisionError
    total = Fraction(0)
    term = hl
    for _ in range(N):
        total = total + term
        term = term * hl / lam
    return total


@_register("fromm", ("m", "n"), "upper-bound",
           "min(w_m, hat_w_n) <= m + n - 1")
def _fromm(m, n):
    return Fraction(_require_int("m", m) + _require_int("n", n) - 1)


# ---------------------------------------------------------------------------
# Case-analysis thresholds for comparing the going-up bounds
# ---------------------------------------------------------------------------

@_register("getss", ("n", "lam"), "threshold",
           "at k = 2n-1, wanndenn is nontrivial iff hat_lam exceeds this")
def _getss(n, lam):
    n = _require_int("n", n)
    lam = _finite("lam", lam)
    return (n + 1 + (1 - n) * lam) / Fraction(2 * n)


@_register("cond_A1", ("n", "k", "lam"), "threshold",
           "for k < 2n-1, wanndenn beats folgerunge0 iff hat_lam exceeds this")
@_domain(lambda n, k, lam: None if _require_int("k", k) != 2 * _require_int("n", n) - 1
         else "undefined at k = 2n-1")
def _cond_a1(n, k, lam):
    n, k = _require_int("n", n), _require_int("k", k)
    lam = _finite("lam", lam)
    return ((1 - n) * lam + k - n) / Fraction(k - 2 * n + 1)


@_register("cond_A2", ("n", "k", "lam"), "threshold",
           "wanndenn is nontrivial iff hat_lam exceeds this")
def _cond_a2(n, k, lam):
    n, k = _require_int("n", n), _require_int("k", k)
    lam = _finite("lam", lam)
    return ((1 - n) * lam + k - n + 2) / Fraction(k + 1)


@_register("cond_B1", ("n", "k", "lam"), "threshold",
           "for k > 2n-1, wanndenn beats folgerunge0 iff hat_lam is below this")
@_domain(lambda n, k, lam: None if _require_int("k", k) != 2 * _require_int("n", n) - 1
         else "undefined at k = 2n-1")
def _cond_b1(n, k, lam):
    return _cond_a1(n, k, lam)


@_register("satt", ("n", "k", "lam"), "condition",
           "necessary conditions for wanndenn to improve folgerunge0 beyond "
           "k = 2n-1: k = 2n, n != 3, lam in a unit window below 1")
def _satt(n, k, lam):
    n, k = _require_int("n", n), _require_int("k", k)
    lam = _finite("lam", lam)
    if k != 2 * n or n == 3 or n < 2:
        return False
    low = 1 - Fraction(n + 2, n * n - n)
    return compare_values(lam, low) > 0 and compare_values(lam, 1) <= 0


# ---------------------------------------------------------------------------
# Evaluation API
# ---------------------------------------------------------------------------

def available_ids() -> list[str]:
    return sorted(REGISTRY)


def eval_bound(bound_id: str, **inputs) -> BoundEvaluation:
    """Evaluate one registry entry; out-of-domain inputs yield applicable=False."""
    spec = REGISTRY.get(bound_id)
    if spec is None:
        raise BoundsError(f"unknown bound id {bound_id!r}; known ids: "
                          + ", ".join(available_ids()))
    missing = [p for p in spec.params if p not in inputs]
    if missing:
        raise BoundsError(f"{bound_id}: missing parameters {missing}")
    allowed = set(spec.params) | set(spec.flags)
    extra = [p for p in inputs if p not in allowed]
    if extra:
        raise BoundsError(f"{bound_id}: unexpected parameters {extra}")
    reason = spec.domain(**inputs)
    if reason is not None:
        return BoundEvaluation(id=bound_id, inputs=inputs, value=None,
                               applicable=False, reason=reason)
    try:
        value = spec.func(**inputs)
    except ZeroDivisionError:
        return BoundEvaluation(id=bound_id, inputs=inputs, value=None,
                               applicable=False, reason="degenerate denominator")
    ev = BoundEvaluation(id=bound_id, inputs=inputs, value=value, applicable=True)
    if spec.kind == "lower-bound" and "k" in inputs and not isinstance(value, bool):
        k = inputs["k"]
        if isinstance(k, int) or (isinstance(k, Fraction) and k.denominator == 1):
            ev.notes["exceeds_trivial"] = compare_values(value, Fraction(1, int(k))) > 0
    return ev


# ---------------------------------------------------------------------------
# Comparison engine
# ---------------------------------------------------------------------------

_ENGINE_BOUNDS = ("jippy", "folgerunge0", "wanndenn", "bbs2", "steuern",
                  "tarda", "jjj", "AA1")


@dataclass
class CaseReport:
    n: int
    k: int
    evaluations: dict[str, BoundEvaluation]
    missing: dict[str, list[str]]
    maximal: list[str]
    conditions: dict[str, object]

    def best_value(self):
        if not self.maximal:
            return None
        return self.evaluations[self.maximal[0]].value


def compare_engine(n: int, k: int, inputs: dict, assu: bool = False) -> CaseReport:
    """Evaluate every applicable lower bound for lambda_k and rank them.

    inputs may provide lam, hat_lam, w, hat_w (exact numbers).  Conditions
    report which named comparison cases hold for these inputs.
    """
    evaluations: dict[str, BoundEvaluation] = {}
    missing: dict[str, list[str]] = {}
    for bid in _ENGINE_BOUNDS:
        spec = REGISTRY[bid]
        kw = {}
        lack = []
        for p in spec.params:
            if p == "n":
                kw[p] = n
            elif p == "k":
                kw[p] = k
            elif p in inputs and inputs[p] is not None:
                kw[p] = inputs[p]
            else:
                lack.append(p)
        if lack:
            missing[bid] = lack
            continue
        if "assu" in spec.flags:
            kw["assu"] = assu
        evaluations[bid] = eval_bound(bid, **kw)

    applicable = {bid: ev for bid, ev in evaluations.items()
                  if ev.applicable and not isinstance(ev.value, bool)}
    maximal: list[str] = []
    if applicable:
        best = None
        for bid, ev in applicable.items():
            if best is None or compare_values(ev.value, best) > 0:
                best = ev.value
        maximal = sorted(bid for bid, ev in applicable.items()
                         if compare_values(ev.value, best) == 0)

    conditions: dict[str, object] = {}
    lam, hat_lam = inputs.get("lam"), inputs.get("hat_lam")
    w, hat_w = inputs.get("w"), inputs.get("hat_w")
    if lam is not None and hat_lam is not None and not is_infinite(lam):
        g = eval_bound("getss", n=n, lam=lam)
        conditions["getss"] = compare_values(hat_lam, g.value) > 0
        a2 = eval_bound("cond_A2", n=n, k=k, lam=lam)
        conditions["A2"] = compare_values(hat_lam, a2.value) > 0
        a1 = eval_bound("cond_A1", n=n, k=k, lam=lam)
        if a1.applicable:
            conditions["A1"] = compare_values(hat_lam, a1.value) > 0
            conditions["B1"] = compare_values(hat_lam, a1.value) < 0
        conditions["satt"] = eval_bound("satt", n=n, k=k, lam=lam).value
    if w is not None and hat_w is not None:
        a = eval_bound("ason", n=n, k=k, w=w)
        if a.applicable:
            conditions["ason"] = compare_values(hat_w, a.value) > 0
    if w is not None and hat_w is not None and not is_infinite(w):
        r = eval_bound("rhside", n=n, k=k, hat_w=hat_w)
        if r.applicable:
            conditions["rhside"] = compare_values(w, r.value) < 0
        b = eval_bound("bdbd", n=n, k=k, hat_w=hat_w)
        if b.applicable:
            conditions["bdbd"] = compare_values(w, b.value) < 0
    conditions["Z1_case2"] = (n >= 3 and n + 1 <= k <= 2 * n - 2)
    return CaseReport(n=n, k=k, evaluations=evaluations, missing=missing,
                      maximal=maximal, conditions=conditions)


# ---------------------------------------------------------------------------
# Admissible-sequence checker
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjectureVerdict:
    admissible: bool
    violation: Optional[str] = None

    def __str__(self):
        return "admissible prefix" if self.admissible else f"violation: {self.violation}"


def conjecture_hypotheses(lambdas: list, hat_lambdas: list) -> ConjectureVerdict:
    """Check a finite prefix (indexed from N=1) against the admissibility
    constraints: monotonicity, the uniform floor, the power-sum condition,
    and both going-up relations for every k >= n in range."""
    if not lambdas or not hat_lambdas or len(lambdas) != len(hat_lambdas):
        raise BoundsError("need equal-length nonempty prefixes")
    M = len(lambdas)

    def fail(msg):
        return ConjectureVerdict(admissible=False, violation=msg)

    for i in range(1, M):
        if compare_values(lambdas[i], lambdas[i - 1]) > 0:
            return fail(f"lambda not non-increasing at N={i + 1}")
        if compare_values(hat_lambdas[i], hat_lambdas[i - 1]) > 0:
            return fail(f"hat_lambda not non-increasing at N={i + 1}")
    for i, hl in enumerate(hat_lambdas, start=1):
        if is_infinite(hl):
            return fail(f"hat_lambda_{i} must be finite")
        if compare_values(hl, Fraction(1, i)) < 0:
            return fail(f"hat_lambda_{i} below the uniform floor 1/{i}")
    for i in range(1, M + 1):
        s = eval_bound("nonedtor", N=i, lam=lambdas[i - 1],
                       hat_lam=hat_lambdas[i - 1])
        if s.applicable and compare_values(s.value, 1) > 0:
            return fail(f"power-sum condition fails at N={i}: "
                        f"sum = {format_exact(s.value)} > 1")
    for n in range(1, M + 1):
        for k in range(n, M + 1):
            lo = _ratio_with_inf(Fraction(n), Fraction(n - 1),
                                 Fraction(n * (k - 1)), Fraction(n * (k - 1) + 1),
                                 lambdas[n - 1])
            if compare_values(lambdas[k - 1], lo) < 0:
                return fail(f"ordinary going-up fails for n={n}, k={k}")
            if n >= 2 and k >= 2:
                lo_hat = (hat_lambdas[n - 1] + n - 2) / Fraction((n - 1) * (k - 1))
                if compare_values(hat_lambdas[k - 1], lo_hat) < 0:
                    return fail(f"uniform going-up fails for n={n}, k={k}")
    return ConjectureVerdict(admissible=True)
