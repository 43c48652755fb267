"""Catalog of universal eigenvalue inequalities for the Dirichlet Laplacian.

Every evaluator is a pure function of the dimension and the spectral data it
needs (lambda_1, volume, ...). Upper/lower semantics are recorded on the
variant enums so that the audit engine can orient each comparison.
"""

import enum
import functools
import math
from dataclasses import dataclass

from . import specfun
from .exceptions import DimensionError, PreconditionError

__all__ = [
    "ConstantsBundle",
    "GapBound",
    "ReciprocalBound",
    "CountBound",
    "Expansion",
    "constants",
    "gap_bound",
    "gap_sum_bound",
    "reciprocal_gap_lower",
    "counting_bound",
    "riesz_bound_berezin",
    "weyl_term",
    "lemma_bound_family",
    "lemma_radius_min",
    "lemma_radius_new1",
    "asymptotic_coefficient",
    "asymptotic_terms",
    "exact_coefficient",
    "BOUND_IDS",
    "evaluate",
]


def check_dim(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise DimensionError(f"dimension must be an integer >= 2, got {n!r}")
    return int(n)


def _check_positive(name, value):
    value = float(value)
    if not value > 0.0 or math.isinf(value):
        raise PreconditionError(f"{name} must be a finite positive number, got {value!r}")
    return value


def _check_k(k):
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise PreconditionError(f"k must be a positive integer, got {k!r}")
    return int(k)


@dataclass(frozen=True)
class ConstantsBundle:
    """Dimension-dependent constants shared by all bounds.

    Attributes
    ----------
    n : int
        Spatial dimension.
    C_n : float
        Volume of the unit n-ball.
    L_cl : float
        Semiclassical constant C_n / (2 pi)^n.
    j_first : float
        First zero j_{n/2-1,1}.
    J_at_zero : float
        J_{n/2}(j_{n/2-1,1}) (positive).
    H : float
        2n / (j_first^2 J_at_zero^2).
    C_tilde : float
        H * C_n.
    chiti_coeff : float
        Chiti's constant: ess sup |u_1| <= chiti_coeff * lambda_1^{n/4}.
    ab_ratio : float
        j_{n/2,1}^2 / j_{n/2-1,1}^2, i.e. lambda_2/lambda_1 of a ball.
    """

    n: int
    C_n: float
    L_cl: float
    j_first: float
    J_at_zero: float
    H: float
    C_tilde: float
    chiti_coeff: float
    ab_ratio: float

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.__dataclass_fields__}


@functools.lru_cache(maxsize=None)
def _constants(n):
    nu = 0.5 * n - 1.0
    j = specfun.bessel_zero(nu, 1)
    jj = specfun.bessel_j(nu + 1.0, j)
    H = 2.0 * n / (j * j * jj * jj)
    C_n = specfun.unit_ball_volume(n)
    L_cl = specfun.semiclassical_constant(n) if n <= 300 else math.exp(
        math.log(C_n) - n * math.log(2.0 * math.pi)
    )
    log_chiti = (
        -0.25 * n * math.log(math.pi)
        + (1.0 - 0.5 * n) * math.log(2.0)
        - 0.5 * specfun.log_gamma(0.5 * n)
        - math.log(j)
        - math.log(jj)
    )
    j_next = specfun.bessel_zero(nu + 1.0, 1)
    return ConstantsBundle(
        n=n,
        C_n=C_n,
        L_cl=L_cl,
        j_first=j,
        J_at_zero=jj,
        H=H,
        C_tilde=H * C_n,
        chiti_coeff=math.exp(log_chiti),
        ab_ratio=(j_next / j) ** 2,
    )


def constants(n: int) -> ConstantsBundle:
    """Constants bundle for dimension ``n`` (cached)."""
    return _constants(check_dim(n))


class GapBound(enum.Enum):
    """Upper bounds built from lambda_1 alone.

    The ``target`` attribute says which spectral quantity the value bounds:
    ``"gap"`` is lambda_{k+1} - lambda_1, ``"gap_sum"`` is
    sum_{j<=k} (lambda_j - lambda_1), ``"eigenvalue_next"`` is lambda_{k+1},
    ``"eigenvalue"`` is lambda_k and ``"gap_sum_n"`` is
    sum_{j=1}^{n} (lambda_{j+1} - lambda_1).
    """

    NEW1 = ("NEW1", "gap")
    NEW2_SUM = ("NEW2_SUM", "gap_sum")
    NEW4 = ("NEW4", "eigenvalue_next")
    NOT_PPW = ("NOT_PPW", "gap")
    NOT_PPW2 = ("NOT_PPW2", "gap")
    PPW_RATIO = ("PPW_RATIO", "eigenvalue")
    AB94_RATIO = ("AB94_RATIO", "eigenvalue")
    SUM_K_EQ_N = ("SUM_K_EQ_N", "gap_sum_n")

    def __init__(self, ident, target):
        self.ident = ident
        self.target = target


class ReciprocalBound(enum.Enum):
    """Lower bounds on sums of reciprocal gaps."""

    NEW3 = "NEW3"
    ABCHITI = "ABCHITI"


class CountBound(enum.Enum):
    """Counting-function and Weyl-term bounds.

    ``direction`` is ``"lower"`` or ``"upper"``; ``inputs`` lists what the
    evaluator consumes (``lam``/``lambda1``/``lambda2``/``volume``/``k``).
    ``strict`` marks bounds that hold with strict inequality.
    """

    COUNT1_LOWER = ("COUNT1_LOWER", "lower", ("lam", "lambda1"), True)
    COUNT2_LOWER = ("COUNT2_LOWER", "lower", ("lam", "lambda1"), True)
    SAFAROV_LOWER = ("SAFAROV_LOWER", "lower", ("lam", "lambda1"), False)
    AB_COUNT_LOWER = ("AB_COUNT_LOWER", "lower", ("lam", "lambda1"), False)
    AB_COUNT2_LOWER = ("AB_COUNT2_LOWER", "lower", ("lam", "lambda2"), False)
    LIYAU_UPPER = ("LIYAU_UPPER", "upper", ("lam", "volume"), False)
    POLYA_WEYL_TERM = ("POLYA_WEYL_TERM", "upper", ("lam", "volume"), False)
    BEREZIN_RIESZ_UPPER = ("BEREZIN_RIESZ_UPPER", "upper", ("lam", "volume"), False)
    URAKAWA_LOWER_TERM = ("URAKAWA_LOWER_TERM", "lower", ("k", "volume"), False)
    KROGER_SUM = ("KROGER_SUM", "upper", ("k", "volume"), False)
    KROGER_SINGLE = ("KROGER_SINGLE", "upper", ("k", "volume"), False)
    LIYAU_SUM_LOWER = ("LIYAU_SUM_LOWER", "lower", ("k", "volume"), False)
    LIYAU_SINGLE_LOWER = ("LIYAU_SINGLE_LOWER", "lower", ("k", "volume"), False)

    def __init__(self, ident, direction, inputs, strict):
        self.ident = ident
        self.direction = direction
        self.inputs = inputs
        self.strict = strict


def gap_bound(variant: GapBound, n: int, k: int, lambda1: float) -> float:
    """Evaluate a lambda_1-based upper bound (see :class:`GapBound`).

    ``SUM_K_EQ_N`` ignores ``k`` (it is the k = n case by construction).
    Every variant is linear in ``lambda1``.
    """
    if not isinstance(variant, GapBound):
        variant = GapBound[str(variant).upper()]
    n = check_dim(n)
    lambda1 = _check_positive("lambda1", lambda1)
    c = constants(n)
    a = 2.0 / n
    if variant is GapBound.SUM_K_EQ_N:
        return 4.0 * lambda1
    k = _check_k(k)
    if variant is GapBound.NEW1:
        return (1.0 + 0.5 * n) ** a * c.H ** a * lambda1 * k ** a
    if variant is GapBound.NEW2_SUM:
        return gap_sum_bound(n, k, lambda1)
    if variant is GapBound.NOT_PPW:
        return 2.0 ** (1.0 + a) * (n / (n + 2.0)) * c.H ** a * lambda1
    if variant is GapBound.NOT_PPW2:
        return (1.0 + 0.5 * n) ** a * c.H ** a * lambda1
    if variant is GapBound.NEW4:
        return (1.0 + 4.0 / n) * (1.0 + (n / (n + 2.0)) * c.H ** a * k ** a) * lambda1
    if variant is GapBound.PPW_RATIO:
        return (1.0 + 4.0 / n) ** (k - 1) * lambda1
    if variant is GapBound.AB94_RATIO:
        return c.ab_ratio ** _log2_floor(k) * lambda1
    raise PreconditionError(f"unhandled gap bound {variant!r}")


def _log2_floor(k):
    # integer part of log k / log 2, exact for integers
    return int(k).bit_length() - 1


def gap_sum_bound(n: int, k: int, lambda1: float) -> float:
    """Upper bound on sum_{j=1}^{k} (lambda_j - lambda_1)."""
    n = check_dim(n)
    k = _check_k(k)
    lambda1 = _check_positive("lambda1", lambda1)
    c = constants(n)
    return (n / (n + 2.0)) * c.H ** (2.0 / n) * lambda1 * k ** (1.0 + 2.0 / n)


def reciprocal_gap_lower(variant: ReciprocalBound, n: int, k: int | None, lambda1: float) -> float:
    """Lower bounds on sums of 1/(lambda_j - lambda_1).

    ``NEW3`` bounds sum_{j=2}^{k+1}; ``ABCHITI`` bounds sum_{j=2}^{n+1} and
    ignores ``k``.
    """
    if not isinstance(variant, ReciprocalBound):
        variant = ReciprocalBound[str(variant).upper()]
    n = check_dim(n)
    lambda1 = _check_positive("lambda1", lambda1)
    c = constants(n)
    if variant is ReciprocalBound.ABCHITI:
        return (2.0 * c.j_first ** 2 + n * (n - 4.0)) / (6.0 * lambda1)
    k = _check_k(k)
    return ((n + 2.0) / n) * c.H ** (-2.0 / n) / lambda1 * k * k / (k + 1.0) ** (1.0 + 2.0 / n)


def weyl_term(n: int, k: int, volume: float) -> float:
    """4 pi^2 k^{2/n} / (C_n |Omega|)^{2/n}, the Weyl asymptote of lambda_k."""
    n = check_dim(n)
    volume = _check_positive("volume", volume)
    k = _check_k(k)
    c = constants(n)
    return 4.0 * math.pi ** 2 * k ** (2.0 / n) / (c.C_n * volume) ** (2.0 / n)


def riesz_bound_berezin(n: int, lam: float, volume: float) -> float:
    """Berezin's upper bound on the Riesz mean int_0^lam N(mu) dmu."""
    n = check_dim(n)
    volume = _check_positive("volume", volume)
    lam = float(lam)
    if lam < 0:
        raise PreconditionError(f"lam must be >= 0, got {lam!r}")
    c = constants(n)
    return (2.0 / (n + 2.0)) * c.L_cl * lam ** (0.5 * n + 1.0) * volume


def counting_bound(
    variant: CountBound,
    n: int,
    lam: float | None = None,
    *,
    lambda1: float | None = None,
    lambda2: float | None = None,
    volume: float | None = None,
    k: int | None = None,
    packing_density: float = 1.0,
) -> float:
    """Evaluate a counting-function or volume-based bound.

    The inputs each variant needs are listed in ``variant.inputs``. Results
    are real numbers; comparing them with the integer N(lambda) is left to
    the caller.

    ``COUNT2_LOWER`` returns 0 below its threshold (1 + 4/n) lambda_1, where
    the statement is vacuous. ``AB_COUNT2_LOWER`` takes lambda_2 explicitly.
    The eigenvalue-indexed variants (Kroger, Li-Yau sum/single, Urakawa) take
    ``k`` instead of ``lam``.
    """
    if not isinstance(variant, CountBound):
        variant = CountBound[str(variant).upper()]
    n = check_dim(n)
    c = constants(n)
    half = 0.5 * n
    if "lam" in variant.inputs:
        if lam is None:
            raise PreconditionError(f"{variant.ident} requires lam")
        lam = float(lam)
        if lam < 0:
            raise PreconditionError(f"lam must be >= 0, got {lam!r}")
    if "volume" in variant.inputs:
        if volume is None:
            raise PreconditionError(f"{variant.ident} requires volume")
        volume = _check_positive("volume", volume)
    if "k" in variant.inputs:
        if k is None:
            raise PreconditionError(f"{variant.ident} requires k")
        k = _check_k(k)
    if "lambda1" in variant.inputs:
        if lambda1 is None:
            raise PreconditionError(f"{variant.ident} requires lambda1")
        lambda1 = _check_positive("lambda1", lambda1)
        if lam < lambda1:
            raise PreconditionError(f"{variant.ident} requires lam >= lambda1")

    if variant is CountBound.COUNT1_LOWER:
        return (2.0 / (n + 2.0)) / c.H * ((lam - lambda1) / lambda1) ** half
    if variant is CountBound.COUNT2_LOWER:
        excess = lam - (1.0 + 4.0 / n) * lambda1
        if excess <= 0.0:
            return 0.0
        return ((n + 2.0) / (n + 4.0)) ** half / c.H * (excess / lambda1) ** half
    if variant is CountBound.SAFAROV_LOWER:
        coef = (2.0 / (n + 2.0)) * math.exp(-1.0 / (4.0 * math.pi)) * c.L_cl
        return coef * ((lam - lambda1) / lambda1) ** half
    if variant is CountBound.AB_COUNT_LOWER:
        return 2.0 ** math.floor(math.log(lam / lambda1) / math.log(c.ab_ratio))
    if variant is CountBound.AB_COUNT2_LOWER:
        if lambda2 is None:
            raise PreconditionError("AB_COUNT2_LOWER requires lambda2")
        lambda2 = _check_positive("lambda2", lambda2)
        if lam < lambda2:
            raise PreconditionError("AB_COUNT2_LOWER requires lam >= lambda2")
        return 2.0 ** (1 + math.floor(math.log(lam / lambda2) / math.log(c.ab_ratio)))
    if variant is CountBound.LIYAU_UPPER:
        return ((n + 2.0) / n) ** half * c.L_cl * lam ** half * volume
    if variant is CountBound.POLYA_WEYL_TERM:
        return c.L_cl * lam ** half * volume
    if variant is CountBound.BEREZIN_RIESZ_UPPER:
        return riesz_bound_berezin(n, lam, volume)

    w = weyl_term(n, k, volume)
    if variant is CountBound.URAKAWA_LOWER_TERM:
        packing_density = float(packing_density)
        if not 0.0 < packing_density <= 1.0:
            raise PreconditionError(f"packing density must lie in (0, 1], got {packing_density!r}")
        return packing_density ** (2.0 / n) * w
    if variant is CountBound.KROGER_SINGLE:
        return (1.0 + half) ** (2.0 / n) * w
    if variant in (CountBound.KROGER_SUM, CountBound.LIYAU_SUM_LOWER):
        return (n / (n + 2.0)) * w * k
    if variant is CountBound.LIYAU_SINGLE_LOWER:
        return (n / (n + 2.0)) * w
    raise PreconditionError(f"unhandled counting bound {variant!r}")


def lemma_radius_min(n: int, k: int, lambda1: float) -> float:
    """Smallest admissible radius r_0(k) = H^{1/n} (1+k)^{1/n} sqrt(lambda_1)."""
    c = constants(n)
    return c.H ** (1.0 / n) * (1.0 + _check_k(k)) ** (1.0 / n) * math.sqrt(lambda1)


def lemma_radius_new1(n: int, k: int, lambda1: float) -> float:
    """Radius at which the family (with the sum dropped) gives the NEW1 bound."""
    c = constants(n)
    return (c.H * _check_k(k) * (1.0 + 0.5 * n)) ** (1.0 / n) * math.sqrt(lambda1)


def lemma_bound_family(n: int, k: int, r: float, lambda1: float, gap_sum: float) -> float:
    """One-parameter family of upper bounds on lambda_{k+1} - lambda_1.

    Parameters
    ----------
    n, k : int
        Dimension and index, ``k >= 1``.
    r : float
        Ball radius in frequency space; must satisfy ``r >= r_0(k)``.
    lambda1 : float
        First Dirichlet eigenvalue.
    gap_sum : float
        sum_{j=1}^{k} (lambda_j - lambda_1), supplied by the caller.
    """
    n = check_dim(n)
    k = _check_k(k)
    lambda1 = _check_positive("lambda1", lambda1)
    if gap_sum < 0:
        raise PreconditionError(f"gap_sum must be >= 0, got {gap_sum!r}")
    r0 = lemma_radius_min(n, k, lambda1)
    if r < r0 * (1.0 - 1e-12):
        raise PreconditionError(f"r = {r!r} is below r_0(k) = {r0!r}")
    c = constants(n)
    weight = c.C_tilde * lambda1 ** (0.5 * n)
    num = (n / (n + 2.0)) * c.C_n * r ** (n + 2) - weight * gap_sum
    den = c.C_n * r ** n - k * weight
    if den <= 0.0:
        raise PreconditionError("denominator of the lemma bound is not positive")
    return num / den


class Expansion(enum.Enum):
    """Large-n expansions of bound coefficients and their claimed remainder order."""

    ASYMP1 = ("ASYMP1", 2.0)
    NEW4_EXP = ("NEW4_EXP", 2.0)
    PPW_EXP = ("PPW_EXP", 8.0 / 3.0)
    AB_POWER = ("AB_POWER", 2.0)

    def __init__(self, ident, remainder_order):
        self.ident = ident
        self.remainder_order = remainder_order


def exact_coefficient(expansion: Expansion, n: int) -> float:
    """Exact value of the quantity that ``expansion`` approximates."""
    expansion = _as_expansion(expansion)
    c = constants(n)
    a = 2.0 / c.n
    if expansion is Expansion.ASYMP1:
        return (1.0 + 0.5 * c.n) ** a * c.H ** a
    if expansion is Expansion.NEW4_EXP:
        return (1.0 + 4.0 / c.n) * (c.n / (c.n + 2.0)) * c.H ** a
    if expansion is Expansion.PPW_EXP:
        return c.ab_ratio
    return math.log(c.ab_ratio) / math.log(2.0)


def asymptotic_terms(expansion: Expansion, n: int) -> list[float]:
    """Individual terms of the truncated large-n expansion, in order."""
    expansion = _as_expansion(expansion)
    n = check_dim(n)
    B0, B1, C1, C2 = specfun.B0, specfun.B1, specfun.C1, specfun.C2
    tail = 2.0 ** (8.0 / 3.0) * (B1 - C1) * n ** (-5.0 / 3.0)
    if expansion is Expansion.ASYMP1:
        return [1.0, 2.0 / (3.0 * n) * math.log(4.0 * n ** 4 / B0 ** 6), tail]
    if expansion is Expansion.NEW4_EXP:
        return [1.0, 2.0 / (3.0 * n) * (3.0 + math.log(32.0 * n / B0 ** 6)), tail]
    if expansion is Expansion.PPW_EXP:
        return [
            1.0,
            4.0 / n,
            -4.0 / 3.0 * C1 * 2.0 ** (5.0 / 3.0) * n ** (-5.0 / 3.0),
            12.0 / n ** 2,
            4.0 / 3.0 * (C1 * C1 - 2.0 * C2) * 2.0 ** (7.0 / 3.0) * n ** (-7.0 / 3.0),
        ]
    return [5.77078 / n, -6.10703 * C1 * n ** (-5.0 / 3.0)]


def asymptotic_coefficient(expansion: Expansion, n: int, terms: int | None = None) -> float:
    """Truncated expansion value keeping the first ``terms`` terms (default: all)."""
    parts = asymptotic_terms(expansion, n)
    if terms is not None:
        if terms < 1:
            raise PreconditionError("terms must be >= 1")
        parts = parts[:terms]
    return math.fsum(parts)


def _as_expansion(expansion):
    if isinstance(expansion, Expansion):
        return expansion
    try:
        return Expansion[str(expansion).upper()]
    except KeyError:
        raise PreconditionError(f"unknown expansion id {expansion!r}") from None


BOUND_IDS: tuple[str, ...] = (
    tuple(v.ident for v in GapBound)
    + tuple(v.value for v in ReciprocalBound)
    + tuple(v.ident for v in CountBound)
    + ("LEMMA_FAMILY",)
)


def evaluate(bound_id: str, n: int, **params) -> float:
    """Evaluate any catalog bound by its string id.

    Accepted keyword parameters are ``k``, ``lambda1``, ``lambda2``, ``lam``,
    ``volume``, ``packing_density``, ``r`` and ``gap_sum``; each bound uses
    the ones it needs.
    """
    key = str(bound_id).upper()
    if key in GapBound.__members__:
        return gap_bound(GapBound[key], n, params.get("k", 1), params["lambda1"])
    if key in ReciprocalBound.__members__:
        return reciprocal_gap_lower(ReciprocalBound[key], n, params.get("k", 1), params["lambda1"])
    if key in CountBound.__members__:
        allowed = ("lam", "lambda1", "lambda2", "volume", "k", "packing_density")
        kw = {name: params[name] for name in allowed if params.get(name) is not None}
        lam = kw.pop("lam", None)
        return counting_bound(CountBound[key], n, lam, **kw)
    if key == "LEMMA_FAMILY":
        k = params.get("k", 1)
        lambda1 = params["lambda1"]
        r = params.get("r")
        if r is None:
            r = lemma_radius_min(n, k, lambda1)
        return lemma_bound_family(n, k, r, lambda1, params.get("gap_sum", 0.0))
    raise PreconditionError(f"unknown bound id {bound_id!r}; expected one of {', '.join(BOUND_IDS)}")
