"""Structural identities, asymptotic decay checks and the bound comparison curve."""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .. import bounds
from ..bounds import Expansion, GapBound, check_dim
from ..exceptions import PreconditionError
from ..spectra import Spectrum

__all__ = [
    "check_left_riemann",
    "legendre_objective",
    "check_legendre_identity",
    "DecayReport",
    "check_asymptotic_decay",
    "CURVE_COLUMNS",
    "comparison_curve",
    "write_curve_csv",
    "new4_new1_limit",
    "new4_new1_limit_simplified",
    "new4_new1_ratio",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def check_left_riemann(n: int, k_max: int) -> bool:
    """True iff sum_{j<k} j^{2/n} < k^{1+2/n} / (1+2/n) for every k <= k_max.

    The comparison is strict and vectorized over k.
    """
    n = check_dim(n)
    if int(k_max) != k_max or k_max < 1:
        raise PreconditionError(f"k_max must be a positive integer, got {k_max!r}")
    a = 2.0 / n
    k = np.arange(1, int(k_max) + 1, dtype=float)
    terms = np.arange(0, int(k_max), dtype=float) ** a
    lhs = np.cumsum(terms)
    rhs = k ** (1.0 + a) / (1.0 + a)
    # cumsum rounding is ~k*eps*lhs; the true gap is ~k^{2/n}/2, far larger
    return bool(np.all(lhs < rhs))


def legendre_objective(spec: Spectrum, p: float, lam):
    """p*lam - sum_j (lam - lambda_j)_+ , vectorized over ``lam``."""
    lam = np.asarray(lam, dtype=float)
    diff = lam[..., None] - spec.eigenvalues
    return p * lam - np.where(diff > 0.0, diff, 0.0).sum(axis=-1)


def _legendre_closed_form(spec, p):
    m = int(math.floor(p))
    return (p - m) * spec[m + 1] + math.fsum(spec.eigenvalues[:m])


def check_legendre_identity(spec: Spectrum, p: float, tol: float = 1e-12) -> tuple[float, float]:
    """Numerically maximized Legendre transform and its closed form.

    The supremum of the concave piecewise-linear objective is located by a
    golden-section search on [0, cutoff]; the objective is then evaluated at
    the eigenvalue breakpoints bracketing the search result (and at 0), so
    the returned maximum is attained exactly at a breakpoint.

    Returns
    -------
    (numeric, closed_form)
    """
    p = float(p)
    if not p >= 0.0:
        raise PreconditionError(f"p must be >= 0, got {p!r}")
    need = int(math.floor(p)) + 1
    if len(spec) < need or int(np.searchsorted(spec.eigenvalues, spec.cutoff, side="right")) <= p:
        raise PreconditionError(f"spectrum too short: need more than {p} eigenvalues below the cutoff")
    lo, hi = 0.0, float(spec.cutoff)
    f = lambda x: float(legendre_objective(spec, p, x))
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol * max(1.0, spec.cutoff):
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
    centre = 0.5 * (lo + hi)
    i = int(np.searchsorted(spec.eigenvalues, centre))
    candidates = [0.0, centre] + [float(v) for v in spec.eigenvalues[max(0, i - 2) : i + 2]]
    numeric = float(np.max(legendre_objective(spec, p, np.array(candidates))))
    return numeric, _legendre_closed_form(spec, p)


@dataclass(frozen=True)
class DecayReport:
    expansion: Expansion
    n_values: tuple[int, ...]
    residuals: tuple[float, ...]
    slope: float
    expected_slope: float
    tolerance: float
    passed: bool
    # log(exact) minus the expansion's correction terms; None where not applicable
    log_residuals: tuple[float, ...] | None = None
    log_slope: float | None = None
    # AB_POWER: |exact - leading| against the size of the next-order term
    leading_errors: tuple[float, ...] | None = None
    next_order: tuple[float, ...] | None = None
    leading_ok: bool | None = None

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = (
            f"{status} {self.expansion.ident}: residual slope {self.slope:.3f} "
            f"(expected {self.expected_slope:.3f} +/- {self.tolerance})"
        )
        if self.log_slope is not None:
            text += f"; log-space residual slope {self.log_slope:.3f}"
        if self.leading_ok is not None:
            text += f"; leading term within next-order correction: {self.leading_ok}"
        return text


def _fit_slope(n_values, residuals):
    x = np.log(np.asarray(n_values, dtype=float))
    y = np.log(np.abs(np.asarray(residuals, dtype=float)))
    return float(np.polyfit(x, y, 1)[0])


def check_asymptotic_decay(expansion, n_list, tolerance: float = 0.3) -> DecayReport:
    """Fit the log-log decay of (exact - truncated expansion) over ``n_list``.

    The slope is fitted over the top decade of ``n_list`` and compared with
    minus the claimed remainder order.
    """
    expansion = bounds._as_expansion(expansion)
    n_values = [check_dim(n) for n in n_list]
    if len(n_values) < 2 or any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise PreconditionError("n_list must be strictly increasing with at least two entries")
    if n_values[-1] > 400:
        raise PreconditionError("largest n must be <= 400")
    top = [n for n in n_values if n >= n_values[-1] / 10.0]
    if len(top) < 2:
        top = n_values[-2:]

    exact = {n: bounds.exact_coefficient(expansion, n) for n in n_values}
    terms = {n: bounds.asymptotic_terms(expansion, n) for n in n_values}
    residuals = [exact[n] - math.fsum(terms[n]) for n in n_values]
    slope = _fit_slope(top, [residuals[n_values.index(n)] for n in top])
    expected = -expansion.remainder_order
    passed = abs(slope - expected) <= tolerance

    extra = {}
    if expansion in (Expansion.ASYMP1, Expansion.NEW4_EXP):
        log_res = [math.log(exact[n]) - math.fsum(terms[n][1:]) for n in n_values]
        extra["log_residuals"] = tuple(log_res)
        extra["log_slope"] = _fit_slope(top, [log_res[n_values.index(n)] for n in top])
    if expansion is Expansion.AB_POWER:
        lead = [abs(exact[n] - terms[n][0]) for n in n_values]
        nxt = [abs(terms[n][1]) for n in n_values]
        extra["leading_errors"] = tuple(lead)
        extra["next_order"] = tuple(nxt)
        extra["leading_ok"] = all(e <= c for e, c in zip(lead, nxt))

    return DecayReport(
        expansion, tuple(n_values), tuple(residuals), slope, expected, tolerance, passed, **extra
    )


CURVE_COLUMNS = ("k", "index", "ppw", "not_ppw", "new4", "new1", "ab94")


def comparison_curve(n: int, k_max: int) -> list[dict]:
    """Upper bounds on lambda_{k+1}/lambda_1 for k = 1..k_max.

    ``index`` is k+1. The ab94 column uses the integer part of log2(k+1),
    as in the published tables; ``not_ppw`` applies to k = 1 only and is
    None elsewhere.
    """
    n = check_dim(n)
    if int(k_max) != k_max or k_max < 1:
        raise PreconditionError(f"k_max must be a positive integer, got {k_max!r}")
    rows = []
    for k in range(1, int(k_max) + 1):
        rows.append(
            {
                "k": k,
                "index": k + 1,
                "ppw": bounds.gap_bound(GapBound.PPW_RATIO, n, k + 1, 1.0),
                "not_ppw": 1.0 + bounds.gap_bound(GapBound.NOT_PPW, n, 1, 1.0) if k == 1 else None,
                "new4": bounds.gap_bound(GapBound.NEW4, n, k, 1.0),
                "new1": 1.0 + bounds.gap_bound(GapBound.NEW1, n, k, 1.0),
                "ab94": bounds.gap_bound(GapBound.AB94_RATIO, n, k + 1, 1.0),
            }
        )
    return rows


def write_curve_csv(rows, fh) -> None:
    """Write comparison-curve rows with 12 significant digits."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CURVE_COLUMNS)
    for row in rows:
        out = []
        for col in CURVE_COLUMNS:
            v = row[col]
            out.append("" if v is None else (str(v) if isinstance(v, int) else f"{v:.12g}"))
        writer.writerow(out)


def new4_new1_limit(n: int) -> float:
    """Large-k limit of the new4 / new1 ratio bounds.

    The k^{2/n} terms dominate both bounds, leaving
    (1+4/n) (n/(n+2)) / (1+n/2)^{2/n}.
    """
    n = check_dim(n)
    return (1.0 + 4.0 / n) * (n / (n + 2.0)) / (1.0 + 0.5 * n) ** (2.0 / n)


def new4_new1_limit_simplified(n: int) -> float:
    """(1+4/n)/(1+n/2)^{1+2/n}; equals :func:`new4_new1_limit` only at n = 2.

    For n >= 3 it replaces the factor n/(n+2) by 2/(n+2) and so is smaller
    than the true limit.
    """
    n = check_dim(n)
    return (1.0 + 4.0 / n) / (1.0 + 0.5 * n) ** (1.0 + 2.0 / n)


def new4_new1_ratio(n: int, k: int) -> float:
    """Ratio of the new4 and new1 upper bounds on lambda_{k+1}/lambda_1."""
    return bounds.gap_bound(GapBound.NEW4, n, k, 1.0) / (1.0 + bounds.gap_bound(GapBound.NEW1, n, k, 1.0))
