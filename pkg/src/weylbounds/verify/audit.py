"""Audit engine: evaluate each inequality against exact oracle spectra."""

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .. import bounds
from ..bounds import CountBound, GapBound, ReciprocalBound
from ..exceptions import PreconditionError
from ..spectra import (
    DomainSpec,
    Spectrum,
    ball,
    box,
    counting_function,
    domain_spectrum,
    riesz_mean_1,
)

__all__ = [
    "AuditReport",
    "AUDIT_IDS",
    "DEFAULT_SUITE",
    "REL_TOL",
    "audit_bound",
    "applicable_audits",
    "suite_spectra",
    "run_suite",
    "violations",
    "write_reports_csv",
    "CSV_COLUMNS",
]

REL_TOL = 1e-9
CSV_COLUMNS = ("bound_id", "domain", "parameter", "bound_value", "oracle_value", "direction", "satisfied", "slack")

DEFAULT_SUITE: tuple[DomainSpec, ...] = (
    box(1, 1),
    box(1, 2),
    box(1, 1, 1),
    box(1, 2, 3),
    ball(2),
    ball(3),
    ball(4),
)


@dataclass(frozen=True)
class AuditReport:
    """One inequality instance.

    ``direction`` is ``"UpperOnOracle"`` when the bound must dominate the
    oracle and ``"LowerOnOracle"`` when the oracle must dominate the bound.
    ``slack`` is positive when satisfied.
    """

    bound_id: str
    domain: DomainSpec
    parameter: float
    bound_value: float
    oracle_value: float
    direction: str
    satisfied: bool
    slack: float
    strict: bool = False

    def as_row(self) -> list[str]:
        return [
            self.bound_id,
            self.domain.label,
            _fmt(self.parameter),
            _fmt(self.bound_value),
            _fmt(self.oracle_value),
            self.direction,
            "true" if self.satisfied else "false",
            _fmt(self.slack),
        ]


def _fmt(x):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def _judge(bound_value, oracle_value, direction, strict):
    if direction == "UpperOnOracle":
        slack = bound_value - oracle_value
    else:
        slack = oracle_value - bound_value
    if strict:
        return slack > 0, slack
    scale = max(abs(bound_value), abs(oracle_value), 1.0)
    return slack >= -REL_TOL * scale, slack


@dataclass(frozen=True)
class _Audit:
    direction: str
    param: str  # "k" or "lam"
    evaluate: Callable  # (spec, consts, param) -> (bound, oracle)
    boundary: str = "dirichlet"
    tiling_only: bool = False
    extra: int = 1  # eigenvalues needed beyond index k
    fixed_k: tuple | None = None
    lam_from: str = "lambda1"  # lower end of the lambda grid: "zero", "lambda1", "lambda2"
    strict: Callable | None = None


def _gap(spec, c, k):
    return bounds.gap_bound(GapBound.NEW1, c.n, k, spec[1]), spec[k + 1] - spec[1]


def _gap_sum_oracle(spec, k):
    vals = spec.eigenvalues[:k]
    return float(math.fsum(vals - vals[0]))


def _recip_oracle(spec, k):
    vals = spec.eigenvalues[1 : k + 1] - spec[1]
    return float(math.fsum(1.0 / vals))


def _prefix(spec, k):
    return float(math.fsum(spec.eigenvalues[:k]))


def _laptev_chiti(spec, c, lam):
    n = c.n
    lam1 = spec[1]
    coef = c.L_cl * (2.0 / (n + 2.0)) / (c.H * c.L_cl * lam1 ** (0.5 * n))
    return coef * (lam - lam1) ** (1.0 + 0.5 * n), riesz_mean_1(spec, lam)


_AUDITS: dict[str, _Audit] = {
    "NEW1": _Audit("UpperOnOracle", "k", _gap),
    "NEW2_SUM": _Audit(
        "UpperOnOracle", "k",
        lambda s, c, k: (bounds.gap_sum_bound(c.n, k, s[1]), _gap_sum_oracle(s, k)), extra=0,
    ),
    "NEW4": _Audit(
        "UpperOnOracle", "k", lambda s, c, k: (bounds.gap_bound(GapBound.NEW4, c.n, k, s[1]), s[k + 1])
    ),
    "NOT_PPW": _Audit(
        "UpperOnOracle", "k",
        lambda s, c, k: (bounds.gap_bound(GapBound.NOT_PPW, c.n, 1, s[1]), s[2] - s[1]), fixed_k=(1,),
    ),
    "NOT_PPW2": _Audit(
        "UpperOnOracle", "k",
        lambda s, c, k: (bounds.gap_bound(GapBound.NOT_PPW2, c.n, 1, s[1]), s[2] - s[1]), fixed_k=(1,),
    ),
    "PPW_RATIO": _Audit(
        "UpperOnOracle", "k", lambda s, c, k: (bounds.gap_bound(GapBound.PPW_RATIO, c.n, k, s[1]), s[k]), extra=0
    ),
    # the integer-part exponent is only a valid bound at k = 2^m
    "AB94_RATIO": _Audit(
        "UpperOnOracle", "k", lambda s, c, k: (bounds.gap_bound(GapBound.AB94_RATIO, c.n, k, s[1]), s[k]),
        extra=0, fixed_k=("powers_of_two",),
    ),
    # every k: lambda_k <= lambda_{2^m} <= ratio^m lambda_1 with m = ceil(log2 k)
    "AB94": _Audit(
        "UpperOnOracle", "k", lambda s, c, k: (c.ab_ratio ** (k - 1).bit_length() * s[1], s[k]), extra=0
    ),
    "AB_INEQ": _Audit(
        "UpperOnOracle", "k", lambda s, c, k: (c.ab_ratio * s[1], s[2]), fixed_k=(1,)
    ),
    "SUM_K_EQ_N": _Audit(
        "UpperOnOracle", "k",
        lambda s, c, k: (
            bounds.gap_bound(GapBound.SUM_K_EQ_N, c.n, c.n, s[1]),
            float(math.fsum(s.eigenvalues[1 : c.n + 1] - s[1])),
        ),
        fixed_k=("n",),
    ),
    "NEW3": _Audit(
        "LowerOnOracle", "k",
        lambda s, c, k: (bounds.reciprocal_gap_lower(ReciprocalBound.NEW3, c.n, k, s[1]), _recip_oracle(s, k)),
    ),
    "ABCHITI": _Audit(
        "LowerOnOracle", "k",
        lambda s, c, k: (bounds.reciprocal_gap_lower(ReciprocalBound.ABCHITI, c.n, None, s[1]), _recip_oracle(s, c.n)),
        fixed_k=("n",),
    ),
    "YANG": _Audit(
        "UpperOnOracle", "k", lambda s, c, k: ((1.0 + 4.0 / c.n) * _prefix(s, k) / k, s[k + 1])
    ),
    "PPW_RECURSION": _Audit(
        "UpperOnOracle", "k", lambda s, c, k: (4.0 / (c.n * k) * _prefix(s, k), s[k + 1] - s[k])
    ),
    "LIYAU_SUM_LOWER": _Audit(
        "LowerOnOracle", "k",
        lambda s, c, k: (
            bounds.counting_bound(CountBound.LIYAU_SUM_LOWER, c.n, k=k, volume=s.volume), _prefix(s, k)
        ),
        extra=0,
    ),
    "LIYAU_SINGLE_LOWER": _Audit(
        "LowerOnOracle", "k",
        lambda s, c, k: (bounds.counting_bound(CountBound.LIYAU_SINGLE_LOWER, c.n, k=k, volume=s.volume), s[k]),
        extra=0,
    ),
    "URAKAWA_LOWER_TERM": _Audit(
        "LowerOnOracle", "k",
        lambda s, c, k: (
            bounds.counting_bound(CountBound.URAKAWA_LOWER_TERM, c.n, k=k, volume=s.volume, packing_density=1.0),
            s[k],
        ),
        tiling_only=True, extra=0,
    ),
    "POLYA_DIRICHLET": _Audit(
        "LowerOnOracle", "k", lambda s, c, k: (bounds.weyl_term(c.n, k, s.volume), s[k]), tiling_only=True, extra=0
    ),
    "POLYA_NEUMANN": _Audit(
        "UpperOnOracle", "k", lambda s, c, k: (bounds.weyl_term(c.n, k, s.volume), s[k + 1]),
        boundary="neumann", tiling_only=True,
    ),
    "KROGER_SUM": _Audit(
        "UpperOnOracle", "k",
        lambda s, c, k: (bounds.counting_bound(CountBound.KROGER_SUM, c.n, k=k, volume=s.volume), _prefix(s, k)),
        boundary="neumann", extra=0,
    ),
    "KROGER_SINGLE": _Audit(
        "UpperOnOracle", "k",
        lambda s, c, k: (bounds.counting_bound(CountBound.KROGER_SINGLE, c.n, k=k, volume=s.volume), s[k + 1]),
        boundary="neumann",
    ),
    "COUNT1_LOWER": _Audit(
        "LowerOnOracle", "lam",
        lambda s, c, lam: (
            bounds.counting_bound(CountBound.COUNT1_LOWER, c.n, lam, lambda1=s[1]), counting_function(s, lam)
        ),
        strict=lambda s, c, lam: lam > s[1],
    ),
    "COUNT2_LOWER": _Audit(
        "LowerOnOracle", "lam",
        lambda s, c, lam: (
            bounds.counting_bound(CountBound.COUNT2_LOWER, c.n, lam, lambda1=s[1]), counting_function(s, lam)
        ),
        strict=lambda s, c, lam: lam > (1.0 + 4.0 / c.n) * s[1],
    ),
    "SAFAROV_LOWER": _Audit(
        "LowerOnOracle", "lam",
        lambda s, c, lam: (
            bounds.counting_bound(CountBound.SAFAROV_LOWER, c.n, lam, lambda1=s[1]), counting_function(s, lam)
        ),
    ),
    "AB_COUNT_LOWER": _Audit(
        "LowerOnOracle", "lam",
        lambda s, c, lam: (
            bounds.counting_bound(CountBound.AB_COUNT_LOWER, c.n, lam, lambda1=s[1]), counting_function(s, lam)
        ),
    ),
    "AB_COUNT2_LOWER": _Audit(
        "LowerOnOracle", "lam",
        lambda s, c, lam: (
            bounds.counting_bound(CountBound.AB_COUNT2_LOWER, c.n, lam, lambda2=s[2]), counting_function(s, lam)
        ),
        lam_from="lambda2",
    ),
    "LIYAU_UPPER": _Audit(
        "UpperOnOracle", "lam",
        lambda s, c, lam: (
            bounds.counting_bound(CountBound.LIYAU_UPPER, c.n, lam, volume=s.volume), counting_function(s, lam)
        ),
        lam_from="zero",
    ),
    "POLYA_WEYL_TERM": _Audit(
        "UpperOnOracle", "lam",
        lambda s, c, lam: (
            bounds.counting_bound(CountBound.POLYA_WEYL_TERM, c.n, lam, volume=s.volume), counting_function(s, lam)
        ),
        tiling_only=True, lam_from="zero",
    ),
    "BEREZIN_RIESZ_UPPER": _Audit(
        "UpperOnOracle", "lam",
        lambda s, c, lam: (bounds.riesz_bound_berezin(c.n, lam, s.volume), riesz_mean_1(s, lam)),
        lam_from="zero",
    ),
    "LAPTEV_CHITI": _Audit("LowerOnOracle", "lam", _laptev_chiti),
}

AUDIT_IDS: tuple[str, ...] = tuple(_AUDITS) + ("LEMMA_FAMILY", "PAYNE")

_DEFAULT_K = {"box": 500, "ball": 200}
_LEMMA_K = 100
_LEMMA_SAMPLES = 10
_LAMBDA_POINTS = 200


def _applies(audit, domain):
    if audit.tiling_only and domain.kind != "box":
        return False
    if audit.boundary == "neumann" and domain.kind != "box":
        return False
    return True


def applicable_audits(domain: DomainSpec) -> list[str]:
    """Audit ids that make sense for ``domain`` (Neumann ones need a box)."""
    ids = [name for name, audit in _AUDITS.items() if _applies(audit, domain)]
    ids.append("LEMMA_FAMILY")
    if domain.kind == "box":
        ids.append("PAYNE")
    return ids


def _default_params(audit_id, audit, spec):
    n = spec.dim
    k_max = _DEFAULT_K[spec.domain.kind]
    if audit_id == "LEMMA_FAMILY":
        return list(range(1, min(_LEMMA_K, len(spec) - 1) + 1))
    if audit is None or audit.param == "k":
        extra = 1 if audit is None else audit.extra
        top = min(k_max, len(spec) - extra)
        if audit is not None and audit.fixed_k == ("powers_of_two",):
            return [2 ** m for m in range(top.bit_length()) if 2 ** m <= top]
        if audit is not None and audit.fixed_k is not None:
            return [n if v == "n" else v for v in audit.fixed_k]
        return list(range(1, top + 1))
    lo = {"zero": 0.0, "lambda1": spec[1], "lambda2": spec[2]}[audit.lam_from]
    return list(np.linspace(lo, spec.cutoff, _LAMBDA_POINTS))


def audit_bound(
    bound_id: str,
    spec: Spectrum,
    params=None,
    *,
    companion: Spectrum | None = None,
) -> list[AuditReport]:
    """Check one inequality over a range of k or a grid of lambda.

    Parameters
    ----------
    bound_id : str
        One of :data:`AUDIT_IDS`.
    spec : Spectrum
        Oracle spectrum. Kroger and Neumann-Polya audits expect a Neumann
        spectrum, everything else a Dirichlet one.
    params : sequence, optional
        Values of k (or lambda). Defaults cover k = 1..500 on boxes,
        1..200 on balls and 200 lambda points up to the cutoff.
    companion : Spectrum, optional
        The Neumann spectrum of the same box, needed by ``PAYNE``.
    """
    key = str(bound_id).upper()
    if key == "LEMMA_FAMILY":
        return _audit_lemma(spec, params)
    if key == "PAYNE":
        return _audit_payne(spec, companion, params)
    audit = _AUDITS.get(key)
    if audit is None:
        raise PreconditionError(f"unknown audit id {bound_id!r}; expected one of {', '.join(AUDIT_IDS)}")
    if spec.domain.boundary != audit.boundary:
        raise PreconditionError(f"{key} needs a {audit.boundary} spectrum, got {spec.domain.boundary}")
    if params is None:
        params = _default_params(key, audit, spec)
    c = bounds.constants(spec.dim)
    reports = []
    for p in params:
        if audit.param == "k":
            p = int(p)
            if p + audit.extra > len(spec):
                raise PreconditionError(f"spectrum too short for {key} at k={p}")
        else:
            p = float(p)
            if p > spec.cutoff:
                raise PreconditionError(f"lambda {p} beyond the spectrum cutoff {spec.cutoff}")
        bound_value, oracle_value = audit.evaluate(spec, c, p)
        strict = bool(audit.strict(spec, c, p)) if audit.strict is not None else False
        ok, slack = _judge(float(bound_value), float(oracle_value), audit.direction, strict)
        reports.append(
            AuditReport(key, spec.domain, p, float(bound_value), float(oracle_value), audit.direction, ok, slack, strict)
        )
    return reports


def _audit_lemma(spec, params):
    if params is None:
        params = _default_params("LEMMA_FAMILY", None, spec)
    n = spec.dim
    lam1 = spec[1]
    reports = []
    for k in params:
        k = int(k)
        gap_sum = float(math.fsum(spec.eigenvalues[:k] - lam1))
        oracle = spec[k + 1] - lam1
        r0 = bounds.lemma_radius_min(n, k, lam1)
        for r in np.linspace(r0, 3.0 * r0, _LEMMA_SAMPLES):
            value = bounds.lemma_bound_family(n, k, float(r), lam1, gap_sum)
            ok, slack = _judge(value, oracle, "UpperOnOracle", False)
            reports.append(
                AuditReport(f"LEMMA_FAMILY[k={k}]", spec.domain, float(r), value, oracle, "UpperOnOracle", ok, slack)
            )
    return reports


def _audit_payne(spec, companion, params):
    if companion is None or companion.domain.boundary != "neumann":
        raise PreconditionError("PAYNE needs the Neumann spectrum of the same domain as `companion`")
    if params is None:
        k_max = min(_DEFAULT_K["box"], len(spec), len(companion) - 1)
        params = range(1, k_max + 1)
    reports = []
    for k in params:
        k = int(k)
        ok, slack = _judge(spec[k], companion[k + 1], "UpperOnOracle", False)
        reports.append(AuditReport("PAYNE", spec.domain, k, spec[k], companion[k + 1], "UpperOnOracle", ok, slack))
    return reports


@lru_cache(maxsize=None)
def suite_spectra(domain: DomainSpec) -> tuple[Spectrum, Spectrum | None]:
    """Dirichlet spectrum of ``domain`` and, for boxes, the Neumann one."""
    k_max = _DEFAULT_K[domain.kind]
    dirichlet = domain_spectrum(domain, k_max + 2)
    neumann = None
    if domain.kind == "box":
        neumann = domain_spectrum(domain.with_boundary("neumann"), k_max + 2)
    return dirichlet, neumann


def _run_domain(domain):
    dirichlet, neumann = suite_spectra(domain)
    reports = []
    for audit_id in applicable_audits(domain):
        audit = _AUDITS.get(audit_id)
        if audit_id == "PAYNE":
            reports.extend(audit_bound("PAYNE", dirichlet, companion=neumann))
        elif audit is not None and audit.boundary == "neumann":
            reports.extend(audit_bound(audit_id, neumann))
        else:
            reports.extend(audit_bound(audit_id, dirichlet))
    return reports


def run_suite(domains=DEFAULT_SUITE, jobs: int | None = None) -> list[AuditReport]:
    """Run every applicable audit on every domain.

    With ``jobs > 1`` domains are audited on a thread pool; the report order
    is the same either way.
    """
    domains = tuple(domains)
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_domain, domains))
    else:
        chunks = [_run_domain(d) for d in domains]
    return [r for chunk in chunks for r in chunk]


def violations(reports) -> list[AuditReport]:
    return [r for r in reports if not r.satisfied]


def write_reports_csv(reports, path_or_file) -> None:
    """CSV with columns bound_id,domain,parameter,bound_value,oracle_value,direction,satisfied,slack."""
    if hasattr(path_or_file, "write"):
        _write_rows(reports, path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            _write_rows(reports, fh)


def _write_rows(reports, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow(r.as_row())
