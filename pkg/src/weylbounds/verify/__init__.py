"""Verification harness: property audits, table reproduction and identities."""

from .audit import (
    AUDIT_IDS,
    CSV_COLUMNS,
    DEFAULT_SUITE,
    REL_TOL,
    AuditReport,
    applicable_audits,
    audit_bound,
    run_suite,
    suite_spectra,
    violations,
    write_reports_csv,
)
from .identities import (
    CURVE_COLUMNS,
    DecayReport,
    check_asymptotic_decay,
    check_left_riemann,
    check_legendre_identity,
    comparison_curve,
    legendre_objective,
    new4_new1_limit,
    new4_new1_limit_simplified,
    new4_new1_ratio,
    write_curve_csv,
)
from .tables import FIXTURES, Anomaly, CellResult, TableDiff, TableFixture, TableId, derive_cell, reproduce_table

__all__ = [
    "AUDIT_IDS",
    "CSV_COLUMNS",
    "DEFAULT_SUITE",
    "REL_TOL",
    "AuditReport",
    "applicable_audits",
    "audit_bound",
    "run_suite",
    "suite_spectra",
    "violations",
    "write_reports_csv",
    "CURVE_COLUMNS",
    "DecayReport",
    "check_asymptotic_decay",
    "check_left_riemann",
    "check_legendre_identity",
    "comparison_curve",
    "legendre_objective",
    "new4_new1_limit",
    "new4_new1_limit_simplified",
    "new4_new1_ratio",
    "write_curve_csv",
    "FIXTURES",
    "Anomaly",
    "CellResult",
    "TableDiff",
    "TableFixture",
    "TableId",
    "derive_cell",
    "reproduce_table",
]
