"""Brute-force oracles, the exhaustive privacy census and op-count reports."""

from .oracles import (
    OracleSizeError,
    matrix_rank_mod_p,
    naive_coset_eval,
    naive_dft,
    naive_idft,
    naive_poly_divide,
    poly_eval,
    poly_mul,
    poly_sub,
)
from .census import CensusBudgetExceeded, ViewCensus, census_cost, privacy_census
from .complexity import (
    ComplexityRow,
    complexity_report,
    measure_run,
    per_server_max,
    predicted_prover,
    predicted_server,
    prover_count,
    report_csv,
)

__all__ = [
    "OracleSizeError", "matrix_rank_mod_p", "naive_coset_eval", "naive_dft", "naive_idft",
    "naive_poly_divide", "poly_eval", "poly_mul", "poly_sub",
    "CensusBudgetExceeded", "ViewCensus", "census_cost", "privacy_census",
    "ComplexityRow", "complexity_report", "measure_run", "per_server_max", "predicted_prover",
    "predicted_server", "prover_count", "report_csv",
]
