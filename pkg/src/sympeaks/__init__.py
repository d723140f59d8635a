"""Symmetric peaks and valleys over integer compositions, exactly."""

__version__ = "0.1.0"

from .compositions import (  # noqa: E402
    Composition,
    StatRecord,
    aggregate,
    enumerate_compositions,
    joint_distribution,
    stat_record,
    word_stats,
)
from .closed_form import QuadNumber, dsv_closed, hsp_closed  # noqa: E402
from .formulas import binom, dsv_nk, hsp_nk, sp_count_nk  # noqa: E402
from .geometric import GeomParams, expected_value, variance_formula  # noqa: E402
from .series import (  # noqa: E402
    MarkerPoly,
    TruncSeries,
    build_dsv_series,
    build_hsp_series,
    marker_moment,
    rational_gf_coeffs,
)
