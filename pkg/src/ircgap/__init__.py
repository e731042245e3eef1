"""Inner and outer capacity bounds for the Gaussian interference relay channel."""

from .audit import AuditSpec, Regime, SweepSpec, gap_audit, sweep, sweep_csv
from .cf import CfConfig, cf_gap_objective, cf_region, cf_terms, hk_region
from .df import df_best_region, df_full_region, df_partial_region, df_terms
from .fme import (
    Axiom,
    IneqSystem,
    InfoSymbol,
    LinIneq,
    canonicalize,
    check_against_target,
    eliminate,
    parse_system,
    remove_dominated,
    remove_implied,
)
from .fme_builtin import BUILTINS, derive, fme_check
from .gauss_core import ChannelSnr, GaussianSystem, cap, mutual_info
from .geometry import HalfPlane, RateRegion, gap_per_dim, hull_union, max_sum_rate, vertices
from .outer import (
    OuterConfig,
    decorr_ratio_check,
    outer_region_cor1,
    outer_region_thm1,
    outer_region_thm1_max,
)

__version__ = "0.1.0"
