"""SINR-aware STDMA link scheduling for wireless ad hoc networks."""

from .baseline import graph_based_link_schedule
from .cfls import conflict_free_link_schedule, first_conflict_free_color
from .graph import (
    OrientedForest,
    TwoTierGraph,
    build_two_tier_graph,
    decompose_into_oriented_forests,
    forest_count,
    has_primary_conflict,
    has_secondary_conflict,
    random_labeling,
)
from .model import (
    Link,
    Network,
    RadioParams,
    Schedule,
    build_network,
    db_to_linear,
    dbm_to_watts,
    linear_to_db,
)
from .radio import (
    FadingParams,
    GainMatrix,
    comm_range,
    faded_sinr,
    interference_range,
    received_power,
    sample_gains,
    sinr,
    snr,
)
from .rng import Rng, derive_seed
from .verify import EvaluationReport, optimal_schedule_bruteforce, spatial_reuse, verify_schedule

__version__ = "0.1.0"
