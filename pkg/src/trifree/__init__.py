"""Exact list-coloring counts, reducible configurations and discharging on embedded triangle-free graphs."""

from .coloring import CountResult, count_extensions, extends_at_least
from .configurations import (
    Configuration,
    Poppy,
    Stamen,
    check_reducible_abstract,
    check_reducible_concrete,
    find_poppies,
    find_small_4faces,
    find_stamens,
    verify_poppy_constructive,
)
from .discharging import DischargeParams, apply_rules, initial_charges, threshold_arithmetic, verify_claim_bounds
from .embedding import EmbeddedGraph, Graph, SubgraphMask, build_embedding, euler_characteristic, trace_faces
from .harness import CriticalityParams, criticality_check, doubling_check, main_bound_check

__version__ = "0.1.0"
