"""Exact decision procedures for left-orthogonality of effective divisors on surfaces."""

from .certificates import (
    EliminationCertificate,
    Mode,
    PeelStep,
    h1_multiple_line_vanishes,
    hermite_feasible,
    hermite_rank,
    lo_certificate,
    slo_certificate,
    verify_certificate,
)
from .criteria import (
    LoVerdict,
    SloVerdict,
    TreeVerdict,
    connected_subdivisors,
    is_left_orthogonal,
    is_strongly_left_orthogonal,
    multiple_line_verdict,
    reduced_slo_threshold,
    tree_of_lines_verdict,
)
from .hodge import Inertia, hodge_admissible, inertia, positive_structure_check
from .lattice import (
    CurveConfiguration,
    Divisor,
    arithmetic_genus,
    build_configuration,
    canonical_pairing,
    genus_closed_form,
    magic_formula_holds,
    pairing,
)
from .models import (
    PicardLattice,
    SweepBounds,
    blowup_lattice,
    configuration_from_classes,
    enumerate_catalog,
    random_tree,
    standard_chain,
)

__version__ = "0.1.0"
