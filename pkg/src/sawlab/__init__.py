"""Exact dynamics of stunted sawtooth maps on the unit interval."""

from .entropy import (
    EntropyEstimate,
    entropy_bowen,
    entropy_lap,
    entropy_markov,
)
from .errors import (
    BudgetExceeded,
    ConstraintViolation,
    DomainError,
    KneadingNotRealizable,
    SawlabError,
    StructureError,
)
from .explore import (
    BoundaryBracket,
    Budgets,
    ClassificationRecord,
    PerturbationExperiment,
    PerturbationTrial,
    RefinedBoundary,
    bisect_boundary,
    classify,
    refine_to_boundary,
    two_sided_perturbation_experiment,
)
from .family import (
    Plateau,
    PlateauSelection,
    Shape,
    StuntedSawtoothMap,
    build_sawtooth,
    perturb_toward_chaos,
    perturb_toward_order,
    select_lambda_plateaus,
    validate_heights,
)
from .homoclinic import (
    HomoclinicReport,
    HomoclinicWitness,
    find_homoclinic,
    unstable_manifold,
)
from .kneading import (
    KneadingData,
    KneadingSequence,
    compare_kneading,
    compare_orbit_itineraries,
    kneading_data,
    realize_kneading,
)
from .markov import (
    MarkovSystem,
    build_markov_system,
    simple_cycle_components,
    spectral_radius,
    strongly_connected_components,
)
from .odometer import adding_machine_step, index_word, odometer_orbit, word_index
from .orbits import (
    PeriodSetReport,
    PeriodicOrbit,
    classify_stability,
    complete_period_set,
    omega_accumulation,
    period_set,
    periodic_points,
    sharkovskii_closure,
    sharkovskii_forces,
)
from .plmap import Ivl, OrbitRecord, PiecewiseLinearMap
from .rational import Rat, format_rat, parse_rat
from .renorm import (
    GapFixedPointReport,
    RenormCheck,
    RenormTower,
    SemiconjugacyReport,
    TowerLevel,
    build_tower,
    check_renormalization,
    gap_fixed_point,
    semiconjugacy_check,
    verify_window,
)
from .scan import ScanConfig, ScanSummary, run_scan

__version__ = "0.1.0"

__all__ = [
    "BoundaryBracket",
    "BudgetExceeded",
    "Budgets",
    "ClassificationRecord",
    "ConstraintViolation",
    "DomainError",
    "EntropyEstimate",
    "GapFixedPointReport",
    "HomoclinicReport",
    "HomoclinicWitness",
    "Ivl",
    "KneadingData",
    "KneadingNotRealizable",
    "KneadingSequence",
    "MarkovSystem",
    "OrbitRecord",
    "PeriodSetReport",
    "PeriodicOrbit",
    "PerturbationExperiment",
    "PerturbationTrial",
    "PiecewiseLinearMap",
    "Plateau",
    "PlateauSelection",
    "Rat",
    "RefinedBoundary",
    "RenormCheck",
    "RenormTower",
    "SawlabError",
    "ScanConfig",
    "ScanSummary",
    "SemiconjugacyReport",
    "Shape",
    "StructureError",
    "StuntedSawtoothMap",
    "TowerLevel",
    "adding_machine_step",
    "bisect_boundary",
    "build_markov_system",
    "build_sawtooth",
    "build_tower",
    "check_renormalization",
    "classify",
    "classify_stability",
    "compare_kneading",
    "compare_orbit_itineraries",
    "complete_period_set",
    "entropy_bowen",
    "entropy_lap",
    "entropy_markov",
    "find_homoclinic",
    "format_rat",
    "gap_fixed_point",
    "index_word",
    "kneading_data",
    "odometer_orbit",
    "omega_accumulation",
    "parse_rat",
    "period_set",
    "periodic_points",
    "perturb_toward_chaos",
    "perturb_toward_order",
    "realize_kneading",
    "refine_to_boundary",
    "run_scan",
    "select_lambda_plateaus",
    "semiconjugacy_check",
    "sharkovskii_closure",
    "sharkovskii_forces",
    "simple_cycle_components",
    "spectral_radius",
    "strongly_connected_components",
    "two_sided_perturbation_experiment",
    "unstable_manifold",
    "validate_heights",
    "verify_window",
    "word_index",
]
