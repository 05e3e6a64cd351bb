"""Field-theory models on the flat Lorentz cylinder.

Submodules:

- ``cylinder``: mode-spline observable and solution complexes over regions;
- ``green``: per-mode Green operators, trivializations, Poisson pairing;
- ``twopoint``: the two-point cochain and its defining identities;
- ``data``: the initial-data complex and the data map at t = 0;
- ``small``: the four-generator model (harmonic complex, retraction,
  transferred Poisson table, CCR algebra);
- ``state``: the region-indexed global algebra, quasi-free functional,
  GNS radical/module, observable net and constant representation;
- ``kg``: the scalar field in standard and resolved presentations with the
  comparison morphism and its obstruction;
- ``checks``: verification suites (homotopy, data comparison, time slice,
  causal diamonds).
"""

from .cylinder import (
    CylinderConfig,
    ModeForm,
    ObsCochain,
    Region,
    build_observable_complex,
    build_solution_complex,
    observable_differential,
    region_knots,
)
from .green import (
    PairingValue,
    green_advanced,
    green_difference,
    green_retarded,
    homotopy_defect,
    chain_map_defect,
    poisson,
    trivialization,
)
from .twopoint import (
    TwoPointValue,
    antisymmetry_defect,
    bisolution_defect,
    cochain_defect,
    two_point,
)
from .data import build_data_complex, mode0_data_lambda_map, sector_chain_defect
from .small import SmallModel, TAU_TABLE, ccr_algebra, harmonic_complex, small_model
from .state import (
    DEFAULT_REGIONS,
    GlobalAlgebra,
    QuasifreeState,
    RadicalReport,
    comparison_morphism,
    degree_zero_gram,
    gns_module,
    gns_radical,
    gram_matrix,
    left_ideal_defect,
    observable_algebra,
    observable_net,
    quasifree_state,
    radical_contains,
    vacuum_rep,
)
from .kg import (
    KGModel,
    all_negative_actions_zero,
    has_nonzero_negative_action,
    kg_model,
    net_regular_rep,
)
from .checks import (
    DiamondGenerators,
    antisymmetry_report,
    bisolution_report,
    causality_check,
    data_comparison_report,
    homotopy_report,
    timeslice_check,
    two_point_condition_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
