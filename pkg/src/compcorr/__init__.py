"""Two-qubit correlation toolkit.

Complementary correlations, classical correlation, discord and entanglement
measures for Bell-diagonal states, with brute-force oracles and a simulator
for entanglement distribution with separable states.
"""

from .correlations import (
    CorrelationReport,
    JointDistribution,
    ProjectiveMeasurement,
    classical_correlation,
    complementary_correlations,
    discord_bd,
    holevo_quantity,
    joint_distribution,
    outcome_mutual_information,
    q1,
    total_mutual_information,
)
from .edss import (
    AncillaSpec,
    EdssSearchResult,
    ProtocolTrace,
    SweepRow,
    ancilla_state,
    cnot,
    edss_useful,
    run_protocol,
    sweep,
)
from .entanglement import (
    PptVerdict,
    necessary_condition_bd,
    negativity,
    ppt_verdict,
    rel_entropy_entanglement_bd,
)
from .oracle import (
    OptimizationResult,
    discord_numeric,
    maximize_holevo,
    mub_check,
    spectrum_crosscheck,
)
from .report import report_for_bd, report_for_state
from .states import (
    BellDiagonalParams,
    BlochDecomposition,
    DensityMatrix,
    bd_spectrum,
    bell_diagonal,
    bloch_decompose,
    classically_correlated,
    family_eq15,
    is_separable_bd,
    load_state,
    normal_form,
    save_state,
    werner,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
