"""Assemble the full per-state correlation report."""

import numpy as np

from .correlations import (
    CorrelationReport,
    classical_correlation,
    complementary_correlations,
    discord_bd,
    total_mutual_information,
)
from .entanglement import PPT_TOL, negativity, rel_entropy_entanglement_bd
from .states import (
    BellDiagonalParams,
    DensityMatrix,
    bell_diagonal,
    bloch_decompose,
    normal_form,
)


def report_for_state(rho: DensityMatrix) -> CorrelationReport:
    """Report for a two-qubit state with maximally mixed marginals.

    Axis-dependent entries (i_x, i_y, i_z, q1) are measured on the state as
    given; the local-unitary invariants (classical correlation, discord,
    relative entropy of entanglement) are evaluated on its normal form.
    """
    dec = bloch_decompose(rho)
    if np.linalg.norm(dec.a) > 1e-8 or np.linalg.norm(dec.b) > 1e-8:
        raise ValueError("report requires maximally mixed marginals (zero local Bloch vectors)")
    _, nf_dec = normal_form(rho)
    p = BellDiagonalParams(*np.diag(nf_dec.T))
    p.validate(tol=1e-9)
    i_x, i_y, i_z = complementary_correlations(rho)
    return CorrelationReport(
        i_x=i_x,
        i_y=i_y,
        i_z=i_z,
        classical_c=classical_correlation(p),
        discord=discord_bd(p),
        q1=i_z,
        mutual_info=total_mutual_information(rho),
        negativity=negativity(rho, 0),
        e_r=rel_entropy_entanglement_bd(p),
        all_complementary_nonzero=bool(min(i_x, i_y, i_z) > PPT_TOL),
    )


def report_for_bd(p: BellDiagonalParams) -> CorrelationReport:
    p.validate()
    return report_for_state(bell_diagonal(p))
