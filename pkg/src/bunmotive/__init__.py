"""Exact computations for the motive of the moduli stack of G-bundles on a curve.

Root systems and fundamental degrees, instability codimension bounds,
Poincare and Hodge-Deligne series, the term-by-term motivic decomposition,
and weight-graded cohomology from normal-crossing data.
"""

from .rootsys import (
    InvariantDegrees,
    IsogenyDatum,
    RootSystem,
    build_root_system,
    cartan_matrix,
    dim_group,
    fundamental_degrees,
    fundamental_group_order,
    weyl_group_order,
)
from .parabolic import (
    StabilityBound,
    audit_table,
    closed_form_d,
    dim_bun,
    instability_codim_bruteforce,
    paper_radical_polynomial,
    unipotent_radical_dim,
)
from .series import (
    TruncatedSeries,
    e_polynomial_bun,
    poincare_BG,
    poincare_BT,
    poincare_bun,
    poincare_G,
    poincare_loopG,
    purity_check,
)
from .motive import MotiveClass, MotiveTerm, bun_motive, coarse_motive, realize_dim, realize_E, tannakian_footprint
from .weightcx import LogPairDatum, build_pair_complex, cohomology, curve_minus_points, gr_w_cohomology

__version__ = "0.1.0"
