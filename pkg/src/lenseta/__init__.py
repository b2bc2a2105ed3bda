"""Exact xi-invariants of lens spaces, e-invariants of Seifert homology
spheres, and the Kirby-calculus bookkeeping behind them."""

from .errors import *  # noqa: F401,F403
from .exactmath import (
    ResidueQmodZ,
    circle_distance,
    gcd_ext,
    mod_inverse,
    rational_reconstruct,
    residue,
    root_of_unity,
)
from .kirby import (
    FramedLink,
    RelativeDiagram,
    build_cobordism,
    chain_link,
    characteristic_sublinks,
    first_component_rule,
    h1_order,
    handle_slide,
    slam_dunk_expand,
    spin_extension,
    structure_report,
)
from .lens import (
    LensSpace,
    defect_factor,
    td2_relative,
    xi_closed_form,
    xi_defect_sum,
    xi_spin_pair,
)
from .seifert import (
    RepType,
    SeifertData,
    bprime,
    e_real,
    e_real_via_bprime,
    e_real_via_cobordism,
    eigenvalue_exponents,
    seifert_data,
    solve_coefficients,
    validate_type,
)

__version__ = "0.1.0"
