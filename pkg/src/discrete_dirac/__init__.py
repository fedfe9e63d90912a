"""Discrete Dirac-Kahler, Hestenes and Joyce equations on the lattice complex K(4)."""
from .calculus import d_c, delta, delta_c, dirac_op, dirac_via_clifford
from .clifford import (
    METRIC,
    TABLE,
    ProductTable,
    SignedBlade,
    blade_mul,
    clifford_mul,
    constant_mul,
    projector,
    unit_form,
)
from .equations import (
    ResidualReport,
    decompose_p0,
    decompose_p12,
    dk_residual,
    hestenes_residual,
    joyce_residual,
)
from .forms import (
    BLADE_NAMES,
    BLADES,
    Blade,
    ConstantForm,
    DiscreteForm,
    DomainError,
    MultiIndex,
    Window,
    grade_part,
    linear_combine,
    parity_split,
)
from .plane_wave import (
    Amplitude,
    Momentum,
    SingularBranchError,
    build_plane_wave,
    derive_A_minus,
    derive_A_plus,
    dispersion_p0,
    expand_condition_38,
    expand_condition_39,
    hestenes_conditions_check,
    momentum_constraint_residual,
    psi,
    solution_basis,
)

__version__ = "0.1.0"
