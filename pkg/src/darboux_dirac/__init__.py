"""Darboux partners of pseudoscalar and scalar Dirac potentials built from the
rationally extended radial oscillator (X1 exceptional Laguerre functions)."""
from .darboux import (
    DarbouxConfig,
    crum_shift,
    darboux_transform,
    transformed_potential,
    transformed_q1,
    transformed_seed,
    transformed_spinor,
    wronskian,
    wronskian_field,
)
from .dirac import (
    DiracPotential,
    Spinor,
    dirac_energy,
    dirac_residual,
    dirac_residual_rows,
    scalar_coefficient,
    scalar_potential,
    spinor_from_schrodinger,
)
from .errors import ConvergenceError, DarbouxDiracError, DomainError, PoleError
from .jets import Jet, ScalarField
from .numerics import QuadratureResult, fd_derivative, integrate, normalize
from .oscillator import Grid, ModelParams, eigenfunction, energy, potential_v0, schrodinger_residual
from .riccati import (
    RiccatiFamily,
    n_for_zero_energy,
    q_general,
    q_particular,
    riccati_residual,
    singularity_scan,
    zero_energy_seed,
)
from .specfun import LaguerreIndex, kummer_m, laguerre, x1_laguerre

__version__ = "0.1.0"
