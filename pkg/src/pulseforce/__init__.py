"""Quantum-optical forces of photon pulses on two-level atoms.

Library for the recoil of stimulated emission and absorption, spontaneous
and stimulated transition rates, relativistic four-forces, angular emission
profiles, and the steady-state dynamics of an atomic ensemble in a thermal
bath plus a pulse, where the net optical force can flip from pushing to
pulling.  Every closed form is cross-checked against independent quadrature
and ODE oracles (see pulseforce.oracle and pulseforce.validation).
"""

from .emission import (
    AngularProfile,
    AsymmetryMetric,
    emission_asymmetry,
    pulse_emission_density,
    pulse_profile_grid,
    thermal_symmetry_check,
    vacuum_emission_density,
    vacuum_profile_grid,
)
from .ensemble import (
    BracketError,
    EnsembleState,
    SweepResult,
    SweepRow,
    critical_boundary,
    ensemble_acceleration,
    net_force,
    population_rate,
    steady_state_fraction,
    sweep,
)
from .model import (
    SI,
    VACUUM,
    AtomSpec,
    Coherent,
    FieldState,
    Fock,
    PhysicalConstants,
    Pulse,
    PulsePlusThermal,
    PulseSpec,
    RegimeReport,
    Thermal,
    Vacuum,
    hydrogen_like_atom,
    planck_occupation,
    regime_check,
)
from .oracle import (
    NonConvergenceError,
    QuadratureSpec,
    decay_probability_by_quadrature,
    momentum_transfer_by_quadrature,
    steady_state_by_ode,
)
from .rates import (
    RateSet,
    gamma0_angular,
    gamma0_total,
    gamma_down_asymptotic,
    gamma_stimulated_exact,
    gamma_up,
    rate_set,
    stimulated_decay_rate,
    stimulated_decay_rate_exact,
)
from .recoil import (
    FourForce,
    MomentumTransfer,
    absorption_recoil_resonant,
    boost_to_lab,
    force_excited,
    force_ground,
    four_force_rest,
    lab_acceleration,
    momentum_transfer_asymptotic,
    momentum_transfer_exact,
    momentum_transfer_resonant,
)
from .specfun import ScaledBesselPair, bessel_i_scaled, erf, log_gaussian_bessel_product
from .validation import run_validation_suite
from .wavepacket import WavepacketProfile, coupling_factor, profile_value

__version__ = "0.1.0"
