"""Transition rates: spontaneous (total and angular), stimulated decay,
and absorption-driven excitation.

Conventions:
 - gamma0 is the angular rate integrated over the sphere,
   |d|^2 w0^3 / (3 pi hbar eps0 c^3).
 - The stimulated rates use the interaction window dt = 1/(c sigma)
   (the temporal width of the packet); dt is overridable where it enters.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .model import SI, AtomSpec, PhysicalConstants, PulseSpec, regime_check
from .specfun import bessel_i_scaled


@dataclass(frozen=True)
class RateSet:
    """The four rates driving the two-level population dynamics (all 1/s).

    gamma_down = gamma_stim + gamma0 is the full downward (decay) rate;
    gamma_up is the absorption-driven upward rate.
    """

    gamma0: float
    gamma_stim: float
    gamma_down: float
    gamma_up: float

    def __post_init__(self):
        if min(self.gamma0, self.gamma_stim, self.gamma_down, self.gamma_up) < 0:
            raise ValueError("rates must be >= 0")


def gamma0_total(atom: AtomSpec, constants: PhysicalConstants = SI) -> float:
    """Total spontaneous decay rate |d|^2 w0^3 / (3 pi hbar eps0 c^3)."""
    return atom.dipole_d**2 * atom.omega0**3 / (
        3.0 * math.pi * constants.hbar * constants.epsilon0 * constants.c**3
    )


def gamma0_angular(theta: float, atom: AtomSpec, constants: PhysicalConstants = SI) -> float:
    """Spontaneous decay rate per steradian at polar angle theta from the dipole axis.

    (|d|^2 w0^3 / (8 pi^2 hbar eps0 c^3)) sin^2(theta); independent of phi.
    """
    return (
        atom.dipole_d**2
        * atom.omega0**3
        / (8.0 * math.pi**2 * constants.hbar * constants.epsilon0 * constants.c**3)
        * math.sin(theta) ** 2
    )


def _stim_prefactor(atom: AtomSpec, constants: PhysicalConstants) -> float:
    """sqrt(2/pi) |d|^2 w0 / (hbar eps0 c): unit cell of the stimulated rates."""
    return (
        math.sqrt(2.0 / math.pi)
        * atom.dipole_d**2
        * atom.omega0
        / (constants.hbar * constants.epsilon0 * constants.c)
    )


def stimulated_decay_rate_exact(
    atom: AtomSpec, pulse: PulseSpec, constants: PhysicalConstants = SI
) -> float:
    """Stimulated-only part of the full Bessel-form downward rate, any detuning.

    (pi^2 |d|^2 / (8 sqrt(2 pi) hbar eps0)) (w0/c)^5 (N^2+2N)/sigma^2
        x e^{-(w0^2/c^2 + k0^2)/(2 sigma^2)} [I_0^2 + I_1^2]^2(w0 k0/(4c sigma^2)),

    evaluated in log space (the envelope and the Bessel growth cancel to
    e^{-(w0/c - k0)^2/(2 sigma^2)} times scaled terms).  Kept separate from
    gamma0 because the two can differ by many orders of magnitude.
    """
    if pulse.sigma == 0:
        raise ValueError("sigma = 0 (single-mode limit) is out of scope")
    n = pulse.n_effective
    if n == 0.0:
        return 0.0
    a = atom.omega0 / constants.c
    b = pulse.k0_tilde
    sigma = pulse.sigma
    pair = bessel_i_scaled(a * b / (4.0 * sigma**2))
    log_stim = (
        math.log(math.pi**2 * atom.dipole_d**2 * (n * n + 2.0 * n))
        - math.log(8.0 * math.sqrt(2.0 * math.pi) * constants.hbar * constants.epsilon0 * sigma**2)
        + 5.0 * math.log(a)
        - (a - b) ** 2 / (2.0 * sigma**2)
        + 2.0 * math.log(pair.sum_sq)
    )
    return math.exp(log_stim)


def gamma_stimulated_exact(atom: AtomSpec, pulse: PulseSpec, constants: PhysicalConstants = SI) -> float:
    """Full Bessel-form downward rate: stimulated exact part + gamma0."""
    return stimulated_decay_rate_exact(atom, pulse, constants) + gamma0_total(atom, constants)


def stimulated_decay_rate(
    atom: AtomSpec, pulse: PulseSpec, constants: PhysicalConstants = SI
) -> float:
    """Resonant large-x stimulated decay rate sqrt(2/pi)(|d|^2/hbar eps0 c)(N^2+2N) w0 sigma^2."""
    n = pulse.n_effective
    return _stim_prefactor(atom, constants) * (n * n + 2.0 * n) * pulse.sigma**2


def gamma_down_asymptotic(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    warn_off_regime: bool = True,
) -> float:
    """Resonant large-x downward rate: stimulated_decay_rate + gamma0."""
    if warn_off_regime:
        report = regime_check(atom, pulse, constants)
        if not (report.resonant and report.asymptotic_ok):
            warnings.warn(
                "asymptotic resonant rate evaluated outside its validity regime "
                f"(resonant={report.resonant}, x={report.x_value:.3g})",
                stacklevel=2,
            )
    return stimulated_decay_rate(atom, pulse, constants) + gamma0_total(atom, constants)


def gamma_up(atom: AtomSpec, pulse: PulseSpec, constants: PhysicalConstants = SI) -> float:
    """Absorption-driven excitation rate sqrt(2/pi)(|d|^2/hbar eps0 c) N w0 sigma^2."""
    return _stim_prefactor(atom, constants) * pulse.n_effective * pulse.sigma**2


def rate_set(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    exact: bool = False,
) -> RateSet:
    """Assemble the RateSet; asymptotic resonant forms by default.

    With exact=True the downward rate uses the full Bessel form (the upward
    rate has no published exact counterpart and stays asymptotic).
    """
    g0 = gamma0_total(atom, constants)
    if exact:
        g_stim = stimulated_decay_rate_exact(atom, pulse, constants)
    else:
        g_stim = stimulated_decay_rate(atom, pulse, constants)
    g_up = gamma_up(atom, pulse, constants)
    return RateSet(gamma0=g0, gamma_stim=g_stim, gamma_down=g_stim + g0, gamma_up=g_up)


def decay_probability_closed(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    delta_tau: float | None = None,
) -> tuple[float, float]:
    """(stimulated, spontaneous) first-order transition probabilities.

    The formally divergent time integral of the spontaneous part is cut off
    at the interaction window delta_tau (default 1/(c sigma)).
    """
    if delta_tau is None:
        delta_tau = 1.0 / (constants.c * pulse.sigma)
    stim_rate = stimulated_decay_rate_exact(atom, pulse, constants)
    dt_packet = 1.0 / (constants.c * pulse.sigma)
    return stim_rate * dt_packet, gamma0_total(atom, constants) * delta_tau
