"""Momentum transfer per transition, per-atom forces, the relativistic
four-force, boosts to the lab frame, and the resulting acceleration.

Sign conventions: the pulse travels along +x.  Stimulated decay recoils the
excited atom toward -x (emission is forward-peaked); absorption pushes the
ground-state atom toward +x.  The spontaneous sin^2(theta) channel imparts
no net momentum (symmetric under q -> -q) and is therefore absent from the
momentum integrals by construction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .model import (
    SI,
    AtomSpec,
    FieldState,
    PhysicalConstants,
    Pulse,
    PulsePlusThermal,
    PulseSpec,
    Thermal,
    Vacuum,
    planck_occupation,
    regime_check,
)
from .rates import gamma0_total
from .specfun import bessel_i_scaled

Branch = Literal["exact", "asymptotic", "resonant_max"]
Transition = Literal["decay", "excitation"]


@dataclass(frozen=True)
class MomentumTransfer:
    """Expected momentum kick per transition (kg m/s), parallel to the x-axis."""

    dp: np.ndarray
    branch: Branch
    transition: Transition

    @property
    def x(self) -> float:
        return float(self.dp[0])


@dataclass(frozen=True)
class FourForce:
    """Four-force (proper-time derivative of four-momentum).

    k0 is the time-like component (1/c) dE/dtau; k the spatial part.  The
    frame tag records whether components are rest-frame or lab-frame (boosted
    along x with the stored velocity).
    """

    k0: float
    k: np.ndarray
    frame: Literal["rest", "lab"] = "rest"
    velocity: float = 0.0

    def minkowski_norm_sq(self) -> float:
        return self.k0**2 - float(np.dot(self.k, self.k))


def _vec_x(value: float) -> np.ndarray:
    return np.array([value, 0.0, 0.0])


def _resonant_scale(atom: AtomSpec, pulse: PulseSpec, constants: PhysicalConstants) -> float:
    """(2 |d|^2 / (sqrt(2 pi) c eps0)) (w0/c)^2 sigma: shared resonant unit."""
    return (
        2.0
        * atom.dipole_d**2
        / (math.sqrt(2.0 * math.pi) * constants.c * constants.epsilon0)
        * (atom.omega0 / constants.c) ** 2
        * pulse.sigma
    )


def momentum_transfer_exact_parts(
    atom: AtomSpec, pulse: PulseSpec, constants: PhysicalConstants = SI
) -> tuple[np.ndarray, np.ndarray]:
    """(quadratic-in-N term, linear-in-N cross term) of the exact momentum kick.

    Both carry the common envelope; each is returned as a full 3-vector so the
    quadrature oracle can certify them term by term.
    """
    if pulse.sigma == 0:
        raise ValueError("sigma = 0 (single-mode limit) is out of scope")
    n = pulse.n_effective
    if n == 0.0:
        return np.zeros(3), np.zeros(3)
    a = atom.omega0 / constants.c
    b = pulse.k0_tilde
    sigma = pulse.sigma
    pair = bessel_i_scaled(a * b / (4.0 * sigma**2))
    i0s, i1s = pair.i0_scaled, pair.i1_scaled
    sum_sq = pair.sum_sq
    # common factor: pref * exp(-(a^2+b^2)/(2 s^2)) [I0^2+I1^2]; the four powers
    # of I_nu per term turn the envelope into exp(-(a-b)^2/(2 s^2)) after scaling
    log_common = (
        math.log(atom.dipole_d**2 * math.pi**2)
        - math.log(8.0 * math.sqrt(2.0 * math.pi) * constants.c * constants.epsilon0 * sigma)
        + 5.0 * math.log(a)
        - (a - b) ** 2 / (2.0 * sigma**2)
        + math.log(sum_sq)
    )
    term_n2 = n * n * (b / sigma**2) * sum_sq
    term_cross = 8.0 * n * i1s * ((a / (2.0 * sigma**2)) * i0s - i1s / b)
    common = math.exp(log_common)
    return _vec_x(-common * term_n2), _vec_x(-common * term_cross)


def momentum_transfer_exact(
    atom: AtomSpec, pulse: PulseSpec, constants: PhysicalConstants = SI
) -> MomentumTransfer:
    """Exact closed-form momentum kick to an excited atom, any detuning."""
    n2, cross = momentum_transfer_exact_parts(atom, pulse, constants)
    return MomentumTransfer(dp=n2 + cross, branch="exact", transition="decay")


def momentum_transfer_asymptotic(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    warn_off_regime: bool = True,
) -> MomentumTransfer:
    """Large-x momentum kick with the Gaussian detuning envelope."""
    if warn_off_regime:
        report = regime_check(atom, pulse, constants)
        if not report.asymptotic_ok:
            warnings.warn(
                f"asymptotic momentum kick evaluated at small x = {report.x_value:.3g}",
                stacklevel=2,
            )
    n = pulse.n_effective
    if n == 0.0:
        return MomentumTransfer(dp=np.zeros(3), branch="asymptotic", transition="decay")
    a = atom.omega0 / constants.c
    b = pulse.k0_tilde
    sigma = pulse.sigma
    pref = (
        atom.dipole_d**2
        * math.pi**2
        / (8.0 * math.sqrt(2.0 * math.pi) * constants.c * constants.epsilon0 * sigma)
        * a**5
        * (8.0 * constants.c * sigma**2 / (math.pi**2 * atom.omega0 * b**2))
    )
    envelope = math.exp(-((a - b) ** 2) / (2.0 * sigma**2))
    value = pref * envelope * 2.0 * n * ((b * constants.c / atom.omega0) * n + 2.0)
    return MomentumTransfer(dp=_vec_x(-value), branch="asymptotic", transition="decay")


def momentum_transfer_resonant(
    atom: AtomSpec, pulse: PulseSpec, constants: PhysicalConstants = SI
) -> MomentumTransfer:
    """Peak (resonant) momentum kick -(2|d|^2/(sqrt(2 pi) c eps0))(w0/c)^2 N(N+2) sigma x."""
    n = pulse.n_effective
    value = _resonant_scale(atom, pulse, constants) * n * (n + 2.0)
    return MomentumTransfer(dp=_vec_x(-value), branch="resonant_max", transition="decay")


def absorption_recoil_resonant(
    atom: AtomSpec, pulse: PulseSpec, constants: PhysicalConstants = SI
) -> MomentumTransfer:
    """Peak momentum kick to a ground-state atom: +(2|d|^2/(sqrt(2 pi) c eps0))(w0/c)^2 N sigma x."""
    n = pulse.n_effective
    value = _resonant_scale(atom, pulse, constants) * n
    return MomentumTransfer(dp=_vec_x(+value), branch="resonant_max", transition="excitation")


def force_excited(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    interaction_time: float | None = None,
) -> np.ndarray:
    """Average force on an excited atom: momentum kick over the packet window.

    The window defaults to 1/(c sigma); pass interaction_time to override.
    """
    if interaction_time is None:
        interaction_time = 1.0 / (constants.c * pulse.sigma)
    return momentum_transfer_resonant(atom, pulse, constants).dp / interaction_time


def force_ground(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    interaction_time: float | None = None,
) -> np.ndarray:
    """Average force on a ground-state atom (absorption pushes along +x)."""
    if interaction_time is None:
        interaction_time = 1.0 / (constants.c * pulse.sigma)
    return absorption_recoil_resonant(atom, pulse, constants).dp / interaction_time


def four_force_rest(
    state: FieldState, atom: AtomSpec, constants: PhysicalConstants = SI
) -> FourForce:
    """Rest-frame four-force on an excited atom for the given field state.

    Vacuum and thermal states have no spatial part (symmetric emission); their
    time-like component is the energy-loss rate of the decaying atom.  Pulse
    states add the stimulated spatial force and the packet-window energy loss
    -sigma hbar w0, which vanishes with the photon content so that N = 0
    reduces exactly to the vacuum result.
    """
    g0 = gamma0_total(atom, constants)
    e_unit = constants.hbar * atom.omega0 / constants.c

    if isinstance(state, Vacuum):
        return FourForce(k0=-g0 * e_unit, k=np.zeros(3))
    if isinstance(state, Thermal):
        occ = planck_occupation(atom.omega0, state.temperature, constants)
        return FourForce(k0=-g0 * (1.0 + occ) * e_unit, k=np.zeros(3))
    if isinstance(state, (Pulse, PulsePlusThermal)):
        pulse = state.pulse
        occ = 0.0
        if isinstance(state, PulsePlusThermal):
            occ = planck_occupation(atom.omega0, state.temperature, constants)
        k0 = -g0 * (1.0 + occ) * e_unit
        if pulse.n_effective > 0.0:
            k0 -= pulse.sigma * constants.hbar * atom.omega0
        return FourForce(k0=k0, k=force_excited(atom, pulse, constants))
    raise TypeError(f"unsupported field state {type(state).__name__}")


def boost_to_lab(f: FourForce, v: float, constants: PhysicalConstants = SI) -> FourForce:
    """Boost a rest-frame four-force to the lab frame (atom moving at v along +x)."""
    if f.frame != "rest":
        raise ValueError("boost_to_lab expects a rest-frame four-force")
    c = constants.c
    if abs(v) >= c:
        raise ValueError("|v| must be < c")
    gamma = 1.0 / math.sqrt(1.0 - (v / c) ** 2)
    beta = v / c
    k0_lab = gamma * (f.k0 + beta * f.k[0])
    kx_lab = gamma * (f.k[0] + beta * f.k0)
    return FourForce(
        k0=k0_lab,
        k=np.array([kx_lab, f.k[1], f.k[2]]),
        frame="lab",
        velocity=v,
    )


def lab_acceleration(
    f: FourForce, atom: AtomSpec, v: float, constants: PhysicalConstants = SI
) -> np.ndarray:
    """Lab-frame three-acceleration from a lab-frame four-force.

    a = (1/(gamma m)) dp/dt - (v/(gamma m c^2)) dE/dt, with dp/dt and dE/dt
    read off the four-force via dt = gamma dtau.  For any purely time-like
    rest-frame force (vacuum, thermal) the two terms cancel identically.
    """
    if f.frame != "lab":
        raise ValueError("lab_acceleration expects a lab-frame four-force")
    c = constants.c
    if abs(v) >= c:
        raise ValueError("|v| must be < c")
    gamma = 1.0 / math.sqrt(1.0 - (v / c) ** 2)
    dp_dt = f.k / gamma
    dE_dt = c * f.k0 / gamma
    acc = dp_dt / (gamma * atom.mass)
    acc = acc - np.array([v, 0.0, 0.0]) * dE_dt / (gamma * atom.mass * c**2)
    return acc
