"""Gaussian photon-wavepacket profile and the derived coupling factor.

The coupling factor is the spectral-overlap scalar between the packet mode
and the dipole emission pattern; it multiplies every stimulated-transition
quantity downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import SI, AtomSpec, PhysicalConstants, PulseSpec
from .specfun import bessel_i_scaled

_X_HAT = (1.0, 0.0, 0.0)


@dataclass(frozen=True)
class WavepacketProfile:
    """Normalized Gaussian mode profile in wavevector space, centered on +x."""

    sigma: float
    k0_tilde: float
    direction: tuple[float, float, float] = field(default=_X_HAT)

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be > 0")
        if self.k0_tilde <= 0:
            raise ValueError("k0_tilde must be > 0")
        if tuple(self.direction) != _X_HAT:
            # the derivation fixes the propagation axis; keep the field so the
            # symmetry-breaking axis is explicit, but do not generalize it
            raise ValueError("propagation direction is fixed to +x")

    @classmethod
    def from_pulse(cls, pulse: PulseSpec) -> "WavepacketProfile":
        return cls(sigma=pulse.sigma, k0_tilde=pulse.k0_tilde)


def profile_value(s, wp: WavepacketProfile) -> float:
    """Wavepacket amplitude at wavevector s (3-tuple, 1/m); units m^{3/2}.

    (1/(2 pi sigma^2))^{3/4} exp(-(s - k0 x)^2 / (4 sigma^2)); real, positive,
    maximal at the packet center.
    """
    s = np.asarray(s, dtype=float)
    center = np.array([wp.k0_tilde, 0.0, 0.0])
    dsq = float(np.dot(s - center, s - center))
    norm = (1.0 / (2.0 * math.pi * wp.sigma**2)) ** 0.75
    return norm * math.exp(-dsq / (4.0 * wp.sigma**2))


def log_coupling_factor(atom: AtomSpec, wp: WavepacketProfile, constants: PhysicalConstants = SI) -> float:
    """log of the packet-dipole coupling factor (see coupling_factor)."""
    a = atom.omega0 / constants.c
    b = wp.k0_tilde
    sigma = wp.sigma
    # Bessel argument w0 k0/(4 c sigma^2) == a b/(4 sigma^2)
    pair = bessel_i_scaled(a * b / (4.0 * sigma**2))
    log_prefactor = (
        2.0 * math.log(math.pi)
        + 0.75 * math.log(1.0 / (2.0 * math.pi * sigma**2))
        + 2.5 * math.log(a)
    )
    return log_prefactor - (a - b) ** 2 / (4.0 * sigma**2) + math.log(pair.sum_sq)


def coupling_factor(atom: AtomSpec, wp: WavepacketProfile, constants: PhysicalConstants = SI) -> float:
    """Spectral-overlap coupling between the packet mode and the dipole pattern.

    pi^2 (1/(2 pi sigma^2))^{3/4} (w0/c)^{5/2}
        x e^{-(w0^2/c^2 + k0^2)/(4 sigma^2)} [I_0^2 + I_1^2](w0 k0/(4 c sigma^2)),

    evaluated in log space so the envelope-Bessel product stays finite for
    Bessel arguments up to and beyond 1e15.
    """
    return math.exp(log_coupling_factor(atom, wp, constants))
