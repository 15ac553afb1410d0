"""Physical inputs, constants, and validity guards shared by every module.

All records are frozen dataclasses: construct once, share freely across
threads or worker processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import scipy.constants


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants of the unit system (SI by default)."""

    hbar: float = scipy.constants.hbar          # J s
    epsilon0: float = scipy.constants.epsilon_0  # F/m
    c: float = scipy.constants.c                 # m/s
    kB: float = scipy.constants.k                # J/K

    def __post_init__(self):
        for name in ("hbar", "epsilon0", "c", "kB"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")

    @classmethod
    def si(cls) -> "PhysicalConstants":
        return cls()

    @classmethod
    def natural(cls) -> "PhysicalConstants":
        """All constants set to 1 (dimensionless working units)."""
        return cls(hbar=1.0, epsilon0=1.0, c=1.0, kB=1.0)


SI = PhysicalConstants.si()


@dataclass(frozen=True)
class AtomSpec:
    """Two-level atom: transition dipole (along z), frequency, rest mass."""

    dipole_d: float  # C m
    omega0: float    # rad/s
    mass: float      # kg

    def __post_init__(self):
        if self.dipole_d <= 0:
            raise ValueError("dipole_d must be > 0")
        if self.omega0 <= 0:
            raise ValueError("omega0 must be > 0")
        if self.mass <= 0:
            raise ValueError("mass must be > 0")


def hydrogen_like_atom() -> AtomSpec:
    """Illustrative hydrogen-like defaults (not a fit to any measured line)."""
    return AtomSpec(dipole_d=8.478e-30, omega0=2.47e15, mass=1.67e-27)


@dataclass(frozen=True)
class Fock:
    """Exactly n photons sharing the packet mode."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool):
            raise ValueError("Fock photon number must be an integer")
        if self.n < 0:
            raise ValueError("Fock photon number must be >= 0")

    @property
    def n_effective(self) -> float:
        return float(self.n)


@dataclass(frozen=True)
class Coherent:
    """Coherent state; only |alpha|^2 enters any quantity in scope."""

    alpha_sq: float

    def __post_init__(self):
        if self.alpha_sq < 0:
            raise ValueError("|alpha|^2 must be >= 0")

    @property
    def n_effective(self) -> float:
        return float(self.alpha_sq)


PhotonContent = Fock | Coherent


@dataclass(frozen=True)
class PulseSpec:
    """Gaussian wavepacket pulse propagating along +x.

    sigma    : bandwidth in wavenumber (1/m)
    k0_tilde : center wavenumber (1/m)
    content  : Fock(n) or Coherent(alpha_sq); all formulas use n_effective
    """

    sigma: float
    k0_tilde: float
    content: PhotonContent = field(default_factory=lambda: Fock(1))

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be > 0")
        if self.k0_tilde <= 0:
            raise ValueError("k0_tilde must be > 0")
        if not isinstance(self.content, (Fock, Coherent)):
            raise ValueError("content must be Fock or Coherent")

    @property
    def n_effective(self) -> float:
        return self.content.n_effective

    def with_photons(self, n: float | int) -> "PulseSpec":
        """Same packet with a different photon content of the same kind."""
        if isinstance(self.content, Fock):
            n_int = int(n)
            if n_int != n:
                raise ValueError("Fock pulse requires an integer photon number")
            content: PhotonContent = Fock(n_int)
        else:
            content = Coherent(float(n))
        return PulseSpec(self.sigma, self.k0_tilde, content)


@dataclass(frozen=True)
class Vacuum:
    """Empty field."""


@dataclass(frozen=True)
class Thermal:
    temperature: float  # K

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")


@dataclass(frozen=True)
class Pulse:
    pulse: PulseSpec


@dataclass(frozen=True)
class PulsePlusThermal:
    pulse: PulseSpec
    temperature: float  # K

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")


FieldState = Vacuum | Thermal | Pulse | PulsePlusThermal

VACUUM = Vacuum()


@dataclass(frozen=True)
class RegimeReport:
    """Validity flags for the closed-form expressions at the given inputs."""

    resonant: bool
    asymptotic_ok: bool
    perturbative_ok: bool
    x_value: float  # omega0*k0_tilde/(2 c sigma^2)


def planck_occupation(omega: float, temperature: float, constants: PhysicalConstants = SI) -> float:
    """Mean thermal photon number per mode, 1/(exp(hbar w/kB T) - 1).

    T = 0 is handled as the limit (returns 0 exactly).
    """
    if omega <= 0:
        raise ValueError("omega must be > 0")
    if temperature < 0:
        raise ValueError("temperature must be >= 0")
    if temperature == 0.0:
        return 0.0
    x = constants.hbar * omega / (constants.kB * temperature)
    if x > 700.0:
        # exp(x) overflows; occupation is exp(-x) to double precision
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def regime_check(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    resonance_rtol: float = 1e-9,
    x_min: float = 100.0,
    p_max: float = 0.1,
) -> RegimeReport:
    """Check resonance, the large-x asymptotic window, and the first-order guard.

    The perturbative flag bounds the pulse-driven transition probability over
    one interaction window, (N^2+2N)-scaled at resonance; it warns rather than
    forbids, so sweeps may cross it.
    """
    a = atom.omega0 / constants.c
    x = atom.omega0 * pulse.k0_tilde / (2.0 * constants.c * pulse.sigma**2)
    resonant = abs(pulse.k0_tilde - a) <= resonance_rtol * a
    n = pulse.n_effective
    # stimulated first-order probability ~ Gamma_stim * (c sigma)^-1 at resonance
    p_first = (
        math.sqrt(2.0 / math.pi)
        * atom.dipole_d**2
        * (n * n + 2.0 * n)
        * atom.omega0
        * pulse.sigma
        / (constants.hbar * constants.epsilon0 * constants.c**2)
    )
    return RegimeReport(
        resonant=resonant,
        asymptotic_ok=x >= x_min,
        perturbative_ok=p_first <= p_max,
        x_value=x,
    )
