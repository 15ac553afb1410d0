"""Independent brute-force checks: adaptive quadrature of the transition
integrals and ODE relaxation, used to certify every closed form before trust.

The integrands here are written from the mode-density directly (packet
amplitude, polarization projection, delta-collapsed radial factors) and never
reuse the closed-form Bessel combinations they certify.  Sharply peaked
angular layers are handled by exact exponential substitutions, not by the
closed forms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad, solve_ivp

from .model import SI, AtomSpec, PhysicalConstants, PulseSpec, planck_occupation
from .rates import gamma0_total, rate_set
from .wavepacket import WavepacketProfile, coupling_factor


class NonConvergenceError(RuntimeError):
    """A quadrature or ODE relaxation failed to reach its tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and domain of the brute-force integrals.

    The radial window is k0 +- radial_cutoff_sigmas * sigma; Gaussian tails
    outside it are far below rel_tol.
    """

    abs_tol: float = 1e-13
    rel_tol: float = 1e-9
    max_subdivisions: int = 200
    radial_cutoff_sigmas: float = 12.0

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be > 0")


_T_MAX = 60.0  # exp(-60) ~ 9e-27: far below any tolerance used here
_TAU_DIRECT = 30.0  # below this the angular layer is broad; integrate u directly


def _quad(f, lo, hi, spec: QuadratureSpec, epsabs=None, epsrel=None, what=""):
    epsabs = spec.abs_tol if epsabs is None else epsabs
    epsrel = spec.rel_tol if epsrel is None else epsrel
    with warnings.catch_warnings():
        # the returned error estimate is checked explicitly below
        warnings.simplefilter("ignore", IntegrationWarning)
        val, err = quad(f, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=spec.max_subdivisions)
    if err > 50.0 * max(epsabs, epsrel * abs(val)):
        raise NonConvergenceError(f"quadrature {what or 'integral'} error {err:g} at value {val:g}")
    return val


def _exp_layer_integral(g, tau: float, spec: QuadratureSpec, what: str) -> float:
    """integral_{-1}^{1} g(u) e^{-tau (1-u)} du, robust for any tau >= 0.

    For large tau the integrand lives in a boundary layer of width 1/tau at
    u = 1; substituting t = tau (1-u) makes it an O(1) smooth integral.
    """
    if tau <= _TAU_DIRECT:
        return _quad(lambda u: g(u) * math.exp(-tau * (1.0 - u)), -1.0, 1.0, spec, what=what)
    t_hi = min(2.0 * tau, _T_MAX)
    return (
        _quad(lambda t: g(1.0 - t / tau) * math.exp(-t), 0.0, t_hi, spec, what=what) / tau
    )


def _dipole_projection_phi_integral(u: float, weight: str, spec: QuadratureSpec) -> float:
    """integral_0^{2pi} w(phi) sqrt(1 - (1-u^2) sin^2 phi) dphi.

    The square root is |sin(theta_z)| of the emission direction: the surviving
    polarization projection onto the dipole axis.  weight selects the vector
    component: '1' (x via the u factor outside), 'cos' (y), 'sin' (z).
    """
    one_minus_u2 = max(0.0, 1.0 - u * u)

    if weight == "1":
        w = lambda p: 1.0
    elif weight == "cos":
        w = lambda p: math.cos(p)
    elif weight == "sin":
        w = lambda p: math.sin(p)
    else:
        raise ValueError(weight)

    return _quad(
        lambda p: w(p) * math.sqrt(1.0 - one_minus_u2 * math.sin(p) ** 2),
        0.0,
        2.0 * math.pi,
        spec,
        epsabs=1e-14,
        epsrel=1e-11,
        what="polarization phi integral",
    )


def _packet_density_moment(
    pulse: PulseSpec, power: int, spec: QuadratureSpec
) -> float:
    """integral d^3q q_x^{(power)} |F(q)|^2 with power in {0, 1} (x-moment or norm).

    Nested adaptive quadrature in packet-axis spherical coordinates; the
    azimuthal integral is the trivial 2 pi factor for these axisymmetric
    integrands.
    """
    b = pulse.k0_tilde
    sigma = pulse.sigma
    norm = (1.0 / (2.0 * math.pi * sigma**2)) ** 1.5
    q_lo = max(0.0, b - spec.radial_cutoff_sigmas * sigma)
    q_hi = b + spec.radial_cutoff_sigmas * sigma

    def radial(q: float) -> float:
        tau = q * b / sigma**2
        if power == 0:
            g = lambda u: 1.0
        else:
            g = lambda u: u**power
        inner = _exp_layer_integral(g, tau, spec, what="packet angular layer")
        return q ** (2 + power) * math.exp(-((q - b) ** 2) / (2.0 * sigma**2)) * inner

    return 2.0 * math.pi * norm * _quad(radial, q_lo, q_hi, spec, what="packet radial")


def momentum_quadrature_parts(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    spec: QuadratureSpec = QuadratureSpec(),
) -> tuple[np.ndarray, np.ndarray]:
    """(quadratic-in-N, linear-in-N) stimulated momentum kicks by quadrature.

    Integrates -hbar integral d^3q q times the stimulated mode density; the
    radial delta of the cross term is collapsed analytically onto the shell
    q = w0/c before the angular quadrature.
    """
    if pulse.sigma == 0:
        raise ValueError("sigma = 0 (single-mode limit) is out of scope")
    n = pulse.n_effective
    if n == 0.0:
        return np.zeros(3), np.zeros(3)

    a = atom.omega0 / constants.c
    b = pulse.k0_tilde
    sigma = pulse.sigma
    pref = atom.dipole_d**2 / (4.0 * math.pi * constants.epsilon0 * constants.c)
    h = coupling_factor(atom, WavepacketProfile.from_pulse(pulse), constants)

    # quadratic term: x-moment of the packet density; y, z vanish by the
    # azimuthal symmetry of the integrand (numerical zero via the phi factor)
    moment_x = _packet_density_moment(pulse, 1, spec)
    phi_zero_cos = _quad(math.cos, 0.0, 2.0 * math.pi, spec, epsabs=1e-12, epsrel=1e-11)
    phi_zero_sin = _quad(math.sin, 0.0, 2.0 * math.pi, spec, epsabs=1e-12, epsrel=1e-11)
    transverse_scale = _packet_density_moment(pulse, 0, spec) * b / (2.0 * math.pi)
    n2_vec = -pref * n * n * h * h * np.array(
        [moment_x, phi_zero_cos * transverse_scale, phi_zero_sin * transverse_scale]
    )

    # cross term on the shell q = a: component-wise 2D angular quadrature
    kappa = a * b / (2.0 * sigma**2)
    packet_norm = (1.0 / (2.0 * math.pi * sigma**2)) ** 0.75
    envelope = math.exp(-((a - b) ** 2) / (4.0 * sigma**2))
    shell_pref = -pref * 2.0 * n * h * a**3.5 * packet_norm * envelope

    def component(direction: str) -> float:
        if direction == "x":
            g = lambda u: u * _dipole_projection_phi_integral(u, "1", spec)
        elif direction == "y":
            g = lambda u: math.sqrt(max(0.0, 1.0 - u * u)) * _dipole_projection_phi_integral(
                u, "cos", spec
            )
        else:
            g = lambda u: math.sqrt(max(0.0, 1.0 - u * u)) * _dipole_projection_phi_integral(
                u, "sin", spec
            )
        return _exp_layer_integral(g, kappa, spec, what=f"cross shell ({direction})")

    cross_vec = shell_pref * np.array([component("x"), component("y"), component("z")])
    return n2_vec, cross_vec


def momentum_transfer_by_quadrature(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    spec: QuadratureSpec = QuadratureSpec(),
) -> np.ndarray:
    """Total stimulated momentum kick by brute-force quadrature (kg m/s)."""
    n2_vec, cross_vec = momentum_quadrature_parts(atom, pulse, constants, spec)
    return n2_vec + cross_vec


def decay_probability_parts_by_quadrature(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    spec: QuadratureSpec = QuadratureSpec(),
    delta_tau: float | None = None,
) -> tuple[float, float]:
    """(stimulated, spontaneous) first-order decay probabilities by quadrature.

    The spontaneous part uses the interaction-window regularizer delta_tau
    (default 1/(c sigma)) for the squared energy delta.
    """
    if pulse.sigma == 0:
        raise ValueError("sigma = 0 (single-mode limit) is out of scope")
    if delta_tau is None:
        delta_tau = 1.0 / (constants.c * pulse.sigma)

    a = atom.omega0 / constants.c
    b = pulse.k0_tilde
    sigma = pulse.sigma
    n = pulse.n_effective
    pref = atom.dipole_d**2 / (
        4.0 * math.pi * constants.hbar * constants.epsilon0 * constants.c
    )

    # spontaneous: pref a^3 (c dt/2pi) integral sin^2(theta) dOmega
    sphere_sin_sq = 2.0 * math.pi * _quad(
        lambda w: 1.0 - w * w, -1.0, 1.0, spec, what="sin^2 sphere"
    )
    spont = pref * a**3 * (constants.c * delta_tau / (2.0 * math.pi)) * sphere_sin_sq

    if n == 0.0:
        return 0.0, spont

    h = coupling_factor(atom, WavepacketProfile.from_pulse(pulse), constants)
    norm = _packet_density_moment(pulse, 0, spec)
    p_n2 = pref * n * n * h * h * norm

    kappa = a * b / (2.0 * sigma**2)
    packet_norm = (1.0 / (2.0 * math.pi * sigma**2)) ** 0.75
    envelope = math.exp(-((a - b) ** 2) / (4.0 * sigma**2))
    shell = _exp_layer_integral(
        lambda u: _dipole_projection_phi_integral(u, "1", spec),
        kappa,
        spec,
        what="cross shell (probability)",
    )
    p_cross = pref * 2.0 * n * h * a**2.5 * packet_norm * envelope * shell
    return p_n2 + p_cross, spont


def decay_probability_by_quadrature(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    spec: QuadratureSpec = QuadratureSpec(),
    delta_tau: float | None = None,
) -> float:
    stim, spont = decay_probability_parts_by_quadrature(atom, pulse, constants, spec, delta_tau)
    return stim + spont


def steady_state_by_ode(
    atom: AtomSpec,
    pulse: PulseSpec,
    temperature: float,
    constants: PhysicalConstants = SI,
    chi0: float = 0.0,
) -> float:
    """Relax the population rate equation to its fixed point by integration.

    Integrates in chunks of ten relaxation times until |d chi/dt| falls below
    1e-14 of the total rate; independent of the closed-form steady state.
    """
    occ = planck_occupation(atom.omega0, temperature, constants)
    r = rate_set(atom, pulse, constants)
    down = r.gamma0 * (1.0 + occ) + r.gamma_stim
    up = r.gamma0 * occ + r.gamma_up
    total = down + up

    def rhs(_t, y):
        return [-down * y[0] + up * (1.0 - y[0])]

    chi = float(chi0)
    t_chunk = 10.0 / total
    for _ in range(60):
        sol = solve_ivp(
            rhs,
            (0.0, t_chunk),
            [chi],
            method="Radau",
            rtol=1e-12,
            atol=1e-20,
        )
        if not sol.success:
            raise NonConvergenceError(f"ODE integration failed: {sol.message}")
        chi = float(sol.y[0, -1])
        if abs(rhs(0.0, [chi])[0]) <= 1e-14 * total:
            return chi
    raise NonConvergenceError("population ODE did not relax to its fixed point")
