"""Angular decay-probability densities for pulse, vacuum, and thermal field
states, plus the asymmetry diagnostics that explain when the net force
vanishes.

Geometry: the dipole is along z (theta is the polar angle from z), the pulse
travels along +x.  Pulse densities are probabilities per steradian over one
interaction window; vacuum/thermal densities are rates per steradian.  All
Gaussian-Bessel products are evaluated in log space, so densities underflow
gracefully to zero in strongly suppressed directions instead of overflowing
anywhere.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.special as sp

from .model import SI, AtomSpec, PhysicalConstants, PulseSpec, planck_occupation
from .rates import gamma0_angular
from .wavepacket import WavepacketProfile, log_coupling_factor

_ERFCX_TAIL_Z = 100.0  # beyond this the bracket cancels; switch to its series


@dataclass(frozen=True)
class AngularProfile:
    """Emission density sampled on a grid uniform in (cos(theta), phi).

    Grid nodes are cell midpoints, so sums weighted by the constant cell area
    d(cos theta) d(phi) integrate the density over the sphere.
    """

    theta: np.ndarray
    phi: np.ndarray
    density_stimulated: np.ndarray
    density_spontaneous: np.ndarray
    state_tag: str
    spontaneous_regularizer: float | None = None

    @property
    def density_total(self) -> np.ndarray:
        return self.density_stimulated + self.density_spontaneous

    @property
    def cell_weight(self) -> float:
        n = self.theta.size
        # infer the uniform (cos theta, phi) resolution from the grid size
        n_phi = np.unique(self.phi).size
        n_theta = n // n_phi
        return (2.0 / n_theta) * (2.0 * math.pi / n_phi)


@dataclass(frozen=True)
class AsymmetryMetric:
    """First angular moment of a density, reported in the recoil convention.

    first_moment is -integral(q_hat * density dOmega): it points along the
    momentum imparted to the atom, so forward-peaked emission gives a
    negative x component.  symmetric is true when the moment is below
    tol * total integrated density.
    """

    first_moment: np.ndarray
    total: float
    symmetric: bool
    tol: float


def _angular_grid(n_theta: int, n_phi: int) -> tuple[np.ndarray, np.ndarray]:
    cos_theta = -1.0 + (np.arange(n_theta) + 0.5) * (2.0 / n_theta)
    phi = (np.arange(n_phi) + 0.5) * (2.0 * math.pi / n_phi)
    ct, p = np.meshgrid(cos_theta, phi, indexing="ij")
    return np.arccos(ct).ravel(), p.ravel()


def _log_radial_second_moment(m: np.ndarray, sigma: float) -> np.ndarray:
    """log of integral_0^inf q^2 exp(-(q-m)^2/(2 sigma^2)) dq, stable for all m.

    For m >= 0 the direct erf form is safe; for m < 0 the two contributions
    cancel, so the expression is rebuilt from erfcx, with a series tail once
    cancellation would exhaust double precision.
    """
    m = np.asarray(m, dtype=float)
    z = m / (math.sqrt(2.0) * sigma)
    out = np.empty_like(m)

    pos = z >= 0.0
    if np.any(pos):
        mp = m[pos]
        zp = z[pos]
        val = (
            math.sqrt(math.pi / 2.0) * sigma * (1.0 + sp.erf(zp)) * (mp**2 + sigma**2)
            + mp * sigma**2 * np.exp(-(zp**2))
        )
        out[pos] = np.log(val)

    mid = (~pos) & (z > -_ERFCX_TAIL_Z)
    if np.any(mid):
        mm = m[mid]
        zm = -z[mid]
        bracket = (
            math.sqrt(math.pi / 2.0) * sigma * (mm**2 + sigma**2) * sp.erfcx(zm)
            + mm * sigma**2
        )
        out[mid] = -(z[mid] ** 2) + np.log(bracket)

    tail = z <= -_ERFCX_TAIL_Z
    if np.any(tail):
        mt = np.abs(m[tail])
        eps = (sigma / mt) ** 2
        bracket = sigma**2 * mt * (2.0 * eps**2) * (1.0 - 6.0 * eps)
        out[tail] = -(z[tail] ** 2) + np.log(bracket)

    return out


def _pulse_log_parts(
    theta,
    phi,
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants,
    delta_tau: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """log densities (quadratic stimulated, cross, spontaneous) per steradian."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    a = atom.omega0 / constants.c
    b = pulse.k0_tilde
    sigma = pulse.sigma
    n = pulse.n_effective
    u = np.sin(theta) * np.cos(phi)  # emission direction projected on the pulse axis

    log_pref = math.log(
        atom.dipole_d**2 / (4.0 * math.pi * constants.hbar * constants.epsilon0 * constants.c)
    )
    log_h = log_coupling_factor(atom, WavepacketProfile.from_pulse(pulse), constants)

    with np.errstate(divide="ignore"):
        log_sin = np.log(np.sin(theta))
        log_sin_sq = 2.0 * log_sin

    # spontaneous: pref a^3 (c dt / 2 pi) sin^2(theta)
    log_spont = (
        log_pref
        + 3.0 * math.log(a)
        + math.log(constants.c * delta_tau / (2.0 * math.pi))
        + log_sin_sq
    )

    if n == 0.0:
        neg_inf = np.full_like(u, -np.inf)
        return neg_inf, neg_inf.copy(), log_spont

    # quadratic term: pref N^2 h^2 (1/(2 pi s^2))^{3/2} e^{-b^2(1-u^2)/(2 s^2)} R(b u)
    log_n2 = (
        log_pref
        + 2.0 * math.log(n)
        + 2.0 * log_h
        + 1.5 * math.log(1.0 / (2.0 * math.pi * sigma**2))
        - b**2 * (1.0 - u**2) / (2.0 * sigma**2)
        + _log_radial_second_moment(b * u, sigma)
    )

    # cross term: pref 2N h a^{5/2} F(a n_hat) sin(theta)
    log_packet_amp = 0.75 * math.log(1.0 / (2.0 * math.pi * sigma**2)) - (
        a**2 + b**2 - 2.0 * a * b * u
    ) / (4.0 * sigma**2)
    log_cross = (
        log_pref + math.log(2.0 * n) + log_h + 2.5 * math.log(a) + log_packet_amp + log_sin
    )
    return log_n2, log_cross, log_spont


def pulse_emission_parts(
    theta,
    phi,
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    delta_tau: float | None = None,
):
    """(quadratic stimulated, cross, spontaneous) densities at (theta, phi)."""
    if pulse.sigma == 0:
        raise ValueError("sigma = 0 (single-mode limit) is out of scope")
    if delta_tau is None:
        delta_tau = 1.0 / (constants.c * pulse.sigma)
    log_n2, log_cross, log_spont = _pulse_log_parts(theta, phi, atom, pulse, constants, delta_tau)
    with np.errstate(under="ignore"):
        return np.exp(log_n2), np.exp(log_cross), np.exp(log_spont)


def pulse_emission_density(
    theta,
    phi,
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    delta_tau: float | None = None,
):
    """Total decay probability per steradian for an excited atom in the pulse.

    Three non-negative contributions: the packet re-emission term (quadratic
    in photon number), the packet-spontaneous interference term (linear), and
    the regularized spontaneous sin^2(theta) term, whose formally divergent
    weight is rendered finite by the interaction window delta_tau (default
    1/(c sigma)).
    """
    n2, cross, spont = pulse_emission_parts(theta, phi, atom, pulse, constants, delta_tau)
    return n2 + cross + spont


def log_pulse_emission_density(
    theta,
    phi,
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    delta_tau: float | None = None,
):
    """log of the total pulse emission density (finite even where exp underflows)."""
    if delta_tau is None:
        delta_tau = 1.0 / (constants.c * pulse.sigma)
    logs = _pulse_log_parts(theta, phi, atom, pulse, constants, delta_tau)
    return sp.logsumexp(np.stack(logs), axis=0)


def vacuum_emission_density(theta, atom: AtomSpec, constants: PhysicalConstants = SI):
    """Spontaneous decay rate per steradian (1/(s sr)); phi-independent."""
    theta = np.asarray(theta, dtype=float)
    scale = gamma0_angular(math.pi / 2.0, atom, constants)
    return scale * np.sin(theta) ** 2


def thermal_emission_density(
    theta, atom: AtomSpec, temperature: float, constants: PhysicalConstants = SI
):
    """Thermally enhanced decay rate per steradian; reduces to vacuum at T = 0."""
    occ = planck_occupation(atom.omega0, temperature, constants)
    return (1.0 + occ) * vacuum_emission_density(theta, atom, constants)


def pulse_profile_grid(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    n_theta: int = 400,
    n_phi: int = 128,
    delta_tau: float | None = None,
) -> AngularProfile:
    if delta_tau is None:
        delta_tau = 1.0 / (constants.c * pulse.sigma)
    theta, phi = _angular_grid(n_theta, n_phi)
    n2, cross, spont = pulse_emission_parts(theta, phi, atom, pulse, constants, delta_tau)
    return AngularProfile(
        theta=theta,
        phi=phi,
        density_stimulated=n2 + cross,
        density_spontaneous=spont,
        state_tag="pulse",
        spontaneous_regularizer=delta_tau,
    )


def vacuum_profile_grid(
    atom: AtomSpec,
    constants: PhysicalConstants = SI,
    n_theta: int = 400,
    n_phi: int = 128,
) -> AngularProfile:
    theta, phi = _angular_grid(n_theta, n_phi)
    return AngularProfile(
        theta=theta,
        phi=phi,
        density_stimulated=np.zeros_like(theta),
        density_spontaneous=vacuum_emission_density(theta, atom, constants),
        state_tag="vacuum",
    )


def thermal_profile_grid(
    atom: AtomSpec,
    temperature: float,
    constants: PhysicalConstants = SI,
    n_theta: int = 400,
    n_phi: int = 128,
) -> AngularProfile:
    theta, phi = _angular_grid(n_theta, n_phi)
    return AngularProfile(
        theta=theta,
        phi=phi,
        density_stimulated=np.zeros_like(theta),
        density_spontaneous=thermal_emission_density(theta, atom, temperature, constants),
        state_tag="thermal",
    )


def emission_asymmetry(profile: AngularProfile, tol: float = 1e-12) -> AsymmetryMetric:
    """Recoil-direction first moment of the density over the sphere.

    Symmetric densities (vacuum, thermal) give a null moment, which is the
    geometric statement that they transfer no net momentum.
    """
    if profile.theta.size == 0:
        raise ValueError("empty profile grid")
    st = np.sin(profile.theta)
    n_hat = np.stack(
        [st * np.cos(profile.phi), st * np.sin(profile.phi), np.cos(profile.theta)]
    )
    w = profile.cell_weight
    density = profile.density_total
    total = float(np.sum(density) * w)
    emission_moment = np.sum(n_hat * density, axis=1) * w
    first_moment = -emission_moment
    return AsymmetryMetric(
        first_moment=first_moment,
        total=total,
        symmetric=bool(np.linalg.norm(first_moment) <= tol * total),
        tol=tol,
    )


def thermal_symmetry_check(
    atom: AtomSpec,
    temperature: float,
    constants: PhysicalConstants = SI,
    n_theta: int = 400,
    n_phi: int = 128,
    tol: float = 1e-12,
) -> AsymmetryMetric:
    """Numerical null test: the thermal profile has no angular first moment."""
    profile = thermal_profile_grid(atom, temperature, constants, n_theta, n_phi)
    return emission_asymmetry(profile, tol=tol)


def profile_csv_text(
    profile: AngularProfile,
    parameters: dict | None = None,
    include_log: bool = False,
) -> str:
    """Render the profile grid as CSV with a JSON parameter header line.

    Full-precision float serialization (repr) so files round-trip exactly and
    re-runs are byte-identical.
    """
    header = dict(parameters or {})
    header["state"] = profile.state_tag
    header["spontaneous_regularizer_s"] = profile.spontaneous_regularizer
    columns = ["theta", "phi", "density_stimulated", "density_spontaneous", "density_total"]
    if include_log:
        columns.append("log_density_total")
        with np.errstate(divide="ignore"):
            log_total = np.log(profile.density_total)
    lines = ["# " + json.dumps(header, sort_keys=True), ",".join(columns)]
    total = profile.density_total
    for i in range(profile.theta.size):
        row = [
            repr(float(profile.theta[i])),
            repr(float(profile.phi[i])),
            repr(float(profile.density_stimulated[i])),
            repr(float(profile.density_spontaneous[i])),
            repr(float(total[i])),
        ]
        if include_log:
            row.append(repr(float(log_total[i])))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def write_profile_csv(
    profile: AngularProfile,
    path,
    parameters: dict | None = None,
    include_log: bool = False,
) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(profile_csv_text(profile, parameters, include_log))
