"""Named cross-checks of every closed form against its independent oracle,
collected into a JSON-friendly report for the validate command.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from . import emission, oracle, recoil
from .model import SI, AtomSpec, PhysicalConstants, PulseSpec, Vacuum
from .rates import gamma0_total, stimulated_decay_rate_exact
from .specfun import bessel_i_scaled


@dataclass(frozen=True)
class CheckResult:
    name: str
    closed_form: float
    oracle: float
    relative_deviation: float
    tolerance: float
    passed: bool

    def __post_init__(self):
        # numpy scalars are not JSON serializable; coerce on the way in
        object.__setattr__(self, "closed_form", float(self.closed_form))
        object.__setattr__(self, "oracle", float(self.oracle))
        object.__setattr__(self, "relative_deviation", float(self.relative_deviation))
        object.__setattr__(self, "tolerance", float(self.tolerance))
        object.__setattr__(self, "passed", bool(self.passed))


def _rel_dev(value: float, reference: float, floor: float = 0.0) -> float:
    scale = max(abs(reference), floor)
    if scale == 0.0:
        return abs(value - reference)
    return abs(value - reference) / scale


def _check(name: str, value: float, reference: float, tol: float, floor: float = 0.0) -> CheckResult:
    dev = _rel_dev(value, reference, floor)
    return CheckResult(
        name=name,
        closed_form=float(value),
        oracle=float(reference),
        relative_deviation=float(dev),
        tolerance=float(tol),
        passed=bool(dev <= tol),
    )


def _bessel_check() -> CheckResult:
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        for x in (0.0, 1e-3, 0.5, 1.0, 5.0, 20.0, 100.0, 700.0):
            pair = bessel_i_scaled(x)
            ref0 = quad(lambda t: math.exp(x * (math.cos(t) - 1.0)), 0.0, math.pi,
                        epsabs=1e-15, epsrel=1e-13, limit=200)[0] / math.pi
            ref1 = quad(lambda t: math.exp(x * (math.cos(t) - 1.0)) * math.cos(t), 0.0, math.pi,
                        epsabs=1e-15, epsrel=1e-13, limit=200)[0] / math.pi
            worst = max(worst, _rel_dev(pair.i0_scaled, ref0),
                        _rel_dev(pair.i1_scaled, ref1, floor=1e-30))
    return CheckResult(
        name="bessel_scaled_vs_quadrature",
        closed_form=worst,
        oracle=0.0,
        relative_deviation=worst,
        tolerance=1e-10,
        passed=worst <= 1e-10,
    )


def run_validation_suite(
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
    temperature: float = 300.0,
    asymptotic_x: float = 1e6,
) -> dict:
    """Run every oracle check at the given physical point; returns the report.

    asymptotic_x sets where the exact/asymptotic branch agreement is probed
    (the check legitimately fails when forced to small x).
    """
    checks: list[CheckResult] = []
    spec = oracle.QuadratureSpec()

    checks.append(_bessel_check())

    # momentum closed form vs quadrature, term by term summed
    n2_c, cross_c = recoil.momentum_transfer_exact_parts(atom, pulse, constants)
    n2_q, cross_q = oracle.momentum_quadrature_parts(atom, pulse, constants, spec)
    checks.append(
        _check(
            "momentum_stimulated_vs_quadrature",
            float((n2_c + cross_c)[0]),
            float((n2_q + cross_q)[0]),
            1e-6,
        )
    )

    # total decay probability: stimulated part
    stim_q, spont_q = oracle.decay_probability_parts_by_quadrature(atom, pulse, constants, spec)
    stim_c = stimulated_decay_rate_exact(atom, pulse, constants) / (constants.c * pulse.sigma)
    checks.append(_check("decay_probability_vs_quadrature", stim_c, stim_q, 1e-6))
    spont_c = gamma0_total(atom, constants) / (constants.c * pulse.sigma)
    checks.append(_check("spontaneous_probability_regularized", spont_c, spont_q, 1e-12))

    # exact vs asymptotic momentum branch at the probe x
    a = atom.omega0 / constants.c
    sigma_x = a / math.sqrt(2.0 * asymptotic_x)
    probe = PulseSpec(sigma=sigma_x, k0_tilde=a, content=pulse.content)
    exact = recoil.momentum_transfer_exact(atom, probe, constants).x
    asym = recoil.momentum_transfer_asymptotic(atom, probe, constants, warn_off_regime=False).x
    checks.append(_check("asymptotic_branch_agreement", asym, exact, 1e-4))

    # steady state: closed form vs ODE relaxation
    from .ensemble import steady_state_fraction

    chi_c = steady_state_fraction(atom, pulse, temperature, constants)
    chi_o = oracle.steady_state_by_ode(atom, pulse, temperature, constants)
    checks.append(_check("steady_state_vs_ode", chi_c, chi_o, 1e-10, floor=1e-30))

    # thermal two-level limit at N = 0
    empty = pulse.with_photons(0)
    chi0_c = steady_state_fraction(atom, empty, temperature, constants)
    x_th = constants.hbar * atom.omega0 / (constants.kB * temperature)
    chi0_ref = 1.0 / (math.exp(x_th) + 1.0) if x_th < 700 else 0.0
    checks.append(_check("thermal_two_level_limit", chi0_c, chi0_ref, 1e-12, floor=1e-300))

    # vacuum lab acceleration: relative cancellation over a velocity grid
    worst = 0.0
    rest = recoil.four_force_rest(Vacuum(), atom, constants)
    for beta in (0.0, 0.1, 0.5, 0.9, 0.99):
        v = beta * constants.c
        lab = recoil.boost_to_lab(rest, v, constants)
        acc = recoil.lab_acceleration(lab, atom, v, constants)
        gamma = 1.0 / math.sqrt(1.0 - beta**2)
        scale = abs(lab.k[0]) / (gamma**2 * atom.mass)
        if scale > 0:
            worst = max(worst, float(np.linalg.norm(acc)) / scale)
    checks.append(
        CheckResult(
            name="vacuum_lab_acceleration_zero",
            closed_form=worst,
            oracle=0.0,
            relative_deviation=worst,
            tolerance=1e-12,
            passed=worst <= 1e-12,
        )
    )

    # resonant recoil ratio: excited / ground = -(N+2)
    n_eff = max(pulse.n_effective, 1.0)
    ratio_pulse = pulse.with_photons(n_eff) if pulse.n_effective == 0 else pulse
    dp = recoil.momentum_transfer_resonant(atom, ratio_pulse, constants).x
    dg = recoil.absorption_recoil_resonant(atom, ratio_pulse, constants).x
    checks.append(
        _check("resonant_recoil_ratio", dp / dg, -(ratio_pulse.n_effective + 2.0), 1e-12)
    )

    # thermal emission symmetry
    metric = emission.thermal_symmetry_check(atom, temperature, constants, n_theta=200, n_phi=64)
    moment_rel = float(np.linalg.norm(metric.first_moment)) / metric.total
    checks.append(
        CheckResult(
            name="thermal_profile_symmetric",
            closed_form=moment_rel,
            oracle=0.0,
            relative_deviation=moment_rel,
            tolerance=1e-12,
            passed=moment_rel <= 1e-12,
        )
    )

    return {
        "checks": [asdict(c) for c in checks],
        "passed": all(c.passed for c in checks),
    }
