"""Population dynamics of n non-interacting atoms in a thermal bath plus a
repeated pulse: steady-state excited fraction, net force, acceleration, and
the sign-flip boundary in (N, T) space.

The bath channels are gamma0*(1+occ) downward and gamma0*occ upward
(occ = Planck occupation at the transition frequency); the pulse adds the
stimulated decay and absorption rates.  The stationary point of that rate
equation is exactly the closed-form excited fraction used everywhere else.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .model import (
    SI,
    AtomSpec,
    Coherent,
    PhysicalConstants,
    PulseSpec,
    planck_occupation,
    regime_check,
)
from .rates import RateSet, rate_set


class BracketError(ValueError):
    """No sign change found in the search interval for a boundary root."""


@dataclass(frozen=True)
class EnsembleState:
    """n atoms with excited fraction chi in a bath at the given temperature."""

    n: int
    chi: float
    temperature: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 <= self.chi <= 1.0:
            raise ValueError("chi must lie in [0, 1]")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")


@dataclass(frozen=True)
class SweepRow:
    n_eff: float
    temperature: float
    chi: float
    f_net_x: float
    a_x: float
    perturbative_ok: bool


@dataclass(frozen=True)
class SweepResult:
    """Rows sorted by (temperature, photon number); every row reproducible
    from its inputs."""

    rows: tuple[SweepRow, ...]

    def to_csv(self, path) -> None:
        lines = ["N,T_K,chi,F_net_x_N,a_x_m_s2,perturbative_ok"]
        for r in self.rows:
            lines.append(
                ",".join(
                    [
                        repr(r.n_eff),
                        repr(r.temperature),
                        repr(r.chi),
                        repr(r.f_net_x),
                        repr(r.a_x),
                        str(r.perturbative_ok),
                    ]
                )
            )
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")


def population_rate(chi: float, rates: RateSet, occupation: float = 0.0) -> float:
    """d(chi)/dt for the excited fraction.

    Downward channel gamma0*(1+occ) + gamma_stim, upward gamma0*occ +
    gamma_up; the stationary point reproduces steady_state_fraction exactly.
    """
    down = rates.gamma0 * (1.0 + occupation) + rates.gamma_stim
    up = rates.gamma0 * occupation + rates.gamma_up
    return -down * chi + up * (1.0 - chi)


def steady_state_fraction(
    atom: AtomSpec,
    pulse: PulseSpec,
    temperature: float,
    constants: PhysicalConstants = SI,
) -> float:
    """Stationary excited fraction of the bath-plus-pulse rate equation.

    [gamma0 occ + gamma_up] / [gamma0 (1 + 2 occ) + gamma_stim + gamma_up];
    1 + 2 occ equals coth(hbar w0 / (2 kB T)) and stays finite at T = 0.
    """
    occ = planck_occupation(atom.omega0, temperature, constants)
    r = rate_set(atom, pulse, constants)
    numerator = r.gamma0 * occ + r.gamma_up
    denominator = r.gamma0 * (1.0 + 2.0 * occ) + r.gamma_stim + r.gamma_up
    return numerator / denominator


def _xi(atom: AtomSpec, pulse: PulseSpec, constants: PhysicalConstants, n_atoms: int) -> float:
    return (
        n_atoms
        * 2.0
        * atom.dipole_d**2
        / (math.sqrt(2.0 * math.pi) * constants.epsilon0)
        * (atom.omega0 / constants.c) ** 2
        * pulse.sigma**2
    )


def net_force(
    ensemble: EnsembleState,
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
) -> np.ndarray:
    """Net force on the ensemble: Xi ([1 - 3 chi] N - chi N^2) x.

    Identical to n [chi F_excited + (1 - chi) F_ground]; positive x means
    pushing (away from the source), negative means pulling toward it.
    """
    n_ph = pulse.n_effective
    chi = ensemble.chi
    value = _xi(atom, pulse, constants, ensemble.n) * ((1.0 - 3.0 * chi) * n_ph - chi * n_ph**2)
    return np.array([value, 0.0, 0.0])


def ensemble_acceleration(
    ensemble: EnsembleState,
    atom: AtomSpec,
    pulse: PulseSpec,
    constants: PhysicalConstants = SI,
) -> np.ndarray:
    """Per-atom acceleration F_net / (mass * n)."""
    return net_force(ensemble, atom, pulse, constants) / (atom.mass * ensemble.n)


def force_balance_residual(
    atom: AtomSpec,
    pulse: PulseSpec,
    temperature: float,
    constants: PhysicalConstants = SI,
) -> float:
    """chi(T, N) - 1/(3 + N): zero exactly where the net force changes sign."""
    n_ph = pulse.n_effective
    chi = steady_state_fraction(atom, pulse, temperature, constants)
    return chi - 1.0 / (3.0 + n_ph)


def critical_boundary(
    atom: AtomSpec,
    pulse_template: PulseSpec,
    constants: PhysicalConstants = SI,
    solve_for: str = "T_at_N",
    n_photons: float | None = None,
    temperature: float | None = None,
    bracket: tuple[float, float] | None = None,
) -> float:
    """Locate the force sign-flip boundary chi = 1/(3 + N).

    solve_for="T_at_N": returns the critical temperature for the template's
    photon content (or n_photons override).  solve_for="N_at_T": returns the
    critical (real-valued) photon number at the given temperature.  Raises
    BracketError when no sign change exists in the search interval.
    """
    if solve_for == "T_at_N":
        pulse = (
            pulse_template
            if n_photons is None
            else pulse_template.with_photons(n_photons)
        )
        if pulse.n_effective == 0.0:
            raise BracketError("no boundary: the net force is identically zero at N = 0")

        def f(t: float) -> float:
            return force_balance_residual(atom, pulse, t, constants)

        lo, hi = bracket if bracket is not None else (1e-6, 1.0)
        f_lo, f_hi = f(lo), f(hi)
        if bracket is None:
            while f_hi * f_lo > 0 and hi < 1e15:
                hi *= 10.0
                f_hi = f(hi)
        if f_lo * f_hi > 0:
            raise BracketError(f"no sign change in T over [{lo:g}, {hi:g}]")
        return float(brentq(f, lo, hi, rtol=1e-12, maxiter=200))

    if solve_for == "N_at_T":
        if temperature is None:
            raise ValueError("N_at_T requires a temperature")

        def g(n: float) -> float:
            # real-valued photon number: evaluate through coherent content,
            # which shares the n_effective code path with Fock exactly
            pulse = PulseSpec(pulse_template.sigma, pulse_template.k0_tilde, Coherent(n))
            return force_balance_residual(atom, pulse, temperature, constants)

        lo, hi = bracket if bracket is not None else (1e-9, 1.0)
        g_lo, g_hi = g(lo), g(hi)
        if bracket is None:
            while g_hi * g_lo > 0 and hi < 1e12:
                hi *= 10.0
                g_hi = g(hi)
        if g_lo * g_hi > 0:
            raise BracketError(f"no sign change in N over [{lo:g}, {hi:g}]")
        return float(brentq(g, lo, hi, rtol=1e-12, maxiter=200))

    raise ValueError("solve_for must be 'T_at_N' or 'N_at_T'")


def _sweep_row(
    atom: AtomSpec,
    pulse_template: PulseSpec,
    n_ph: float,
    temperature: float,
    constants: PhysicalConstants,
    n_atoms: int,
) -> SweepRow:
    pulse = pulse_template.with_photons(n_ph)
    chi = steady_state_fraction(atom, pulse, temperature, constants)
    state = EnsembleState(n=n_atoms, chi=chi, temperature=temperature)
    f = net_force(state, atom, pulse, constants)
    a = ensemble_acceleration(state, atom, pulse, constants)
    report = regime_check(atom, pulse, constants)
    return SweepRow(
        n_eff=pulse.n_effective,
        temperature=temperature,
        chi=chi,
        f_net_x=float(f[0]),
        a_x=float(a[0]),
        perturbative_ok=report.perturbative_ok,
    )


def _sweep_row_task(args) -> SweepRow:
    return _sweep_row(*args)


def sweep(
    atom: AtomSpec,
    pulse_template: PulseSpec,
    n_list,
    t_list,
    constants: PhysicalConstants = SI,
    n_atoms: int = 1,
    jobs: int = 1,
) -> SweepResult:
    """Evaluate (chi, F_net, a) over the (N, T) grid; deterministic ordering.

    Rows are independent pure computations; jobs > 1 fans them out to a
    process pool with order-preserving assembly.
    """
    n_list = list(n_list)
    t_list = list(t_list)
    if not n_list or not t_list:
        raise ValueError("N and T grids must be non-empty")
    tasks = [
        (atom, pulse_template, float(n_ph), float(t), constants, n_atoms)
        for t in sorted(t_list)
        for n_ph in sorted(n_list)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_row_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        rows = [_sweep_row(*t) for t in tasks]
    return SweepResult(rows=tuple(rows))
