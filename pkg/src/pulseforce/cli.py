"""Command-line surface: single-point evaluations, sweeps, angular profiles,
and the validation report.

Every number printed is the corresponding library call's result; the CLI adds
only parsing and serialization.  All commands are deterministic for a fixed
configuration (re-running writes byte-identical files).

Exit codes: 0 success, 1 validation failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ensemble, recoil
from .config import ConfigError, RunConfig, load_config_file, resolve_config
from .emission import profile_csv_text, pulse_profile_grid
from .model import regime_check
from .rates import (
    gamma0_total,
    gamma_up,
    stimulated_decay_rate,
    stimulated_decay_rate_exact,
)
from .validation import run_validation_suite


def _add_common_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file path")
    p.add_argument("--units", choices=["si", "natural"], help="unit system preset")
    p.add_argument("--format", choices=["csv", "json", "table"], default="table",
                   help="output format for report commands")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    p.add_argument("--out", help="output file path (default: stdout)")
    p.add_argument("--dump-config", action="store_true",
                   help="print the fully-resolved configuration and exit")
    # flags mirroring the config keys; flags take precedence over the file
    p.add_argument("--d", type=float, help="transition dipole magnitude (C m)")
    p.add_argument("--omega0", type=float, help="transition angular frequency (rad/s)")
    p.add_argument("--mass", type=float, help="atom rest mass (kg)")
    p.add_argument("--sigma", type=float, help="packet bandwidth (1/m)")
    p.add_argument("--k0-tilde", dest="k0_tilde", type=float,
                   help="packet center wavenumber (1/m); default resonant")
    p.add_argument("--fock", type=int, help="photon number (Fock content)")
    p.add_argument("--coherent-alpha-sq", dest="coherent_alpha_sq", type=float,
                   help="|alpha|^2 (coherent content)")
    p.add_argument("--temperature", type=float, help="bath temperature (K)")
    p.add_argument("--n-atoms", dest="n_atoms", type=int, help="ensemble size")


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    file_values = load_config_file(args.config) if args.config else {}
    overrides: dict = {}
    for key in ("d", "omega0", "mass", "sigma", "k0_tilde", "temperature", "n_atoms"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if args.fock is not None and args.coherent_alpha_sq is not None:
        raise ConfigError("give either --fock or --coherent-alpha-sq, not both")
    if args.fock is not None:
        overrides["photon_content"] = {"fock": args.fock}
    if args.coherent_alpha_sq is not None:
        overrides["photon_content"] = {"coherent_alpha_sq": args.coherent_alpha_sq}
    if args.units is not None:
        overrides["unit_system"] = args.units
    return resolve_config(file_values, overrides)


def _emit(text: str, args: argparse.Namespace) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _render_report(pairs: dict, args: argparse.Namespace) -> str:
    if args.format == "json":
        return json.dumps(pairs, sort_keys=True)
    if args.format == "csv":
        keys = list(pairs)
        return ",".join(keys) + "\n" + ",".join(_cell(pairs[k]) for k in keys)
    width = max(len(k) for k in pairs)
    return "\n".join(f"{k.ljust(width)}  {_cell(pairs[k])}" for k in pairs)


def _cell(value) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def cmd_rates(cfg: RunConfig, args: argparse.Namespace) -> int:
    g0 = gamma0_total(cfg.atom, cfg.constants)
    g_stim = stimulated_decay_rate(cfg.atom, cfg.pulse, cfg.constants)
    g_stim_exact = stimulated_decay_rate_exact(cfg.atom, cfg.pulse, cfg.constants)
    g_up = gamma_up(cfg.atom, cfg.pulse, cfg.constants)
    report = regime_check(cfg.atom, cfg.pulse, cfg.constants)
    pairs = {
        "n_eff": cfg.pulse.n_effective,
        "gamma0": g0,
        "gamma_stim": g_stim,
        "gamma_down": g_stim + g0,
        "gamma_down_exact": g_stim_exact + g0,
        "gamma_up": g_up,
        "stim_to_up_ratio": g_stim / g_up if g_up > 0 else float("nan"),
        "resonant": report.resonant,
        "asymptotic_ok": report.asymptotic_ok,
        "perturbative_ok": report.perturbative_ok,
        "x_value": report.x_value,
    }
    _emit(_render_report(pairs, args), args)
    return 0


def cmd_force(cfg: RunConfig, args: argparse.Namespace) -> int:
    exact = recoil.momentum_transfer_exact(cfg.atom, cfg.pulse, cfg.constants)
    asym = recoil.momentum_transfer_asymptotic(cfg.atom, cfg.pulse, cfg.constants,
                                               warn_off_regime=False)
    resonant = recoil.momentum_transfer_resonant(cfg.atom, cfg.pulse, cfg.constants)
    ground = recoil.absorption_recoil_resonant(cfg.atom, cfg.pulse, cfg.constants)
    pairs = {
        "n_eff": cfg.pulse.n_effective,
        "delta_p_exact_x": exact.x,
        "delta_p_asymptotic_x": asym.x,
        "delta_p_resonant_x": resonant.x,
        "delta_g_resonant_x": ground.x,
        "force_excited_x": float(recoil.force_excited(cfg.atom, cfg.pulse, cfg.constants)[0]),
        "force_ground_x": float(recoil.force_ground(cfg.atom, cfg.pulse, cfg.constants)[0]),
    }
    _emit(_render_report(pairs, args), args)
    return 0


def cmd_steady(cfg: RunConfig, args: argparse.Namespace) -> int:
    chi = ensemble.steady_state_fraction(cfg.atom, cfg.pulse, cfg.temperature, cfg.constants)
    state = ensemble.EnsembleState(n=cfg.n_atoms, chi=chi, temperature=cfg.temperature)
    f_net = ensemble.net_force(state, cfg.atom, cfg.pulse, cfg.constants)
    acc = ensemble.ensemble_acceleration(state, cfg.atom, cfg.pulse, cfg.constants)
    pairs = {
        "n_eff": cfg.pulse.n_effective,
        "temperature_K": cfg.temperature,
        "n_atoms": cfg.n_atoms,
        "chi": chi,
        "chi_flip_threshold": 1.0 / (3.0 + cfg.pulse.n_effective),
        "f_net_x": float(f_net[0]),
        "a_x": float(acc[0]),
    }
    _emit(_render_report(pairs, args), args)
    return 0


def _float_list(text: str, what: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"bad {what} grid: {exc}") from exc
    if not values:
        raise ConfigError(f"empty {what} grid")
    return values


def cmd_sweep(cfg: RunConfig, args: argparse.Namespace) -> int:
    n_values = _float_list(args.n_values, "N")
    t_values = _float_list(args.t_values, "T") if args.t_values else [cfg.temperature]
    result = ensemble.sweep(
        cfg.atom,
        cfg.pulse,
        n_values,
        t_values,
        cfg.constants,
        n_atoms=cfg.n_atoms,
        jobs=max(1, args.jobs),
    )
    if args.out:
        result.to_csv(args.out)
    else:
        lines = ["N,T_K,chi,F_net_x_N,a_x_m_s2,perturbative_ok"]
        for r in result.rows:
            lines.append(",".join([repr(r.n_eff), repr(r.temperature), repr(r.chi),
                                   repr(r.f_net_x), repr(r.a_x), str(r.perturbative_ok)]))
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_profile(cfg: RunConfig, args: argparse.Namespace) -> int:
    profile = pulse_profile_grid(
        cfg.atom,
        cfg.pulse,
        cfg.constants,
        n_theta=args.n_theta,
        n_phi=args.n_phi,
        delta_tau=args.delta_tau,
    )
    text = profile_csv_text(profile, cfg.as_dict(), include_log=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_validate(cfg: RunConfig, args: argparse.Namespace) -> int:
    report = run_validation_suite(
        cfg.atom,
        cfg.pulse,
        cfg.constants,
        temperature=cfg.temperature,
        asymptotic_x=args.asymptotic_x,
    )
    _emit(json.dumps(report, sort_keys=True, indent=2), args)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pulseforce",
        description="Quantum-optical forces of photon pulses on two-level atoms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_rates = sub.add_parser("rates", help="transition rates and regime flags")
    p_force = sub.add_parser("force", help="single-point momentum kicks and forces")
    p_steady = sub.add_parser("steady", help="steady-state fraction, net force, acceleration")
    p_sweep = sub.add_parser("sweep", help="(N, T) grid sweep to CSV")
    p_profile = sub.add_parser("profile", help="angular emission profile to CSV")
    p_validate = sub.add_parser("validate", help="closed-form vs oracle report (JSON)")

    for p in (p_rates, p_force, p_steady, p_sweep, p_profile, p_validate):
        _add_common_options(p)

    p_sweep.add_argument("--n-values", required=True,
                         help="comma-separated photon numbers, e.g. 0,1,10,100")
    p_sweep.add_argument("--t-values", help="comma-separated temperatures (K)")
    p_profile.add_argument("--n-theta", type=int, default=200, help="polar grid points")
    p_profile.add_argument("--n-phi", type=int, default=72, help="azimuthal grid points")
    p_profile.add_argument("--delta-tau", dest="delta_tau", type=float,
                           help="spontaneous regularizer (s); default 1/(c sigma)")
    p_validate.add_argument("--asymptotic-x", dest="asymptotic_x", type=float, default=1e6,
                            help="x at which the asymptotic branch agreement is probed")
    return parser


_COMMANDS = {
    "rates": cmd_rates,
    "force": cmd_force,
    "steady": cmd_steady,
    "sweep": cmd_sweep,
    "profile": cmd_profile,
    "validate": cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.dump_config:
            _emit(json.dumps(cfg.as_dict(), sort_keys=True, indent=2), args)
            return 0
        return _COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
