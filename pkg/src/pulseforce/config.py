"""Flat key-value (JSON) run configuration shared by the CLI commands.

Keys: d, omega0, mass, sigma, k0_tilde, photon_content ({"fock": n} or
{"coherent_alpha_sq": x}), temperature, n_atoms, unit_system ("si" or
"natural").  Unknown keys are rejected; all physical values go through the
model constructors, so their invariants apply before any computation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .model import (
    AtomSpec,
    Coherent,
    Fock,
    PhotonContent,
    PhysicalConstants,
    PulseSpec,
    hydrogen_like_atom,
)


class ConfigError(ValueError):
    """Bad configuration file or option combination."""


_KNOWN_KEYS = {
    "d",
    "omega0",
    "mass",
    "sigma",
    "k0_tilde",
    "photon_content",
    "temperature",
    "n_atoms",
    "unit_system",
}

# Illustrative hydrogen-like defaults; not measured values for any real line.
_DEFAULT_ATOM = hydrogen_like_atom()
DEFAULTS = {
    "d": _DEFAULT_ATOM.dipole_d,
    "omega0": _DEFAULT_ATOM.omega0,
    "mass": _DEFAULT_ATOM.mass,
    "sigma": 0.1,
    "k0_tilde": None,  # resolved to omega0/c (resonant) when absent
    "photon_content": {"fock": 1},
    "temperature": 300.0,
    "n_atoms": 1,
    "unit_system": "si",
}


@dataclass(frozen=True)
class RunConfig:
    atom: AtomSpec
    pulse: PulseSpec
    temperature: float
    n_atoms: int
    constants: PhysicalConstants
    unit_system: str

    def as_dict(self) -> dict:
        if isinstance(self.pulse.content, Fock):
            content = {"fock": self.pulse.content.n}
        else:
            content = {"coherent_alpha_sq": self.pulse.content.alpha_sq}
        return {
            "d": self.atom.dipole_d,
            "omega0": self.atom.omega0,
            "mass": self.atom.mass,
            "sigma": self.pulse.sigma,
            "k0_tilde": self.pulse.k0_tilde,
            "photon_content": content,
            "temperature": self.temperature,
            "n_atoms": self.n_atoms,
            "unit_system": self.unit_system,
        }


def _parse_content(raw) -> PhotonContent:
    if not isinstance(raw, dict) or len(raw) != 1:
        raise ConfigError(
            'photon_content must be {"fock": n} or {"coherent_alpha_sq": x}'
        )
    key, value = next(iter(raw.items()))
    try:
        if key == "fock":
            f = float(value)
            if f != int(f):
                raise ValueError("fock photon number must be an integer")
            return Fock(int(f))
        if key == "coherent_alpha_sq":
            return Coherent(float(value))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid photon_content: {exc}") from exc
    raise ConfigError(f"unknown photon_content key {key!r}")


def load_config_file(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON (line {exc.lineno}): {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return raw


def resolve_config(file_values: dict | None = None, overrides: dict | None = None) -> RunConfig:
    """Defaults < config file < explicit overrides (CLI flags)."""
    merged = dict(DEFAULTS)
    for layer in (file_values or {}), (overrides or {}):
        for key, value in layer.items():
            if key not in _KNOWN_KEYS:
                raise ConfigError(f"unknown config key {key!r}")
            if value is not None:
                merged[key] = value

    unit_system = merged["unit_system"]
    if unit_system == "si":
        constants = PhysicalConstants.si()
    elif unit_system == "natural":
        constants = PhysicalConstants.natural()
    else:
        raise ConfigError("unit_system must be 'si' or 'natural'")

    try:
        atom = AtomSpec(
            dipole_d=float(merged["d"]),
            omega0=float(merged["omega0"]),
            mass=float(merged["mass"]),
        )
        k0 = merged["k0_tilde"]
        pulse = PulseSpec(
            sigma=float(merged["sigma"]),
            k0_tilde=float(k0) if k0 is not None else atom.omega0 / constants.c,
            content=_parse_content(merged["photon_content"]),
        )
        temperature = float(merged["temperature"])
        if temperature < 0:
            raise ValueError("temperature must be >= 0")
        n_atoms = int(merged["n_atoms"])
        if n_atoms < 1:
            raise ValueError("n_atoms must be >= 1")
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

    return RunConfig(
        atom=atom,
        pulse=pulse,
        temperature=temperature,
        n_atoms=n_atoms,
        constants=constants,
        unit_system=unit_system,
    )
