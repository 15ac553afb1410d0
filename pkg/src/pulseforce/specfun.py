"""Numerically stable special functions for the closed-form expressions.

The recurring pattern is a Gaussian envelope multiplying modified Bessel
functions whose argument can exceed 1e15 at physical parameters, where the
unscaled I_nu overflow immediately.  Everything here works with the
exponentially scaled pair e^{-x} I_0(x), e^{-x} I_1(x) and log-space sums,
so products stay finite on and off resonance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import scipy.special as sp


@dataclass(frozen=True)
class ScaledBesselPair:
    """e^{-x} I_0(x) and e^{-x} I_1(x) at a common argument x >= 0."""

    i0_scaled: float
    i1_scaled: float
    x: float

    @property
    def sum_sq(self) -> float:
        """(e^{-x})^2 (I_0^2 + I_1^2)(x)."""
        return self.i0_scaled**2 + self.i1_scaled**2


def bessel_i_scaled(x: float) -> ScaledBesselPair:
    """Exponentially scaled modified Bessel functions of order 0 and 1.

    Valid on the non-negative real axis only; no overflow for any x.
    """
    if x < 0:
        raise ValueError("bessel_i_scaled requires x >= 0")
    return ScaledBesselPair(i0_scaled=float(sp.i0e(x)), i1_scaled=float(sp.i1e(x)), x=float(x))


def erf(x: float) -> float:
    """Error function (odd, |error| <= 1e-14 over the real line)."""
    return float(sp.erf(x))


def log_gaussian_bessel_product(a: float, b: float, sigma: float, order: int) -> float:
    """log of e^{-(a^2+b^2)/(4 sigma^2)} I_order(a b / (2 sigma^2)).

    Computed as -(a-b)^2/(4 sigma^2) + log(scaled Bessel), which cancels the
    large exponents exactly; finite wherever a, b, sigma > 0.
    """
    if a <= 0 or b <= 0 or sigma <= 0:
        raise ValueError("log_gaussian_bessel_product requires a, b, sigma > 0")
    if order not in (0, 1):
        raise ValueError("only orders 0 and 1 are supported")
    x = a * b / (2.0 * sigma**2)
    pair = bessel_i_scaled(x)
    scaled = pair.i0_scaled if order == 0 else pair.i1_scaled
    return -((a - b) ** 2) / (4.0 * sigma**2) + math.log(scaled)


def log_envelope_bessel_sum_sq(a: float, b: float, sigma: float) -> float:
    """log of e^{-(a^2+b^2)/(4 sigma^2)} [I_0^2 + I_1^2](a b / (4 sigma^2)).

    Same cancellation trick at the squared-Bessel argument a b/(4 sigma^2):
    the envelope collapses to e^{-(a-b)^2/(4 sigma^2)} times scaled terms.
    """
    if a <= 0 or b <= 0 or sigma <= 0:
        raise ValueError("log_envelope_bessel_sum_sq requires a, b, sigma > 0")
    pair = bessel_i_scaled(a * b / (4.0 * sigma**2))
    return -((a - b) ** 2) / (4.0 * sigma**2) + math.log(pair.sum_sq)
