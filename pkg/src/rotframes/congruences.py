"""Rotating-observer congruences and the coordinate maps that define them.

Three families share the angular-rate parameter omega of the rotation and
the light speed c:

* ``gal``: the classical rotating frame, phi' = phi - omega t. Its fixed
  points move at v = omega rho, so they only exist inside the light
  cylinder rho < c / omega.
* ``tt``: the Trocheris-Takeno map, a radius-dependent boost of the
  (c t, rho phi) sector with rapidity lambda = rho omega / c. Fixed
  points move at v = c tanh(lambda) < c at every radius; there is no
  horizon.
* ``mtt``: the modified Trocheris-Takeno family. Its fixed-point
  worldlines and timing are modelled here as identical to ``tt`` (see the
  README caveat); the identifier stays distinct so the two families can
  diverge if an explicit map is adopted later.

All operations are pure functions; a CongruenceSpec is immutable, so
parameter sweeps can evaluate concurrently without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DomainError, LightCylinderError
from .tensors import CONTRAVARIANT, Event, FourVector

GAL = "gal"
TT = "tt"
MTT = "mtt"
KINDS = (GAL, TT, MTT)


@dataclass(frozen=True)
class CongruenceSpec:
    """Which congruence to use, with its rotation rate and light speed.

    omega = 0 is accepted and describes the static congruence; it is only
    rejected by operations that need an actual revolution.
    """

    kind: str
    omega: float
    c: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.omega >= 0.0:
            raise ValueError(f"omega must be >= 0, got {self.omega}")
        if not self.c > 0.0:
            raise ValueError(f"c must be positive, got {self.c}")


def rapidity(rho: float, spec: CongruenceSpec) -> float:
    """Dimensionless boost parameter lambda = rho * omega / c."""
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho}")
    return rho * spec.omega / spec.c


def _check_inside_light_cylinder(rho: float, spec: CongruenceSpec) -> None:
    if rho * spec.omega >= spec.c:
        raise LightCylinderError(
            f"gal congruence undefined at rho = {rho}: rho * omega = "
            f"{rho * spec.omega} reaches c = {spec.c} (light cylinder)"
        )


def gal_map(e: Event, spec: CongruenceSpec) -> Event:
    """Rotating-frame coordinates of an event: phi' = phi - omega t."""
    return Event(e.t, e.rho, e.phi - spec.omega * e.t, e.z)


def gal_inverse(e: Event, spec: CongruenceSpec) -> Event:
    """Inverse rotating-frame map; same map with omega negated."""
    return Event(e.t, e.rho, e.phi + spec.omega * e.t, e.z)


def _tt_apply(e: Event, lam: float, c: float) -> Event:
    ch, sh = math.cosh(lam), math.sinh(lam)
    phi = e.phi * ch - e.t * (c / e.rho) * sh
    t = e.t * ch - e.phi * (e.rho / c) * sh
    return Event(t, e.rho, phi, e.z)


def tt_map(e: Event, spec: CongruenceSpec) -> Event:
    """Trocheris-Takeno coordinates of an event.

    At fixed rho this is a boost of the (c t, rho phi) plane with rapidity
    lambda = rho omega / c, so it preserves c^2 t^2 - rho^2 phi^2.
    """
    return _tt_apply(e, rapidity(e.rho, spec), spec.c)


def tt_inverse(e: Event, spec: CongruenceSpec) -> Event:
    """Inverse Trocheris-Takeno map; the same boost with lambda negated."""
    return _tt_apply(e, -rapidity(e.rho, spec), spec.c)


def _u_components(e: Event, spec: CongruenceSpec) -> np.ndarray:
    """Contravariant four-velocity components of the fixed point through e."""
    if spec.kind == GAL:
        _check_inside_light_cylinder(e.rho, spec)
        beta = spec.omega * e.rho / spec.c
        gamma = 1.0 / math.sqrt(1.0 - beta * beta)
        return np.array([gamma, 0.0, gamma * spec.omega, 0.0])
    lam = rapidity(e.rho, spec)
    return np.array([math.cosh(lam), 0.0, (spec.c / e.rho) * math.sinh(lam), 0.0])


def four_velocity(e: Event, spec: CongruenceSpec) -> FourVector:
    """Normalized tangent (u.u = c^2) to the congruence worldline through e."""
    return FourVector(_u_components(e, spec), CONTRAVARIANT)


def fixed_point_speed(rho: float, spec: CongruenceSpec) -> float:
    """Lab-frame speed of the congruence fixed point at radius rho."""
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho}")
    if spec.kind == GAL:
        _check_inside_light_cylinder(rho, spec)
        return spec.omega * rho
    return spec.c * math.tanh(rapidity(rho, spec))


def proper_time_rate(rho: float, spec: CongruenceSpec) -> float:
    """dtau/dt for the fixed point at radius rho.

    tt and mtt share one code path, so their values are bit-identical.
    """
    if spec.kind == GAL:
        if not rho > 0.0:
            raise DomainError(f"rho must be positive, got {rho}")
        _check_inside_light_cylinder(rho, spec)
        beta = spec.omega * rho / spec.c
        return math.sqrt(1.0 - beta * beta)
    return 1.0 / math.cosh(rapidity(rho, spec))


def revolution_period(rho: float, spec: CongruenceSpec) -> float:
    """Lab time for one full turn (delta phi = 2 pi) of the fixed point."""
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho}")
    if spec.omega == 0.0:
        raise DegenerateError("no revolution at omega = 0")
    if spec.kind == GAL:
        _check_inside_light_cylinder(rho, spec)
        return 2.0 * math.pi / spec.omega
    return 2.0 * math.pi * rho / (spec.c * math.tanh(rapidity(rho, spec)))
