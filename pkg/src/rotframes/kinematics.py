"""Acceleration and vorticity of a timelike congruence.

The pipeline differentiates the four-velocity field numerically (central
differences, optionally with one Richardson extrapolation level), so it
works for any congruence supplied as u(event), not just the built-in
ones. Two independent routes produce the vorticity vector:

* direct: contract the permutation symbol with u and the comma
  derivatives of the lowered field,
      w^a = eps^{abgd} u_b d_g u_d / (2 c sqrt(-det g)),
* via the tensor: build w_ab from antisymmetrized covariant derivatives
  minus the acceleration bivector and contract the same way.

Connection and acceleration terms cancel under the eps-contraction with
u_b, so the routes agree to rounding plus differencing error; the test
suite leans on that as a cross-check. The prefactor uses the tangent
normalized to unit norm (u / c), which keeps the vorticity scalar an
angular rate per unit proper time for any value of c.

Sign conventions: antisymmetrization carries the factor 1/2, orientation
has eps(t, rho, phi, z) = +1, and with these choices the vorticity vector
of a rigidly rotating congruence points along +z. Only the magnitude is
convention-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .congruences import GAL, CongruenceSpec, _u_components
from .errors import DomainError, LightCylinderError
from .tensors import (
    CONTRAVARIANT,
    LEVI_CIVITA,
    Event,
    FourVector,
    _christoffel,
    metric_diag,
)

_EPS4 = LEVI_CIVITA.astype(float)

_METHODS = ("central", "extrapolated")


@dataclass(frozen=True)
class DerivativeConfig:
    """How to differentiate the velocity field.

    step = None picks 1e-4 * max(rho, 1) at the evaluation point, which
    balances the h^4 truncation of the extrapolated method against the
    eps/h rounding floor of the difference quotients. The extrapolated
    method applies one Richardson level to the central difference,
    cancelling the h^2 error term.
    """

    method: str = "extrapolated"
    step: float | None = None

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}, got {self.method!r}")
        if self.step is not None and not self.step > 0.0:
            raise ValueError(f"step must be positive, got {self.step}")

    def resolve_step(self, rho: float) -> float:
        return self.step if self.step is not None else 1e-4 * max(rho, 1.0)


@dataclass(frozen=True)
class VelocityField:
    """A congruence supplied directly as contravariant u(event).

    The callable must return the 4 contravariant components normalized to
    u.u = c^2 at each event it is given.
    """

    u: Callable[[Event], np.ndarray]
    c: float = 1.0


FieldLike = Union[CongruenceSpec, VelocityField]


@dataclass(frozen=True, eq=False)
class KinematicSample:
    """Velocity, acceleration and vorticity data at one event."""

    event: Event
    u: FourVector
    u_dot: FourVector
    vorticity_tensor: np.ndarray
    vorticity_vector: FourVector
    vorticity_scalar: float


def _resolve_field(spec: FieldLike):
    if isinstance(spec, VelocityField):
        return spec.u, spec.c
    return (lambda e: _u_components(e, spec)), spec.c


def _guard_stencil(spec: FieldLike, event: Event, h: float) -> None:
    if event.rho - h <= 0.0:
        raise DomainError(
            f"difference stencil leaves the chart: rho = {event.rho}, step = {h}"
        )
    if isinstance(spec, CongruenceSpec) and spec.kind == GAL and spec.omega > 0.0:
        if (event.rho + h) * spec.omega >= spec.c:
            raise DomainError(
                "difference stencil crosses the light cylinder: "
                f"rho + step = {event.rho + h}, c / omega = {spec.c / spec.omega}"
            )


def _fd_matrix(fn, event: Event, h: float, extrapolate: bool) -> np.ndarray:
    """D[a, b] = d f_a / d x^b for a 4-component field fn(event)."""
    cols = []
    for axis in range(4):
        d = (fn(event.shifted(axis, h)) - fn(event.shifted(axis, -h))) / (2.0 * h)
        if extrapolate:
            h2 = 0.5 * h
            d2 = (fn(event.shifted(axis, h2)) - fn(event.shifted(axis, -h2))) / (
                2.0 * h2
            )
            d = (4.0 * d2 - d) / 3.0
        cols.append(d)
    return np.stack(cols, axis=1)


def partial_derivatives_u(
    spec: FieldLike, event: Event, cfg: DerivativeConfig | None = None
) -> np.ndarray:
    """Comma derivatives of the lowered field: du[a, b] = d_b u_a.

    Rows index the component, columns the differentiation coordinate in
    the (t, rho, phi, z) order.
    """
    cfg = cfg or DerivativeConfig()
    u_fn, c = _resolve_field(spec)
    h = cfg.resolve_step(event.rho)
    _guard_stencil(spec, event, h)

    def lowered(e: Event) -> np.ndarray:
        return metric_diag(e.rho, c) * u_fn(e)

    return _fd_matrix(lowered, event, h, cfg.method == "extrapolated")


def _acceleration_components(
    spec: FieldLike, event: Event, cfg: DerivativeConfig
) -> np.ndarray:
    u_fn, c = _resolve_field(spec)
    h = cfg.resolve_step(event.rho)
    _guard_stencil(spec, event, h)
    du_up = _fd_matrix(u_fn, event, h, cfg.method == "extrapolated")
    u = u_fn(event)
    gam = _christoffel(event.rho)
    return du_up @ u + np.einsum("abg,b,g->a", gam, u, u)


def acceleration(
    spec: FieldLike, event: Event, cfg: DerivativeConfig | None = None
) -> FourVector:
    """Contravariant acceleration u_dot^a = u^b (d_b u^a + Gamma^a_bg u^g)."""
    cfg = cfg or DerivativeConfig()
    return FourVector(_acceleration_components(spec, event, cfg), CONTRAVARIANT)


def _vorticity_tensor_components(
    spec: FieldLike, event: Event, cfg: DerivativeConfig
) -> np.ndarray:
    u_fn, c = _resolve_field(spec)
    u_low = metric_diag(event.rho, c) * u_fn(event)
    du = partial_derivatives_u(spec, event, cfg)
    gam = _christoffel(event.rho)
    # cd[a, b] = covariant derivative of u_a along x^b
    cd = du - np.einsum("sab,s->ab", gam, u_low)
    ud_low = metric_diag(event.rho, c) * _acceleration_components(spec, event, cfg)
    asym = 0.5 * (cd - cd.T)
    bivec = 0.5 * (np.outer(ud_low, u_low) - np.outer(u_low, ud_low)) / (c * c)
    w = asym - bivec
    # store the 6 independent components so antisymmetry is exact
    out = np.zeros((4, 4))
    for i in range(4):
        for j in range(i + 1, 4):
            out[i, j] = w[i, j]
            out[j, i] = -w[i, j]
    return out


def vorticity_tensor(
    spec: FieldLike, event: Event, cfg: DerivativeConfig | None = None
) -> np.ndarray:
    """Covariant vorticity tensor w_ab, exactly antisymmetric.

    w_ab = (u_{a;b} - u_{b;a}) / 2 - (u_dot_a u_b - u_dot_b u_a) / (2 c^2);
    the acceleration term makes w_ab u^b vanish for any normalization.
    """
    cfg = cfg or DerivativeConfig()
    return _vorticity_tensor_components(spec, event, cfg)


def _eps_contract(u_low: np.ndarray, x: np.ndarray, c: float, rho: float) -> np.ndarray:
    # prefactor c / (2 sqrt(-det g)) applied to unit-normalized tangents,
    # i.e. 1 / (2 c^2 rho) on the c^2-normalized field
    pref = 1.0 / (2.0 * c * (c * rho))
    return pref * np.einsum("abgd,b,dg->a", _EPS4, u_low, x)


def vorticity_vector_direct(
    spec: FieldLike, event: Event, cfg: DerivativeConfig | None = None
) -> FourVector:
    """Vorticity vector from the permutation symbol and comma derivatives."""
    cfg = cfg or DerivativeConfig()
    u_fn, c = _resolve_field(spec)
    u_low = metric_diag(event.rho, c) * u_fn(event)
    du = partial_derivatives_u(spec, event, cfg)
    return FourVector(_eps_contract(u_low, du, c, event.rho), CONTRAVARIANT)


def vorticity_vector_from_tensor(
    spec: FieldLike, event: Event, cfg: DerivativeConfig | None = None
) -> FourVector:
    """Vorticity vector obtained by contracting the vorticity tensor.

    Must agree with the direct route: the connection and acceleration
    pieces of the tensor drop out under the eps-contraction with u.
    """
    cfg = cfg or DerivativeConfig()
    u_fn, c = _resolve_field(spec)
    u_low = metric_diag(event.rho, c) * u_fn(event)
    w = _vorticity_tensor_components(spec, event, cfg)
    return FourVector(_eps_contract(u_low, w, c, event.rho), CONTRAVARIANT)


def vorticity_scalar(
    spec: FieldLike, event: Event, cfg: DerivativeConfig | None = None
) -> float:
    """Magnitude sqrt(-w.w) of the (spacelike) vorticity vector."""
    cfg = cfg or DerivativeConfig()
    _, c = _resolve_field(spec)
    w = vorticity_vector_direct(spec, event, cfg).components
    norm2 = -float(w @ (metric_diag(event.rho, c) * w))
    return math.sqrt(max(norm2, 0.0))


def omega_closed_form(rho: float, spec: CongruenceSpec) -> float:
    """Closed-form vorticity scalar of the built-in congruences.

    gal: omega / (1 - omega^2 rho^2 / c^2), diverging at the light
    cylinder; tt and mtt: (c / 2 rho) (sinh(lam) cosh(lam) + lam) with
    lam = rho omega / c.
    """
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho}")
    if spec.kind == GAL:
        beta = spec.omega * rho / spec.c
        if beta >= 1.0:
            raise LightCylinderError(
                f"gal vorticity undefined at rho = {rho}: light cylinder reached"
            )
        return spec.omega / (1.0 - beta * beta)
    lam = rho * spec.omega / spec.c
    return (spec.c / (2.0 * rho)) * (math.sinh(lam) * math.cosh(lam) + lam)


def kinematic_sample(
    spec: FieldLike, event: Event, cfg: DerivativeConfig | None = None
) -> KinematicSample:
    """Evaluate the full kinematic state of the congruence at one event."""
    cfg = cfg or DerivativeConfig()
    u_fn, c = _resolve_field(spec)
    u = u_fn(event)
    u_dot = _acceleration_components(spec, event, cfg)
    w_tensor = _vorticity_tensor_components(spec, event, cfg)
    u_low = metric_diag(event.rho, c) * u
    du = partial_derivatives_u(spec, event, cfg)
    w_vec = _eps_contract(u_low, du, c, event.rho)
    norm2 = -float(w_vec @ (metric_diag(event.rho, c) * w_vec))
    return KinematicSample(
        event=event,
        u=FourVector(u, CONTRAVARIANT),
        u_dot=FourVector(u_dot, CONTRAVARIANT),
        vorticity_tensor=w_tensor,
        vorticity_vector=FourVector(w_vec, CONTRAVARIANT),
        vorticity_scalar=math.sqrt(max(norm2, 0.0)),
    )
