"""Flat-spacetime tensor algebra in cylindrical coordinates.

Coordinates are ordered (t, rho, phi, z), indices 0..3. The metric is
diag(c^2, -1, -rho^2, -1), signature (+, -, -, -), so timelike squared
norms are positive and a normalized four-velocity satisfies u.u = c^2.
The chart degenerates on the axis; every event must carry rho > 0.
Orientation is fixed by eps(t, rho, phi, z) = +1.

Everything in this module is a pure function of its arguments and safe to
call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import DomainError, VarianceError

T, RHO, PHI, Z = 0, 1, 2, 3
COORD_NAMES = ("t", "rho", "phi", "z")

CONTRAVARIANT = "contravariant"
COVARIANT = "covariant"


def _permutation_symbol() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4), dtype=np.int8)
    for perm in permutations(range(4)):
        inversions = sum(
            1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j]
        )
        eps[perm] = -1 if inversions % 2 else 1
    return eps


#: Rank-4 permutation symbol with LEVI_CIVITA[0, 1, 2, 3] = +1.
LEVI_CIVITA = _permutation_symbol()
LEVI_CIVITA.setflags(write=False)


def levi_civita(i: int, j: int, k: int, l: int) -> int:
    """Permutation sign of (i, j, k, l); zero when any index repeats."""
    for idx in (i, j, k, l):
        if not 0 <= idx <= 3:
            raise IndexError(f"tensor index {idx} outside 0..3")
    return int(LEVI_CIVITA[i, j, k, l])


@dataclass(frozen=True)
class Event:
    """A spacetime point (t, rho, phi, z) with rho strictly off the axis."""

    t: float
    rho: float
    phi: float
    z: float = 0.0

    def __post_init__(self):
        if not self.rho > 0.0:
            raise DomainError(f"rho must be positive, got {self.rho}")

    def coords(self) -> np.ndarray:
        return np.array([self.t, self.rho, self.phi, self.z])

    def shifted(self, axis: int, delta: float) -> "Event":
        """New event with one coordinate displaced by delta."""
        c = [self.t, self.rho, self.phi, self.z]
        c[axis] += delta
        return Event(*c)


@dataclass(frozen=True, eq=False)
class FourVector:
    """Components of a four-vector in the (t, rho, phi, z) basis.

    The variance tag records whether the stored components are
    contravariant (index up) or covariant (index down).
    """

    components: np.ndarray
    variance: str = CONTRAVARIANT

    def __post_init__(self):
        arr = np.asarray(self.components, dtype=float)
        if arr.shape != (4,):
            raise ValueError("FourVector needs exactly 4 components")
        object.__setattr__(self, "components", arr)
        if self.variance not in (CONTRAVARIANT, COVARIANT):
            raise ValueError(f"unknown variance {self.variance!r}")


@dataclass(frozen=True, eq=False)
class MetricAt:
    """Metric, inverse metric and determinant data at one event."""

    g: np.ndarray
    g_inv: np.ndarray
    det_g: float
    sqrt_neg_det: float


def metric_diag(rho: float, c: float) -> np.ndarray:
    """Diagonal (g_tt, g_rr, g_pp, g_zz) of the metric at radius rho."""
    if not rho > 0.0:
        raise DomainError(f"rho must be positive, got {rho}")
    if not c > 0.0:
        raise DomainError(f"c must be positive, got {c}")
    return np.array([c * c, -1.0, -(rho * rho), -1.0])


def metric_at(event: Event, c: float = 1.0) -> MetricAt:
    """Metric data at an event; sqrt(-det g) = c * rho in this chart."""
    diag = metric_diag(event.rho, c)
    return MetricAt(
        g=np.diag(diag),
        g_inv=np.diag(1.0 / diag),
        det_g=float(np.prod(diag)),
        sqrt_neg_det=c * event.rho,
    )


def _christoffel(rho: float) -> np.ndarray:
    gam = np.zeros((4, 4, 4))
    gam[RHO, PHI, PHI] = -rho
    gam[PHI, RHO, PHI] = 1.0 / rho
    gam[PHI, PHI, RHO] = 1.0 / rho
    return gam


def christoffel_at(event: Event, c: float = 1.0) -> np.ndarray:
    """Connection coefficients Gamma[a, b, g] = Gamma^a_{bg}.

    Only Gamma^rho_{phi phi} = -rho and Gamma^phi_{rho phi} = 1/rho (and
    its mirror) are nonzero in this chart; c drops out entirely.
    """
    if not c > 0.0:
        raise DomainError(f"c must be positive, got {c}")
    return _christoffel(event.rho)


def lower_index(v: FourVector, m: MetricAt) -> FourVector:
    """Lower v^a to v_a = g_ab v^b."""
    if v.variance == COVARIANT:
        raise VarianceError("components are already covariant")
    return FourVector(m.g @ v.components, COVARIANT)


def raise_index(v: FourVector, m: MetricAt) -> FourVector:
    """Raise v_a to v^a = g^ab v_b."""
    if v.variance == CONTRAVARIANT:
        raise VarianceError("components are already contravariant")
    return FourVector(m.g_inv @ v.components, CONTRAVARIANT)


def dot(a: FourVector, b: FourVector, m: MetricAt) -> float:
    """Inner product g_ab a^a b^b, converting stored variance as needed."""
    av = a.components if a.variance == CONTRAVARIANT else m.g_inv @ a.components
    bv = b.components if b.variance == CONTRAVARIANT else m.g_inv @ b.components
    return float(av @ m.g @ bv)
