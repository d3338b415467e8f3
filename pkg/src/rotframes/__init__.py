"""Rotating-observer congruences in flat spacetime.

The package defines three families of rotating observers (rigid ``gal``,
Trocheris-Takeno ``tt`` and its modified variant ``mtt``), computes their
kinematic invariants (acceleration, vorticity tensor and vector, scalar
rotation rate) and verifies gyroscope precession per revolution with a
Fermi-Walker transport integrator. Numerically it demonstrates that
different congruence definitions give different precession values.
"""

from .congruences import (
    GAL,
    KINDS,
    MTT,
    TT,
    CongruenceSpec,
    fixed_point_speed,
    four_velocity,
    gal_inverse,
    gal_map,
    proper_time_rate,
    rapidity,
    revolution_period,
    tt_inverse,
    tt_map,
)
from .errors import (
    ConstraintDriftError,
    DegenerateError,
    DomainError,
    LightCylinderError,
    RotframesError,
    VarianceError,
)
from .kinematics import (
    DerivativeConfig,
    KinematicSample,
    VelocityField,
    acceleration,
    kinematic_sample,
    omega_closed_form,
    partial_derivatives_u,
    vorticity_scalar,
    vorticity_tensor,
    vorticity_vector_direct,
    vorticity_vector_from_tensor,
)
from .tensors import (
    CONTRAVARIANT,
    COVARIANT,
    LEVI_CIVITA,
    Event,
    FourVector,
    MetricAt,
    christoffel_at,
    dot,
    levi_civita,
    lower_index,
    metric_at,
    raise_index,
)
from .transport import (
    FwTrajectory,
    PrecessionReport,
    SpinState,
    Worldline,
    compare_congruences,
    corotating_dyad,
    fw_step,
    fw_transport,
    measure_precession_angle,
    precession_per_revolution,
    proper_period,
    worldline,
)

__version__ = "0.1.0"

__all__ = [
    "CONTRAVARIANT",
    "COVARIANT",
    "CongruenceSpec",
    "ConstraintDriftError",
    "DegenerateError",
    "DerivativeConfig",
    "DomainError",
    "Event",
    "FourVector",
    "FwTrajectory",
    "GAL",
    "KINDS",
    "KinematicSample",
    "LEVI_CIVITA",
    "LightCylinderError",
    "MTT",
    "MetricAt",
    "PrecessionReport",
    "RotframesError",
    "SpinState",
    "TT",
    "VarianceError",
    "VelocityField",
    "Worldline",
    "acceleration",
    "christoffel_at",
    "compare_congruences",
    "corotating_dyad",
    "dot",
    "fixed_point_speed",
    "four_velocity",
    "fw_step",
    "fw_transport",
    "gal_inverse",
    "gal_map",
    "kinematic_sample",
    "levi_civita",
    "lower_index",
    "measure_precession_angle",
    "metric_at",
    "omega_closed_form",
    "partial_derivatives_u",
    "precession_per_revolution",
    "proper_period",
    "proper_time_rate",
    "raise_index",
    "rapidity",
    "revolution_period",
    "tt_inverse",
    "tt_map",
    "vorticity_scalar",
    "vorticity_tensor",
    "vorticity_vector_direct",
    "vorticity_vector_from_tensor",
    "worldline",
]
