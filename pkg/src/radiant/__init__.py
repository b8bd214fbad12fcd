"""Photon emission from a perfectly reflecting plate under a traveling-wave deformation."""

__version__ = "0.1.0"

from .kinematics import (  # noqa: E402
    AngularWindow,
    MirrorDrive,
    PerturbativeWarning,
    ReducedPoint,
    RegimeId,
    RegimeTrajectory,
    admissible,
    classify,
    phi_critical,
    phi_max,
    reduce,
    theta_bounds,
    trajectory,
    window,
)
from .radiance import (  # noqa: E402
    DiscreteModes,
    EmissionQuery,
    Mode,
    TabulatedDensity,
    angular_power_general,
    angular_power_mono,
    kernel_R,
)
from .spectrum import (  # noqa: E402
    EnergyReport,
    McConfig,
    QuadratureConfig,
    SpectrumCurve,
    energy_report,
    k0zero_reference,
    mc_oracle,
    spectral_density,
    spectrum_sweep,
)
