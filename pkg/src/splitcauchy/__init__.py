"""Split-complex analysis and a numerical hyperbolic Cauchy integral formula."""

from .splitnum import (
    BiComplex, NonInvertibleError, NullCoords, SplitComplex, E_MINUS, E_PLUS, J, ONE,
    bicomplex_embed, bicomplex_mul, conj, from_null, inverse, modulus, mul, norm, to_null,
)
from .wavefield import (
    CharacteristicData, WaveFunction, WindowProfile, apply_window, box_fd, bump_window,
    d_fd, dbar_fd, family, make_solution, product, project_characteristic,
)
from .cauchy_kernel import K, K_eps, K_minus, K_plus, K_shifted, K_windowed, KernelParams, LightConeError
from .contour import (
    HyperbolaContour, LimitSchedule, QuadratureConfig, QuadratureError, ReconstructionReport,
    build_contour, line_integral, poisson_limit_check, reconstruct, reconstruct_windowed,
    rectangle, segment_correction, stokes_residual,
)

__version__ = "0.1.0"
