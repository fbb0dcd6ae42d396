"""Square/disc and rectangle/ellipse mappings, image elliptification and grid diagrams."""

__version__ = "0.1.0"

from .eccentric import RectSpec, ellipse_to_rect, rect_to_ellipse
from .elliptic import jacobi_cn, k_e, legendre_f
from .errors import (
    CapabilityError,
    ConvergenceError,
    DomainError,
    MappingError,
    NonMonotoneError,
    NumericError,
    ParamError,
    SingularJacobianError,
)
from .inversion import InversionConfig, invert_newton2d, invert_radial
from .mappings import (
    DiscPoint,
    Kind,
    Mapping,
    SquarePoint,
    SquircleParams,
    blended,
    blended_grid_forward,
    blended_grid_inverse,
    continuum_value,
    disc_to_square,
    get_mapping,
    is_rampant,
    lame_parametric_disc_to_square,
    lame_radial_forward,
    list_mappings,
    modulator,
    square_to_disc,
)

__all__ = [
    "CapabilityError",
    "ConvergenceError",
    "DiscPoint",
    "DomainError",
    "InversionConfig",
    "Kind",
    "Mapping",
    "MappingError",
    "NonMonotoneError",
    "NumericError",
    "ParamError",
    "RectSpec",
    "SingularJacobianError",
    "SquarePoint",
    "SquircleParams",
    "blended",
    "blended_grid_forward",
    "blended_grid_inverse",
    "continuum_value",
    "disc_to_square",
    "ellipse_to_rect",
    "get_mapping",
    "invert_newton2d",
    "invert_radial",
    "is_rampant",
    "jacobi_cn",
    "k_e",
    "lame_parametric_disc_to_square",
    "lame_radial_forward",
    "legendre_f",
    "list_mappings",
    "modulator",
    "rect_to_ellipse",
    "square_to_disc",
]
