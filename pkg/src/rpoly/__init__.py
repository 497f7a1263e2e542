"""Monte Carlo laboratory for random polytopes in volume-one convex bodies."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DataError,
    DegenerateInputError,
    InvalidInputError,
    RPolyError,
)
from .geometry import (
    Body,
    Cap,
    ball,
    cap_for_volume,
    cap_volume,
    contains,
    cube,
    ellipsoid,
    make_body,
    orientation,
    simplex,
    support,
)
from .hull import (
    Hull,
    InsertionDelta,
    brute_force_hull,
    build_hull,
    face_count,
    hull_volume,
    insert_point,
    visible_facets,
    visible_vertex_count,
)
from .sampling import (
    CoupledPair,
    RngStream,
    coupled_pair,
    sample_poisson_count,
    sample_uniform,
    sample_uniform_batch,
)

__all__ = [
    "__version__",
    "RPolyError",
    "InvalidInputError",
    "DegenerateInputError",
    "DataError",
    "ConfigError",
    "Body",
    "Cap",
    "make_body",
    "ball",
    "cube",
    "simplex",
    "ellipsoid",
    "orientation",
    "contains",
    "support",
    "cap_volume",
    "cap_for_volume",
    "Hull",
    "InsertionDelta",
    "build_hull",
    "brute_force_hull",
    "hull_volume",
    "face_count",
    "visible_facets",
    "visible_vertex_count",
    "insert_point",
    "RngStream",
    "CoupledPair",
    "sample_uniform",
    "sample_uniform_batch",
    "sample_poisson_count",
    "coupled_pair",
]
