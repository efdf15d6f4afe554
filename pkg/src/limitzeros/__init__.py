"""Limit zero-free regions of the independence polynomial.

Submodules:

- ``cardioid``: finite and limit cardioids, fixed points, known zero-free disks
- ``orbit``: the exponential semigroup and the hull of the orbit of 0
- ``gamma``: the explicit boundary curve through Lam = e
- ``graphs``: independence polynomials, ratios and the tree recursion
- ``raster``: pixel classification of the Lam-plane
"""
from .cardioid import (
    INFINITY, LIMIT, CardioidSpec, FixedPointData, SampledBoundary, ZeroFreeKind,
    cardioid_boundary, cardioid_contains, fixed_point, hausdorff_distance,
    known_zero_free_radius, real_contraction_derivative, real_interval, rescaled_boundary,
)
from .errors import (
    ArityMismatch, CertificationFailure, ConfigError, DegreeOverflow, DomainError,
    EmptyInput, NoConvergence, PoleError, TooLarge,
)
from .gamma import (
    GammaPoint, gamma_point, invariance_margins, solve_gamma, t_theta_polygon,
    theta_max_search, verify_parabolic,
)
from .geometry import ConvexPolygon
from .graphs import (
    FCompose, IndPolynomial, RatioPair, RootedGraph, compose_ratio, f_eval,
    gspec_to_tree, ind_poly, poly_roots, ratio, rescaled_ratio,
)
from .orbit import (
    IDENTITY, Compose, HullApproximation, HullStatus, Membership, OrbitConfig, WeightTuple,
    apply_E, classify_membership, eval_gspec, hull_iterate, star_convexity_probe,
    strict_invariant_candidate,
)
from .raster import PixelClass, RasterConfig, RasterGrid, classify_pixel, render

__version__ = "0.1.0"
