"""Semigroup dynamics of Z -> Lam * exp(-sum s_i Z_i) and the hull of the orbit of 0.

The set V_hat(Lam) is the closed convex hull of {g(0)} over all compositions g
of the maps E_{Lam,s}.  It is the smallest closed convex set containing 0 that
is forward invariant under E_Lam(Z) = Lam exp(-Z), so it is approximated from
inside by K_0 = hull{0, Lam}, K_{n+1} = hull(K_n u E_Lam(dK_n)).

Sampling only the boundary is enough: E_Lam is holomorphic and open, so every
extreme point of hull(E_Lam(K)) is the image of a boundary point of K.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import _kernels
from .errors import ArityMismatch, CertificationFailure, ConfigError, DomainError
from .geometry import ConvexPolygon, direction_table

# ---------------------------------------------------------------- semigroup


@dataclass(frozen=True)
class WeightTuple:
    weights: tuple

    def __post_init__(self):
        w = tuple(float(s) for s in self.weights)
        if not w:
            raise ValueError("weight tuple must be non-empty")
        if any(not math.isfinite(s) or s < 0 for s in w):
            raise ValueError(f"weights must be finite and non-negative: {w}")
        if sum(w) > 1 + 1e-12:
            raise ValueError(f"weights sum to {sum(w)} > 1")
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.weights)


@dataclass(frozen=True)
class Identity:
    def __repr__(self):
        return "IDENTITY"


IDENTITY = Identity()


@dataclass(frozen=True)
class Compose:
    """The map Z -> E_{Lam,w}(g_1(Z), ..., g_k(Z))."""

    weights: WeightTuple
    children: tuple

    def __post_init__(self):
        w = self.weights if isinstance(self.weights, WeightTuple) else WeightTuple(tuple(self.weights))
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) != len(w):
            raise ArityMismatch(f"{len(w)} weights but {len(self.children)} children")


GSpec = Union[Identity, Compose]


def E_map(lam):
    """The generator E_Lam as a GSpec."""
    return Compose(WeightTuple((1.0,)), (IDENTITY,))


def apply_E(lam: complex, w: WeightTuple, Z: Sequence[complex]) -> complex:
    if not isinstance(w, WeightTuple):
        w = WeightTuple(tuple(w))
    Z = list(Z) if isinstance(Z, (list, tuple, np.ndarray)) else [Z]
    if len(Z) != len(w):
        raise ArityMismatch(f"{len(w)} weights but {len(Z)} arguments")
    return complex(lam) * cmath.exp(-sum(s * complex(z) for s, z in zip(w.weights, Z)))


def eval_gspec(g: GSpec, lam: complex, Z: complex) -> complex:
    if isinstance(g, Identity):
        return complex(Z)
    return apply_E(lam, g.weights, [eval_gspec(c, lam, Z) for c in g.children])


# ---------------------------------------------------------------- hull iteration


class HullStatus(enum.Enum):
    CONVERGED = "converged"
    ESCAPED = "escaped"
    MAX_ITER = "max_iter"
    # 0 became an interior point of K_n; since K_n only grows, 0 is interior
    # to V_hat as well, and iterating further cannot change the verdict
    ORIGIN_INTERIOR = "origin_interior"


class Membership(enum.Enum):
    MEMBER = "member"
    EXCLUDED_ESCAPE = "excluded_escape"
    EXCLUDED_INTERIOR = "excluded_interior"
    UNDECIDED = "undecided"

    @property
    def excluded(self):
        return self in (Membership.EXCLUDED_ESCAPE, Membership.EXCLUDED_INTERIOR)


@dataclass(frozen=True)
class OrbitConfig:
    """Knobs of the hull iteration.

    ``escape_radius`` is measured beyond |Lam|: the hull escapes once its
    diameter exceeds ``escape_radius + |Lam|`` (a bare radius would flag every
    real Lam > escape_radius, whose hull is the segment [0, Lam]).
    ``imag_escape`` is the length of imaginary-axis chord that forces escape.
    """

    boundary_samples: int = 1024
    max_iter: int = 500
    escape_radius: float = 50.0
    stab_tol: float = 1e-9
    interior_tol: float = 1e-4
    n_directions: int = 1024
    imag_escape: float = 2.0 * math.pi
    early_interior_exit: bool = True

    def __post_init__(self):
        for name in ("boundary_samples", "max_iter", "n_directions"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v <= 0:
                raise ConfigError(f"{name} must be a positive integer, got {v!r}")
        for name in ("escape_radius", "stab_tol", "interior_tol", "imag_escape"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ConfigError(f"{name} must be a positive real, got {v!r}")
        if self.n_directions % 2:
            raise ConfigError("n_directions must be even")


DEFAULT_CONFIG = OrbitConfig()


@dataclass(frozen=True, eq=False)
class HullApproximation:
    polygon: ConvexPolygon
    status: HullStatus
    iterations: int
    origin_clearance: float
    diameter: float
    history: tuple = field(default=(), repr=False)


def _complex(x, y):
    # x + 1j*y turns an infinite coordinate into nan
    z = np.empty(x.size, dtype=complex)
    z.real, z.imag = x, y
    return z


_STATUS = {
    _kernels.CONVERGED: HullStatus.CONVERGED,
    _kernels.ESCAPED: HullStatus.ESCAPED,
    _kernels.ORIGIN_INTERIOR: HullStatus.ORIGIN_INTERIOR,
}


def hull_iterate(lam: complex, cfg: OrbitConfig | None = None, *, keep_history=False) -> HullApproximation:
    cfg = cfg or DEFAULT_CONFIG
    lam = complex(lam)
    # plain floats; numba would otherwise compile a second specialization
    lr, li = float(lam.real), float(lam.imag)
    escape = float(cfg.escape_radius + abs(lam))
    cos_t, sin_t = direction_table(cfg.n_directions)
    half = cfg.n_directions // 2

    vx, vy = _kernels.convex_hull(np.array([0.0, lr]), np.array([0.0, li]))
    fresh = np.ones(vx.size, dtype=np.bool_)
    h = _kernels.support(vx, vy, cos_t, sin_t)
    history = [ConvexPolygon(_complex(vx, vy))] if keep_history else []

    status = HullStatus.MAX_ITER
    it = 0
    step = 1 if keep_history else cfg.max_iter
    while it < cfg.max_iter:
        vx, vy, fresh, h, code, taken = _kernels.iterate(
            vx, vy, fresh, h, lr, li, cfg.boundary_samples, min(step, cfg.max_iter - it),
            escape, float(cfg.imag_escape), float(cfg.stab_tol), float(cfg.interior_tol),
            bool(cfg.early_interior_exit), cos_t, sin_t)
        it += taken
        if keep_history:
            history.append(ConvexPolygon(_complex(vx, vy)))
        if code != _kernels.RUNNING:
            status = _STATUS[code]
            break

    poly = ConvexPolygon(_complex(vx, vy))
    diam = float((h[:half] + h[half:]).max()) if vx.size > 1 else 0.0
    if not math.isfinite(diam):
        diam = math.inf
    return HullApproximation(
        polygon=poly,
        status=status,
        iterations=it,
        origin_clearance=float(_kernels.origin_clearance(vx, vy)),
        diameter=diam,
        history=tuple(history),
    )


def membership_from_hull(approx: HullApproximation, cfg: OrbitConfig | None = None) -> Membership:
    cfg = cfg or DEFAULT_CONFIG
    if approx.status is HullStatus.ESCAPED:
        return Membership.EXCLUDED_ESCAPE
    if approx.status is HullStatus.ORIGIN_INTERIOR:
        return Membership.EXCLUDED_INTERIOR
    if approx.status is HullStatus.MAX_ITER:
        return Membership.UNDECIDED
    if approx.origin_clearance > cfg.interior_tol * approx.diameter:
        return Membership.EXCLUDED_INTERIOR
    return Membership.MEMBER


def classify_membership(lam: complex, cfg: OrbitConfig | None = None) -> Membership:
    return membership_from_hull(hull_iterate(lam, cfg), cfg)


def star_convexity_probe(lam: complex, ts: Sequence[float], cfg: OrbitConfig | None = None):
    return [classify_membership(t * complex(lam), cfg) for t in ts]


# ---------------------------------------------------------------- strict invariance


def _image_clearance(poly: ConvexPolygon, lam: complex, n_samples: int) -> float:
    z = np.concatenate([poly.vertices, poly.boundary_samples(n_samples)])
    return float(poly.signed_clearance(lam * np.exp(-z)).min())


def strict_invariant_candidate(
    lam: complex,
    t: float = 1.1,
    cfg: OrbitConfig | None = None,
    *,
    check_samples: int = 8192,
) -> ConvexPolygon:
    """A convex set K with E_Lam(K) compactly inside K, built from V_hat(t Lam).

    K = V_hat(t Lam) / t' with t' = (1 + t) / 2.  The image of 0 is Lam, which
    sits on the radial edge of K through Lam, so K itself is usually only
    weakly invariant; the fix is to add the vertex r e^{i(alpha + eps)} just
    past the outer end r e^{i alpha} of that edge and shrink eps until the
    sampled images all have positive clearance.

    Raises ``DomainError`` for real Lam and ``CertificationFailure`` when
    t Lam is not a member or strictness cannot be confirmed.
    """
    cfg = cfg or DEFAULT_CONFIG
    lam = complex(lam)
    if lam.imag == 0.0:
        raise DomainError("strict_invariant_candidate needs non-real Lam")
    if not t > 1:
        raise DomainError(f"t must exceed 1, got {t}")
    approx = hull_iterate(t * lam, cfg)
    verdict = membership_from_hull(approx, cfg)
    if verdict is not Membership.MEMBER:
        raise CertificationFailure(f"t*Lam is {verdict.value}, not a member")
    tp = 0.5 * (1.0 + t)
    base = approx.polygon.scaled(1.0 / tp)
    if base.is_degenerate:
        raise CertificationFailure("hull of t*Lam has empty interior")
    best = _image_clearance(base, lam, check_samples)
    if best > 0:
        return base

    # outer end of the radial edge carrying arg(Lam)
    v = base.vertices
    i0 = int(np.argmin(np.abs(v)))
    nbrs = [v[(i0 - 1) % v.size], v[(i0 + 1) % v.size]]
    arg = cmath.phase(lam)
    end = min(nbrs, key=lambda z: abs(cmath.phase(z / cmath.exp(1j * arg))))
    r, alpha = abs(end), cmath.phase(end)
    eps = 1e-2
    while eps >= 1e-8:
        for sign in (1.0, -1.0):
            extra = r * cmath.exp(1j * (alpha + sign * eps))
            if base.distance(extra) == 0.0:
                continue  # rotated into the set, wrong side
            cand = ConvexPolygon.hull(np.append(v, extra))
            c = _image_clearance(cand, lam, check_samples)
            if c > 0:
                return cand
            best = max(best, c)
        eps *= 0.5
    raise CertificationFailure("strict invariance not certified", min_clearance=best)
