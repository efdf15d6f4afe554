"""Finite and limit cardioids, fixed points of Lam*exp(-Z), known zero-free disks.

The limit cardioid is C_inf = {-u e^{-u} : |u| < 1}: the parameters for which
E_Lam(Z) = Lam e^{-Z} has an attracting fixed point p = -u with multiplier u.
The degree-d cardioid C_d = {-d^d u / (u + d)^{d+1}} plays the same role for
z -> lam / (1 + z)^d, and d * C_d tends to C_inf.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from .errors import DomainError, EmptyInput, NoConvergence

INFINITY = math.inf


@dataclass(frozen=True)
class CardioidSpec:
    """``degree`` is an integer d >= 2 or :data:`INFINITY`."""

    degree: Union[int, float] = INFINITY

    def __post_init__(self):
        d = self.degree
        if d == INFINITY:
            return
        if isinstance(d, float) and d.is_integer():
            d = int(d)
            object.__setattr__(self, "degree", d)
        if not isinstance(d, (int, np.integer)) or isinstance(d, bool) or d < 2:
            raise ValueError(f"degree must be an integer >= 2 or INFINITY, got {d!r}")

    @property
    def is_limit(self):
        return self.degree == INFINITY


LIMIT = CardioidSpec(INFINITY)


@dataclass(frozen=True)
class FixedPointData:
    parameter: complex
    point: complex
    multiplier: complex


@dataclass(frozen=True, eq=False)
class SampledBoundary:
    points: np.ndarray
    closed: bool = True

    def __post_init__(self):
        p = np.array(self.points, dtype=complex).ravel()
        if self.closed and p.size < 3:
            raise ValueError("a closed boundary needs at least 3 points")
        p.setflags(write=False)
        object.__setattr__(self, "points", p)

    def __len__(self):
        return self.points.size


def _unit_samples(n):
    if n < 3:
        raise ValueError(f"need at least 3 samples, got {n}")
    return np.exp(2j * np.pi * np.arange(n) / n)


def cardioid_map(spec: CardioidSpec, u):
    """Lam(u) for the cardioid parameterization; vectorized over u."""
    u = np.asarray(u, dtype=complex)
    if spec.is_limit:
        return -u * np.exp(-u)
    d = int(spec.degree)
    # d^d / (u+d)^{d+1} = (1/d) / (1 + u/d)^{d+1}, which avoids overflow
    return -u / (d * (1 + u / d) ** (d + 1))


def cardioid_boundary(spec: CardioidSpec, n_samples: int) -> SampledBoundary:
    return SampledBoundary(cardioid_map(spec, _unit_samples(n_samples)))


def rescaled_boundary(d: int, n_samples: int) -> SampledBoundary:
    """The curve d * dC_d."""
    return SampledBoundary(d * cardioid_map(CardioidSpec(d), _unit_samples(n_samples)))


# ---------------------------------------------------------------- fixed points


def _newton(f, df, p, scale, max_steps=200, tol=1e-12):
    """Damped Newton; the step is halved while it fails to reduce |f|."""
    r = abs(f(p))
    for _ in range(max_steps):
        if r <= tol * scale:
            return p
        dp = f(p) / df(p)
        step = 1.0
        while True:
            q = p - step * dp
            try:
                rq = abs(f(q))
            except OverflowError:
                rq = math.inf
            if rq < r or step < 1e-10:
                break
            step *= 0.5
        p, r = q, rq
        if not math.isfinite(r):
            return None
    return p if r <= tol * scale else None


def fixed_point(lam: complex) -> FixedPointData:
    """The fixed point of Z -> lam e^{-Z} continuing p = 0 from lam = 0.

    Tries the seeds lam/(1+|lam|), 0.5, -0.5, 0.5i, -0.5i in turn.
    """
    lam = complex(lam)
    if lam == 0:
        return FixedPointData(lam, 0j, 0j)

    def f(p):
        return lam * cmath.exp(-p) - p

    def df(p):
        return -lam * cmath.exp(-p) - 1

    scale = max(1.0, abs(lam))
    for seed in (lam / (1 + abs(lam)), 0.5, -0.5, 0.5j, -0.5j):
        p = _newton(f, df, complex(seed), scale)
        if p is not None:
            break
    if (p is None or abs(p) >= 1) and abs(lam) <= math.e:
        # a seed may land on a repelling fixed point while the attracting
        # one (|p| < 1, on the branch through 0) exists
        q = _principal_fixed_point(lam)
        if q is not None and abs(q) < 1 and abs(f(q)) <= 1e-12 * scale:
            p = q
    if p is None:
        raise NoConvergence(f"no fixed point found for lam={lam}")
    return FixedPointData(lam, p, -p)


def _principal_fixed_point(lam: complex):
    """Solve p e^p = lam for |p| < 1 by Newton from the nearest boundary preimage.

    p -> p e^p is univalent on the unit disk, so a root there is unique.
    """
    u = np.exp(2j * np.pi * np.arange(256) / 256)
    k = int(np.argmin(np.abs(u * np.exp(u) - lam)))
    p = _newton(lambda p: p * cmath.exp(p) - lam, lambda p: (1 + p) * cmath.exp(p),
                0.99 * complex(u[k]), max(1.0, abs(lam)))
    return p


class ContainmentResult(NamedTuple):
    inside: bool
    diagnostic: str | None = None


def winding_number(curve: np.ndarray, z: complex) -> int:
    w = np.asarray(curve) - z
    if np.any(w == 0):
        return 0
    dphi = np.angle(np.roll(w, -1) / w)
    return int(round(dphi.sum() / (2 * np.pi)))


def cardioid_test(spec: CardioidSpec, lam: complex) -> ContainmentResult:
    lam = complex(lam)
    if not spec.is_limit:
        return ContainmentResult(winding_number(cardioid_boundary(spec, 4096).points, lam) != 0)
    if lam == 0:
        return ContainmentResult(True)
    try:
        p = fixed_point(lam).point
    except NoConvergence:
        if abs(lam) > math.e:
            return ContainmentResult(False, "no fixed point found; |lam| > e")
        return ContainmentResult(False, "fixed point solver did not converge")
    return ContainmentResult(p is not None and abs(p) < 1 - 1e-12)


def cardioid_contains(spec: CardioidSpec, lam: complex) -> bool:
    return cardioid_test(spec, lam).inside


# ---------------------------------------------------------------- known regions


class ZeroFreeKind(enum.Enum):
    SHEARER = "shearer"
    SEMIDISK = "semidisk"


def known_zero_free_radius(kind: ZeroFreeKind, d=INFINITY) -> float:
    """Radius of the classical zero-free disk (SHEARER) or right half-disk (SEMIDISK).

    For finite d these are in the lam-plane of degree-(d+1) graphs; the limit
    values are those of the rescaled Lam = d * lam.
    """
    kind = ZeroFreeKind(kind)
    if d == INFINITY:
        return math.exp(-1) if kind is ZeroFreeKind.SHEARER else 7 * math.pi / 16
    d = int(d)
    if d < 2:
        raise ValueError("d must be >= 2")
    if kind is ZeroFreeKind.SHEARER:
        return d ** d / (d + 1) ** (d + 1)
    return 7 / 8 * math.tan(math.pi / (2 * d))


def real_interval(spec: CardioidSpec, v_trace: bool = False):
    """Real trace of the cardioid as (left, right), an open interval.

    With ``v_trace`` (limit case only) returns the closed half-line
    [-1/e, inf) of parameters whose semigroup orbit stays bounded.
    """
    if spec.is_limit:
        if v_trace:
            return (-math.exp(-1), math.inf)
        return (-math.exp(-1), math.e)
    if v_trace:
        raise ValueError("v_trace is defined for the limit cardioid only")
    d = int(spec.degree)
    return (-(d ** d) / (d + 1) ** (d + 1), d ** d / (d - 1) ** (d + 1))


def real_contraction_derivative(lam: float, x: float) -> float:
    """Derivative of the logarithmic conjugate of Z -> lam e^{-Z} on [0, inf).

    Its modulus stays below 1, which makes the conjugate a contraction.
    """
    lam, x = float(lam), float(x)
    if not 0 < lam < math.e:
        raise DomainError(f"lam must lie in (0, e), got {lam}")
    if x < 0:
        raise DomainError(f"x must be non-negative, got {x}")
    ex = math.exp(x)
    try:
        tail = math.exp(ex - 1) / lam
    except OverflowError:
        return -0.0
    return -ex / (1 + tail)


def hausdorff_distance(a, b) -> float:
    """Hausdorff distance between two finite point sets.

    Samples of curves give a numerical estimate of the distance between the
    curves, not a certified bound.
    """
    pa = np.asarray(a.points if isinstance(a, SampledBoundary) else a, dtype=complex).ravel()
    pb = np.asarray(b.points if isinstance(b, SampledBoundary) else b, dtype=complex).ravel()
    if pa.size == 0 or pb.size == 0:
        raise EmptyInput("hausdorff_distance needs non-empty point sets")
    xa = np.column_stack([pa.real, pa.imag])
    xb = np.column_stack([pb.real, pb.imag])
    return max(directed_hausdorff(xa, xb, seed=0)[0], directed_hausdorff(xb, xa, seed=0)[0])
