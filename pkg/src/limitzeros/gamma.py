"""The boundary curve Gamma through Lam = e and the invariant regions T_theta.

For theta in [0, pi) let gamma = gamma(theta) solve gamma^2 - sin^2 gamma = theta^2.
Then Lam_hat(theta) = (gamma+theta)/sin(gamma) e^{(gamma-theta)cot gamma} e^{i theta}
traces a curve through e on which the map
H(Z) = E_Lam(E_{Lam,c}(Z)), c = c_hat(theta), has a parabolic fixed point
Z_hat(theta) (fixed, multiplier exactly 1).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .geometry import ConvexPolygon

HALF_PI = 0.5 * math.pi


def _x_minus_sin(g):
    # g - sin g loses all digits to cancellation for small g; use the series there
    if g < 0.5:
        term = g ** 3 / 6
        total = term
        g2 = g * g
        for k in range(2, 12):
            term *= -g2 / ((2 * k) * (2 * k + 1))
            total += term
        return total
    return g - math.sin(g)


def gamma_excess(g: float) -> float:
    """g^2 - sin(g)^2, accurate for small g."""
    return _x_minus_sin(g) * (g + math.sin(g))


def solve_gamma(theta: float) -> float:
    theta = float(theta)
    if not 0 <= theta < math.pi:
        raise DomainError(f"theta must lie in [0, pi), got {theta}")
    if theta == 0:
        return 0.0
    if theta < 1e-20:
        # g^4/3 - 2g^6/45 + ... = theta^2; the correction is below 1e-21 here,
        # and theta^2 itself would underflow further down
        return 3 ** 0.25 * math.sqrt(theta)
    t2 = theta * theta
    lo, hi = theta, math.pi - 1e-12
    # the excess increases on (0, pi): its derivative is 2g - sin 2g > 0
    while hi - lo > 1e-14 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if gamma_excess(mid) < t2:
            lo = mid
        else:
            hi = mid
        if mid in (lo, hi) and hi - lo <= 4e-16 * hi:
            break
    g = 0.5 * (lo + hi)
    for _ in range(2):
        dg = (gamma_excess(g) - t2) / _x_minus_sin(2 * g)
        if lo - 1e-14 <= g - dg <= hi + 1e-14:
            g -= dg
    return g


@dataclass(frozen=True)
class GammaPoint:
    theta: float
    gamma: float
    lambda_hat: complex
    c_hat: float
    z_hat: complex

    def conjugate(self) -> GammaPoint:
        """The mirror point on the conjugate curve (theta -> -theta)."""
        return GammaPoint(-self.theta, self.gamma, self.lambda_hat.conjugate(),
                          self.c_hat, self.z_hat.conjugate())


def gamma_point(theta: float) -> GammaPoint:
    g = solve_gamma(theta)
    theta = float(theta)
    if theta == 0:
        return GammaPoint(0.0, 0.0, complex(math.e), 1.0, 1 + 0j)
    cot = math.cos(g) / math.sin(g)
    ratio = (g + theta) / math.sin(g)
    lam = ratio * math.exp((g - theta) * cot) * cmath.exp(1j * theta)
    c = (g - theta) / (g + theta) * math.exp(2 * theta * cot)
    z = ratio * math.exp(-2 * theta * cot) * cmath.exp(-1j * g)
    return GammaPoint(theta, g, lam, c, z)


class ParabolicResiduals(NamedTuple):
    fixed_residual: float
    multiplier_residual: float


def H_map(lam: complex, c: float, z: complex) -> complex:
    return lam * cmath.exp(-lam * cmath.exp(-c * z))


def verify_parabolic(p: GammaPoint) -> ParabolicResiduals:
    inner = p.lambda_hat * cmath.exp(-p.c_hat * p.z_hat)
    h = p.lambda_hat * cmath.exp(-inner)
    dh = p.c_hat * inner * h
    return ParabolicResiduals(abs(h - p.z_hat), abs(dh - 1))


class InvarianceMargins(NamedTuple):
    ineq1_margin: float
    ineq2_margin: float
    spiral_peak: float


def _check_theta_half(theta):
    theta = float(theta)
    if not 0 < theta < HALF_PI:
        raise DomainError(f"theta must lie in (0, pi/2), got {theta}")
    g = solve_gamma(theta)
    if g >= HALF_PI:
        raise DomainError(f"gamma({theta}) = {g} is not below pi/2")
    return theta, g


def invariance_margins(theta: float) -> InvarianceMargins:
    """Slack in the two inequalities that make T_theta forward invariant.

    ``spiral_peak`` is the largest imaginary part reached by the image of
    the segment I_2; it always equals gamma + theta.
    """
    theta, g = _check_theta_half(theta)
    cot = math.cos(g) / math.sin(g)
    growth = math.exp((g - theta) * cot)
    m1 = 1 - math.sin(theta) / math.sin(g) * growth
    m2 = (HALF_PI - theta) - (g + theta) * growth
    lam_abs = (g + theta) / math.sin(g) * growth
    t_star = (g - theta) / (HALF_PI - theta)
    peak = lam_abs * math.exp(t_star * (theta - HALF_PI) * cot) * math.sin(theta + t_star * (HALF_PI - theta))
    return InvarianceMargins(m1, m2, peak)


@dataclass(frozen=True)
class TThetaRegion:
    theta: float
    segment_I1_end: complex
    segment_I2_end: complex
    truncation_re: float

    def polygon(self) -> ConvexPolygon:
        a, b, x = self.segment_I1_end, self.segment_I2_end, self.truncation_re
        return ConvexPolygon([0j, b, complex(x, b.imag), complex(x, a.imag), a])


def t_theta_region(theta: float, truncation_re: float | None = None) -> TThetaRegion:
    theta, g = _check_theta_half(theta)
    i1 = 1j * (theta + g)
    i2 = (HALF_PI - theta) / math.sin(g) * cmath.exp(-1j * g)
    if truncation_re is None:
        # the I_2 end runs off to the right as theta -> 0, so shift past it
        truncation_re = 3 * (abs(gamma_point(theta).lambda_hat) + math.pi) + max(i2.real, 0.0)
    if not truncation_re > max(i1.real, i2.real):
        raise DomainError("truncation_re must lie to the right of both segment ends")
    return TThetaRegion(theta, i1, i2, float(truncation_re))


def t_theta_polygon(theta: float, truncation_re: float | None = None) -> ConvexPolygon:
    """T_theta cut off at Re z = truncation_re, as a counterclockwise pentagon."""
    return t_theta_region(theta, truncation_re).polygon()


def z_hat_on_I2(p: GammaPoint, rtol=1e-9) -> bool:
    """Whether Z_hat lies on the segment [0, I_2 end]."""
    end = t_theta_region(p.theta).segment_I2_end
    t = (p.z_hat * end.conjugate()).real / abs(end) ** 2
    off_line = abs((p.z_hat * end.conjugate()).imag) / (abs(end) * max(abs(p.z_hat), 1e-300))
    return off_line <= rtol and -rtol <= t <= 1 + rtol


def theta_passes(theta: float) -> bool:
    try:
        m = invariance_margins(theta)
    except DomainError:
        return False
    return m.ineq1_margin >= 0 and m.ineq2_margin >= 0 and z_hat_on_I2(gamma_point(theta))


def theta_max_search(resolution: float) -> float:
    """Largest grid value k * resolution, scanning up from 0, before the checks first fail."""
    resolution = float(resolution)
    if not resolution > 0:
        raise ValueError("resolution must be positive")
    best = 0.0
    k = 1
    while k * resolution < HALF_PI:
        theta = k * resolution
        if not theta_passes(theta):
            break
        best = theta
        k += 1
    return best


def invariance_image_excess(theta: float, n_samples: int = 4096, conjugate: bool = False) -> float:
    """Largest distance by which E_{Lam_hat} maps a sampled boundary point of T_theta out of it."""
    poly = t_theta_polygon(theta)
    lam = gamma_point(theta).lambda_hat
    pts = poly.boundary_samples(n_samples)
    if conjugate:
        poly = ConvexPolygon(np.conj(poly.vertices[::-1]))
        pts, lam = np.conj(pts), lam.conjugate()
    images = lam * np.exp(-pts)
    return max(poly.distance(z) for z in images)
