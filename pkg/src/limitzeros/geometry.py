"""Convex polygons in the complex plane."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels


def _as_xy(points):
    z = np.asarray(points, dtype=complex).ravel()
    return np.ascontiguousarray(z.real), np.ascontiguousarray(z.imag)


def direction_table(n_dirs):
    phi = 2.0 * np.pi * np.arange(n_dirs) / n_dirs
    return np.cos(phi), np.sin(phi)


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Counterclockwise vertex list of a compact convex set.

    One vertex is a point and two vertices are a segment; both are legal
    (real parameters produce flat hulls).  Build through :meth:`hull` unless
    the vertices are already strictly convex and ordered.
    """

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=complex).ravel()
        if v.size == 0:
            raise ValueError("polygon needs at least one vertex")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def hull(cls, points) -> ConvexPolygon:
        x, y = _as_xy(points)
        hx, hy = _kernels.convex_hull(x, y)
        return cls(hx + 1j * hy)

    def __len__(self):
        return self.vertices.size

    @property
    def xy(self):
        return _as_xy(self.vertices)

    @property
    def is_degenerate(self):
        return self.vertices.size < 3

    def area(self):
        v = self.vertices
        if v.size < 3:
            return 0.0
        w = np.roll(v, -1)
        return 0.5 * float(np.sum(v.real * w.imag - w.real * v.imag))

    def perimeter(self):
        if self.vertices.size == 1:
            return 0.0
        return float(np.abs(np.roll(self.vertices, -1) - self.vertices).sum())

    def diameter(self):
        v = self.vertices
        if v.size > 400:
            # a convex polygon's diameter is its maximal width; 4096 directions
            # bound the relative error by 3e-7
            h = self.support(4096)
            return float((h + np.roll(h, -2048)).max())
        return float(np.abs(v[:, None] - v[None, :]).max())

    def support(self, n_dirs=1024):
        """Support function on the grid phi_k = 2 pi k / n_dirs."""
        x, y = self.xy
        c, s = direction_table(n_dirs)
        return _kernels.support(x, y, c, s)

    def origin_clearance(self):
        x, y = self.xy
        return float(_kernels.origin_clearance(x, y))

    def signed_clearance(self, points):
        """Signed distance of each point to the boundary, positive inside.

        Only meaningful for polygons with interior.  For outside points the
        value is the largest edge-line violation, negated, which is a lower
        bound on the true distance.
        """
        v = self.vertices
        if v.size < 3:
            raise ValueError("signed clearance needs a polygon with interior")
        e = np.roll(v, -1) - v
        n = -1j * e / np.abs(e)  # outward unit normals
        offset = (v * n.conj()).real
        q = np.asarray(points, dtype=complex).ravel()
        out = np.empty(q.size)
        # chunked to keep the (points x edges) matrix small
        step = max(1, 2_000_000 // v.size)
        for i in range(0, q.size, step):
            proj = (q[i:i + step, None] * n.conj()[None, :]).real
            out[i:i + step] = (offset[None, :] - proj).min(axis=1)
        return out

    def distance(self, z):
        """Euclidean distance from z to the polygon; 0 inside."""
        x, y = self.xy
        return float(_kernels.point_distance(x, y, float(z.real), float(z.imag)))

    def contains(self, z, tol=0.0):
        return self.distance(complex(z)) <= tol

    def boundary_samples(self, n):
        x, y = self.xy
        sx, sy = _kernels.boundary_samples(x, y, int(n))
        return sx + 1j * sy

    def scaled(self, factor):
        return ConvexPolygon(self.vertices * factor)

    def imaginary_axis_reach(self):
        x, y = self.xy
        return float(_kernels.imaginary_axis_reach(x, y))

    def width_across(self, direction):
        """Extent of the polygon along the unit normal of ``direction``."""
        u = complex(direction) / abs(direction)
        t = (self.vertices * (-1j * u).conjugate()).real
        return float(t.max() - t.min())


def hausdorff_convex(a: ConvexPolygon, b: ConvexPolygon, n_dirs=1024):
    """Hausdorff distance of two convex sets via their support functions.

    Exact identity for convex bodies; the direction grid makes it a lower
    bound that converges as ``n_dirs`` grows.
    """
    return float(np.abs(a.support(n_dirs) - b.support(n_dirs)).max())


def polygon_within(inner: ConvexPolygon, outer: ConvexPolygon, tol):
    """True when every vertex of ``inner`` lies within ``tol`` of ``outer``."""
    return max(outer.distance(z) for z in inner.vertices) <= tol


def max_modulus(points):
    return float(np.abs(np.asarray(points)).max())


TWO_PI = 2.0 * math.pi
