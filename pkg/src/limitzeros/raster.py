"""Classify a window of the Lam-plane pixel by pixel and paint it."""
from __future__ import annotations

import csv
import dataclasses
import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .cardioid import LIMIT, cardioid_contains, known_zero_free_radius, ZeroFreeKind
from .errors import ConfigError
from .gamma import gamma_point
from .orbit import DEFAULT_CONFIG, Membership, OrbitConfig, hull_iterate, membership_from_hull

SHEARER_RADIUS = known_zero_free_radius(ZeroFreeKind.SHEARER)
SEMIDISK_RADIUS = known_zero_free_radius(ZeroFreeKind.SEMIDISK)


class PixelClass(enum.IntEnum):
    """Listed in order of precedence: the first matching class wins."""

    SHEARER = 0
    SEMIDISK = 1
    OUTSIDE_CARDIOID = 2
    MEMBER = 3
    GRAY_EXCLUDED = 4
    ESCAPE_EXCLUDED = 5
    UNDECIDED = 6


SHORTCUT_CLASSES = frozenset({PixelClass.SHEARER, PixelClass.SEMIDISK, PixelClass.OUTSIDE_CARDIOID})

PALETTE = {
    PixelClass.SHEARER: (255, 220, 0),
    PixelClass.SEMIDISK: (0, 170, 0),
    PixelClass.MEMBER: (235, 235, 235),
    PixelClass.GRAY_EXCLUDED: (128, 128, 128),
    PixelClass.ESCAPE_EXCLUDED: (200, 200, 200),
    PixelClass.OUTSIDE_CARDIOID: (255, 255, 255),
    PixelClass.UNDECIDED: (255, 0, 255),
}
OVERLAY_COLOR = (255, 0, 0)

# encloses the whole limit cardioid, whose extent is about
# [-0.865, 2.719] x [-2.108, 2.108]
DEFAULT_WINDOW = (-1.0, 3.0, -2.2, 2.2)


@dataclass(frozen=True)
class RasterConfig:
    window: tuple = DEFAULT_WINDOW
    width: int = 600
    height: int = 400
    orbit: OrbitConfig = DEFAULT_CONFIG
    classes_enabled: frozenset = SHORTCUT_CLASSES
    use_symmetry: bool = True
    workers: int = 1

    def __post_init__(self):
        if len(self.window) != 4:
            raise ConfigError("window is (re_min, re_max, im_min, im_max)")
        r0, r1, i0, i1 = map(float, self.window)
        if not all(map(math.isfinite, (r0, r1, i0, i1))) or not (r0 < r1 and i0 < i1):
            raise ConfigError(f"degenerate window {self.window}")
        object.__setattr__(self, "window", (r0, r1, i0, i1))
        for name in ("width", "height", "workers"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 1:
                raise ConfigError(f"{name} must be a positive integer, got {v!r}")
        enabled = frozenset(PixelClass(c) for c in self.classes_enabled)
        if not enabled <= SHORTCUT_CLASSES:
            raise ConfigError("only SHEARER, SEMIDISK and OUTSIDE_CARDIOID can be toggled")
        object.__setattr__(self, "classes_enabled", enabled)

    @property
    def pixel_size(self):
        r0, r1, i0, i1 = self.window
        return (r1 - r0) / self.width, (i1 - i0) / self.height

    def pixel_center(self, row, col) -> complex:
        """Row 0 is the top of the image (largest imaginary part)."""
        r0, _, _, i1 = self.window
        dx, dy = self.pixel_size
        return complex(r0 + (col + 0.5) * dx, i1 - (row + 0.5) * dy)

    def nearest_pixel(self, z: complex):
        r0, _, _, i1 = self.window
        dx, dy = self.pixel_size
        return int(math.floor((i1 - z.imag) / dy)), int(math.floor((z.real - r0) / dx))

    @property
    def symmetric(self):
        return self.window[2] == -self.window[3]


class PixelRecord(NamedTuple):
    cls: PixelClass
    clearance: float = math.nan
    iterations: int = 0


_MEMBERSHIP_TO_PIXEL = {
    Membership.MEMBER: PixelClass.MEMBER,
    Membership.EXCLUDED_INTERIOR: PixelClass.GRAY_EXCLUDED,
    Membership.EXCLUDED_ESCAPE: PixelClass.ESCAPE_EXCLUDED,
    Membership.UNDECIDED: PixelClass.UNDECIDED,
}


def on_real_trace(lam: complex) -> bool:
    return lam.imag == 0 and lam.real >= -math.exp(-1)


def classify_pixel_record(lam: complex, cfg: RasterConfig) -> PixelRecord:
    lam = complex(lam)
    on = cfg.classes_enabled
    if PixelClass.SHEARER in on and abs(lam) < SHEARER_RADIUS:
        return PixelRecord(PixelClass.SHEARER)
    if PixelClass.SEMIDISK in on and lam.real > 0 and abs(lam) < SEMIDISK_RADIUS:
        return PixelRecord(PixelClass.SEMIDISK)
    if (PixelClass.OUTSIDE_CARDIOID in on and not on_real_trace(lam)
            and not cardioid_contains(LIMIT, lam)):
        return PixelRecord(PixelClass.OUTSIDE_CARDIOID)
    approx = hull_iterate(lam, cfg.orbit)
    verdict = membership_from_hull(approx, cfg.orbit)
    return PixelRecord(_MEMBERSHIP_TO_PIXEL[verdict], approx.origin_clearance, approx.iterations)


def classify_pixel(lam: complex, cfg: RasterConfig | None = None) -> PixelClass:
    return classify_pixel_record(lam, cfg or RasterConfig()).cls


@dataclass(frozen=True, eq=False)
class RasterGrid:
    cfg: RasterConfig
    classes: np.ndarray
    clearance: np.ndarray
    iterations: np.ndarray

    @property
    def shape(self):
        return self.classes.shape

    def count(self, cls: PixelClass) -> int:
        return int((self.classes == cls).sum())

    def centers(self):
        r0, _, _, i1 = self.cfg.window
        dx, dy = self.cfg.pixel_size
        re = r0 + (np.arange(self.cfg.width) + 0.5) * dx
        im = i1 - (np.arange(self.cfg.height) + 0.5) * dy
        return re[None, :] + 1j * im[:, None]


def _classify_row(args):
    cfg, row = args
    out = []
    for col in range(cfg.width):
        lam = cfg.pixel_center(row, col)
        out.append(classify_pixel_record(lam, cfg))
    return out


def raster(cfg: RasterConfig | None = None, progress=None) -> RasterGrid:
    """Classify every pixel centre of the window, row-major from the top.

    For a window symmetric about the real axis only the upper half is
    computed; the lower half is its mirror image, as the dynamics for Lam and
    conj(Lam) are conjugate.
    """
    cfg = cfg or RasterConfig()
    h, w = cfg.height, cfg.width
    rows = range((h + 1) // 2) if cfg.use_symmetry and cfg.symmetric else range(h)
    classes = np.full((h, w), PixelClass.UNDECIDED, dtype=np.int8)
    clearance = np.full((h, w), np.nan)
    iterations = np.zeros((h, w), dtype=np.int32)

    tasks = [(cfg, r) for r in rows]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = pool.map(_classify_row, tasks)
            results = list(results)
    else:
        results = map(_classify_row, tasks)
    for (_, row), recs in zip(tasks, results):
        classes[row] = [r.cls for r in recs]
        clearance[row] = [r.clearance for r in recs]
        iterations[row] = [r.iterations for r in recs]
        if progress is not None:
            progress(row)
    if len(rows) < h:
        for row in rows:
            mirror = h - 1 - row
            classes[mirror] = classes[row]
            clearance[mirror] = clearance[row]
            iterations[mirror] = iterations[row]
    return RasterGrid(cfg, classes, clearance, iterations)


def refine_undecided(grid: RasterGrid, max_iter: int, mask=None) -> RasterGrid:
    """Re-run UNDECIDED pixels (optionally only where ``mask`` is set) with a larger budget.

    Pixels near parabolic parameters converge slowly; extra iterations settle
    most of them without touching the verdict of any other pixel.
    """
    orbit = dataclasses.replace(grid.cfg.orbit, max_iter=int(max_iter))
    cfg = dataclasses.replace(grid.cfg, orbit=orbit)
    classes = grid.classes.copy()
    clearance = grid.clearance.copy()
    iterations = grid.iterations.copy()
    pending = classes == PixelClass.UNDECIDED
    if mask is not None:
        pending &= np.asarray(mask, dtype=bool)
    h = cfg.height
    mirror = cfg.use_symmetry and cfg.symmetric
    for row, col in zip(*np.nonzero(pending)):
        if mirror and row >= (h + 1) // 2 and pending[h - 1 - row, col]:
            continue  # filled from its mirror pixel below
        rec = classify_pixel_record(cfg.pixel_center(row, col), cfg)
        targets = [(row, col)]
        if mirror:
            targets.append((h - 1 - row, col))
        for r, c in targets:
            classes[r, c] = rec.cls
            clearance[r, c] = rec.clearance
            iterations[r, c] = rec.iterations
    return RasterGrid(cfg, classes, clearance, iterations)


def gamma_overlay_pixels(cfg: RasterConfig, theta_max: float = 0.18, n: int = 400):
    """Pixels hit by samples of the curve and its mirror image, as (row, col, theta)."""
    hits = []
    for theta in np.linspace(0.0, theta_max, n):
        lam = gamma_point(float(theta)).lambda_hat
        for z in (lam, lam.conjugate()):
            row, col = cfg.nearest_pixel(z)
            if 0 <= row < cfg.height and 0 <= col < cfg.width:
                hits.append((row, col, float(theta)))
    return hits


def render(grid: RasterGrid, palette=None, overlay_gamma: bool = False, theta_max: float = 0.18) -> bytes:
    """Binary PPM (P6) image of the grid."""
    palette = PALETTE if palette is None else palette
    if grid.classes.size == 0:
        raise ValueError("empty grid")
    lut = np.zeros((len(PixelClass), 3), dtype=np.uint8)
    for cls, rgb in palette.items():
        lut[int(cls)] = rgb
    img = lut[grid.classes.astype(np.intp)]
    if overlay_gamma:
        for row, col, _ in gamma_overlay_pixels(grid.cfg, theta_max):
            img[row, col] = OVERLAY_COLOR
    h, w = grid.classes.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + img.tobytes()


def write_ppm(grid: RasterGrid, path, **kwargs):
    with open(path, "wb") as fh:
        fh.write(render(grid, **kwargs))


def export_csv(grid: RasterGrid, path_or_file):
    """One row per pixel: re, im, class, clearance, iterations."""
    own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        writer = csv.writer(fh)
        writer.writerow(["re", "im", "class", "clearance", "iterations"])
        z = grid.centers()
        h, w = grid.shape
        for row in range(h):
            for col in range(w):
                writer.writerow([
                    repr(float(z[row, col].real)), repr(float(z[row, col].imag)),
                    PixelClass(int(grid.classes[row, col])).name,
                    repr(float(grid.clearance[row, col])), int(grid.iterations[row, col]),
                ])
    finally:
        if own:
            fh.close()
