"""
Painting the parameter plane
============================

Every pixel is first tested against the known zero-free disks and the
cardioid, and otherwise classified by the hull iteration.  A coarse image
takes under a minute; the full 600 x 400 picture takes several.
"""
import sys

from limitzeros import raster as rz

width, height = (int(x) for x in (sys.argv[1:3] or (150, 100)))
cfg = rz.RasterConfig(width=width, height=height)
grid = rz.raster(cfg, progress=lambda row: print(f"\rrow {row}", end="", flush=True))
print()
for cls in rz.PixelClass:
    print(f"{cls.name:>17}: {grid.count(cls)}")

rz.write_ppm(grid, "parameter_plane.ppm", overlay_gamma=True)
print("wrote parameter_plane.ppm")
