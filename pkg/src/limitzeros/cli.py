"""Command line entry point: ``limitzeros <subcommand> ...``."""
from __future__ import annotations

import argparse
import contextlib
import csv
import json
import math
import sys

from . import cardioid, gamma, graphs, orbit, raster
from .errors import ConfigError


def _complex(text):
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")
    if len(parts) == 1:
        parts.append(0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")
    return complex(*parts)


def _degree(text):
    if text.lower() in ("inf", "infinity"):
        return cardioid.INFINITY
    return int(text)


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _add_orbit_flags(p):
    p.add_argument("--samples", type=int, default=1024, help="boundary samples per iteration")
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--escape", type=float, default=50.0, help="escape radius beyond |lambda|")
    p.add_argument("--stab-tol", type=float, default=1e-9)
    p.add_argument("--interior-tol", type=float, default=1e-4)


def _orbit_cfg(args):
    return orbit.OrbitConfig(
        boundary_samples=args.samples, max_iter=args.max_iter, escape_radius=args.escape,
        stab_tol=args.stab_tol, interior_tol=args.interior_tol,
    )


def cmd_cardioid(args):
    if args.rescale:
        if args.degree == cardioid.INFINITY:
            raise ConfigError("--rescale needs a finite degree")
        b = cardioid.rescaled_boundary(args.degree, args.samples)
    else:
        b = cardioid.cardioid_boundary(cardioid.CardioidSpec(args.degree), args.samples)
    with _open_out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(["re", "im"])
        for z in b.points:
            w.writerow([repr(float(z.real)), repr(float(z.imag))])


def cmd_orbit(args):
    cfg = _orbit_cfg(args)
    approx = orbit.hull_iterate(args.lam, cfg)
    verdict = orbit.membership_from_hull(approx, cfg)
    with _open_out(args.file) as out:
        _write_orbit(out, args, approx, verdict)


def _write_orbit(out, args, approx, verdict):
    if args.out == "json":
        json.dump({
            "lambda": [args.lam.real, args.lam.imag],
            "status": approx.status.value,
            "membership": verdict.value,
            "iterations": approx.iterations,
            "origin_clearance": approx.origin_clearance,
            "diameter": approx.diameter,
            "vertices": [[z.real, z.imag] for z in approx.polygon.vertices],
        }, out, indent=1)
        out.write("\n")
    else:
        w = csv.writer(out)
        w.writerow(["# status", approx.status.value, "membership", verdict.value,
                    "iterations", approx.iterations, "clearance", approx.origin_clearance])
        w.writerow(["re", "im"])
        for z in approx.polygon.vertices:
            w.writerow([repr(float(z.real)), repr(float(z.imag))])


def cmd_gamma(args):
    cols = ["theta", "gamma", "lambda_re", "lambda_im", "c", "z_re", "z_im",
            "fixed_residual", "mult_residual", "ineq1_margin", "ineq2_margin"]
    with _open_out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(cols)
        for k in range(args.steps + 1):
            theta = args.theta_max * k / args.steps
            p = gamma.gamma_point(theta)
            res = gamma.verify_parabolic(p)
            try:
                m = gamma.invariance_margins(theta)
                m1, m2 = m.ineq1_margin, m.ineq2_margin
            except gamma.DomainError:
                m1 = m2 = math.nan
            w.writerow([theta, p.gamma, p.lambda_hat.real, p.lambda_hat.imag, p.c_hat,
                        p.z_hat.real, p.z_hat.imag, res.fixed_residual, res.multiplier_residual, m1, m2])


def read_adjacency(path):
    """First line ``n root``, then line i lists the neighbours of vertex i."""
    with open(path) as fh:
        lines = [ln.split() for ln in fh if ln.strip() and not ln.startswith("#")]
    n, root = int(lines[0][0]), int(lines[0][1])
    rows = [tuple(int(u) for u in ln) for ln in lines[1:]]
    rows += [()] * (n - len(rows))
    return graphs.RootedGraph(n, tuple(rows), root)


def cmd_graph(args):
    G = read_adjacency(args.input)
    pair = graphs.partition_pair(G)
    result = {
        "n": G.n, "root": G.root, "max_degree": G.max_degree,
        "ind_poly": list(pair.full.coefficients),
        "z_in": list(pair.z_in.coefficients), "z_out": list(pair.z_out.coefficients),
    }
    if args.lam is not None:
        r = graphs.ratio(G, args.lam)
        result["ratio"] = [r.real, r.imag]
    if args.roots:
        result["roots"] = [[z.real, z.imag] for z in graphs.poly_roots(pair.full)]
    if args.out == "json":
        json.dump(result, sys.stdout, indent=1)
        print()
    else:
        w = csv.writer(sys.stdout)
        for key, val in result.items():
            w.writerow([key] + (val if isinstance(val, list) else [val]))


def gspec_from_json(obj):
    """``"id"`` or ``{"weights": [...], "children": [...]}``."""
    if obj in ("id", "identity", None):
        return orbit.IDENTITY
    return orbit.Compose(tuple(obj["weights"]), tuple(gspec_from_json(c) for c in obj["children"]))


def cmd_converge(args):
    g = gspec_from_json(json.loads(args.spec))
    target = graphs.limit_value(g, args.lam)
    w = csv.writer(sys.stdout)
    w.writerow(["d", "re", "im", "error"])
    d = 10
    while d <= args.dmax:
        v = graphs.rescaled_spec_ratio(g, d, args.lam)
        w.writerow([d, v.real, v.imag, abs(v - target)])
        d *= 2
    w.writerow(["inf", target.real, target.imag, 0.0])


def cmd_raster(args):
    try:
        window = tuple(float(x) for x in args.window.split(","))
        width, height = (int(x) for x in args.size.lower().split("x"))
    except ValueError as exc:
        raise ConfigError(str(exc))
    cfg = raster.RasterConfig(window=window, width=width, height=height,
                              orbit=_orbit_cfg(args), workers=args.workers)
    grid = raster.raster(cfg)
    raster.write_ppm(grid, args.out, overlay_gamma=args.overlay_gamma)
    if args.csv:
        raster.export_csv(grid, args.csv)
    counts = {c.name: grid.count(c) for c in raster.PixelClass}
    print(json.dumps(counts))


def build_parser():
    ap = argparse.ArgumentParser(prog="limitzeros", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cardioid", help="sample a cardioid boundary")
    p.add_argument("--degree", type=_degree, default=cardioid.INFINITY, help="d >= 2 or inf")
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--rescale", action="store_true", help="multiply the degree-d curve by d")
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_cardioid)

    p = sub.add_parser("orbit", help="hull of the orbit of 0 for one parameter")
    p.add_argument("--lambda", dest="lam", type=_complex, required=True, metavar="RE,IM")
    _add_orbit_flags(p)
    p.add_argument("--out", choices=["csv", "json"], default="json")
    p.add_argument("--file", help="output path (default stdout)")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("gamma", help="tabulate the boundary curve near e")
    p.add_argument("--theta-max", type=float, default=0.18)
    p.add_argument("--steps", type=int, default=18)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("graph", help="independence polynomial and ratio of a rooted graph")
    p.add_argument("--input", required=True, help="adjacency file: 'n root', then neighbours per line")
    p.add_argument("--lambda", dest="lam", type=_complex, metavar="RE,IM")
    p.add_argument("--roots", action="store_true")
    p.add_argument("--out", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("converge", help="rescaled tree ratios against the limit map")
    p.add_argument("--spec", required=True, help='JSON tree of maps, e.g. {"weights":[1],"children":[{"weights":[0.5,0.5],"children":["id","id"]}]}')
    p.add_argument("--lambda", dest="lam", type=_complex, required=True, metavar="RE,IM")
    p.add_argument("--dmax", type=int, default=1000)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("raster", help="classify a window of the parameter plane")
    p.add_argument("--window", default=",".join(map(str, raster.DEFAULT_WINDOW)), metavar="RE0,RE1,IM0,IM1")
    p.add_argument("--size", default="600x400", metavar="WxH")
    p.add_argument("--out", required=True, help="PPM image path")
    p.add_argument("--csv", help="optional per-pixel CSV")
    p.add_argument("--overlay-gamma", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    _add_orbit_flags(p)
    p.set_defaults(func=cmd_raster)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"limitzeros {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
