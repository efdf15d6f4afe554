"""The eleven acceptance criteria, each at its stated tolerance and time budget.

Every test records a one-line PASS/FAIL summary (printed at the end of the
run) before asserting.
"""
import math
import time

import numpy as np
import pytest

from limitzeros import cardioid as cd
from limitzeros import gamma as gm
from limitzeros import graphs as gr
from limitzeros import orbit as ob
from limitzeros.orbit import IDENTITY as I, Compose, Membership

import figure_checks as fc
from acceptance_log import record
from oracles import brute_force_pair, real_fixed_point


def E(*children, w=None):
    return Compose(tuple(w or [1.0 / len(children)] * len(children)), children)


def test_01_parabolic_identities():
    t0 = time.perf_counter()
    worst = 0.0
    for theta in np.linspace(0.0, 0.18, 200):
        r = gm.verify_parabolic(gm.gamma_point(float(theta)))
        worst = max(worst, r.fixed_residual, r.multiplier_residual)
    el = time.perf_counter() - t0
    ok = worst < 1e-9 and el < 1
    record(1, "parabolic identities", ok, f"max residual {worst:.2e} over 200 theta", el)
    assert worst < 1e-9
    assert el < 1


def test_02_invariance_inequalities():
    t0 = time.perf_counter()
    thetas = np.arange(1, 181) * 1e-3
    m1 = m2 = math.inf
    peak = 0.0
    for theta in thetas:
        m = gm.invariance_margins(float(theta))
        m1, m2 = min(m1, m.ineq1_margin), min(m2, m.ineq2_margin)
        peak = max(peak, abs(m.spiral_peak - (gm.solve_gamma(float(theta)) + theta)))
    el = time.perf_counter() - t0
    ok = m1 >= 0 and m2 >= 0 and peak < 1e-10 and el < 1
    record(2, "invariance inequalities", ok,
           f"min margins {m1:.4f}, {m2:.4f}; spiral peak error {peak:.1e}", el)
    assert m1 >= 0 and m2 >= 0
    assert peak < 1e-10
    assert el < 1


def test_03_real_axis():
    t0 = time.perf_counter()
    step = 1e-2
    grid = np.round(np.arange(-0.6, 3.5 + step / 2, step), 10)
    wrong = []
    for x in grid:
        is_member = ob.classify_membership(complex(x)) is Membership.MEMBER
        if is_member != (x >= -math.exp(-1)) and abs(x + math.exp(-1)) > step:
            wrong.append(float(x))
    members = [x for x in grid if ob.classify_membership(complex(x)) is Membership.MEMBER]
    el = time.perf_counter() - t0
    ok = not wrong and el < 30
    record(3, "real-axis classification", ok,
           f"{len(grid)} points, MEMBER from {min(members):.2f}, {len(wrong)} misclassified", el)
    assert wrong == []
    assert el < 30


def test_04_hull_ground_truth():
    t0 = time.perf_counter()
    seg = ob.hull_iterate(1.0).polygon
    err_seg = max(seg.distance(0), seg.distance(1),
                  max(abs(z - min(max(z.real, 0), 1)) for z in seg.vertices))
    left = ob.hull_iterate(-0.2).polygon.vertices.real.min()
    err_left = abs(left - real_fixed_point(-0.2))
    el = time.perf_counter() - t0
    ok = err_seg < 1e-6 and err_left < 1e-6 and el < 5
    record(4, "hull ground truth", ok,
           f"segment error {err_seg:.1e}, left endpoint {left:.9f} (error {err_left:.1e})", el)
    assert err_seg < 1e-6
    assert err_left < 1e-6
    assert el < 5


def _random_disk(rng, n, radius, right_half=False):
    r = radius * np.sqrt(rng.random(n))
    lo = -math.pi / 2 if right_half else -math.pi
    hi = math.pi / 2 if right_half else math.pi
    return r * np.exp(1j * rng.uniform(lo, hi, n))


def test_05_known_zero_free_regions():
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    bad = {}
    for name, pts in [
        ("Shearer disk", _random_disk(rng, 10_000, math.exp(-1))),
        ("semi-disk", _random_disk(rng, 10_000, 7 * math.pi / 16, right_half=True)),
    ]:
        bad[name] = [complex(z) for z in pts if ob.classify_membership(complex(z)) is not Membership.MEMBER]
    el = time.perf_counter() - t0
    n_bad = sum(map(len, bad.values()))
    ok = n_bad == 0 and el < 300
    record(5, "known zero-free inclusions", ok, f"2 x 10000 samples, {n_bad} not MEMBER", el)
    assert n_bad == 0, bad
    assert el < 300


def test_06_cardioid_convergence():
    t0 = time.perf_counter()
    limit = cd.cardioid_boundary(cd.LIMIT, 2048)
    dist = [cd.hausdorff_distance(cd.rescaled_boundary(d, 2048), limit) for d in (50, 100, 200, 400)]
    el = time.perf_counter() - t0
    decreasing = all(a > b for a, b in zip(dist, dist[1:]))
    ok = decreasing and dist[-1] < 0.05 and el < 1
    record(6, "cardioid convergence proxy", ok,
           "Hausdorff " + ", ".join(f"{x:.4f}" for x in dist) + " at d = 50..400", el)
    assert decreasing
    assert dist[-1] < 0.05
    assert el < 1


SPECS = {
    "E(E)": E(E(I)),
    "half": E(I, E(I), w=[0.5, 0.5]),
    "third": E(E(I), E(E(I)), I, w=[0.3, 0.3, 0.3]),
    "deep": E(E(E(I), I, w=[0.7, 0.2]), E(I), w=[0.45, 0.55]),
    "uneven": E(E(I, w=[0.37]), E(E(I), w=[0.61]), w=[0.25, 0.7]),
}


def test_07_rescaled_ratio_convergence():
    t0 = time.perf_counter()
    worst = 0.0
    for g in SPECS.values():
        trees = {d: gr.gspec_to_tree(g, d) for d in (100, 1000)}
        for lam in (1, 1 + 1j, 2j * 0.5):
            target = gr.limit_value(g, lam)
            err = {d: abs(gr.rescaled_ratio(T, d, lam) - target) for d, T in trees.items()}
            predicted = err[100] * 100 / 1000  # C / d with C fitted at d = 100
            worst = max(worst, err[1000] / predicted)
    el = time.perf_counter() - t0
    ok = worst < 10 and el < 30
    record(7, "rescaled-ratio convergence", ok,
           f"worst error(1000) / fitted C/1000 = {worst:.3f} over 5 specs x 3 parameters", el)
    assert worst < 10
    assert el < 30


def _random_fspec(rng, d, depth):
    if depth == 0 or rng.random() < 0.25:
        return I
    k = int(rng.integers(1, 3))
    mult = rng.multinomial(int(rng.integers(0, d + 1)), np.ones(k) / k)
    return gr.FCompose(tuple(int(m) for m in mult), tuple(_random_fspec(rng, d, depth - 1) for _ in range(k)))


def test_08_oracle_equivalence():
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    mismatches = 0

    corpus = gr.tree_corpus(9)
    for G in corpus:
        pair = gr.partition_pair(G, "tree")
        mismatches += (pair.z_in, pair.z_out) != brute_force_pair(G)

    for _ in range(500):
        G = gr.random_graph(int(rng.integers(1, 15)), rng, max_degree=4)
        pair = gr.partition_pair(G)
        mismatches += (pair.z_in, pair.z_out) != brute_force_pair(G)

    pairs = 0
    while pairs < 200:
        d = int(rng.integers(2, 5))
        spec = _random_fspec(rng, d, 3)
        if spec is I:
            continue
        lam = complex(rng.uniform(-0.3, 0.6), rng.uniform(-0.4, 0.4))
        try:
            f = gr.f_eval(spec, d, lam, 0)
        except gr.PoleError:
            continue
        r = gr.ratio(gr.fspec_to_tree(spec, d), lam)
        mismatches += abs(f - r) > 1e-9 * max(1, abs(r))
        pairs += 1

    small = [G for G in gr.tree_corpus(4)] + [gr.RootedGraph.cycle(3), gr.RootedGraph.cycle(5, root=2)]
    for _ in range(50):
        H = small[int(rng.integers(len(small)))]
        G = small[int(rng.integers(len(small)))]
        lam = complex(rng.normal(), rng.normal())
        direct = gr.ratio(gr.substitute(H, G), lam)
        mismatches += abs(gr.compose_ratio(H, G, lam) - direct) > 1e-9 * max(1, abs(direct))

    el = time.perf_counter() - t0
    ok = mismatches == 0 and el < 120
    record(8, "oracle equivalence", ok,
           f"{len(corpus)} trees, 500 graphs, 200 specs, 50 compositions; {mismatches} mismatches", el)
    assert mismatches == 0
    assert el < 120


def test_09_gamma_bracketing():
    t0 = time.perf_counter()
    verdicts = []
    for theta in (0.05, 0.10, 0.15):
        lam = gm.gamma_point(theta).lambda_hat
        inner = ob.classify_membership(0.98 * lam)
        outer = ob.classify_membership(1.02 * lam)
        verdicts.append((theta, inner, outer))
    el = time.perf_counter() - t0
    ok = all(i is Membership.MEMBER and o is not Membership.MEMBER for _, i, o in verdicts) and el < 10
    record(9, "boundary bracketing of the curve", ok,
           "; ".join(f"{t}: {i.value}/{o.value}" for t, i, o in verdicts), el)
    for _, inner, outer in verdicts:
        assert inner is Membership.MEMBER
        assert outer is not Membership.MEMBER
    assert el < 10


@pytest.mark.slow
def test_10_figure(figure_grid):
    grid, raster_time = figure_grid
    t0 = time.perf_counter()
    n_gray, band = fc.gray_band(grid)
    outside = fc.members_outside(grid)
    checked, orbit_outside = fc.orbit_members_outside(grid)
    el = raster_time + time.perf_counter() - t0
    ok = n_gray > 0 and band <= 0.10 and not outside and not orbit_outside and raster_time < 900
    record(10, "figure reproduction", ok,
           f"{n_gray} gray pixels within {100 * band:.1f}% of local radius; "
           f"{len(outside)} MEMBER outside; {checked} near-boundary pixels re-iterated, "
           f"{len(orbit_outside)} MEMBER; raster {raster_time:.0f}s", el)
    assert n_gray > 0
    assert band <= 0.10
    assert outside == []
    assert orbit_outside == []
    assert raster_time < 900


def test_11_shearer_exclusion():
    t0 = time.perf_counter()
    rng = np.random.default_rng(11)
    corpus = [G for G in gr.tree_corpus(9) if G.in_class(2, k=3)]
    corpus += [gr.random_graph(int(rng.integers(2, 15)), rng, max_degree=3) for _ in range(300)]
    smallest = min(abs(z) for G in corpus for z in gr.poly_roots(gr.ind_poly(G)))
    el = time.perf_counter() - t0
    ok = smallest >= 4 / 27 - 1e-9 and el < 60
    record(11, "Shearer root exclusion", ok,
           f"{len(corpus)} graphs of max degree 3, smallest root modulus {smallest:.6f} vs 4/27 = {4 / 27:.6f}", el)
    assert smallest >= 4 / 27 - 1e-9
    assert el < 60
