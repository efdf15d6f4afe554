import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.special import lambertw

from limitzeros import cardioid as cd
from limitzeros.errors import DomainError, EmptyInput


def test_spec_validation():
    assert cd.CardioidSpec(5.0).degree == 5
    assert cd.LIMIT.is_limit
    for bad in (1, 0, 2.5, True, -3):
        with pytest.raises(ValueError):
            cd.CardioidSpec(bad)


def test_boundary_special_points():
    b = cd.cardioid_boundary(cd.LIMIT, 4)
    # u = 1, i, -1, -i
    assert b.points[0] == pytest.approx(-math.exp(-1))
    assert b.points[2] == pytest.approx(math.e)
    assert abs(b.points[1] - (-1j * cmath.exp(-1j))) < 1e-15
    assert len(b) == 4


def test_finite_boundary_matches_formula():
    d = 3
    u = np.exp(2j * np.pi * np.arange(16) / 16)
    direct = -(d ** d) * u / (u + d) ** (d + 1)
    got = cd.cardioid_boundary(cd.CardioidSpec(d), 16).points
    assert np.abs(got - direct).max() < 1e-15


def test_too_few_samples():
    with pytest.raises(ValueError):
        cd.cardioid_boundary(cd.LIMIT, 2)


def test_fixed_point_matches_lambertw(rng):
    # |u| < 1 keeps lam inside the cardioid, where the fixed point on the
    # principal branch is p = W0(lam)
    u = np.sqrt(rng.random(1000)) * 0.999 * np.exp(2j * np.pi * rng.random(1000))
    for uu in u:
        lam = -uu * np.exp(-uu)
        fp = cd.fixed_point(lam)
        assert abs(fp.point - (-uu)) < 1e-9
        assert abs(fp.point - lambertw(lam, 0)) < 1e-9
        assert abs(abs(fp.multiplier) - abs(uu)) < 1e-9


def test_fixed_point_zero_and_e():
    assert cd.fixed_point(0).point == 0
    fp = cd.fixed_point(math.e)
    assert abs(fp.point - 1) < 1e-12
    assert abs(fp.multiplier + 1) < 1e-12


@given(st.floats(0.02, 0.98), st.floats(-math.pi, math.pi))
def test_containment_radial_grid(r, phi):
    u = cmath.rect(1.0, phi)
    lam_in = cd.cardioid_map(cd.LIMIT, r * u)
    lam_out = cd.cardioid_map(cd.LIMIT, u) * (2 - r)
    assert cd.cardioid_contains(cd.LIMIT, complex(lam_in))
    # scaling the boundary up by a factor > 1 exits: the cardioid is star-shaped about 0
    assert not cd.cardioid_contains(cd.LIMIT, complex(lam_out))


@pytest.mark.parametrize("d", [2, 3, 10])
def test_finite_containment(d):
    spec = cd.CardioidSpec(d)
    for phi in np.linspace(-3, 3, 13):
        u = cmath.rect(1, phi)
        assert cd.cardioid_contains(spec, complex(cd.cardioid_map(spec, 0.9 * u)))
        assert not cd.cardioid_contains(spec, complex(1.2 * cd.cardioid_map(spec, u)))


@pytest.mark.parametrize("u", [-1, 1j, -1j, cmath.rect(1, 2.0)])
def test_boundary_point_is_not_inside(u):
    # the region is open; -1/e (u = 1) is left out because the fixed point is
    # a double root there and only known to about 1e-8
    assert not cd.cardioid_contains(cd.LIMIT, complex(cd.cardioid_map(cd.LIMIT, u)))


def test_real_interval_matches_boundary():
    for spec in (cd.LIMIT, cd.CardioidSpec(2), cd.CardioidSpec(7)):
        lo, hi = cd.real_interval(spec)
        assert abs(lo - cd.cardioid_map(spec, 1.0).real) < 1e-12
        assert abs(hi - cd.cardioid_map(spec, -1.0).real) < 1e-12 * max(1, hi)
    assert cd.real_interval(cd.LIMIT, v_trace=True) == (-math.exp(-1), math.inf)
    with pytest.raises(ValueError):
        cd.real_interval(cd.CardioidSpec(3), v_trace=True)


def test_known_radii():
    assert cd.known_zero_free_radius(cd.ZeroFreeKind.SHEARER) == math.exp(-1)
    assert cd.known_zero_free_radius(cd.ZeroFreeKind.SEMIDISK) == 7 * math.pi / 16
    assert cd.known_zero_free_radius(cd.ZeroFreeKind.SHEARER, 2) == pytest.approx(4 / 27)
    # d * r_d -> e^-1
    assert 1000 * cd.known_zero_free_radius("shearer", 1000) == pytest.approx(math.exp(-1), rel=1e-3)


def test_contraction_derivative():
    for lam in np.arange(0.1, 2.71, 0.1):
        for x in np.linspace(0, 10, 101):
            assert abs(cd.real_contraction_derivative(lam, x)) < 1
    with pytest.raises(DomainError):
        cd.real_contraction_derivative(3.0, 1.0)
    with pytest.raises(DomainError):
        cd.real_contraction_derivative(1.0, -1.0)


def test_hausdorff_metric(rng):
    sets = [rng.normal(size=20) + 1j * rng.normal(size=20) for _ in range(3)]
    a, b, c = sets
    assert cd.hausdorff_distance(a, a) == 0
    assert cd.hausdorff_distance(a, b) == cd.hausdorff_distance(b, a)
    assert cd.hausdorff_distance(a, c) <= cd.hausdorff_distance(a, b) + cd.hausdorff_distance(b, c) + 1e-12
    with pytest.raises(EmptyInput):
        cd.hausdorff_distance([], a)


def test_rescaled_cardioids_frozen():
    # computed once with 4096 samples; frozen to guard regressions
    lim = cd.cardioid_boundary(cd.LIMIT, 4096)
    got = [cd.hausdorff_distance(cd.rescaled_boundary(d, 4096), lim) for d in (50, 100, 200, 400)]
    assert got == pytest.approx([0.0837, 0.0413, 0.0205, 0.0102], abs=5e-4)
