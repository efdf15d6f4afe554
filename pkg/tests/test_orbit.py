import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from limitzeros import orbit as ob
from limitzeros.errors import ArityMismatch, CertificationFailure, ConfigError, DomainError
from limitzeros.geometry import TWO_PI

from oracles import real_fixed_point


# ---------------------------------------------------------------- semigroup


def test_weights_validation():
    assert ob.WeightTuple((0.5, 0.5)).weights == (0.5, 0.5)
    for bad in ((), (0.7, 0.7), (-0.1,), (math.nan,)):
        with pytest.raises(ValueError):
            ob.WeightTuple(bad)


def test_compose_arity():
    with pytest.raises(ArityMismatch):
        ob.Compose((0.5, 0.5), (ob.IDENTITY,))
    with pytest.raises(ArityMismatch):
        ob.apply_E(1, ob.WeightTuple((1.0,)), [0, 0])


def test_eval_gspec():
    lam = 0.7 + 0.2j
    g = ob.Compose((0.5, 0.25), (ob.IDENTITY, ob.E_map(lam)))
    z = 0.1 - 0.3j
    expect = lam * cmath.exp(-(0.5 * z + 0.25 * lam * cmath.exp(-z)))
    assert abs(ob.eval_gspec(g, lam, z) - expect) < 1e-15
    assert ob.eval_gspec(ob.IDENTITY, lam, z) == z


# ---------------------------------------------------------------- config


@pytest.mark.parametrize("kw", [
    {"boundary_samples": 0}, {"max_iter": -1}, {"n_directions": 7}, {"n_directions": 2.0},
    {"stab_tol": 0.0}, {"escape_radius": math.inf}, {"interior_tol": -1e-3},
])
def test_config_rejects(kw):
    with pytest.raises(ConfigError):
        ob.OrbitConfig(**kw)


# ---------------------------------------------------------------- hulls on the real line


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0, 2.5])
def test_real_positive_segment(lam):
    a = ob.hull_iterate(lam)
    assert a.status is ob.HullStatus.CONVERGED
    assert a.polygon.width_across(1) < 1e-6
    re = a.polygon.vertices.real
    assert abs(re.min()) < 1e-6 and abs(re.max() - lam) < 1e-6
    assert ob.classify_membership(lam) is ob.Membership.MEMBER


@pytest.mark.parametrize("lam", [-0.05, -0.2, -0.3])
def test_real_negative_interval(lam):
    a = ob.hull_iterate(lam)
    assert a.status is ob.HullStatus.CONVERGED
    re = a.polygon.vertices.real
    assert abs(re.min() - real_fixed_point(lam)) < 1e-6
    assert abs(re.max()) < 1e-12


def test_real_trace_endpoint():
    assert ob.classify_membership(-0.36) is ob.Membership.MEMBER
    assert ob.classify_membership(-0.37) is ob.Membership.EXCLUDED_ESCAPE


def test_interior_and_escape_examples():
    assert ob.classify_membership(3j) is ob.Membership.EXCLUDED_INTERIOR
    assert ob.classify_membership(-0.5) is ob.Membership.EXCLUDED_ESCAPE
    assert ob.classify_membership(-0.5).excluded


def test_max_iter_is_undecided():
    cfg = ob.OrbitConfig(max_iter=2)
    a = ob.hull_iterate(1 + 1j, cfg)
    assert a.status is ob.HullStatus.MAX_ITER and a.iterations == 2
    assert ob.membership_from_hull(a, cfg) is ob.Membership.UNDECIDED


# ---------------------------------------------------------------- invariants


@pytest.mark.parametrize("lam", [0.5 + 0.5j, 1 + 1j, -0.2 + 0.3j, 2.2 + 0.3j])
def test_monotone_growth_and_origin(lam):
    a = ob.hull_iterate(lam, keep_history=True)
    assert len(a.history) == a.iterations + 1
    for prev, nxt in zip(a.history, a.history[1:]):
        assert max(nxt.distance(z) for z in prev.vertices) <= 1e-12
        assert nxt.contains(0, tol=1e-12)


@pytest.mark.parametrize("lam", [0.5 + 0.5j, 1 + 1j, -0.2 + 0.3j])
def test_convex_combination_closure(lam, rng):
    a = ob.hull_iterate(lam)
    assert a.status is ob.HullStatus.CONVERGED

    def random_g(depth):
        if depth == 0 or rng.random() < 0.2:
            return ob.IDENTITY
        k = int(rng.integers(1, 4))
        w = rng.dirichlet(np.ones(k + 1))[:k] if rng.random() < 0.5 else rng.dirichlet(np.ones(k))
        return ob.Compose(tuple(w), tuple(random_g(depth - 1) for _ in range(k)))

    for _ in range(200):
        z = ob.eval_gspec(random_g(6), lam, 0)
        assert a.polygon.distance(z) <= 1e-6 * a.diameter


lams = st.complex_numbers(max_magnitude=3.5, allow_nan=False, allow_infinity=False)


@settings(max_examples=30)
@given(lams)
def test_conjugation_symmetry(lam):
    assert ob.classify_membership(lam) is ob.classify_membership(lam.conjugate())


@settings(max_examples=30)
@given(lams)
def test_escape_bound(lam):
    a = ob.hull_iterate(lam, ob.OrbitConfig(imag_escape=1e6, escape_radius=1e6, max_iter=60))
    if a.polygon.imaginary_axis_reach() >= TWO_PI:
        assert ob.membership_from_hull(a) is not ob.Membership.MEMBER


def test_star_probe():
    res = ob.star_convexity_probe(1 + 1j, [0.2, 0.5, 1.0])
    assert all(r is ob.Membership.MEMBER for r in res)


# ---------------------------------------------------------------- strict invariance


@pytest.mark.parametrize("lam", [0.45 + 0.45j, 1 + 0.5j])
def test_strict_invariant_candidate(lam):
    K = ob.strict_invariant_candidate(lam)
    pts = np.concatenate([K.vertices, K.boundary_samples(8192)])
    img = lam * np.exp(-pts)
    assert max(K.distance(z) for z in img) == 0
    assert K.signed_clearance(img).min() > 0


def test_strict_invariant_errors():
    with pytest.raises(DomainError):
        ob.strict_invariant_candidate(0.5)
    with pytest.raises(DomainError):
        ob.strict_invariant_candidate(0.5 + 0.5j, t=1.0)
    with pytest.raises(CertificationFailure):
        ob.strict_invariant_candidate(3j)
