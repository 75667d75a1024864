import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from bnquot.chern import inverse_total_chern
from bnquot.kunneth import TruncationError
from bnquot.porteous import (CodimensionError, FormalSeries, berkowitz_det, delta_pq,
                             fundamental_class, laplace_det, porteous_matrix)
from bnquot.ring import Generator, RingElement, make_ring
from bnquot.scenarios import make_scenario, pushforward
from bnquot.verify import oracle_ring, random_bundle, random_element

# commuting polynomial ring for a sympy determinant oracle
POLY = make_ring(0, [Generator("x", 2), Generator("y", 4)], 40)
SX, SY = sp.symbols("x y")


def _to_sympy(z: RingElement):
    out = sp.Integer(0)
    for m, c in z.items():
        ex = dict(POLY.factors(m))
        out += sp.Rational(c.numerator, c.denominator) * SX ** ex.get("x", 0) * SY ** ex.get("y", 0)
    return sp.expand(out)


def _random_poly(rng, k):
    z = POLY.zero()
    for m in POLY.basis(k, base_only=True):
        if rng.random() < 0.7:
            z = z + RingElement(POLY, {m: Fraction(rng.randint(-4, 4))})
    return z


def _series(ring, coeffs):
    return FormalSeries(ring, dict(enumerate(coeffs, start=1)))


# -- examples ------------------------------------------------------------------

def test_delta_p1_is_coefficient():
    r = oracle_ring(12)
    x, y = r.gens("x", "y")
    a = _series(r, [x, y, x * y])
    assert delta_pq(a, 1, 1) == x
    assert delta_pq(a, 3, 1) == x * y


def test_delta_22():
    r = oracle_ring(12)
    x, y = r.gens("x", "y")
    a = _series(r, [x, y, x * y])
    assert delta_pq(a, 2, 2) == y * y - x * (x * y)


def test_missing_and_unit_indices():
    r = oracle_ring(8)
    a = _series(r, [r.gen("x")])
    assert a[0] == r.one() and a[-1].is_zero() and a[5].is_zero()
    b = FormalSeries(r, {1: r.gen("x")}, unit_constant=False)
    assert b[0].is_zero()
    # Delta_{1,2} = a_1^2 - a_0 a_2
    assert delta_pq(a, 1, 2) == r.gen("x") * r.gen("x")


def test_argument_errors():
    r = oracle_ring(8)
    a = _series(r, [r.gen("e1") * r.gen("x")])
    with pytest.raises(ValueError):
        delta_pq(a, 1, 1)
    with pytest.raises(ValueError):
        delta_pq(_series(r, []), 0, 1)


def test_fundamental_class_genus1():
    fc = fundamental_class(pushforward(make_scenario(1, 4, 0)), 1, 0)
    assert fc.codim == 1 and fc.agree
    assert fc.difference.is_zero()


def test_fundamental_class_codim2_differs_by_c1_squared():
    pf = pushforward(make_scenario(2, 7, 1))
    fc = fundamental_class(pf, 2, 1)
    c1, c2 = pf.bundle.c(1), pf.bundle.c(2)
    assert fc.porteous == c1 * c1 - c2
    assert fc.minus_chern == -c2
    assert not fc.agree and fc.difference == c1 * c1


def test_fundamental_class_errors():
    pf = pushforward(make_scenario(2, 7, 3))
    with pytest.raises(CodimensionError):
        fundamental_class(pf, 2, 3)
    pf = pushforward(make_scenario(2, 7, 1))
    with pytest.raises(TruncationError):
        fundamental_class(pf, 2, 1, N=1)


# -- oracles -------------------------------------------------------------------

seeds = st.integers(0, 2 ** 32 - 1)


@settings(max_examples=40)
@given(seeds, st.integers(1, 4))
def test_berkowitz_matches_sympy(seed, q):
    rng = random.Random(seed)
    M = [[_random_poly(rng, 2 * rng.randint(0, 2)) for _ in range(q)] for _ in range(q)]
    got = berkowitz_det(M, POLY.zero(), POLY.one())
    expected = sp.expand(sp.Matrix([[_to_sympy(e) for e in row] for row in M]).det())
    assert _to_sympy(got) == expected


@settings(max_examples=40)
@given(seeds, st.integers(2, 3))
def test_berkowitz_matches_laplace_with_nilpotents(seed, q):
    r = oracle_ring(8)
    rng = random.Random(seed)
    M = [[random_element(r, 2 * rng.randint(0, 1), rng, density=0.8) for _ in range(q)]
         for _ in range(q)]
    assert berkowitz_det(M, r.zero(), r.one()) == laplace_det(M, r.zero(), r.one())


@settings(max_examples=30)
@given(seeds)
def test_delta_alternating_in_rows(seed):
    rng = random.Random(seed)
    a = _series(POLY, [_random_poly(rng, 2 * k) for k in range(1, 6)])
    M = porteous_matrix(a, 3, 3)
    swapped = [M[1], M[0], M[2]]
    d = berkowitz_det(M, POLY.zero(), POLY.one())
    assert berkowitz_det(swapped, POLY.zero(), POLY.one()) == -d
    assert delta_pq(a, 3, 3) == d
    doubled = [[e.scale(2) for e in M[0]], M[1], M[2]]
    assert berkowitz_det(doubled, POLY.zero(), POLY.one()) == d.scale(2)


@settings(max_examples=30)
@given(seeds)
def test_porteous_identities_on_random_bundles(seed):
    rng = random.Random(seed)
    r = oracle_ring(12)
    V = random_bundle(r, rng.randint(1, 4), rng)
    inv = inverse_total_chern(V, 6)
    s = FormalSeries(r, inv)
    for p in range(1, 7):
        assert delta_pq(s, p, 1) == inv[p]
    assert delta_pq(s, 1, 1) == -V.c(1)


def test_fundamental_class_json_shape():
    fc = fundamental_class(pushforward(make_scenario(1, 4, 0)), 1, 0)
    assert list(fc.to_json()) == ["codim", "porteous", "minus_chern", "agree", "difference"]
