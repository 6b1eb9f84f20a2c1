from fractions import Fraction

import numpy as np
import pytest

from concordkit.catalog import seifert_named
from concordkit.errors import SeifertError, UnreachableTarget
from concordkit.seifert import (FIGURE_EIGHT, GRANNY, SQUARE, TREFOIL, UNKNOT, SeifertMatrix, block_sum,
                                torus_2, twist_knot)
from concordkit.signatures import (CirclePoint, CertifiedReal, QI, dense_family, hermitian_inertia,
                                   integral_sum, is_eps_dense, lt_signature_at, monte_carlo_integral,
                                   random_seifert, signature_function, signature_integral)

TOL = Fraction(1, 10 ** 6)


def test_qi_arithmetic():
    a = QI(Fraction(1, 2), 3)
    n = a * a.conj()
    assert (n.re, n.im) == (Fraction(37, 4), 0)
    one = a * a.inv()
    assert (one.re, one.im) == (1, 0)


def test_hermitian_inertia():
    assert hermitian_inertia([[QI(1), QI(0)], [QI(0), QI(-2)]]) == (1, 1, 0)
    assert hermitian_inertia([[QI(0), QI(0, 1)], [QI(0, -1), QI(0)]]) == (1, 1, 0)
    assert hermitian_inertia([[QI(1), QI(1)], [QI(1), QI(1)]]) == (1, 0, 1)


@pytest.mark.parametrize("V, sigma", [(TREFOIL, -2), (TREFOIL.mirror(), 2), (FIGURE_EIGHT, 0),
                                      (GRANNY, -4), (SQUARE, 0), (torus_2(2), -4), (torus_2(3), -6),
                                      (UNKNOT, 0)])
def test_signature_at_minus_one(V, sigma):
    assert lt_signature_at(V, CirclePoint.minus_one()) == sigma


def test_no_jumps_at_rational_points():
    # a rational point of the circle has a minimal polynomial taking the value 2p^2 or 4p^2 at 1,
    # so it is never a root of an Alexander polynomial and evaluation never hits a jump
    rng = np.random.default_rng(5)
    for _ in range(10):
        V = random_seifert(rng, 4)
        for s in (Fraction(1), Fraction(1, 3), Fraction(-2), Fraction(7, 5)):
            lt_signature_at(V, CirclePoint(s))


def test_jump_point_detector():
    with pytest.raises(ValueError):
        CirclePoint(0)
    assert hermitian_inertia([[QI(0)]]) == (0, 0, 1)


def test_signature_at_matches_function():
    for V in (TREFOIL, torus_2(2), twist_knot(-3)):
        sf = signature_function(V)
        for s in (Fraction(1, 10), Fraction(1), Fraction(5)):
            p = CirclePoint(s)
            assert lt_signature_at(V, p) == sf.value_at_theta(p.theta)


@pytest.mark.parametrize("V, value", [
    (TREFOIL, Fraction(-4, 3)), (GRANNY, Fraction(-8, 3)), (SQUARE, Fraction(0)),
    (torus_2(2), Fraction(-12, 5)), (torus_2(3), Fraction(-24, 7)), (FIGURE_EIGHT, Fraction(0)),
    (TREFOIL.mirror(), Fraction(4, 3)), (UNKNOT, Fraction(0)),
])
def test_exact_integrals(V, value):
    r = signature_integral(V, TOL)
    assert r.exact and r.lo == value


@pytest.mark.parametrize("m", [-1, -2, -5, 3])
def test_twist_integral_matches_monte_carlo(m):
    V = twist_knot(m)
    r = signature_integral(V, TOL)
    assert r.width <= TOL
    assert abs(float(r.mid) - monte_carlo_integral(V, 100_000, seed=3)) < 3e-3


def test_signature_function_trefoil():
    sf = signature_function(TREFOIL)
    assert sf.values == (0, -2)
    assert len(sf.jumps) == 1 and sf.jumps[0].cyclotomic == (1, 6)
    assert sf.value_at_theta(0.1) == 0 and sf.value_at_theta(3.0) == -2
    assert sf.to_csv().startswith("kind,cos_lo,cos_hi,value")
    assert sf.to_svg().startswith("<svg")
    assert set(sf.to_json()) >= {"jumps", "values"}


def test_integral_sum_and_block_sum():
    s = integral_sum([TREFOIL, TREFOIL])
    assert s.exact and s.lo == Fraction(-8, 3)
    assert block_sum([TREFOIL, FIGURE_EIGHT]).size == 4


def test_certified_real():
    a = CertifiedReal(Fraction(0), Fraction(1))
    b = CertifiedReal(Fraction(2), Fraction(3))
    assert a.disjoint(b) and not a.disjoint(a)
    assert (a + b).lo == 2 and (a + b).hi == 4
    assert a.contains(Fraction(1, 2))


def test_tolerance_must_be_positive():
    with pytest.raises(ValueError):
        signature_integral(TREFOIL, 0)


def test_seifert_validation():
    with pytest.raises(SeifertError):
        SeifertMatrix(((1, 0), (0, 1)))
    with pytest.raises(SeifertError):
        SeifertMatrix(((1, 2, 3),))


def test_seifert_named():
    assert seifert_named("T(2,5)") == torus_2(2)
    assert seifert_named("-trefoil") == TREFOIL.mirror() == seifert_named("mirror(trefoil)")
    assert seifert_named("twist(-3)") == twist_knot(-3)
    with pytest.raises(SeifertError):
        seifert_named("T(2,4)")


def test_random_seifert_is_valid():
    rng = np.random.default_rng(0)
    for size in (2, 4, 6):
        V = random_seifert(rng, size)
        assert V.size == size
        r = signature_integral(V, TOL)
        assert abs(float(r.mid) - monte_carlo_integral(V, 20_000, seed=1)) < 0.05


def test_dense_targets():
    fam = dense_family(targets=[0.5, -1.25, 0.0], eps=0.1)
    for m, t in zip(fam, [0.5, -1.25, 0.0]):
        assert abs(float(m.integral.mid) - t) < 0.1
        assert signature_integral(m.matrix, TOL).lo == m.integral.lo
    with pytest.raises(UnreachableTarget):
        dense_family(targets=[100.0], eps=0.1)
    with pytest.raises(ValueError):
        dense_family(eps=0)


def test_is_eps_dense():
    vals = [CertifiedReal(Fraction(k, 10), Fraction(k, 10)) for k in range(-20, 21)]
    assert is_eps_dense(vals, Fraction(1, 10))
    assert not is_eps_dense(vals[::5], Fraction(1, 10))
