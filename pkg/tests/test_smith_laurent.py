from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from concordkit.alexander import laurent_snf
from concordkit.laurent import LaurentPoly
from concordkit.smith import (abelian_invariants, in_rational_span, integer_kernel, saturation,
                              smith_invariants)

t = LaurentPoly.monomial(1)
one = LaurentPoly.const(1)


def test_integer_smith_form():
    assert smith_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert abelian_invariants([[2, 0], [0, 3]], 2) == (0, [6])
    assert abelian_invariants([], 3) == (3, [])
    assert abelian_invariants([[2, 0, 0]], 3) == (2, [2])


def test_kernel_and_saturation():
    K = integer_kernel([[1, 2, 3]], 3)
    assert len(K) == 2
    assert all(x + 2 * y + 3 * z == 0 for x, y, z in K)
    assert saturation([[2, 4]], 2) in ([[1, 2]], [[-1, -2]])
    assert in_rational_span([[2, 4]], [1, 2])
    assert not in_rational_span([[2, 4]], [1, 0])


def test_laurent_arithmetic():
    p = t * t - t + one
    assert p(Fraction(2)) == 3
    assert (t - one) * (t + one) == t * t - one
    assert p.bar() == LaurentPoly.from_dict({-2: 1, -1: -1, 0: 1})
    assert p.symmetric() == LaurentPoly.from_dict({-1: 1, 0: -1, 1: 1})
    assert p.format() == "t^2 - t + 1"
    assert LaurentPoly.from_json(p.to_json()) == p
    assert (t.shift(-3) * p).normalized() == p


def test_laurent_snf_cyclic_module():
    d = laurent_snf([[t * t - t + one, one - t]], 2)
    assert d.free_rank == 1
    assert d.torsion_invariants == ()
    d = laurent_snf([[t * t - t + one, 0 * one], [0 * one, t - one]], 2)
    assert d.free_rank == 0
    assert len(d.torsion_invariants) == 1


small = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=3)


@given(small)
def test_smith_invariants_divide(rows):
    inv = smith_invariants(rows)
    assert all(d > 0 for d in inv)
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))


@given(small)
def test_kernel_annihilates(rows):
    for v in integer_kernel(rows, 3):
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
