from hypothesis import given
from hypothesis import strategies as st

from concordkit import words as W

syllable = st.tuples(st.integers(0, 3), st.integers(-3, 3).filter(bool))
words = st.lists(syllable, max_size=12).map(W.free_reduce)


def test_free_reduce_cancels():
    assert W.free_reduce([(0, 1), (1, 2), (1, -2), (0, -1)]) == ()
    assert W.free_reduce([(0, 1), (0, 2), (1, 0)]) == ((0, 3),)


def test_commutator_convention():
    a, b = W.gen(0), W.gen(1)
    assert W.commutator(a, b) == ((0, -1), (1, -1), (0, 1), (1, 1))
    assert W.format_word(W.commutator(a, b), ["a", "b"]) == "a^-1 b^-1 a b"
    assert W.format_word((), ["a"]) == "1"


def test_conjugate_and_power():
    a, b = W.gen(0), W.gen(1)
    assert W.conjugate(a, b) == ((1, -1), (0, 1), (1, 1))
    assert W.power(W.mul(a, b), -2) == ((1, -1), (0, -1), (1, -1), (0, -1))
    assert W.cyclic_reduce(W.conjugate(a, b)) == a


def test_left_normed():
    a, b = W.gen(0), W.gen(1)
    assert W.left_normed([a, b, b]) == W.commutator(W.commutator(a, b), b)


@given(words)
def test_inverse_cancels(w):
    assert W.mul(w, W.inverse(w)) == ()
    assert W.inverse(W.inverse(w)) == w


@given(words, words, words)
def test_multiplication_associative(u, v, w):
    assert W.mul(W.mul(u, v), w) == W.mul(u, W.mul(v, w))


@given(words)
def test_free_reduce_idempotent(w):
    assert W.free_reduce(w) == w
    assert all(e != 0 for _, e in w)
    assert all(a[0] != b[0] for a, b in zip(w, w[1:]))


@given(words, st.integers(0, 3))
def test_exponent_sums_additive(w, k):
    n = 4
    sums = W.exponent_sums(W.power(w, k), n)
    assert sums == [k * s for s in W.exponent_sums(w, n)]
