from concordkit import words as W
from concordkit.presentation import free_group, parse_presentation
from concordkit.wordproblem import (Budget, Verdict, certified_nilpotent_class, kleene_and, kleene_or,
                                    negate, rewrite_search, trivial_in)

T, F, U = Verdict.TRUE, Verdict.FALSE, Verdict.UNKNOWN
TREFOIL = parse_presentation("group T\ngens u v\nrel u^2 v^-3\n")
HEIS = parse_presentation("group H\ngens x y\nrel [[x,y],x]\nrel [[x,y],y]\n")


def test_kleene_tables():
    assert kleene_and([T, T]) is T
    assert kleene_and([T, U]) is U
    assert kleene_and([U, F]) is F
    assert kleene_or([F, U]) is U
    assert kleene_or([U, T]) is T
    assert negate(U) is U
    assert kleene_and([]) is T


def test_free_and_abelian_groups():
    Fr = free_group("F", ("a", "b"))
    assert trivial_in(Fr, W.commutator(W.gen(0), W.gen(1))).verdict is F
    Z2 = parse_presentation("group Z2\ngens a b\nrel [a,b]\n")
    assert trivial_in(Z2, W.commutator(W.gen(0), W.gen(1))).verdict is T


def test_nilpotent_certificate():
    assert certified_nilpotent_class(HEIS, 4) == 2
    x, y = W.gen(0), W.gen(1)
    assert trivial_in(HEIS, W.commutator(W.commutator(x, y), W.mul(x, y))).verdict is T
    assert trivial_in(HEIS, W.commutator(x, y)).verdict is F


def test_trefoil_center():
    # u^2 is central, so [u^2, v] = 1; found by rewriting since the group is not nilpotent
    u, v = W.gen(0), W.gen(1)
    ch = trivial_in(TREFOIL, W.commutator(W.power(u, 2), v))
    assert ch.verdict is T
    assert ch.method == "rewriting"


def test_unknown_is_reported():
    # the commutator subgroup of the trefoil group is not detected by nilpotent quotients
    u, v = W.gen(0), W.gen(1)
    ch = trivial_in(TREFOIL, W.commutator(u, v), budget=Budget(max_nodes=200))
    assert ch.verdict is U


def test_rewrite_search_finds_relator_conjugate():
    u, v = W.gen(0), W.gen(1)
    r = W.mul(W.power(u, 2), W.power(v, -3))
    res = rewrite_search(TREFOIL.relators, W.conjugate(r, v))
    assert res.found
