import pytest

from concordkit import catalog as C
from concordkit import words as W
from concordkit.errors import MorphismError, WitnessError
from concordkit.groups import (EpiOverG, MorphismOverG, abelianization, eliminate_generators,
                               identity_epi, identity_morphism, j_surgery_group,
                               kernel_normal_generators, pushout, torus_group)
from concordkit.presentation import GroupPresentation, free_group, parse_presentation
from concordkit.wordproblem import Verdict, trivial_in


def test_abelianization():
    assert abelianization(C.trefoil_exterior()) == (1, [])
    assert abelianization(C.fiber_exterior()) == (3, [])
    assert abelianization(parse_presentation("group P\ngens a b\nrel a^4\nrel b^6\n")) == (0, [2, 12])


def test_epi_checks():
    T = C.trefoil_exterior()
    gamma = C.knot_to_z(T)
    assert gamma.images == (W.gen(0, 3), W.gen(0, 2))
    assert gamma.check().verdict is Verdict.TRUE
    bad = EpiOverG(T, gamma.target, (W.gen(0), W.gen(0)))
    assert bad.check().verdict is Verdict.FALSE
    with pytest.raises(MorphismError):
        bad.validated()
    with pytest.raises(MorphismError):
        EpiOverG(T, gamma.target, (W.gen(0),))


def test_heisenberg_coefficients():
    g = C.heisenberg_gamma()
    assert g.check().verdict is Verdict.TRUE
    assert g.apply(g.source.meridian) == ()


def test_morphism_over_g():
    g = C.heisenberg_gamma()
    assert identity_morphism(g).check().verdict is Verdict.TRUE
    f = MorphismOverG(g, g, (W.gen(1), W.gen(0), W.gen(2)))
    with pytest.raises(MorphismError):
        f.validated()


def test_pushout_presentation():
    G = free_group("Z", ("t",))
    C_ = GroupPresentation("C", ("c",))
    A = GroupPresentation("A", ("a", "b"), (W.commutator(W.gen(0), W.gen(1)),))
    B = GroupPresentation("B", ("d",))
    gC = EpiOverG(C_, G, (W.gen(0),))
    gA = EpiOverG(A, G, (W.gen(0), ()))
    gB = EpiOverG(B, G, (W.gen(0),))
    po = pushout(MorphismOverG(gC, gA, (W.gen(0),)), MorphismOverG(gC, gB, (W.gen(0),)))
    P = po.presentation
    assert P.generators == ("a", "b", "d")
    assert len(P.relators) == 2
    assert abelianization(P) == (2, [])
    assert po.gamma.check().verdict is Verdict.TRUE


def test_pushout_name_clash():
    G = free_group("Z", ("t",))
    A = GroupPresentation("A", ("x",))
    gA = EpiOverG(A, G, (W.gen(0),))
    f = identity_morphism(gA)
    po = pushout(f, f)
    assert len(set(po.presentation.generators)) == 2


def test_j_surgery_relator_count():
    E = C.fiber_exterior()
    g = C.heisenberg_gamma(E)
    po = j_surgery_group(E, E, g, g)
    assert len(po.presentation.relators) == 2 * len(E.relators) + 2
    assert po.metadata["orientation"] == "reversed"
    assert not po.metadata["flagged"]
    assert po.gamma.check().verdict is Verdict.TRUE
    same = j_surgery_group(E, E, g, g, orientation="same")
    assert same.metadata["flagged"]


def test_j_surgery_errors():
    E = C.fiber_exterior()
    g = C.heisenberg_gamma(E)
    T = C.trefoil_exterior()
    with pytest.raises(MorphismError):
        j_surgery_group(E, T, g, C.knot_to_z(T))
    with pytest.raises(MorphismError):
        j_surgery_group(E, E, g, g, orientation="sideways")
    unmarked = E.replace(marked=())
    with pytest.raises(MorphismError):
        j_surgery_group(unmarked, E, g.with_source(unmarked, g.images), g)


def test_torus_group():
    T2 = torus_group()
    assert abelianization(T2) == (2, [])


def test_kernel_generators_trefoil():
    T = C.trefoil_exterior()
    gamma = C.knot_to_z(T)
    K = kernel_normal_generators(gamma)
    assert len(K) >= 1
    for w in K.words:
        assert gamma.apply(w) == () or trivial_in(gamma.target, gamma.apply(w)).verdict is Verdict.TRUE


def test_kernel_generators_need_witnesses():
    A = free_group("F", ("a",))
    G = free_group("Z", ("t",))
    with pytest.raises(WitnessError):
        kernel_normal_generators(EpiOverG(A, G, (W.gen(0, 2),)))


def test_eliminate_generators():
    P = parse_presentation("group P\ngens a b c\nrel c a^-1 b^-1\nrel [a,b]\n")
    Q, subst = eliminate_generators(P)
    assert Q.ngens == 2
    assert abelianization(Q) == abelianization(P)
    Q2, _ = eliminate_generators(P, keep=("a", "b"))
    assert Q2.generators == ("a", "b")


def test_identity_epi():
    H = C.heisenberg_quotient()
    assert identity_epi(H).check().verdict is Verdict.TRUE
