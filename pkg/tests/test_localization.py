import random

import pytest

from concordkit import words as W
from concordkit.errors import EquationSystemError, NonStabilizationError, PresentationError, WitnessError
from concordkit.groups import EpiOverG, MorphismOverG, identity_epi, identity_morphism
from concordkit.localization import (PiPerfectCandidate, PiPerfectKind, RewritingTerm, free_product_reduce,
                                     omega_check, parse_system, pi_perfect_check, pi_perfect_to_system,
                                     solution_check, solutions_to_pi_perfect, solve_nilpotent,
                                     validate_system)
from concordkit.nilpotent import nilpotent_quotient
from concordkit.presentation import parse_presentation
from concordkit.wordproblem import Verdict

from corpus import AMBIENTS, F2, Z, Z2, pi_perfect_corpus, random_system

g_at = AMBIENTS["a->t"]


def test_parse_system():
    s = parse_system("var x y ; eq x = [a,b][x,b]\neq y = b x b^-1 x^-1", g_at)
    assert s.variables == ("x", "y") and s.nvars == 2
    assert s.right_sides[1] == (s.source.word("b") + s.var(0) + s.source.word("b^-1") + s.var(0, -1))
    assert "eq x = " in s.to_text()


def test_parse_system_errors():
    with pytest.raises(PresentationError) as e:
        parse_system("var x\neq x = c", g_at)
    assert e.value.line == 2
    with pytest.raises(PresentationError):
        parse_system("var x y\neq x = a", g_at)
    with pytest.raises(PresentationError):
        parse_system("var x\neq x = a\neq z = b", g_at)
    with pytest.raises(EquationSystemError):
        parse_system("var a\neq a = b", g_at)


def test_validate_system():
    assert validate_system(parse_system("var x ; eq x = [a,b][x,b]", g_at))
    assert validate_system(parse_system("var x ; eq x = b [x, b a b^-1 a^-1]", g_at))
    assert not validate_system(parse_system("var x ; eq x = a", g_at))
    # x -> x a: the variable is not cancelled modulo the kernel
    assert not validate_system(parse_system("var x ; eq x = x", g_at))


def test_free_product_reduce_factors():
    s = parse_system("var x ; eq x = [x, b]", g_at)
    red = free_product_reduce(g_at, s.right_sides[0])
    assert red.verdict is Verdict.TRUE
    assert len(red.factors) >= 1


def test_solve_heisenberg_system():
    H = parse_presentation("group H\ngens a b\nrel [[a,b],a]\nrel [[a,b],b]\n")
    gh = EpiOverG.from_text(H, Z2, ["p", "q"])
    s = parse_system("var x; eq x = [a,b][x,[a,b]]", gh)
    sol = solve_nilpotent(s, 2)
    assert sol.iterations <= 3
    assert nilpotent_quotient(H, 2).equal(sol.words[0], H.word("[a,b]"))
    assert solution_check(s, sol).verdict is Verdict.TRUE


def test_solve_rejects_invalid():
    with pytest.raises(EquationSystemError):
        solve_nilpotent(parse_system("var x ; eq x = a", g_at), 2)


def test_nonstabilization():
    # x = a x has no solution even in the abelianization, so the iteration never settles
    s = parse_system("var x ; eq x = a x", g_at)
    with pytest.raises(NonStabilizationError):
        solve_nilpotent(s, 2, check=False)


@pytest.mark.parametrize("seed", range(5))
def test_random_systems_unique(seed):
    rng = random.Random(seed)
    for key in sorted(AMBIENTS):
        c = rng.randint(1, 4)
        s = random_system(rng, AMBIENTS[key])
        assert validate_system(s, c)
        a = solve_nilpotent(s, c)
        b = solve_nilpotent(s, c, start=[W.gen(0, 3)] * s.nvars, check=False)
        Q = nilpotent_quotient(F2, c)
        assert all(Q.equal(u, v) for u, v in zip(a.words, b.words))


def test_pi_perfect_check_kinds():
    F = parse_presentation("group F\ngens x y\n")
    gf = EpiOverG.from_text(F, Z2, ["p", "q"])
    st = pi_perfect_check(PiPerfectCandidate((F.word("[x,y]"),), gf), 4)
    assert st.kind is PiPerfectKind.REFUTED and st.nilpotent_class == 2
    cand, rw = pi_perfect_corpus(1)[0]
    assert pi_perfect_check(cand, 4).kind is PiPerfectKind.UNKNOWN
    assert pi_perfect_check(cand, 4, rw).kind is PiPerfectKind.CERTIFIED


def test_pi_perfect_round_trip():
    cand, rw = pi_perfect_corpus(1)[0]
    ex = pi_perfect_to_system(cand, rw)
    for sol in ex.solutions:
        assert solution_check(ex.system, sol).verdict is Verdict.TRUE
    back = solutions_to_pi_perfect(ex.system, ex.solutions[1], ex.solutions[0])
    assert back.normal_generators == cand.normal_generators
    assert all(row["remainder_trivial"] == "certified-true" for row in back.audit)


def test_bad_rewriting_witness():
    cand, _ = pi_perfect_corpus(1)[0]
    A = cand.ambient.source
    with pytest.raises(WitnessError):
        pi_perfect_to_system(cand, [[RewritingTerm((), 0, A.word("t"))]])
    with pytest.raises(WitnessError):
        pi_perfect_to_system(cand, [])


def test_solutions_to_pi_perfect_rejects_non_solutions():
    cand, rw = pi_perfect_corpus(1)[0]
    ex = pi_perfect_to_system(cand, rw)
    with pytest.raises(EquationSystemError):
        solutions_to_pi_perfect(ex.system, [cand.ambient.source.word("t")], ex.solutions[0])


def test_omega_identity_and_meridian():
    T = parse_presentation("group T\ngens x y\nrel x y x y^-1 x^-1 y^-1\n")
    gT = EpiOverG.from_text(T, Z, ["t", "t"])
    rep = omega_check(identity_morphism(gT))
    assert rep.verdict is Verdict.TRUE
    rep = omega_check(MorphismOverG(identity_epi(Z), gT, (T.word("x"),)))
    assert rep.conditions["4_homology"].verdict is Verdict.FALSE
    assert rep.verdict is Verdict.FALSE
    assert set(rep.to_json()["conditions"]) == {"1_finiteness", "2_kernels_finitely_normally_generated",
                                                 "3_normal_surjection_on_kernels", "4_homology"}
