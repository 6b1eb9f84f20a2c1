"""Generators shared by the localization tests and the acceptance suite."""

import random

from concordkit import catalog as C
from concordkit import words as W
from concordkit.groups import EpiOverG, MorphismOverG, identity_epi, identity_morphism
from concordkit.localization import EquationSystem, PiPerfectCandidate, RewritingTerm
from concordkit.presentation import GroupPresentation, free_group, parse_presentation

Z = free_group("Z", ("t",))
Z2 = parse_presentation("group Z2\ngens p q\nrel [p,q]\n")
F2 = free_group("F", ("a", "b"))

AMBIENTS = {
    "a->t": EpiOverG(F2, Z, (W.gen(0), W.EMPTY)),
    "ab->t": EpiOverG(F2, Z, (W.gen(0), W.gen(0))),
    "ab->Z2": EpiOverG(F2, Z2, (W.gen(0), W.gen(1))),
}


def random_word(rng: random.Random, ngens: int, length: int) -> W.Word:
    return W.free_reduce(tuple((rng.randrange(ngens), rng.choice((1, -1))) for _ in range(length)))


def random_kernel_word(rng: random.Random, gamma: EpiOverG, length: int = 3) -> W.Word:
    """A conjugate of a commutator, or of b when b dies in G."""
    m = gamma.source.ngens
    u, v = random_word(rng, m, length) or W.gen(0), random_word(rng, m, length) or W.gen(1)
    core = W.commutator(u, v)
    if not gamma.images[1] and rng.random() < 0.5:
        core = W.gen(1, rng.choice((1, -1)))
    return W.conjugate(core, random_word(rng, m, 2))


def random_system(rng: random.Random, gamma: EpiOverG, nvars: int | None = None) -> EquationSystem:
    """x_i = k_0 prod [x_j^e, k] with every k in the kernel of gamma."""
    m = gamma.source.ngens
    n = nvars or rng.randint(1, 3)
    rights = []
    for _ in range(n):
        parts = [random_kernel_word(rng, gamma)]
        for _ in range(rng.randint(1, 2)):
            x = W.gen(m + rng.randrange(n), rng.choice((1, -1)))
            term = W.commutator(x, random_kernel_word(rng, gamma, 2))
            parts.append(W.conjugate(term, random_word(rng, m, 2)))
        rng.shuffle(parts)
        rights.append(W.mul(*parts))
    return EquationSystem(gamma, tuple(f"x{i + 1}" for i in range(n)), tuple(rights))


def pi_perfect_corpus(count: int = 20):
    """Candidates with rewriting witnesses over Z.

    One-generator groups <g, t | g^-1 t^j [g, t^k g^e t^-k] t^-j>, then
    two-generator groups <a, b, t | a^-1 [a, t^k b t^-k], b^-1 [b, t^k a^e t^-k]>.
    """
    out = []
    t = W.gen(1)
    for j, k, e in [(j, k, e) for k in (1, 2, 3, 4) for e in (1, -1) for j in (0, 1)]:
        conj = W.power(t, j)
        other = W.conjugate(W.gen(0, e), W.power(t, -k))
        rel = W.mul(W.gen(0, -1), W.conjugate(W.commutator(W.gen(0), other), W.inverse(conj)))
        A = GroupPresentation(f"A{j}{k}{e:+d}", ("g", "t"), (W.free_reduce(rel),))
        gamma = EpiOverG(A, Z, (W.EMPTY, W.gen(0)))
        out.append((PiPerfectCandidate((W.gen(0),), gamma), [[RewritingTerm(conj, 0, other)]]))
    t = W.gen(2)
    for k in (0, 1, 2):
        for e in (1, -1):
            oa = W.conjugate(W.gen(1), W.power(t, -k))
            ob = W.conjugate(W.gen(0, e), W.power(t, -k))
            rels = (W.free_reduce(W.mul(W.gen(0, -1), W.commutator(W.gen(0), oa))),
                    W.free_reduce(W.mul(W.gen(1, -1), W.commutator(W.gen(1), ob))))
            A = GroupPresentation(f"B{k}{e:+d}", ("a", "b", "t"), rels)
            gamma = EpiOverG(A, Z, (W.EMPTY, W.EMPTY, W.gen(0)))
            cand = PiPerfectCandidate((W.gen(0), W.gen(1)), gamma)
            out.append((cand, [[RewritingTerm((), 0, oa)], [RewritingTerm((), 1, ob)]]))
    return out[:count]


def omega_corpus():
    """(label, morphism, witnesses, expected verdict or None) for the Omega^G checker."""
    T = C.trefoil_exterior()
    gT = C.knot_to_z(T)
    E = C.fiber_exterior()
    gE = C.heisenberg_gamma(E)
    H = C.heisenberg_quotient()
    U = C.unknot_exterior()
    gU = C.knot_to_z(U)
    W1 = parse_presentation("group W\ngens a b\nrel a b a b^-1 a^-1 b^-1\n")
    gW = EpiOverG(W1, Z, (W.gen(0), W.gen(0)))
    F = free_group("F", ("a", "b"))
    fig8 = parse_presentation("group E8\ngens a b\nrel b a^-1 b^-1 a b^-1 a b a^-1 b a^-1\n")
    g8 = EpiOverG(fig8, Z, (W.gen(0), W.gen(0)))
    gZ = identity_epi(Z)
    cases = []

    def add(label, f, wit=None, expect=None):
        cases.append((label, f, wit, expect))

    for label, g in (("Z", gZ), ("trefoil", gT), ("wirtinger trefoil", gW), ("figure-eight", g8),
                     ("unknot", gU), ("Z2", identity_epi(Z2)), ("H", identity_epi(H)),
                     ("F->Z", EpiOverG(F, Z, (W.gen(0), W.EMPTY))),
                     ("F->Z2", EpiOverG(F, Z2, (W.gen(0), W.gen(1))))):
        add(f"identity {label}", identity_morphism(g), None, "TRUE")
    add("identity fiber exterior", identity_morphism(gE), None, "TRUE")
    for label, g, word in (("trefoil", gT, T.meridian), ("wirtinger trefoil", gW, W.gen(0)),
                           ("wirtinger b", gW, W.gen(1)), ("figure-eight", g8, W.gen(0))):
        add(f"meridian into {label}", MorphismOverG(gZ, g, (word,)), None, "FALSE")
        add(f"meridian into {label} with h2", MorphismOverG(gZ, g, (word,)), {"h2": "asserted"}, "FALSE")
    add("unknot to Z", MorphismOverG(gU, gZ, (W.gen(0),)), None, "UNKNOWN")
    add("Z to unknot", MorphismOverG(gZ, gU, (W.gen(0),)), None, "UNKNOWN")
    add("unknot to Z with h2", MorphismOverG(gU, gZ, (W.gen(0),)), {"h2": "asserted"}, "TRUE")
    # Wirtinger and standard trefoil: a -> v^-1 u, b -> u v^-1
    iso = MorphismOverG(gW, gT, (T.word("v^-1 u"), T.word("u v^-1")))
    add("wirtinger to standard trefoil", iso, None, "UNKNOWN")
    add("wirtinger to standard trefoil with h2", iso, {"h2": "asserted"}, "TRUE")
    add("free onto Z", MorphismOverG(EpiOverG(F, Z, (W.gen(0), W.gen(0))), gZ, (W.gen(0), W.gen(0))),
        None, "FALSE")
    add("free to trefoil", MorphismOverG(EpiOverG(F, Z, (W.gen(0), W.gen(0))), gW, (W.gen(0), W.gen(1))),
        None, "FALSE")
    add("free to figure-eight", MorphismOverG(EpiOverG(F, Z, (W.gen(0), W.gen(0))), g8,
                                               (W.gen(0), W.gen(1))), None, "FALSE")
    add("F to H", MorphismOverG(EpiOverG(F, H, (W.gen(0), W.gen(1))), identity_epi(H),
                                               (W.gen(0), W.gen(1))), None, None)
    add("F->Z2 to Z2", MorphismOverG(EpiOverG(F, Z2, (W.gen(0), W.gen(1))), identity_epi(Z2),
                                     (W.gen(0), W.gen(1))), None, None)
    add("F->Z2 to Z2 with h2", MorphismOverG(EpiOverG(F, Z2, (W.gen(0), W.gen(1))), identity_epi(Z2),
                                             (W.gen(0), W.gen(1))), {"h2": "asserted"}, None)
    add("fiber exterior to H", MorphismOverG(gE, identity_epi(H), (H.word("x"), H.word("y"), H.word("[x,y]"))),
        None, None)
    return cases


def heisenberg_base():
    from concordkit.ledger import KnotData
    E = C.fiber_exterior()
    return KnotData(E, C.heisenberg_gamma(E), "fiber").validated()


def heisenberg_certificates(depths=(0, 1, 2)):
    """Certificates for eta = a, [a, a^x], [[a, a^x], [a, a^y]] with a = [x,y] t^-1."""
    from concordkit.ledger import certify_eta
    from concordkit.series import CommutatorCertificate, Status, UserEvidence
    base = heisenberg_base()
    A = base.exterior
    a = A.word("[x,y] t^-1")
    e1 = W.commutator(a, W.conjugate(a, A.word("x")))
    f1 = W.commutator(a, W.conjugate(a, A.word("y")))
    out = {}
    if 0 in depths:
        out[0] = certify_eta(base.gamma, a, 0)
    if 1 in depths:
        out[1] = certify_eta(base.gamma, e1, 1)
    if 2 in depths:
        out[2] = certify_eta(base.gamma, W.commutator(e1, f1), 2, CommutatorCertificate.single(e1, f1),
                             UserEvidence(Status.NOT_IN, "local series"))
    return out
