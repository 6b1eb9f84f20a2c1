"""The rational G-derived series of a coefficient system gamma: A -> G.

Gamma^(0) = Ker(gamma) and Gamma^(n+1) is the kernel of
Gamma^(n) -> Gamma^(n)_ab (x) Q.  Membership is reported as In, NotIn or
Unknown together with the computation that decided it.

Decision methods used here:

* depth 0: triviality of gamma(w) in G;
* depth 1, G infinite cyclic: exact, by Fox calculus over Q[t^+-1];
* depth >= 1, In: Fox derivatives of w vanish in Z[G] (so w lies in the
  commutator subgroup of the kernel), or a verified commutator certificate;
* depth >= 1, NotIn: the image of w survives in A_ab (x) Q; or some
  character G -> Z gives a larger kernel in which w is already NotIn; or w
  is NotIn in the nilpotent quotient A / gamma_{c+1} A, which is a group
  over G whenever G is nilpotent of class <= c (functoriality of the series);
* depth 2 inherits NotIn from depth 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import gcd
from typing import Sequence

from . import words as W
from .alexander import fox_group_ring, fox_row, in_row_span
from .errors import MorphismError, NotInKernelError, WitnessError
from .groups import EpiOverG, kernel_normal_generators
from .nilpotent import MAX_CLASS, Igs, free_nilpotent, nilpotent_quotient
from .presentation import GroupPresentation
from .smith import abelian_invariants, in_rational_span, integer_kernel, saturation
from .wordproblem import Verdict, certified_nilpotent_class, trivial_in

DEPTH0_CLASS = 4
AUTO_DEPTH = 2
SHADOW_CLASS = 5


class Status(Enum):
    IN = "In"
    NOT_IN = "NotIn"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


_FROM_VERDICT = {Verdict.TRUE: Status.IN, Verdict.FALSE: Status.NOT_IN, Verdict.UNKNOWN: Status.UNKNOWN}


@dataclass(frozen=True)
class SeriesMembership:
    element: tuple
    depth: int
    status: Status
    certificate: str
    method: str = ""

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        return {
            "element": W.format_word(self.element, names) if names else list(map(list, self.element)),
            "depth": self.depth,
            "status": str(self.status),
            "method": self.method,
            "certificate": self.certificate,
        }


@dataclass(frozen=True)
class CommutatorCertificate:
    """w = prod_i [u_i, v_i] with every u_i, v_i in the previous term of the series."""

    pairs: tuple

    @classmethod
    def single(cls, u: W.Word, v: W.Word) -> "CommutatorCertificate":
        return cls(((W.free_reduce(u), W.free_reduce(v)),))

    def product(self) -> W.Word:
        return W.mul(*[W.commutator(u, v) for u, v in self.pairs])


@dataclass(frozen=True)
class UserEvidence:
    """Externally supplied membership evidence (e.g. for the local series)."""

    status: Status
    note: str = ""


# ---------------------------------------------------------------------------
# helpers


def _cyclic_target(G: GroupPresentation) -> bool:
    return G.ngens == 1 and not G.relators


def _g_key(gamma: EpiOverG):
    """Canonical labels of gamma-images, when the word problem in G is exact."""
    G = gamma.target
    if not G.relators:
        return lambda p: W.free_reduce(gamma.apply(p))
    k = certified_nilpotent_class(G, MAX_CLASS)
    if k is None:
        return None
    Q = nilpotent_quotient(G, k)
    return lambda p: Q.normal_form(gamma.apply(p))


def _z_depth1(A: GroupPresentation, exps: Sequence[int], w: W.Word) -> bool:
    """Exact test: is w (in the kernel of A -> Z) zero in the rational Alexander module?"""
    rows = [fox_row(r, exps, A.ngens) for r in A.relators]
    return in_row_span(rows, fox_row(w, exps, A.ngens))


def _characters(gamma: EpiOverG) -> list[list[int]]:
    """Exponent vectors of A -> G -> Z for a basis of Hom(G, Z), made primitive."""
    G = gamma.target
    M = [W.exponent_sums(r, G.ngens) for r in G.relators]
    basis = integer_kernel(M, G.ngens) if M else [[1 if i == j else 0 for i in range(G.ngens)]
                                                   for j in range(G.ngens)]
    out = []
    for psi in basis:
        exps = [sum(p * e for p, e in zip(psi, W.exponent_sums(img, G.ngens))) for img in gamma.images]
        d = 0
        for e in exps:
            d = gcd(d, e)
        if d:
            out.append([e // d for e in exps])
    return out


def _abelian_notin(A: GroupPresentation, w: W.Word) -> bool:
    rows = [W.exponent_sums(r, A.ngens) for r in A.relators]
    return not in_rational_span(rows, W.exponent_sums(w, A.ngens))


# ---------------------------------------------------------------------------
# nilpotent shadow: the series of gamma_B for B = A / gamma_{c+1} A


class ShadowSeries:
    """Rational derived series of Ker(B -> G) for the class-c quotient B of A.

    Subgroups are kept as their preimages in the free nilpotent group on the
    generators of A.
    """

    def __init__(self, gamma: EpiOverG, c: int):
        A = gamma.source
        self.c = c
        F = self.F = free_nilpotent(A.ngens, c)
        self._conj = [F.word(W.gen(x, s)) for x in range(A.ngens) for s in (1, -1)]
        kernel = kernel_normal_generators(gamma, verify=False).words
        rels = [F.word(r) for r in A.relators]
        self.rbar = Igs(F, rels, self._conj)
        self.levels = [Igs(F, [F.word(k) for k in kernel] + rels, self._conj)]

    def level(self, n: int) -> Igs:
        F = self.F
        while len(self.levels) <= n:
            S = self.levels[-1]
            hs = S.elements()
            ws = [S._weight(h) for h in hs]
            comms = []
            for a in range(len(hs)):
                for b in range(a + 1, len(hs)):
                    if ws[a] + ws[b] <= self.c:
                        comms.append(F.comm(hs[a], hs[b]))
            conj = hs + [F.inv(h) for h in hs]
            D = Igs(F, comms + self.rbar.elements(), conj)
            lattice = [S.express(x) for x in comms] + [S.express(d) for d in D.elements()]
            lattice = [v for v in lattice if v is not None]
            sat = saturation(lattice, len(hs)) if lattice else []
            extra = []
            for vec in sat:
                g = F.identity()
                for h, e in zip(hs, vec):
                    if e:
                        g = F.mul(g, F.pow(h, e))
                extra.append(g)
            self.levels.append(Igs(F, D.elements() + extra, self._conj))
        return self.levels[n]

    def contains(self, w: W.Word, n: int) -> bool:
        return self.level(n).contains(self.F.word(w))


@lru_cache(maxsize=32)
def shadow_series(gamma: EpiOverG, c: int) -> ShadowSeries | None:
    k = certified_nilpotent_class(gamma.target, MAX_CLASS)
    if k is None or k > c:
        return None
    try:
        return ShadowSeries(gamma, c)
    except (WitnessError, MorphismError):
        return None


# ---------------------------------------------------------------------------
# public operations


def gamma_membership(gamma: EpiOverG, w: W.Word, c: int = DEPTH0_CLASS) -> SeriesMembership:
    w = W.free_reduce(w)
    ch = trivial_in(gamma.target, gamma.apply(w), c=c)
    status = _FROM_VERDICT[ch.verdict]
    return SeriesMembership(w, 0, status, f"gamma(w) in {gamma.target.name}: {ch.verdict} "
                            f"by {ch.method}" + (f" ({ch.detail})" if ch.detail else ""), ch.method)


def _verify_commutator_cert(gamma, w, n, cert: CommutatorCertificate, c) -> tuple[bool, str]:
    prod = cert.product()
    if W.free_reduce(prod) != w:
        ch = trivial_in(gamma.source, W.mul(prod, W.inverse(w)), c=c)
        if ch.verdict is not Verdict.TRUE:
            return False, "certificate product does not equal the element"
    for u, v in cert.pairs:
        for x in (u, v):
            m = rational_series_membership(gamma, x, n - 1, c=c) if n - 1 >= 1 else gamma_membership(gamma, x, c)
            if m.status is not Status.IN:
                return False, f"factor {gamma.source.fmt(x)} is {m.status} at depth {n - 1}"
    return True, f"product of {len(cert.pairs)} commutator(s) of depth-{n - 1} elements"


def _depth1(gamma: EpiOverG, w: W.Word, c: int, shadow_class: int) -> SeriesMembership:
    A, G = gamma.source, gamma.target
    if _cyclic_target(G):
        exps = [sum(e for _, e in img) for img in gamma.images]
        d = 0
        for e in exps:
            d = gcd(d, e)
        exps = [e // d for e in exps] if d else exps
        inside = _z_depth1(A, exps, w)
        return SeriesMembership(w, 1, Status.IN if inside else Status.NOT_IN,
                                "Fox vector " + ("in" if inside else "not in") +
                                " the Q[t^+-1] row span of the Fox matrix", "alexander module")
    key = _g_key(gamma)
    if key is not None:
        fv = fox_group_ring(w, A.ngens, key)
        if not any(fv):
            return SeriesMembership(w, 1, Status.IN, "Fox derivatives vanish in Z[G]; "
                                    "w lies in the commutator subgroup of the kernel", "fox Z[G]")
    if _abelian_notin(A, w):
        return SeriesMembership(w, 1, Status.NOT_IN, "image of w in A_ab (x) Q is nonzero",
                                "abelianization")
    for exps in _characters(gamma):
        if not _z_depth1(A, exps, w):
            return SeriesMembership(w, 1, Status.NOT_IN,
                                    f"NotIn for the character with exponents {exps}, "
                                    "whose kernel contains Ker(gamma)", "character")
    sh = shadow_series(gamma, shadow_class)
    if sh is not None and not sh.contains(w, 1):
        return SeriesMembership(w, 1, Status.NOT_IN,
                                f"NotIn in the class-{shadow_class} nilpotent quotient of "
                                f"{A.name} over G", "nilpotent shadow")
    return SeriesMembership(w, 1, Status.UNKNOWN, "no method decided depth 1", "")


def rational_series_membership(gamma: EpiOverG, w: W.Word, n: int,
                               certificate: CommutatorCertificate | UserEvidence | None = None,
                               c: int = DEPTH0_CLASS, shadow_class: int = SHADOW_CLASS) -> SeriesMembership:
    """Membership of w in Gamma^(n)_r gamma."""
    w = W.free_reduce(w)
    if n < 0:
        raise ValueError("depth must be nonnegative")
    if isinstance(certificate, UserEvidence):
        return SeriesMembership(w, n, certificate.status, "user-supplied: " + certificate.note, "user")
    m0 = gamma_membership(gamma, w, c)
    if n == 0:
        return m0
    if m0.status is Status.NOT_IN:
        raise NotInKernelError(f"{gamma.source.fmt(w)} is not in the kernel of gamma")
    if m0.status is Status.UNKNOWN:
        return SeriesMembership(w, n, Status.UNKNOWN, "kernel membership undecided: " + m0.certificate, "")
    if isinstance(certificate, CommutatorCertificate):
        ok, why = _verify_commutator_cert(gamma, w, n, certificate, c)
        if ok:
            return SeriesMembership(w, n, Status.IN, why, "commutator certificate")
    if n > AUTO_DEPTH:
        return SeriesMembership(w, n, Status.UNKNOWN, f"depth {n} needs a certificate", "")
    m1 = _depth1(gamma, w, c, shadow_class)
    if n == 1:
        return m1
    if m1.status is Status.NOT_IN:
        return SeriesMembership(w, n, Status.NOT_IN, "NotIn at depth 1: " + m1.certificate, "monotonicity")
    if m1.status is Status.UNKNOWN:
        return SeriesMembership(w, n, Status.UNKNOWN, "depth 1 undecided", "")
    sh = shadow_series(gamma, shadow_class)
    if sh is not None and not sh.contains(w, 2):
        return SeriesMembership(w, n, Status.NOT_IN,
                                f"NotIn in the class-{shadow_class} nilpotent quotient of "
                                f"{gamma.source.name} over G", "nilpotent shadow")
    return SeriesMembership(w, n, Status.UNKNOWN, "In at depth 1; depth 2 undecided", "")


# ---------------------------------------------------------------------------
# PTFA certificates


@dataclass(frozen=True)
class PtfaCertificate:
    """G = Q_0 -> Q_1 -> ... -> Q_k = 1, each map given as an EpiOverG."""

    group: GroupPresentation
    maps: tuple

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))


@dataclass
class PtfaReport:
    ok: bool
    sections: list = field(default_factory=list)
    reason: str = ""

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"ptfa": self.ok, "sections": self.sections, "reason": self.reason}


def _same(a: GroupPresentation, b: GroupPresentation) -> bool:
    return a.generators == b.generators and a.relators == b.relators


def _section(phi: EpiOverG) -> dict:
    """Is Ker(phi) abelian and torsion-free?  Needs a nilpotency certificate for the source."""
    Q = phi.source
    k = certified_nilpotent_class(Q, MAX_CLASS)
    if k is None:
        return {"source": Q.name, "target": phi.target.name, "abelian": None, "torsion": None,
                "reason": f"{Q.name} is not certified nilpotent"}
    F = free_nilpotent(Q.ngens, k)
    conj = [F.word(W.gen(x, s)) for x in range(Q.ngens) for s in (1, -1)]
    kernel = kernel_normal_generators(phi, verify=False).words
    rels = [F.word(r) for r in Q.relators]
    rbar = Igs(F, rels, conj)
    kt = Igs(F, [F.word(x) for x in kernel] + rels, conj)
    hs = kt.elements()
    comms = [F.comm(hs[a], hs[b]) for a in range(len(hs)) for b in range(a + 1, len(hs))]
    abelian = all(rbar.contains(x) for x in comms)
    lattice = [kt.express(x) for x in comms] + [kt.express(r) for r in rbar.elements()]
    rank, torsion = abelian_invariants([v for v in lattice if v is not None], len(hs))
    return {"source": Q.name, "target": phi.target.name, "abelian": abelian,
            "rank": rank, "torsion": torsion}


def ptfa_report(cert: PtfaCertificate) -> PtfaReport:
    if not cert.maps:
        raise MorphismError("malformed chain: no maps")
    if not _same(cert.maps[0].source, cert.group):
        raise MorphismError("malformed chain: first map does not start at the group")
    for a, b in zip(cert.maps, cert.maps[1:]):
        if not _same(a.target, b.source):
            raise MorphismError("malformed chain: consecutive maps do not compose")
    last = cert.maps[-1].target
    for i in range(last.ngens):
        if trivial_in(last, W.gen(i)).verdict is not Verdict.TRUE:
            raise MorphismError("malformed chain: final group is not certified trivial")
    report = PtfaReport(True)
    for phi in cert.maps:
        sec = _section(phi)
        report.sections.append(sec)
        if sec.get("abelian") is None:
            report.ok = False
            report.reason = sec["reason"]
        elif not sec["abelian"] or sec["torsion"]:
            report.ok = False
            report.reason = f"section at {sec['source']} is " + \
                ("not abelian" if not sec["abelian"] else f"torsion {sec['torsion']}")
    return report


def ptfa_check(cert: PtfaCertificate) -> bool:
    return ptfa_report(cert).ok
