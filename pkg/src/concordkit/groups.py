"""Morphisms over a fixed group G and the constructions built from them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import words as W
from .errors import MorphismError, PresentationError, WitnessError
from .nilpotent import DEFAULT_CLASS
from .presentation import GroupPresentation
from .smith import abelian_invariants, integer_solve
from .wordproblem import Check, Verdict, is_abelian_presentation, kleene_and, trivial_in


def _check_words(words: Sequence[W.Word], n: int, what: str):
    for w in words:
        for g, _ in w:
            if not 0 <= g < n:
                raise MorphismError(f"{what} uses generator index {g} outside the target")


def _same_group(a: GroupPresentation, b: GroupPresentation) -> bool:
    return a.generators == b.generators and a.relators == b.relators


# ---------------------------------------------------------------------------
# surjectivity witnesses


def find_preimages(source_images: Sequence[W.Word], target: GroupPresentation,
                   max_length: int = 3, c: int = DEFAULT_CLASS) -> list[W.Word] | None:
    """For each target generator, a source word mapping onto it (or None if none is found).

    ``source_images[i]`` is the image of source generator i.  Abelian
    targets are solved exactly; otherwise short products are tried.
    """
    n = len(source_images)
    out: list[W.Word] = []
    if is_abelian_presentation(target):
        rows = [W.exponent_sums(v, target.ngens) for v in source_images]
        rows += [W.exponent_sums(r, target.ngens) for r in target.relators]
        for j in range(target.ngens):
            e = [0] * target.ngens
            e[j] = 1
            sol = integer_solve(rows, e)
            if sol is None:
                return None
            out.append(W.free_reduce((i, x) for i, x in enumerate(sol[:n]) if x))
        return out
    letters = [W.gen(i, s) for i in range(n) for s in (1, -1)]
    for j in range(target.ngens):
        goal = W.gen(j)
        found = None
        cands = []
        for L in range(1, max_length + 1):
            for combo in itertools.product(range(len(letters)), repeat=L):
                u = W.mul(*[letters[k] for k in combo])
                if len(u) != L and W.length(u) != L:
                    continue
                img = W.substitute(u, source_images)
                if img == goal:
                    found = u
                    break
                cands.append((u, img))
            if found is not None:
                break
        if found is None:
            for u, img in cands:
                if trivial_in(target, W.mul(img, W.inverse(goal)), c=c).verdict is Verdict.TRUE:
                    found = u
                    break
        if found is None:
            return None
        out.append(found)
    return out


# ---------------------------------------------------------------------------
# EpiOverG


@dataclass(frozen=True)
class EpiOverG:
    source: GroupPresentation
    target: GroupPresentation
    images: tuple
    ptfa_series: object = None

    def __post_init__(self):
        imgs = tuple(W.free_reduce(w) for w in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) != self.source.ngens:
            raise MorphismError(f"{len(imgs)} images given for {self.source.ngens} generators")
        _check_words(imgs, self.target.ngens, "epi image")

    @classmethod
    def from_text(cls, source: GroupPresentation, target: GroupPresentation,
                  images: Mapping[str, str] | Sequence[str], ptfa_series=None) -> "EpiOverG":
        if isinstance(images, Mapping):
            missing = [g for g in source.generators if g not in images]
            if missing:
                raise MorphismError(f"no image for {missing[0]!r}")
            images = [images[g] for g in source.generators]
        return cls(source, target, tuple(target.word(t) for t in images), ptfa_series)

    def apply(self, w: W.Word) -> W.Word:
        return W.substitute(w, self.images)

    def relator_checks(self, c: int = DEFAULT_CLASS) -> list[Check]:
        return [trivial_in(self.target, self.apply(r), c=c) for r in self.source.relators]

    def surjectivity_witnesses(self) -> list[W.Word] | None:
        return find_preimages(self.images, self.target)

    def check(self, c: int = DEFAULT_CLASS) -> Check:
        rel = self.relator_checks(c)
        v = kleene_and(ch.verdict for ch in rel)
        if v is Verdict.FALSE:
            bad = next(i for i, ch in enumerate(rel) if ch.verdict is Verdict.FALSE)
            return Check(v, "relators", f"relator {bad} has nontrivial image ({rel[bad].detail})")
        wit = self.surjectivity_witnesses()
        if wit is None:
            return Check(Verdict.UNKNOWN if v is Verdict.TRUE else v, "surjectivity",
                         "no preimage found for some target generator")
        return Check(v, "relators+surjectivity", "all relators trivial" if v is Verdict.TRUE
                     else "some relator images undecided")

    def validated(self, c: int = DEFAULT_CLASS) -> "EpiOverG":
        ch = self.check(c)
        if ch.verdict is Verdict.FALSE:
            raise MorphismError(f"not a homomorphism onto {self.target.name}: {ch.detail}")
        return self

    def with_source(self, source: GroupPresentation, images: Sequence[W.Word]) -> "EpiOverG":
        return EpiOverG(source, self.target, tuple(images), self.ptfa_series)

    def to_json(self) -> dict:
        return {
            "source": self.source.name,
            "target": self.target.name,
            "images": {g: self.target.fmt(w) for g, w in zip(self.source.generators, self.images)},
        }


def identity_epi(G: GroupPresentation) -> EpiOverG:
    return EpiOverG(G, G, tuple(W.gen(i) for i in range(G.ngens)))


# ---------------------------------------------------------------------------
# MorphismOverG


@dataclass(frozen=True)
class MorphismOverG:
    gamma_source: EpiOverG
    gamma_target: EpiOverG
    images: tuple

    def __post_init__(self):
        imgs = tuple(W.free_reduce(w) for w in self.images)
        object.__setattr__(self, "images", imgs)
        if not _same_group(self.gamma_source.target, self.gamma_target.target):
            raise MorphismError("coefficient systems have different targets")
        if len(imgs) != self.source.ngens:
            raise MorphismError(f"{len(imgs)} images given for {self.source.ngens} generators")
        _check_words(imgs, self.target.ngens, "morphism image")

    @property
    def source(self) -> GroupPresentation:
        return self.gamma_source.source

    @property
    def target(self) -> GroupPresentation:
        return self.gamma_target.source

    @property
    def G(self) -> GroupPresentation:
        return self.gamma_source.target

    def apply(self, w: W.Word) -> W.Word:
        return W.substitute(w, self.images)

    def over_g_checks(self, c: int = DEFAULT_CLASS) -> list[Check]:
        """gamma_B(f(a)) = gamma_A(a) for every generator a."""
        out = []
        for i, img in enumerate(self.images):
            lhs = self.gamma_target.apply(img)
            rhs = self.gamma_source.images[i]
            out.append(trivial_in(self.G, W.mul(lhs, W.inverse(rhs)), c=c))
        return out

    def relator_checks(self, c: int = DEFAULT_CLASS) -> list[Check]:
        return [trivial_in(self.target, self.apply(r), c=c) for r in self.source.relators]

    def check(self, c: int = DEFAULT_CLASS) -> Check:
        over = self.over_g_checks(c)
        rel = self.relator_checks(c)
        v = kleene_and([ch.verdict for ch in over + rel])
        return Check(v, "morphism over G",
                     f"{sum(1 for x in over if x)}/{len(over)} generators commute with gamma, "
                     f"{sum(1 for x in rel if x)}/{len(rel)} relators certified")

    def validated(self, c: int = DEFAULT_CLASS) -> "MorphismOverG":
        for ch in self.over_g_checks(c):
            if ch.verdict is Verdict.FALSE:
                raise MorphismError("map does not commute with the coefficient systems")
        for ch in self.relator_checks(c):
            if ch.verdict is Verdict.FALSE:
                raise MorphismError("a source relator has nontrivial image in the target")
        return self

    def to_json(self) -> dict:
        return {
            "source": self.source.name,
            "target": self.target.name,
            "images": {g: self.target.fmt(w) for g, w in zip(self.source.generators, self.images)},
        }


def identity_morphism(gamma: EpiOverG) -> MorphismOverG:
    return MorphismOverG(gamma, gamma, tuple(W.gen(i) for i in range(gamma.source.ngens)))


# ---------------------------------------------------------------------------
# abelianization


def relation_matrix(P: GroupPresentation) -> list[list[int]]:
    return [W.exponent_sums(r, P.ngens) for r in P.relators]


def abelianization(P: GroupPresentation) -> tuple[int, list[int]]:
    """(free rank, torsion invariants d_1 | d_2 | ...) of P_ab."""
    return abelian_invariants(relation_matrix(P), P.ngens)


# ---------------------------------------------------------------------------
# pushouts


@dataclass(frozen=True)
class Pushout:
    presentation: GroupPresentation
    gamma: EpiOverG
    inclusion_a: MorphismOverG
    inclusion_b: MorphismOverG
    identification: tuple  # one relator per generator of C (possibly empty)
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __iter__(self):
        # allows ``P, gamma = pushout(...)``
        return iter((self.presentation, self.gamma))


def _merged_names(A: GroupPresentation, B: GroupPresentation) -> tuple[list[str], list[str]]:
    clash = set(A.generators) & set(B.generators)
    if not clash:
        return list(A.generators), list(B.generators)
    sa, sb = A.name, B.name
    if sa == sb:
        sa, sb = sa + "1", sb + "2"
    na = [f"{g}_{sa}" if g in clash else g for g in A.generators]
    nb = [f"{g}_{sb}" if g in clash else g for g in B.generators]
    if len(set(na) | set(nb)) != len(na) + len(nb):
        raise PresentationError("could not disambiguate generator names in pushout")
    return na, nb


def pushout(f1: MorphismOverG, f2: MorphismOverG, name: str | None = None, check: bool = True,
            c: int = DEFAULT_CLASS) -> Pushout:
    """Amalgamate A <- C -> B over G."""
    C = f1.source
    if not _same_group(C, f2.source):
        raise MorphismError("the two maps have different sources")
    if not _same_group(f1.G, f2.G):
        raise MorphismError("mismatched coefficient targets")
    if check:
        f1.validated(c)
        f2.validated(c)
    A, B = f1.target, f2.target
    na, nb = _merged_names(A, B)
    shift = A.ngens
    rels = list(A.relators) + [W.shift(r, shift) for r in B.relators]
    ident = []
    for i in range(C.ngens):
        rel = W.mul(f1.images[i], W.inverse(W.shift(f2.images[i], shift)))
        ident.append(rel)
        if rel:
            rels.append(rel)
    marked = tuple((role, w) for role, w in A.marked)
    P = GroupPresentation(name or f"{A.name}*{B.name}", tuple(na + nb), tuple(rels), marked)
    gA, gB = f1.gamma_target, f2.gamma_target
    gamma = EpiOverG(P, gA.target, gA.images + gB.images, gA.ptfa_series)
    inc_a = MorphismOverG(gA, gamma, tuple(W.gen(i) for i in range(A.ngens)))
    inc_b = MorphismOverG(gB, gamma, tuple(W.gen(i + shift) for i in range(B.ngens)))
    return Pushout(P, gamma, inc_a, inc_b, tuple(ident), {"amalgamated_over": C.name})


def torus_group() -> GroupPresentation:
    return GroupPresentation("T2", ("m", "l"), (W.commutator(W.gen(0), W.gen(1)),))


def j_surgery_group(EK: GroupPresentation, EJ: GroupPresentation, gamma_K: EpiOverG,
                    gamma_J: EpiOverG, orientation: str = "reversed", name: str | None = None,
                    c: int = DEFAULT_CLASS) -> Pushout:
    """E_K and E_J glued along their boundary tori.

    ``orientation="reversed"`` identifies mu_K with mu_J^-1 and lambda_K with
    lambda_J; ``"same"`` identifies mu_K with mu_J instead and is recorded in
    the metadata.
    """
    for E in (EK, EJ):
        if E.meridian is None or E.longitude is None:
            raise MorphismError(f"{E.name} needs marked meridian and longitude words")
    if orientation not in ("reversed", "same"):
        raise MorphismError(f"unknown orientation {orientation!r}")
    if not _same_group(gamma_K.target, gamma_J.target):
        raise MorphismError("mismatched coefficient targets")
    if not (_same_group(gamma_K.source, EK) and _same_group(gamma_J.source, EJ)):
        raise MorphismError("coefficient systems do not start at the given exteriors")
    C = torus_group()
    muK, laK = EK.meridian, EK.longitude
    muJ, laJ = EJ.meridian, EJ.longitude
    muJ_img = W.inverse(muJ) if orientation == "reversed" else muJ
    gC = EpiOverG(C, gamma_K.target, (gamma_K.apply(muK), gamma_K.apply(laK)))
    f1 = MorphismOverG(gC, gamma_K, (muK, laK))
    f2 = MorphismOverG(gC, gamma_J, (muJ_img, laJ))
    po = pushout(f1, f2, name=name or f"M({EK.name},{EJ.name})", c=c)
    po.metadata.update({
        "orientation": orientation,
        "identification": "mu_K ~ mu_J^-1, lambda_K ~ lambda_J" if orientation == "reversed"
        else "mu_K ~ mu_J, lambda_K ~ lambda_J",
        "flagged": orientation != "reversed",
    })
    return po


# ---------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class KernelGenerators:
    words: tuple
    lifted_relators: tuple   # s_j
    generator_corrections: tuple   # w_i
    witnesses: tuple
    checks: tuple

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)


def kernel_normal_generators(f: MorphismOverG | EpiOverG, witnesses: Sequence[W.Word] | None = None,
                             c: int = DEFAULT_CLASS, verify: bool = True) -> KernelGenerators:
    """A finite normal generating set of Ker(f) for a surjection f: A -> B.

    With b_k = f(u_k) and f(a_i) = v_i(b), the kernel is normally generated by
    s_j = r_j(u) for the relators r_j of B and w_i = v_i(u) a_i^-1.
    """
    if isinstance(f, EpiOverG):
        A, B, images = f.source, f.target, f.images
    else:
        A, B, images = f.source, f.target, f.images
    if witnesses is None:
        witnesses = find_preimages(images, B)
        if witnesses is None:
            raise WitnessError("could not find surjectivity witnesses; supply them explicitly")
    witnesses = tuple(W.free_reduce(u) for u in witnesses)
    if len(witnesses) != B.ngens:
        raise WitnessError(f"need one witness per generator of {B.name}")
    for k, u in enumerate(witnesses):
        img = W.substitute(u, images)
        ch = trivial_in(B, W.mul(img, W.inverse(W.gen(k))), c=c)
        if ch.verdict is Verdict.FALSE:
            raise WitnessError(f"witness for {B.generators[k]} maps to {B.fmt(img)} ({ch.detail})")
    s = tuple(W.substitute(r, witnesses) for r in B.relators)
    w = tuple(W.mul(W.substitute(v, witnesses), W.inverse(W.gen(i))) for i, v in enumerate(images))
    words = []
    seen = set()
    for x in s + w:
        if x and x not in seen:
            seen.add(x)
            words.append(x)
    checks = ()
    if verify:
        checks = tuple(trivial_in(B, W.substitute(x, images), c=c, search=False) for x in words)
        for x, ch in zip(words, checks):
            if ch.verdict is Verdict.FALSE:
                raise WitnessError(f"kernel word {A.fmt(x)} has nontrivial image")
    return KernelGenerators(tuple(words), s, w, witnesses, checks)


# ---------------------------------------------------------------------------
# Tietze elimination


def eliminate_generators(P: GroupPresentation, keep: Sequence[str] = ()) -> tuple[GroupPresentation, dict]:
    """Remove generators that occur exactly once in some relator.

    Returns the smaller presentation and the substitution (old generator name
    -> word in the new generators) that realises the isomorphism.
    """
    gens = list(P.generators)
    rels = [r for r in P.relators]
    marks = list(P.marked)
    subst: dict[str, W.Word] = {}
    # track each original generator as a word in the current generators
    current = {g: W.gen(i) for i, g in enumerate(gens)}
    changed = True
    while changed:
        changed = False
        for ri, r in enumerate(rels):
            for g_idx in sorted(W.generators_used(r)):
                if gens[g_idx] in keep:
                    continue
                occ = [(pos, e) for pos, (g, e) in enumerate(r) if g == g_idx]
                if len(occ) != 1 or abs(occ[0][1]) != 1:
                    continue
                pos, e = occ[0]
                # r = u g^e v = 1  =>  g = (v u)^-e
                u, v = r[:pos], r[pos + 1:]
                val = W.mul(v, u)
                val = W.inverse(val) if e == 1 else val
                mapping = [W.gen(i) for i in range(len(gens))]
                mapping[g_idx] = val
                rels = [W.substitute(x, mapping) for j, x in enumerate(rels) if j != ri]
                marks = [(role, W.substitute(m, mapping)) for role, m in marks]
                for name in current:
                    current[name] = W.substitute(current[name], mapping)
                # renumber generators above g_idx
                renum = [W.gen(i if i < g_idx else i - 1) if i != g_idx else W.EMPTY
                         for i in range(len(gens))]
                rels = [W.substitute(x, renum) for x in rels]
                marks = [(role, W.substitute(m, renum)) for role, m in marks]
                for name in current:
                    current[name] = W.substitute(current[name], renum)
                del gens[g_idx]
                changed = True
                break
            if changed:
                break
    rels_out = []
    seen = set()
    for r in rels:
        r = W.cyclic_reduce(r)
        if r and r not in seen and W.inverse(r) not in seen:
            seen.add(r)
            rels_out.append(r)
    for name, wd in current.items():
        subst[name] = wd
    return GroupPresentation(P.name, tuple(gens), tuple(rels_out), tuple(marks)), subst
