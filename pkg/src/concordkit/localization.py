"""Systems of equations over a coefficient system, Pi-perfect subgroups and
the conditions defining the class of maps inverted by localization.

Words in an equation system use the generators of A followed by the
variables: letter index ``A.ngens + i`` is the variable x_i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from . import words as W
from .alexander import H1Status, h1_compare
from .errors import EquationSystemError, NonStabilizationError, PresentationError, WitnessError
from .groups import EpiOverG, MorphismOverG, kernel_normal_generators
from .nilpotent import DEFAULT_CLASS, MAX_CLASS, nilpotent_quotient
from .presentation import GroupPresentation, parse_word
from .wordproblem import (DEFAULT_BUDGET, Budget, CancelToken, Check, Verdict, kleene_and,
                          trivial_in)

PI_PERFECT_CLASS = 4


# ---------------------------------------------------------------------------
# systems


@dataclass(frozen=True)
class EquationSystem:
    ambient: EpiOverG
    variables: tuple
    right_sides: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "right_sides", tuple(W.free_reduce(w) for w in self.right_sides))
        if len(self.variables) != len(self.right_sides):
            raise EquationSystemError("need exactly one equation per variable")
        if len(set(self.variables)) != len(self.variables):
            raise EquationSystemError("repeated variable name")
        clash = set(self.variables) & set(self.source.generators)
        if clash:
            raise EquationSystemError(f"variable {sorted(clash)[0]!r} clashes with a generator")
        n = self.source.ngens + len(self.variables)
        for w in self.right_sides:
            if any(g >= n for g, _ in w):
                raise EquationSystemError("right side uses an undeclared letter")

    @property
    def source(self) -> GroupPresentation:
        return self.ambient.source

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def names(self) -> list[str]:
        return list(self.source.generators) + list(self.variables)

    def fmt(self, w: W.Word) -> str:
        return W.format_word(w, self.names())

    def var(self, i: int, e: int = 1) -> W.Word:
        return W.gen(self.source.ngens + i, e)

    def evaluate(self, w: W.Word, values: Sequence[W.Word]) -> W.Word:
        """Substitute words in A for the variables."""
        m = self.source.ngens
        return W.substitute(w, lambda g: W.gen(g) if g < m else values[g - m])

    def to_text(self) -> str:
        lines = ["var " + " ".join(self.variables)]
        lines += [f"eq {x} = {self.fmt(w)}" for x, w in zip(self.variables, self.right_sides)]
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"group": self.source.name, "variables": list(self.variables),
                "equations": {x: self.fmt(w) for x, w in zip(self.variables, self.right_sides)}}


def parse_system(text: str, ambient: EpiOverG) -> EquationSystem:
    """Parse ``var x1 x2 ; eq x1 = [a,b][x1,b] ; eq x2 = ...`` (``;`` or newlines)."""
    variables: list[str] = []
    eqs: dict[str, tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        col = 0
        for part in raw.split(";"):
            start = col
            col += len(part) + 1
            stmt = part.split("#", 1)[0]
            if not stmt.strip():
                continue
            lead = len(stmt) - len(stmt.lstrip())
            head, _, rest = stmt.strip().partition(" ")
            if head == "var":
                for name in rest.split():
                    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                        raise PresentationError(f"bad variable name {name!r}", lineno, start + lead + 1)
                    variables.append(name)
            elif head == "eq":
                lhs, eq, rhs = rest.partition("=")
                if not eq:
                    raise PresentationError("expected 'x = word'", lineno, start + lead + 1)
                name = lhs.strip()
                if name in eqs:
                    raise PresentationError(f"second equation for {name!r}", lineno, start + lead + 1)
                offset = start + lead + len("eq ") + len(lhs) + 1
                eqs[name] = (rhs, lineno, offset)
            else:
                raise PresentationError(f"unknown statement {head!r}", lineno, start + lead + 1)
    names = list(ambient.source.generators) + variables
    rights = []
    for x in variables:
        if x not in eqs:
            raise PresentationError(f"no equation for variable {x!r}")
        rhs, lineno, offset = eqs.pop(x)
        rights.append(parse_word(rhs, names, lineno, offset))
    if eqs:
        name, (_, lineno, _) = next(iter(eqs.items()))
        raise PresentationError(f"equation for undeclared variable {name!r}", lineno, 1)
    return EquationSystem(ambient, tuple(variables), tuple(rights))


# ---------------------------------------------------------------------------
# free product reduction


@dataclass(frozen=True)
class CommutatorFactor:
    """prefix . [y^-n, u^-1] . prefix^-1 with u in the kernel of gamma."""

    prefix: tuple
    var: int
    exp: int
    kernel_word: tuple

    def word(self, y: int) -> W.Word:
        """The factor as a word, with y the letter index of variable 0."""
        c = W.commutator(W.gen(y + self.var, -self.exp), W.inverse(self.kernel_word))
        return W.conjugate(c, W.inverse(self.prefix))


@dataclass
class Reduction:
    verdict: Verdict
    factors: list
    remainder: tuple
    leftover: list
    detail: str = ""


def _syllables(w: W.Word, m: int) -> list:
    out: list = []
    for g, e in w:
        if g < m:
            if out and out[-1][0] == "A":
                out[-1] = ("A", out[-1][1] + ((g, e),))
            else:
                out.append(("A", ((g, e),)))
        else:
            if out and out[-1][0] == "y" and out[-1][1] == g - m:
                out[-1] = ("y", g - m, out[-1][2] + e)
            else:
                out.append(("y", g - m, e))
    return out


def _normalize(syl: list) -> list:
    changed = True
    while changed:
        changed = False
        out: list = []
        for s in syl:
            if s[0] == "A":
                w = W.free_reduce(s[1])
                if not w:
                    changed = True
                    continue
                s = ("A", w)
            elif s[2] == 0:
                changed = True
                continue
            if out and out[-1][0] == s[0] == "A":
                out[-1] = ("A", W.free_reduce(out[-1][1] + s[1]))
                changed = True
            elif out and out[-1][0] == s[0] == "y" and out[-1][1] == s[1]:
                out[-1] = ("y", s[1], out[-1][2] + s[2])
                changed = True
            else:
                out.append(s)
        syl = out
    return syl


def _as_word(syl: list, m: int) -> W.Word:
    out: list = []
    for s in syl:
        out.extend(s[1] if s[0] == "A" else ((m + s[1], s[2]),))
    return W.free_reduce(out)


def free_product_reduce(gamma: EpiOverG, w: W.Word, c: int = DEFAULT_CLASS) -> Reduction:
    """Reduce w in A * F(y) towards the normal form of its image in G * F(y).

    A-syllables whose gamma-image is certified trivial are moved left past
    the preceding variable syllable, recording the commutator this costs.
    The image of w is trivial exactly when no variable syllable survives and
    the remaining A-word lies in the kernel of gamma.  Throughout,
    w = prod(factors) * (current word).
    """
    A, G = gamma.source, gamma.target
    m = A.ngens
    syl = _normalize(_syllables(W.free_reduce(w), m))
    factors: list[CommutatorFactor] = []
    undecided = False
    trivial_cache: dict = {}

    def image_trivial(u) -> Verdict:
        if u not in trivial_cache:
            trivial_cache[u] = trivial_in(G, gamma.apply(u), c=c).verdict
        return trivial_cache[u]

    while True:
        moved = False
        for k in range(1, len(syl)):
            s = syl[k]
            if s[0] != "A" or syl[k - 1][0] != "y":
                continue
            v = image_trivial(s[1])
            if v is Verdict.UNKNOWN:
                undecided = True
            if v is not Verdict.TRUE:
                continue
            _, j, n = syl[k - 1]
            prefix = _as_word(syl[:k - 1], m)
            factors.append(CommutatorFactor(prefix, j, n, s[1]))
            # y^n u = [y^-n, u^-1] u y^n
            syl = _normalize(syl[:k - 1] + [s, syl[k - 1]] + syl[k + 1:])
            moved = True
            break
        if not moved:
            break
    ys = [s for s in syl if s[0] == "y"]
    rest = _as_word(syl, m)
    if ys:
        if undecided:
            return Reduction(Verdict.UNKNOWN, factors, rest, syl, "some A-syllable image undecided")
        return Reduction(Verdict.FALSE, factors, rest, syl, "variable letters survive in G * F(x)")
    v = image_trivial(rest) if rest else Verdict.TRUE
    detail = {Verdict.TRUE: "reduces to the identity", Verdict.FALSE: "A-part has nontrivial image in G",
              Verdict.UNKNOWN: "image of the A-part undecided"}[v]
    return Reduction(v, factors, rest, syl, detail)


def validate_system_check(sys: EquationSystem, c: int = DEFAULT_CLASS) -> Check:
    checks = [free_product_reduce(sys.ambient, w, c) for w in sys.right_sides]
    v = kleene_and(r.verdict for r in checks)
    bad = [f"{x}: {r.detail}" for x, r in zip(sys.variables, checks) if r.verdict is not Verdict.TRUE]
    return Check(v, "free product reduction", "; ".join(bad) if bad else "all right sides in the kernel")


def validate_system(sys: EquationSystem, c: int = DEFAULT_CLASS) -> bool:
    return validate_system_check(sys, c).verdict is Verdict.TRUE


# ---------------------------------------------------------------------------
# solving in nilpotent quotients


@dataclass(frozen=True)
class SolutionSet:
    words: tuple
    iterations: int = 0
    trace: tuple = ()
    nilpotent_class: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(W.free_reduce(w) for w in self.words))

    def __len__(self):
        return len(self.words)

    def to_json(self, sys: EquationSystem | None = None) -> dict:
        fmt = sys.source.fmt if sys else (lambda w: list(map(list, w)))
        out = {"solution": {(sys.variables[i] if sys else str(i)): fmt(w) for i, w in enumerate(self.words)}}
        if self.nilpotent_class is not None:
            out["class"] = self.nilpotent_class
            out["iterations"] = self.iterations
            out["trace"] = [[fmt(w) for w in step] for step in self.trace]
        return out


def _evaluate_nq(Q, sys: EquationSystem, w: W.Word, values) -> object:
    F = Q.F
    m = sys.source.ngens
    out = F.identity()
    for g, e in w:
        if g < m:
            out = F.gen_power_mul(out, g, e)
        else:
            out = F.mul(out, F.pow(values[g - m], e))
    return Q.canonical(out)


def solve_nilpotent(sys: EquationSystem, c: int = DEFAULT_CLASS, start: Sequence[W.Word] | None = None,
                    check: bool = True) -> SolutionSet:
    """Unique solution in A / gamma_{c+1} A by fixed-point iteration.

    The right sides lie in the normal closure of A in A * F(x), so two
    inputs agreeing modulo gamma_k A give outputs agreeing modulo
    gamma_{k+1} A; the iteration therefore stabilizes within c + 1 steps.
    """
    if check:
        ch = validate_system_check(sys, c)
        if ch.verdict is Verdict.FALSE:
            raise EquationSystemError(f"kernel condition fails: {ch.detail}")
    if not sys.nvars:
        return SolutionSet((), 0, (), c)
    Q = nilpotent_quotient(sys.source, c)
    if start is None:
        cur = [Q.F.identity() for _ in range(sys.nvars)]
    else:
        if len(start) != sys.nvars:
            raise EquationSystemError("start tuple has the wrong length")
        cur = [Q.element(w) for w in start]
    keys = [Q.reduce(a) for a in cur]
    trace = [tuple(Q.word_of(k) for k in keys)]
    for it in range(1, c + 2):
        nxt = [_evaluate_nq(Q, sys, w, cur) for w in sys.right_sides]
        nkeys = [Q.reduce(a) for a in nxt]
        if nkeys == keys:
            words = tuple(Q.word_of(k) for k in keys)
            return SolutionSet(words, it, tuple(trace), c)
        cur, keys = nxt, nkeys
        trace.append(tuple(Q.word_of(k) for k in keys))
    raise NonStabilizationError(f"no fixed point after {c + 1} iterations at class {c}")


def solution_check(sys: EquationSystem, sol: SolutionSet | Sequence[W.Word], c: int = DEFAULT_CLASS,
                   budget: Budget = DEFAULT_BUDGET, cancel: CancelToken | None = None) -> Check:
    """Do the words satisfy every equation in A?"""
    words = sol.words if isinstance(sol, SolutionSet) else tuple(sol)
    if len(words) != sys.nvars:
        raise EquationSystemError("solution has the wrong length")
    checks = [trivial_in(sys.source, W.mul(W.inverse(x), sys.evaluate(w, words)), c=c,
                         budget=budget, cancel=cancel)
              for x, w in zip(words, sys.right_sides)]
    v = kleene_and(ch.verdict for ch in checks)
    bad = [f"{sys.variables[i]}: {ch.verdict} ({ch.detail})" for i, ch in enumerate(checks)
           if ch.verdict is not Verdict.TRUE]
    return Check(v, "equations", "; ".join(bad) if bad else "every equation certified")


# ---------------------------------------------------------------------------
# Pi-perfect candidates


@dataclass(frozen=True)
class PiPerfectCandidate:
    normal_generators: tuple
    ambient: EpiOverG
    audit: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "normal_generators", tuple(W.free_reduce(w) for w in self.normal_generators))

    def to_json(self) -> dict:
        fmt = self.ambient.source.fmt
        return {"group": self.ambient.source.name,
                "normal_generators": [fmt(w) for w in self.normal_generators],
                "audit": list(self.audit)}


@dataclass(frozen=True)
class RewritingTerm:
    """One factor a [x_j, b]^sign a^-1 of a rewriting g_i = prod a_k [g_{j_k}, b_k]^{+-1} a_k^-1."""

    conj: tuple
    index: int
    other: tuple
    sign: int = 1

    def word(self, values: Sequence[W.Word]) -> W.Word:
        c = W.commutator(values[self.index], self.other)
        if self.sign < 0:
            c = W.inverse(c)
        return W.conjugate(c, W.inverse(self.conj))


def rewriting_product(terms: Sequence[RewritingTerm], values: Sequence[W.Word]) -> W.Word:
    return W.mul(*[t.word(values) for t in terms])


def solutions_to_pi_perfect(sys: EquationSystem, s1: SolutionSet | Sequence[W.Word],
                            s2: SolutionSet | Sequence[W.Word], c: int = PI_PERFECT_CLASS,
                            budget: Budget = DEFAULT_BUDGET) -> PiPerfectCandidate:
    """N = <<g_i h_i^-1>> from two solutions {g_i}, {h_i}, with N = [N, Ker gamma] audited.

    Substituting x_i = y_i h_i gives y_i = w_i(y h) h_i^-1, reduced in A * F(y)
    into conjugates of commutators [y_j^-n, u^-1] with u in Ker gamma, times
    the A-word w_i(h) h_i^-1, which is trivial because h is a solution.
    """
    g = s1.words if isinstance(s1, SolutionSet) else tuple(map(W.free_reduce, s1))
    h = s2.words if isinstance(s2, SolutionSet) else tuple(map(W.free_reduce, s2))
    for name, sol in (("first", g), ("second", h)):
        ch = solution_check(sys, sol, c, budget)
        if ch.verdict is Verdict.FALSE:
            raise EquationSystemError(f"{name} input is not a solution: {ch.detail}")
    m = sys.source.ngens
    diffs = tuple(W.mul(gi, W.inverse(hi)) for gi, hi in zip(g, h))
    audit = []
    for i, w in enumerate(sys.right_sides):
        # w~_i(y) = w_i(y_1 h_1, ...) h_i^-1 over A + y
        shifted = W.substitute(w, lambda k: W.gen(k) if k < m else W.mul(W.gen(k), h[k - m]))
        wt = W.mul(shifted, W.inverse(h[i]))
        red = free_product_reduce(sys.ambient, wt, c)
        if red.verdict is not Verdict.TRUE or red.leftover and any(s[0] == "y" for s in red.leftover):
            raise EquationSystemError(f"shifted equation for {sys.variables[i]} does not reduce "
                                      f"in G * F(y): {red.detail}")
        rem = trivial_in(sys.source, red.remainder, c=c, budget=budget)
        if rem.verdict is Verdict.FALSE:
            raise EquationSystemError(f"second input is not a solution ({sys.variables[i]})")
        factor_words = [f.word(m) for f in red.factors]
        expanded = W.substitute(W.mul(*factor_words), lambda k: W.gen(k) if k < m else diffs[k - m])
        consistent = trivial_in(sys.source, W.mul(W.inverse(diffs[i]), expanded, red.remainder), c=c,
                                budget=budget)
        names = sys.source.generators
        ynames = list(names) + [f"y{j + 1}" for j in range(sys.nvars)]
        audit.append({
            "variable": sys.variables[i],
            "generator": sys.source.fmt(diffs[i]),
            "shifted_equation": W.format_word(wt, ynames),
            "factors": [{"prefix": W.format_word(f.prefix, ynames), "var": f"y{f.var + 1}",
                         "exp": f.exp, "kernel_element": sys.source.fmt(f.kernel_word)}
                        for f in red.factors],
            "remainder": sys.source.fmt(red.remainder),
            "remainder_trivial": str(rem.verdict),
            "expansion_check": str(consistent.verdict),
        })
    return PiPerfectCandidate(diffs, sys.ambient, tuple(audit))


@dataclass(frozen=True)
class ExhibitedSystem:
    system: EquationSystem
    solutions: tuple


def _verify_rewriting(cand: PiPerfectCandidate, rewriting, c: int, budget: Budget) -> list[str]:
    """Problems with the rewriting witnesses, empty when all of them verify."""
    A = cand.ambient.source
    gens = cand.normal_generators
    if len(rewriting) != len(gens):
        return ["need one rewriting per normal generator"]
    problems = []
    for i, terms in enumerate(rewriting):
        for t in terms:
            if not 0 <= t.index < len(gens):
                problems.append(f"generator {i}: index {t.index} out of range")
                continue
            v = trivial_in(cand.ambient.target, cand.ambient.apply(t.other), c=c).verdict
            if v is not Verdict.TRUE:
                problems.append(f"generator {i}: {A.fmt(t.other)} not certified in Ker gamma ({v})")
        if problems:
            continue
        prod = rewriting_product(terms, gens)
        ch = trivial_in(A, W.mul(W.inverse(gens[i]), prod), c=c, budget=budget)
        if ch.verdict is not Verdict.TRUE:
            problems.append(f"generator {i}: rewriting not certified ({ch.verdict}, {ch.detail})")
    return problems


def pi_perfect_to_system(cand: PiPerfectCandidate, rewriting: Sequence[Sequence[RewritingTerm]],
                         c: int = PI_PERFECT_CLASS, budget: Budget = DEFAULT_BUDGET) -> ExhibitedSystem:
    """x_i = prod a_k [x_{j_k}, b_k]^{+-1} a_k^-1, solved by x = e and by x = g."""
    problems = _verify_rewriting(cand, rewriting, c, budget)
    if problems:
        raise WitnessError("; ".join(problems))
    A = cand.ambient.source
    m = A.ngens
    n = len(cand.normal_generators)
    xs = [W.gen(m + i) for i in range(n)]
    rights = tuple(rewriting_product(terms, xs) for terms in rewriting)
    names = [f"x{i + 1}" for i in range(n)]
    while set(names) & set(A.generators):
        names = ["_" + x for x in names]
    sys = EquationSystem(cand.ambient, tuple(names), rights)
    trivial = SolutionSet(tuple(() for _ in range(n)))
    return ExhibitedSystem(sys, (trivial, SolutionSet(cand.normal_generators)))


class PiPerfectKind(Enum):
    CERTIFIED = "CertifiedPiPerfect"
    REFUTED = "RefutedAtClass"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PiPerfectStatus:
    kind: PiPerfectKind
    nilpotent_class: int | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"status": str(self.kind), "class": self.nilpotent_class, "detail": self.detail}


def pi_perfect_check(cand: PiPerfectCandidate, c: int = PI_PERFECT_CLASS,
                     rewriting: Sequence[Sequence[RewritingTerm]] | None = None,
                     budget: Budget = DEFAULT_BUDGET) -> PiPerfectStatus:
    """Pi-perfect subgroups die in every nilpotent quotient; certification needs a witness."""
    A = cand.ambient.source
    gens = [g for g in cand.normal_generators if g]
    for k in range(1, min(c, MAX_CLASS) + 1):
        Q = nilpotent_quotient(A, k)
        for g in gens:
            if not Q.is_trivial(g):
                return PiPerfectStatus(PiPerfectKind.REFUTED, k,
                                       f"{A.fmt(g)} survives in the class-{k} quotient")
    if not gens:
        return PiPerfectStatus(PiPerfectKind.CERTIFIED, None, "trivial subgroup")
    if rewriting is not None:
        problems = _verify_rewriting(cand, rewriting, c, budget)
        if not problems:
            return PiPerfectStatus(PiPerfectKind.CERTIFIED, None, "rewriting witnesses verified")
        return PiPerfectStatus(PiPerfectKind.UNKNOWN, None, "; ".join(problems))
    return PiPerfectStatus(PiPerfectKind.UNKNOWN, None, f"trivial through class {c}; no witness")


# ---------------------------------------------------------------------------
# Omega^G conditions


@dataclass
class OmegaReport:
    conditions: dict = field(default_factory=dict)

    @property
    def verdict(self) -> Verdict:
        return kleene_and(ch.verdict for ch in self.conditions.values())

    def to_json(self) -> dict:
        return {"verdict": str(self.verdict),
                "conditions": {k: ch.to_json() for k, ch in self.conditions.items()}}


def _is_identity(f: MorphismOverG) -> bool:
    A, B = f.source, f.target
    return (A.generators == B.generators and A.relators == B.relators
            and all(w == W.gen(i) for i, w in enumerate(f.images)))


def omega_check(f: MorphismOverG, witnesses: dict | None = None, c: int = DEFAULT_CLASS,
                budget: Budget = DEFAULT_BUDGET, cancel: CancelToken | None = None) -> OmegaReport:
    """Conditions (1)-(4); any undecided condition keeps the verdict from being certified.

    ``witnesses`` may contain ``"h2"`` (a description of a chain-level
    surjectivity witness for H_2) and ``"kernel_A"`` / ``"kernel_B"``
    (surjectivity witnesses passed to kernel_normal_generators).
    """
    witnesses = witnesses or {}
    rep = OmegaReport()
    ident = _is_identity(f)

    morph = f.check(c)
    if morph.verdict is Verdict.TRUE:
        rep.conditions["1_finiteness"] = Check(Verdict.TRUE, "structural",
                                               "finite presentations; morphism over G certified")
    else:
        rep.conditions["1_finiteness"] = Check(morph.verdict, "structural", morph.detail)

    kernels = {}
    detail = []
    v2 = Verdict.TRUE
    for side, gamma in (("A", f.gamma_source), ("B", f.gamma_target)):
        try:
            kernels[side] = kernel_normal_generators(gamma, witnesses.get(f"kernel_{side}"), c=c)
            detail.append(f"Ker gamma_{side}: {len(kernels[side])} normal generators")
        except WitnessError as exc:
            v2 = Verdict.UNKNOWN
            detail.append(f"Ker gamma_{side}: {exc}")
    rep.conditions["2_kernels_finitely_normally_generated"] = Check(v2, "kernel generators", "; ".join(detail))

    if "A" in kernels and "B" in kernels:
        B = f.target
        images = tuple(f.apply(k) for k in kernels["A"].words)
        quotient = B.replace(name=f"{B.name}/f(K)", relators=B.relators + tuple(x for x in images if x))
        checks = [trivial_in(quotient, k, c=c, budget=budget, cancel=cancel) for k in kernels["B"].words]
        v3 = kleene_and(ch.verdict for ch in checks)
        bad = [f"{B.fmt(k)}: {ch.verdict}" for k, ch in zip(kernels["B"].words, checks)
               if ch.verdict is not Verdict.TRUE]
        rep.conditions["3_normal_surjection_on_kernels"] = Check(
            v3, "normal closure search", "; ".join(bad) if bad else
            "every normal generator of Ker gamma_B lies in the normal closure of f(Ker gamma_A)")
    else:
        rep.conditions["3_normal_surjection_on_kernels"] = Check(Verdict.UNKNOWN, "normal closure search",
                                                                 "kernel generators unavailable")

    if ident:
        rep.conditions["4_homology"] = Check(Verdict.TRUE, "identity", "identity induces isomorphisms")
    else:
        h1 = h1_compare(f, c)
        v1 = {H1Status.ISO: Verdict.TRUE, H1Status.NOT_ISO: Verdict.FALSE}.get(h1.status, Verdict.UNKNOWN)
        if "h2" in witnesses:
            v2h, h2 = Verdict.TRUE, "user-supplied witness: " + str(witnesses["h2"])
        else:
            v2h, h2 = Verdict.UNKNOWN, "no H_2 surjectivity witness"
        rep.conditions["4_homology"] = Check(kleene_and([v1, v2h]), "h1_compare",
                                             f"H_1 {h1.status}: {h1.reason}; H_2: {h2}")
    return rep
