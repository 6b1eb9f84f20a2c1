"""Fox calculus and Alexander modules over Q[t, t^-1]."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Hashable, Sequence

from . import words as W
from .errors import MorphismError, SeifertError
from .laurent import ONE, QT, ZERO, LaurentPoly
from .nilpotent import DEFAULT_CLASS
from .presentation import GroupPresentation
from .seifert import SeifertMatrix, frac_det
from .smith import smith_invariants
from .wordproblem import Verdict


# ---------------------------------------------------------------------------
# Fox derivatives


def fox_row(w: W.Word, exps: Sequence[int], ngens: int) -> list[LaurentPoly]:
    """Fox derivatives of w under x_i -> t^exps[i], one entry per generator."""
    acc = [dict() for _ in range(ngens)]
    p = 0
    for g, e in w:
        a = exps[g]
        step = 1 if e > 0 else -1
        for _ in range(abs(e)):
            if step > 0:
                acc[g][p] = acc[g].get(p, 0) + 1
                p += a
            else:
                p -= a
                acc[g][p] = acc[g].get(p, 0) - 1
    return [LaurentPoly.from_dict(d) for d in acc]


def fox_group_ring(w: W.Word, ngens: int, prefix_key: Callable[[W.Word], Hashable]) -> list[dict]:
    """Fox derivatives in Z[G]: dict from prefix_key(image element) to coefficient.

    ``prefix_key`` receives the prefix word in the source generators and must
    return a canonical label of its image in G.
    """
    acc = [dict() for _ in range(ngens)]
    prefix: list = []
    for g, e in w:
        step = 1 if e > 0 else -1
        for _ in range(abs(e)):
            if step > 0:
                k = prefix_key(W.free_reduce(prefix))
                acc[g][k] = acc[g].get(k, 0) + 1
                prefix.append((g, 1))
            else:
                prefix.append((g, -1))
                k = prefix_key(W.free_reduce(prefix))
                acc[g][k] = acc[g].get(k, 0) - 1
    return [{k: v for k, v in d.items() if v} for d in acc]


@dataclass(frozen=True)
class LaurentMatrix:
    rows: tuple
    ncols: int

    @classmethod
    def build(cls, rows: Sequence[Sequence[LaurentPoly]], ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(rows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_json(self) -> list:
        return [[p.to_json() for p in row] for row in self.rows]

    def format(self) -> str:
        return "\n".join("[" + ", ".join(p.format() for p in row) + "]" for row in self.rows)


def _cyclic_exponents(gamma) -> list[int]:
    G = gamma.target
    if G.ngens != 1 or G.relators:
        raise MorphismError(f"coefficient group {G.name} is not infinite cyclic")
    return [sum(e for _, e in w) for w in gamma.images]


def fox_jacobian(P: GroupPresentation, gamma) -> LaurentMatrix:
    """Relators x generators matrix of Fox derivatives pushed to Q[t, t^-1]."""
    exps = _cyclic_exponents(gamma)
    return LaurentMatrix.build([fox_row(r, exps, P.ngens) for r in P.relators], P.ngens)


# ---------------------------------------------------------------------------
# module structure


@dataclass(frozen=True)
class ModuleDecomposition:
    free_rank: int
    torsion_invariants: tuple

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank,
                "torsion": [p.format() for p in self.torsion_invariants]}

    def format(self) -> str:
        tors = ", ".join(p.format() for p in self.torsion_invariants) or "none"
        return f"free rank {self.free_rank}; torsion invariants: {tors}"


def laurent_snf(M: LaurentMatrix | Sequence[Sequence[LaurentPoly]], ncols: int | None = None) -> ModuleDecomposition:
    """Q[t^+-1]^cols / rowspan(M)."""
    if not isinstance(M, LaurentMatrix):
        M = LaurentMatrix.build(M, ncols)
    inv = smith_invariants([list(r) for r in M.rows], QT) if M.rows and M.ncols else []
    inv = [p for p in inv if not p.is_zero()]
    torsion = tuple(p for p in inv if not QT.is_unit(p))
    return ModuleDecomposition(M.ncols - len(inv), torsion)


def alexander_module(P: GroupPresentation, gamma) -> ModuleDecomposition:
    """H_1 of the infinite cyclic cover, as a Q[t^+-1]-module.

    The Fox matrix presents the relative module, which splits off one free
    summand when gamma is onto.
    """
    exps = _cyclic_exponents(gamma)
    from math import gcd
    g = 0
    for e in exps:
        g = gcd(g, e)
    if g != 1:
        raise MorphismError("map to the infinite cyclic group is not onto")
    d = laurent_snf(fox_jacobian(P, gamma))
    return ModuleDecomposition(d.free_rank - 1, d.torsion_invariants)


def alexander_polynomial(P: GroupPresentation, gamma) -> LaurentPoly:
    d = alexander_module(P, gamma)
    if d.free_rank:
        return ZERO
    out = ONE
    for p in d.torsion_invariants:
        out = out * p
    return _normalize_integral(out)


def _normalize_integral(p: LaurentPoly) -> LaurentPoly:
    """Clear denominators and content, lowest degree 0, positive leading coefficient."""
    if p.is_zero():
        return p
    from math import gcd, lcm
    den = 1
    for c in p.coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return LaurentPoly([Fraction(x, g) for x in ints], 0).normalized()


def alexander_poly_from_seifert(V: SeifertMatrix, form: str = "symmetric") -> LaurentPoly:
    """det(V - t V^T), normalized.

    ``form="symmetric"`` gives the representative with Delta(t) = Delta(t^-1)
    and Delta(1) = 1; ``form="normalized"`` gives lowest degree 0 and
    positive leading coefficient.
    """
    n = V.size
    M = V.matrix
    if n == 0:
        return ONE
    # det(V - tV^T) has degree <= n; interpolate through n + 1 integer points
    xs = list(range(n + 1))
    ys = [frac_det([[M[i][j] - x * M[j][i] for j in range(n)] for i in range(n)]) for x in xs]
    poly = _interpolate(xs, ys)
    if poly.is_zero():
        raise SeifertError("det(V - tV^T) vanishes identically")
    if form == "normalized":
        return poly.normalized()
    if form != "symmetric":
        raise ValueError(f"unknown form {form!r}")
    sym = poly.symmetric()
    if sym(1) != 1:
        raise SeifertError(f"Delta(1) = {sym(1)}; V - V^T is not unimodular")
    return sym


def _interpolate(xs, ys) -> LaurentPoly:
    total = ZERO
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        term = LaurentPoly.const(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term = term * LaurentPoly([Fraction(-xj, xi - xj), Fraction(1, xi - xj)])
        total = total + term
    return total


def units_equal(p: LaurentPoly, q: LaurentPoly) -> bool:
    """p and q agree up to a unit c t^k of Q[t^+-1]."""
    return p.monic() == q.monic()


# ---------------------------------------------------------------------------
# comparing H_1 along a morphism


class H1Status(Enum):
    ISO = "Iso"
    NOT_ISO = "NotIso"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class H1Comparison:
    status: H1Status
    source: ModuleDecomposition | None
    target: ModuleDecomposition | None
    reason: str

    def to_json(self) -> dict:
        return {"status": str(self.status),
                "source": self.source.to_json() if self.source else None,
                "target": self.target.to_json() if self.target else None,
                "reason": self.reason}


def h1_compare(f, c: int = DEFAULT_CLASS) -> H1Comparison:
    """Is f_*: H_1(A; Q[G]) -> H_1(B; Q[G]) an isomorphism (G infinite cyclic)?"""
    G = f.G
    if G.ngens != 1 or G.relators:
        return H1Comparison(H1Status.UNKNOWN, None, None,
                            f"coefficient group {G.name} is not infinite cyclic")
    ch = f.check(c)
    if ch.verdict is Verdict.FALSE:
        raise MorphismError(f"not a morphism over G: {ch.detail}")
    if ch.verdict is Verdict.UNKNOWN:
        return H1Comparison(H1Status.UNKNOWN, None, None, f"morphism checks undecided: {ch.detail}")
    dA = alexander_module(f.source, f.gamma_source)
    dB = alexander_module(f.target, f.gamma_target)
    same = dA.free_rank == dB.free_rank and len(dA.torsion_invariants) == len(dB.torsion_invariants) \
        and all(a == b for a, b in zip(dA.torsion_invariants, dB.torsion_invariants))
    if not same:
        return H1Comparison(H1Status.NOT_ISO, dA, dB, "module decompositions differ")
    exps = _cyclic_exponents(f.gamma_target)
    JB = [fox_row(r, exps, f.target.ngens) for r in f.target.relators]
    Df = [fox_row(w, exps, f.target.ngens) for w in f.images]
    coker = laurent_snf(JB + Df, f.target.ngens)
    if coker.free_rank or coker.torsion_invariants:
        return H1Comparison(H1Status.NOT_ISO, dA, dB, "induced map is not onto: " + coker.format())
    return H1Comparison(H1Status.ISO, dA, dB, "equal decompositions and the induced map is onto")


# ---------------------------------------------------------------------------
# row spans over Q[t^+-1]


def row_echelon(rows: Sequence[Sequence[LaurentPoly]], ncols: int) -> list[list[LaurentPoly]]:
    """Echelon basis of the Q[t^+-1] row span (pivots monic, lowest degree 0)."""
    work = [list(r) for r in rows if any(not p.is_zero() for p in r)]
    basis = []
    col = 0
    while work and col < ncols:
        piv = [r for r in work if not r[col].is_zero()]
        rest = [r for r in work if r[col].is_zero()]
        if not piv:
            col += 1
            continue
        # Euclid on the pivot column
        while len(piv) > 1:
            piv.sort(key=lambda r: r[col].span)
            head = piv[0]
            nxt = []
            for r in piv[1:]:
                q, _ = QT.divmod(r[col], head[col])
                red = [a - q * b for a, b in zip(r, head)]
                if red[col].is_zero():
                    if any(not p.is_zero() for p in red):
                        rest.append(red)
                else:
                    nxt.append(red)
            piv = [head] + nxt
        head = piv[0]
        lead = head[col]
        unit = LaurentPoly([1 / lead.lead()], -lead.low)
        head = [unit * p for p in head]
        basis.append(head)
        work = rest
        col += 1
    return basis


def in_row_span(rows: Sequence[Sequence[LaurentPoly]], v: Sequence[LaurentPoly]) -> bool:
    ncols = len(v)
    v = list(v)
    for row in row_echelon(rows, ncols):
        col = next(i for i, p in enumerate(row) if not p.is_zero())
        q, r = QT.divmod(v[col], row[col])
        if not r.is_zero():
            return False
        v = [a - q * b for a, b in zip(v, row)]
    return all(p.is_zero() for p in v)
