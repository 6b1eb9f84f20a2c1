"""Nilpotent quotients of finitely presented groups.

The free nilpotent group F_r / gamma_{c+1} is modelled faithfully inside the
truncated Magnus algebra (x_i -> 1 + X_i).  Mal'cev coordinates come from
the Lyndon basis: the basic commutator b_u of a Lyndon word u has lowest
term P_u = u + (lexicographically larger words), so coordinates are peeled
off one weight layer at a time by a triangular solve.

A quotient P / gamma_{c+1} P is F / (gamma_{c+1} F . R^F).  The normal
closure R^F is kept as an induced generating sequence (one element per
leading basis index) and cosets are put in normal form by reducing each
coordinate modulo the leading exponent of that index.
"""

from __future__ import annotations

import math
from collections import deque
from functools import lru_cache

import numpy as np

from . import _kernels as K
from . import words as W
from .errors import ClassBoundError
from .presentation import GroupPresentation
from .smith import abelian_invariants, ext_gcd

MAX_CLASS = 5
DEFAULT_CLASS = 3


def binom(n: int, k: int) -> int:
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    return (-1) ** k * math.comb(-n + k - 1, k)


def lyndon_words(r: int, n: int) -> list[tuple[int, ...]]:
    """All Lyndon words of length <= n over range(r), in lexicographic order (Duval)."""
    out = []
    if r == 0 or n == 0:
        return out
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == r - 1:
            w.pop()
    return out


def _is_lyndon(u) -> bool:
    return all(u < u[i:] + u[:i] for i in range(1, len(u))) and all(u < u[i:] for i in range(1, len(u)))


def standard_factorization(u: tuple[int, ...]) -> tuple[tuple, tuple]:
    for i in range(1, len(u)):
        if _is_lyndon(u[i:]):
            return u[:i], u[i:]
    raise ValueError("single letters have no standard factorization")


class FreeNilpotent:
    """F_r / gamma_{c+1}(F_r) realised in the truncated Magnus algebra."""

    def __init__(self, r: int, c: int, use_numba: bool | None = None):
        self.r = r
        self.c = c
        self.use_numba = use_numba
        self.off = K.offsets(r, c)
        self.size = int(self.off[-1])
        self._one = np.zeros(self.size, dtype=np.int64)
        self._one[0] = 1
        self._build_basis()

    # algebra ---------------------------------------------------------------
    def identity(self) -> np.ndarray:
        return self._one.copy()

    def mul(self, a, b):
        return K.magnus_mul(a, b, self.r, self.c, self.off, self.use_numba)

    def _series(self, a, coef):
        """sum_k coef(k) Y^k with Y = a - 1."""
        Y = a.copy()
        Y[0] -= 1
        out = self.identity().astype(a.dtype)
        term = None
        for k in range(1, self.c + 1):
            term = Y if term is None else self.mul(term, Y)
            if not term.any():
                break
            ck = coef(k)
            if not ck:
                continue
            if out.dtype != object and (term.dtype == object or
                                        abs(ck) * K._max_abs(term) + K._max_abs(out) >= K._INT_LIMIT):
                out = out.astype(object)
            out = out + ck * (term.astype(object) if out.dtype == object else term)
        return out

    def inv(self, a):
        return self._series(a, lambda k: (-1) ** k)

    def pow(self, a, n: int):
        if n == 0:
            return self.identity()
        if n == 1:
            return a
        return self._series(a, lambda k: binom(n, k))

    def comm(self, a, b):
        """[a, b] = a^-1 b^-1 a b."""
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def _mono_code(self, i: int, k: int) -> int:
        return sum(i * self.r ** j for j in range(k))

    def gen_power_mul(self, a, i: int, e: int):
        """a * x_i^e without forming a full product."""
        r, c, off = self.r, self.c, self.off
        betas = [binom(e, k) for k in range(c + 1)]
        big = max(abs(b) for b in betas) * K._max_abs(a) * (c + 1) >= K._INT_LIMIT
        if big or a.dtype == object:
            a = a.astype(object)
        out = a.copy()
        for d in range(1, c + 1):
            for k in range(1, d + 1):
                if not betas[k]:
                    continue
                step = r ** k
                start = int(off[d]) + self._mono_code(i, k)
                src = a[off[d - k]:off[d - k + 1]]
                out[start:int(off[d + 1]):step] += betas[k] * src
        return out

    def word(self, w: W.Word):
        out = self.identity()
        for g, e in w:
            out = self.gen_power_mul(out, g, e)
        return out

    # Lyndon basis ----------------------------------------------------------
    def _build_basis(self):
        r, c = self.r, self.c
        lw = sorted(lyndon_words(r, c), key=lambda u: (len(u), u))
        self.basis = lw
        self.weights = [len(u) for u in lw]
        self.layers = [[k for k, u in enumerate(lw) if len(u) == w] for w in range(c + 1)]
        self.first_of_weight = [self.layers[w][0] if self.layers[w] else None for w in range(c + 1)]
        index = {u: k for k, u in enumerate(lw)}
        self.basis_words: list[W.Word] = []
        self._magnus: list[np.ndarray] = []
        for u in lw:
            if len(u) == 1:
                self.basis_words.append(W.gen(u[0]))
                self._magnus.append(self.word(W.gen(u[0])))
            else:
                u1, u2 = standard_factorization(u)
                a, b = index[u1], index[u2]
                self.basis_words.append(W.commutator(self.basis_words[a], self.basis_words[b]))
                self._magnus.append(self.comm(self._magnus[a], self._magnus[b]))
        self._codes = []
        self._lie = []
        self._ypow = []
        for k, u in enumerate(lw):
            d = len(u)
            code = 0
            for letter in u:
                code = code * r + letter
            lie = self._magnus[k][self.off[d]:self.off[d + 1]].copy()
            assert lie[code] == 1, "Lyndon leading term must be 1"
            self._codes.append(code)
            self._lie.append(lie)
            Y = self._magnus[k].copy()
            Y[0] -= 1
            pw = [None, Y]
            for _ in range(2, c // d + 1):
                pw.append(self.mul(pw[-1], Y))
            self._ypow.append(pw)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_power(self, k: int, e: int):
        if e == 0:
            return self.identity()
        pw = self._ypow[k]
        coefs = [binom(e, j) for j in range(len(pw))]
        big = any(abs(coefs[j]) * K._max_abs(pw[j]) >= K._INT_LIMIT for j in range(1, len(pw)))
        out = self.identity().astype(object) if big else self.identity()
        for j in range(1, len(pw)):
            out = out + (coefs[j] * pw[j].astype(object) if big else coefs[j] * pw[j])
        return out

    def coords(self, a) -> list[int]:
        """Mal'cev coordinates with respect to the ordered Lyndon basis."""
        cur = a
        out: list[int] = []
        for w in range(1, self.c + 1):
            layer = self.layers[w]
            part = cur[self.off[w]:self.off[w + 1]].astype(object)
            es = []
            for k in layer:
                e = int(part[self._codes[k]])
                es.append(e)
                if e:
                    part = part - e * self._lie[k].astype(object)
            if any(part):
                raise ValueError("array is not the Magnus image of a group element")
            out.extend(es)
            if w < self.c and any(es):
                prod = self.identity()
                for k, e in zip(reversed(layer), reversed(es)):
                    if e:
                        prod = self.mul(prod, self.basis_power(k, -e))
                cur = self.mul(prod, cur)
        return out

    def from_coords(self, co) -> np.ndarray:
        out = self.identity()
        for k, e in enumerate(co):
            if e:
                out = self.mul(out, self.basis_power(k, e))
        return out

    def coords_to_word(self, co) -> W.Word:
        return W.mul(*[W.power(self.basis_words[k], e) for k, e in enumerate(co) if e])


@lru_cache(maxsize=64)
def free_nilpotent(r: int, c: int) -> FreeNilpotent:
    return FreeNilpotent(r, c)


def _leading(co):
    for i, e in enumerate(co):
        if e:
            return i
    return None


class Igs:
    """Induced generating sequence of a subgroup of a free nilpotent group.

    ``table`` maps a basis index i to (a, h) where h has leading index i and
    positive leading exponent a.  The subgroup is closed under pairwise
    commutators of its table elements and, if given, under commutators with
    each element of ``conjugators`` (pass x and x^-1 for normal closures).
    """

    def __init__(self, F: FreeNilpotent, elements=(), conjugators=()):
        self.F = F
        self.table: dict[int, tuple[int, np.ndarray]] = {}
        self.conjugators = [(c, self._weight(c)) for c in conjugators]
        self.add(elements)

    def _weight(self, a) -> int | None:
        i = _leading(self.F.coords(a))
        return None if i is None else self.F.weights[i]

    def _insert(self, g, queue):
        F = self.F
        pending = [g]
        changed = []
        while pending:
            g = pending.pop()
            while True:
                co = F.coords(g)
                i = _leading(co)
                if i is None:
                    break
                e = co[i]
                if i not in self.table:
                    if e < 0:
                        g, e = F.inv(g), -e
                    self.table[i] = (e, g)
                    changed.append(g)
                    break
                a, h = self.table[i]
                if e % a == 0:
                    g = F.mul(F.pow(h, -(e // a)), g)
                    continue
                d, s, t = ext_gcd(a, e)
                newh = F.mul(F.pow(h, s), F.pow(g, t))
                self.table[i] = (d, newh)
                changed.append(newh)
                pending.extend([h, g])
                break
        c = F.c
        for h in changed:
            wh = self._weight(h)
            if wh is None:
                continue
            for x, wx in self.conjugators:
                if wx is not None and wh + wx <= c:
                    queue.append(F.comm(h, x))
            for _, h2 in list(self.table.values()):
                w2 = self._weight(h2)
                if w2 is not None and wh + w2 <= c:
                    queue.append(F.comm(h, h2))
                    queue.append(F.comm(F.inv(h), h2))

    def add(self, elements):
        queue = deque(elements)
        while queue:
            self._insert(queue.popleft(), queue)

    def express(self, a) -> list[int] | None:
        """Exponents e with a = prod h_k^{e_k} (table order), or None if a is not in the subgroup."""
        F = self.F
        order = sorted(self.table)
        pos = {i: n for n, i in enumerate(order)}
        out = [0] * len(order)
        while True:
            co = F.coords(a)
            i = _leading(co)
            if i is None:
                return out
            if i not in self.table:
                return None
            lead, h = self.table[i]
            if co[i] % lead:
                return None
            q = co[i] // lead
            out[pos[i]] += q
            a = F.mul(F.pow(h, -q), a)

    def contains(self, a) -> bool:
        return self.express(a) is not None

    def elements(self) -> list[np.ndarray]:
        return [self.table[i][1] for i in sorted(self.table)]

    def __len__(self):
        return len(self.table)


class NilpotentQuotient:
    """P / gamma_{c+1}(P) with a normal-form algorithm for words."""

    def __init__(self, presentation: GroupPresentation, c: int, max_class: int = MAX_CLASS):
        if c < 1 or c > max_class:
            raise ClassBoundError(f"nilpotency class {c} outside 1..{max_class}")
        self.presentation = presentation
        self.c = c
        self.F = free_nilpotent(presentation.ngens, c)
        gens = [self.F.word(W.gen(x, s)) for x in range(self.F.r) for s in (1, -1)]
        self.igs = Igs(self.F, [self.F.word(r) for r in presentation.relators], gens)
        self.table = self.igs.table

    # normal forms ----------------------------------------------------------
    def reduce(self, a) -> tuple[int, ...]:
        """Canonical coordinates of the coset a . R^F."""
        F = self.F
        co = F.coords(a)
        for i in range(len(co)):
            if i in self.table and co[i]:
                lead, h = self.table[i]
                q = co[i] // lead
                if q:
                    a = F.mul(F.pow(h, -q), a)
                    co = F.coords(a)
        return tuple(co)

    def normal_form(self, w: W.Word) -> tuple[int, ...]:
        return self.reduce(self.F.word(w))

    def is_trivial(self, w: W.Word) -> bool:
        return not any(self.normal_form(w))

    def equal(self, u: W.Word, v: W.Word) -> bool:
        return self.is_trivial(W.mul(u, W.inverse(v)))

    def element(self, w: W.Word) -> np.ndarray:
        """Magnus array of the canonical representative of w."""
        return self.F.from_coords(self.normal_form(w))

    def canonical(self, a) -> np.ndarray:
        return self.F.from_coords(self.reduce(a))

    def word_of(self, co) -> W.Word:
        return self.F.coords_to_word(co)

    # structure -------------------------------------------------------------
    def relative_orders(self) -> list[int]:
        """0 for infinite, otherwise the order of each basis index in its section."""
        return [self.table[i][0] if i in self.table else 0 for i in range(self.F.rank)]

    def section(self, w: int) -> tuple[int, list[int]]:
        """(rank, torsion) of gamma_w P / gamma_{w+1} P."""
        layer = self.F.layers[w]
        rows = []
        for i in layer:
            if i in self.table:
                co = self.F.coords(self.table[i][1])
                rows.append([co[k] for k in layer])
        return abelian_invariants(rows, len(layer))

    def lower_central_ranks(self) -> list[int]:
        return [self.section(w)[0] for w in range(1, self.c + 1)]

    def lower_central_torsion(self) -> list[list[int]]:
        return [self.section(w)[1] for w in range(1, self.c + 1)]

    def pc_presentation(self) -> dict:
        """Weighted polycyclic presentation of the quotient.

        Generators are the basis commutators that survive; each carries its
        weight, relative order (0 = infinite), power relation when finite and
        conjugation relations b_j^{b_i} = b_j * (normal form).
        """
        orders = self.relative_orders()
        live = [k for k, o in enumerate(orders) if o != 1]
        names = {k: f"b{n + 1}" for n, k in enumerate(live)}
        F = self.F

        def fmt(co):
            parts = [f"{names[k]}^{e}" if e != 1 else names[k] for k, e in enumerate(co) if e]
            return " ".join(parts) if parts else "1"

        gens = []
        for k in live:
            gens.append({
                "name": names[k],
                "weight": F.weights[k],
                "word": W.format_word(F.basis_words[k], self.presentation.generators),
                "relative_order": orders[k],
            })
        powers = {}
        for k in live:
            if orders[k]:
                powers[names[k]] = fmt(self.reduce(F.basis_power(k, orders[k])))
        conj = {}
        for a, i in enumerate(live):
            for j in live[a + 1:]:
                if F.weights[i] + F.weights[j] > self.c:
                    continue
                co = self.reduce(F.comm(F.basis_power(j, 1), F.basis_power(i, 1)))
                if any(co):
                    conj[f"[{names[j]},{names[i]}]"] = fmt(co)
        return {"class": self.c, "generators": gens, "powers": powers, "commutators": conj}


@lru_cache(maxsize=256)
def nilpotent_quotient(presentation: GroupPresentation, c: int = DEFAULT_CLASS,
                       max_class: int = MAX_CLASS) -> NilpotentQuotient:
    return NilpotentQuotient(presentation, c, max_class)


def witt_rank(r: int, n: int) -> int:
    """Rank of gamma_n / gamma_{n+1} of the free group of rank r (necklace formula)."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _mobius(d) * r ** (n // d)
    return total // n


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res
