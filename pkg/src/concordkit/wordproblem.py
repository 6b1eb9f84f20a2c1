"""Three-valued triviality checks in finitely presented groups.

Answers are TRUE only when a derivation was found or the engine is exact for
the presentation at hand, FALSE only when some nilpotent quotient separates
the word from the identity, and UNKNOWN otherwise.  Engines, in order:

* free reduction (and free groups, where it is exact);
* presentations recognised as abelian, decided by lattice membership;
* nilpotent quotients up to the requested class (FALSE witnesses);
* a certificate that the group itself is nilpotent of class <= c, which
  makes the class-c quotient exact;
* a budgeted best-first rewriting search over cyclic words (TRUE witnesses).
"""

from __future__ import annotations

import heapq
import itertools
import threading
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Sequence

from . import words as W
from .errors import Cancelled
from .nilpotent import DEFAULT_CLASS, nilpotent_quotient
from .presentation import GroupPresentation
from .smith import in_integer_span

MAX_WORD_LENGTH = 64
MAX_NODES = 10_000


class Verdict(Enum):
    TRUE = "certified-true"
    FALSE = "certified-false"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


def kleene_and(vs: Iterable[Verdict]) -> Verdict:
    vs = list(vs)
    if any(v is Verdict.FALSE for v in vs):
        return Verdict.FALSE
    if any(v is Verdict.UNKNOWN for v in vs):
        return Verdict.UNKNOWN
    return Verdict.TRUE


def kleene_or(vs: Iterable[Verdict]) -> Verdict:
    vs = list(vs)
    if any(v is Verdict.TRUE for v in vs):
        return Verdict.TRUE
    if any(v is Verdict.UNKNOWN for v in vs):
        return Verdict.UNKNOWN
    return Verdict.FALSE


def negate(v: Verdict) -> Verdict:
    return {Verdict.TRUE: Verdict.FALSE, Verdict.FALSE: Verdict.TRUE}.get(v, Verdict.UNKNOWN)


@dataclass(frozen=True)
class Check:
    verdict: Verdict
    method: str
    detail: str = ""

    def __bool__(self):
        return self.verdict is Verdict.TRUE

    def to_json(self) -> dict:
        return {"verdict": str(self.verdict), "method": self.method, "detail": self.detail}


class CancelToken:
    """Cooperative cancellation flag shared between a caller and a search."""

    def __init__(self):
        self._event = threading.Event()

    def cancel(self):
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()

    def check(self):
        if self._event.is_set():
            raise Cancelled("operation cancelled")


@dataclass(frozen=True)
class Budget:
    max_length: int = MAX_WORD_LENGTH
    max_nodes: int = MAX_NODES


DEFAULT_BUDGET = Budget()


# ---------------------------------------------------------------------------
# rewriting search


def _cyc_reduce_letters(ls: tuple) -> tuple:
    out: list[int] = []
    for x in ls:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    i, j = 0, len(out)
    while j - i >= 2 and out[i] == -out[j - 1]:
        i += 1
        j -= 1
    return tuple(out[i:j])


def _join_cyclic(a: tuple, b: tuple) -> tuple:
    """Cyclically reduced form of a + b for freely reduced a and b."""
    i = 0
    la, lb = len(a), len(b)
    while i < la and i < lb and a[la - 1 - i] == -b[i]:
        i += 1
    out = a[:la - i] + b[i:]
    s, e = 0, len(out)
    while e - s >= 2 and out[s] == -out[e - 1]:
        s += 1
        e -= 1
    return out[s:e]


def _canon(ls: tuple) -> tuple:
    if not ls:
        return ls
    m = min(ls)
    return min(ls[i:] + ls[:i] for i, x in enumerate(ls) if x == m)


def _relator_pieces(relators: Sequence[W.Word]) -> list[tuple]:
    pieces = set()
    for r in relators:
        ls = _cyc_reduce_letters(W.letters(r))
        if not ls:
            continue
        inv = tuple(-x for x in reversed(ls))
        for base in (ls, inv):
            for i in range(len(base)):
                pieces.add(base[i:] + base[:i])
    return sorted(pieces)


@dataclass
class SearchResult:
    found: bool
    nodes: int
    path: list = field(default_factory=list)


def rewrite_search(relators: Sequence[W.Word], w: W.Word, budget: Budget = DEFAULT_BUDGET,
                   cancel: CancelToken | None = None) -> SearchResult:
    """Best-first search for a derivation of w = 1 from the relators.

    States are cyclic words; a move replaces a cyclic subword u by v^-1
    whenever u v is a cyclic permutation of a relator or its inverse and u
    covers at least about half of it, so no move grows the word by more than
    a couple of letters.
    """
    start = _cyc_reduce_letters(W.letters(w))
    if not start:
        return SearchResult(True, 0)
    pieces = _relator_pieces(relators)
    if not pieces:
        return SearchResult(False, 0)
    by_first: dict[int, list[tuple]] = {}
    for p in pieces:
        by_first.setdefault(p[0], []).append(p)
    # inverses[piece][j] is the inverse of piece[j:]
    inverses = {p: [tuple(-x for x in reversed(p[j:])) for j in range(len(p) + 1)] for p in pieces}
    counter = itertools.count()
    start_c = _canon(start)
    parent = {start_c: None}
    heap = [(len(start), next(counter), start)]
    nodes = 0
    while heap:
        if cancel is not None:
            cancel.check()
        _, _, cur = heapq.heappop(heap)
        nodes += 1
        if nodes > budget.max_nodes:
            break
        n = len(cur)
        doubled = cur + cur
        for pos in range(n):
            for piece in by_first.get(cur[pos], ()):
                m = len(piece)
                k = 0
                while k < m and k < n and doubled[pos + k] == piece[k]:
                    k += 1
                # every matched prefix piece[:j] may be replaced by the inverse of piece[j:]
                for j in range(max(1, (m - 1) // 2), k + 1):
                    new = _join_cyclic(inverses[piece][j], doubled[pos + j:pos + n])
                    if len(new) > budget.max_length:
                        continue
                    cn = _canon(new)
                    if cn in parent:
                        continue
                    parent[cn] = _canon(cur)
                    if not new:
                        path = [cn]
                        while parent[path[-1]] is not None:
                            path.append(parent[path[-1]])
                        return SearchResult(True, nodes, list(reversed(path)))
                    heapq.heappush(heap, (len(new), next(counter), new))
    return SearchResult(False, nodes)


# ---------------------------------------------------------------------------
# structural recognisers


def is_abelian_presentation(P: GroupPresentation) -> bool:
    """True when every commutator of generators is literally a relator (up to cyclic form)."""
    if P.ngens <= 1:
        return True
    have = set()
    for r in P.relators:
        ls = _cyc_reduce_letters(W.letters(r))
        have.add(_canon(ls))
        have.add(_canon(tuple(-x for x in reversed(ls))))
    for i in range(P.ngens):
        for j in range(i + 1, P.ngens):
            c = _canon(_cyc_reduce_letters(W.letters(W.commutator(W.gen(i), W.gen(j)))))
            if c not in have:
                return False
    return True


def _abelian_trivial(P: GroupPresentation, w: W.Word) -> bool:
    rows = [W.exponent_sums(r, P.ngens) for r in P.relators]
    return in_integer_span(rows, W.exponent_sums(w, P.ngens))


@lru_cache(maxsize=256)
def nilpotency_class_certificate(P: GroupPresentation, c: int, nodes: int = 300) -> bool:
    """True if P is certified nilpotent of class <= c.

    By induction on c, a group in which every left-normed commutator of
    weight c + 1 in the generators vanishes has class <= c; each such
    commutator is certified trivial by free reduction or rewriting search.
    """
    if c < 1:
        return False
    if is_abelian_presentation(P):
        return True
    budget = Budget(MAX_WORD_LENGTH, nodes)
    r = P.ngens
    for idx in itertools.product(range(r), repeat=c + 1):
        if idx[0] == idx[1]:
            continue
        w = W.left_normed([W.gen(i) for i in idx])
        if not w:
            continue
        if not rewrite_search(P.relators, w, budget).found:
            return False
    return True


def certified_nilpotent_class(P: GroupPresentation, max_class: int) -> int | None:
    if not P.relators:
        return None if P.ngens > 1 else 1
    for c in range(1, max_class + 1):
        if nilpotency_class_certificate(P, c):
            return c
    return None


# ---------------------------------------------------------------------------
# entry point


def trivial_in(P: GroupPresentation, w: W.Word, c: int = DEFAULT_CLASS,
               budget: Budget = DEFAULT_BUDGET, cancel: CancelToken | None = None,
               search: bool = True) -> Check:
    """Is the word w trivial in the group presented by P?"""
    w = W.free_reduce(w)
    if not w:
        return Check(Verdict.TRUE, "free reduction")
    if not P.relators:
        return Check(Verdict.FALSE, "free group", "nonempty reduced word in a free group")
    if is_abelian_presentation(P):
        ok = _abelian_trivial(P, w)
        return Check(Verdict.TRUE if ok else Verdict.FALSE, "abelian lattice",
                     "exponent vector " + ("in" if ok else "not in") + " relator lattice")
    for k in range(1, c + 1):
        if not nilpotent_quotient(P, k).is_trivial(w):
            return Check(Verdict.FALSE, "nilpotent quotient", f"nontrivial at class {k}")
    nc = certified_nilpotent_class(P, c)
    if nc is not None and nc <= c:
        return Check(Verdict.TRUE, "nilpotent quotient",
                     f"group certified nilpotent of class {nc}; trivial at class {c}")
    if search:
        res = rewrite_search(P.relators, w, budget, cancel)
        if res.found:
            return Check(Verdict.TRUE, "rewriting", f"derivation of length {len(res.path) - 1}")
        return Check(Verdict.UNKNOWN, "rewriting",
                     f"trivial through class {c}; no derivation within {res.nodes} nodes")
    return Check(Verdict.UNKNOWN, "nilpotent quotient", f"trivial through class {c}")


def equal_in(P: GroupPresentation, u: W.Word, v: W.Word, **kw) -> Check:
    return trivial_in(P, W.mul(u, W.inverse(v)), **kw)
