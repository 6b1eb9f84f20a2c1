"""Words in free groups.

A word is a tuple of ``(generator_index, exponent)`` syllables.  Functions
here never mutate their input; every public function returns a freely
reduced word.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

Word = tuple  # tuple[tuple[int, int], ...]

EMPTY: Word = ()


def free_reduce(w: Iterable[tuple[int, int]]) -> Word:
    out: list[list[int]] = []
    for g, e in w:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


def gen(i: int, e: int = 1) -> Word:
    return ((i, e),) if e else EMPTY


def mul(*words: Sequence[tuple[int, int]]) -> Word:
    return free_reduce(s for w in words for s in w)


def inverse(w: Sequence[tuple[int, int]]) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def power(w: Word, n: int) -> Word:
    if n < 0:
        w, n = inverse(w), -n
    return free_reduce(s for _ in range(n) for s in w)


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a^-1 b^-1 a b."""
    return mul(inverse(a), inverse(b), a, b)


def conjugate(w: Word, by: Word) -> Word:
    """by^-1 w by."""
    return mul(inverse(by), w, by)


def length(w: Word) -> int:
    return sum(abs(e) for _, e in w)


def letters(w: Word) -> tuple[int, ...]:
    """Expand into signed letters: generator i is ``i + 1``, its inverse ``-(i + 1)``."""
    out = []
    for g, e in w:
        s = g + 1 if e > 0 else -(g + 1)
        out.extend([s] * abs(e))
    return tuple(out)


def from_letters(ls: Iterable[int]) -> Word:
    return free_reduce((abs(s) - 1, 1 if s > 0 else -1) for s in ls)


def cyclic_reduce(w: Word) -> Word:
    w = free_reduce(w)
    while len(w) >= 2 and w[0][0] == w[-1][0]:
        g, e = w[0][0], w[0][1] + w[-1][1]
        mid = w[1:-1]
        w = free_reduce(((g, e),) + mid) if e else free_reduce(mid)
    return w


def substitute(w: Word, images: Sequence[Word] | Callable[[int], Word]) -> Word:
    """Apply the homomorphism sending generator i to ``images[i]``."""
    look = images if callable(images) else images.__getitem__
    out: list[tuple[int, int]] = []
    for g, e in w:
        img = look(g)
        if e < 0:
            img, e = inverse(img), -e
        for _ in range(e):
            out.extend(img)
    return free_reduce(out)


def shift(w: Word, offset: int) -> Word:
    return tuple((g + offset, e) for g, e in w)


def exponent_sums(w: Word, ngens: int) -> list[int]:
    v = [0] * ngens
    for g, e in w:
        v[g] += e
    return v


def generators_used(w: Word) -> set[int]:
    return {g for g, _ in w}


def format_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    parts = []
    for g, e in w:
        parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
    return " ".join(parts)


def left_normed(ws: Sequence[Word]) -> Word:
    """[w1, w2, ..., wk] = [[w1, w2], ..., wk]."""
    out = ws[0]
    for w in ws[1:]:
        out = commutator(out, w)
    return out
