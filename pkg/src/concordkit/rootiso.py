"""Real root isolation over Q with Sturm sequences.

Polynomials are lists of Fractions, lowest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = list


def trim(p: Sequence) -> Poly:
    p = [Fraction(x) for x in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def evaluate(p: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def add(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def scale(p: Sequence, c) -> Poly:
    return trim([c * x for x in p])


def mul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_poly(p: Sequence, q: Sequence) -> tuple[Poly, Poly]:
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    r = list(p)
    while len(r) >= len(q) and r:
        k = len(r) - len(q)
        f = r[-1] / q[-1]
        quot[k] = f
        for i, c in enumerate(q):
            r[i + k] -= f * c
        r = trim(r)
    return trim(quot), r


def gcd_poly(p: Sequence, q: Sequence) -> Poly:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return a
    return scale(a, 1 / a[-1])


def squarefree(p: Sequence) -> Poly:
    p = trim(p)
    if degree(p) < 1:
        return p
    g = gcd_poly(p, derivative(p))
    return divmod_poly(p, g)[0] if degree(g) > 0 else p


def sturm_sequence(p: Sequence) -> list[Poly]:
    seq = [trim(p), derivative(p)]
    while seq[-1]:
        r = divmod_poly(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(scale(r, -1))
    return [s for s in seq if s]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_changes(seq: Sequence[Poly], x) -> int:
    signs = [s for s in (_sign(evaluate(p, x)) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Sequence, a, b, seq: Sequence[Poly] | None = None) -> int:
    """Distinct real roots in (a, b]."""
    seq = sturm_sequence(p) if seq is None else seq
    return sign_changes(seq, a) - sign_changes(seq, b)


def root_bound(p: Sequence) -> Fraction:
    p = trim(p)
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


def _clear(p, seq, x, side: int, span) -> Fraction:
    """Move x by less than span towards side until no root lies between (roots at x excepted)."""
    d = Fraction(span) / 2
    while True:
        y = x + side * d
        a, b = (x, y) if side > 0 else (y, x)
        inside = count_roots(p, a, b, seq) - (1 if side < 0 and evaluate(p, x) == 0 else 0)
        if evaluate(p, y) != 0 and inside == 0:
            return y
        d /= 2


def isolate_roots(p: Sequence, lo=None, hi=None) -> list[tuple[Fraction, Fraction]]:
    """Intervals [a, b] with disjoint interiors, one per distinct real root in (lo, hi).

    Rational roots met during bisection come back as [r, r]; every other
    interval has non-root endpoints (possibly shared with a neighbour) and
    exactly one root strictly inside.
    """
    p = squarefree(p)
    if degree(p) < 1:
        return []
    B = root_bound(p)
    lo = -B if lo is None else Fraction(lo)
    hi = B if hi is None else Fraction(hi)
    if lo >= hi:
        return []
    seq = sturm_sequence(p)
    if evaluate(p, lo) == 0:
        lo = _clear(p, seq, lo, 1, hi - lo)
    if evaluate(p, hi) == 0:
        hi = _clear(p, seq, hi, -1, hi - lo)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = count_roots(p, a, b, seq)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if evaluate(p, m) == 0:
            out.append((m, m))
            left = _clear(p, seq, m, -1, m - a)
            right = _clear(p, seq, m, 1, b - m)
            stack.append((a, left))
            stack.append((right, b))
        else:
            stack.append((a, m))
            stack.append((m, b))
    return sorted(out)


def refine(p: Sequence, interval: tuple, width) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of a squarefree p until it is at most width wide."""
    a, b = interval
    if a == b:
        return a, b
    fa = _sign(evaluate(p, a))
    while b - a > width:
        m = (a + b) / 2
        fm = _sign(evaluate(p, m))
        if fm == 0:
            return m, m
        if fm == fa:
            a = m
        else:
            b = m
    return a, b


# ---------------------------------------------------------------------------
# Chebyshev substitution


def chebyshev_t(k: int) -> Poly:
    a, b = [Fraction(1)], [Fraction(0), Fraction(1)]
    if k == 0:
        return a
    for _ in range(k - 1):
        a, b = b, add(mul([Fraction(0), Fraction(2)], b), scale(a, -1))
    return b


def symmetric_to_cos(coeffs: dict[int, Fraction]) -> Poly:
    """For a symmetric Laurent polynomial sum c_k t^k, the polynomial Q with Q(cos t) = f(e^{it})."""
    out: Poly = [Fraction(coeffs.get(0, 0))]
    for k, c in coeffs.items():
        if k > 0 and c:
            out = add(out, scale(chebyshev_t(k), 2 * Fraction(c)))
    return trim(out)
