"""Smith normal form over Euclidean domains.

The elimination is written once against a tiny ring interface and used for
the integers (abelianizations, nilpotent sections) and for Q[t, t^-1]
(Alexander modules, see ``laurent.LaurentRing``).
"""

from __future__ import annotations

from typing import Any, Sequence


class IntegerRing:
    zero = 0
    one = 1

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    @staticmethod
    def size(a) -> int:
        return abs(a)

    @staticmethod
    def divmod(a, b):
        q, r = divmod(a, b)
        return q, r

    @staticmethod
    def normalize(a):
        return abs(a)

    @staticmethod
    def is_unit(a) -> bool:
        return abs(a) == 1


ZZ = IntegerRing()


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(d, s, t) with d = s*a + t*b = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def smith_invariants(matrix: Sequence[Sequence[Any]], ring=ZZ) -> list:
    """Diagonal of the Smith form (nonzero entries only, normalized, divisibility chain)."""
    A = [list(row) for row in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        # pick the smallest nonzero entry of the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if not ring.is_zero(A[i][j]):
                    s = ring.size(A[i][j])
                    if best is None or s < best[0]:
                        best = (s, i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            dirty = False
            p = A[t][t]
            for i in range(t + 1, rows):
                if ring.is_zero(A[i][t]):
                    continue
                q, r = ring.divmod(A[i][t], p)
                A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if not ring.is_zero(r):
                    dirty = True
            for j in range(t + 1, cols):
                if ring.is_zero(A[t][j]):
                    continue
                q, r = ring.divmod(A[t][j], p)
                for row in A:
                    row[j] = row[j] - q * row[t]
                if not ring.is_zero(r):
                    dirty = True
            if dirty:
                # move the smallest remaining entry of row/column t to the pivot
                best = (ring.size(A[t][t]), t, t)
                for i in range(t + 1, rows):
                    if not ring.is_zero(A[i][t]) and ring.size(A[i][t]) < best[0]:
                        best = (ring.size(A[i][t]), i, t)
                for j in range(t + 1, cols):
                    if not ring.is_zero(A[t][j]) and ring.size(A[t][j]) < best[0]:
                        best = (ring.size(A[t][j]), t, j)
                _, i, j = best
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            # pivot now divides nothing else in its row/column; check the block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if not ring.is_zero(A[i][j]) and not ring.is_zero(ring.divmod(A[i][j], p)[1]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
        diag.append(ring.normalize(A[t][t]))
        t += 1
    return diag


def abelian_invariants(matrix: Sequence[Sequence[int]], ncols: int) -> tuple[int, list[int]]:
    """(free rank, torsion list) of Z^ncols modulo the row span of ``matrix``."""
    inv = smith_invariants(matrix, ZZ) if matrix else []
    torsion = [d for d in inv if d > 1]
    return ncols - len(inv), torsion


def integer_echelon(rows: Sequence[Sequence[int]], ncols: int, zeros: list | None = None) -> list[list[int]]:
    """Row-echelon basis of the integer row span, pivots positive.

    Only the first ``ncols`` columns are used for pivoting; any further
    columns ride along (used to record row operations).  Rows whose first
    ``ncols`` entries end up zero are appended to ``zeros`` when given.
    """
    basis: list[list[int]] = []
    work = [list(r) for r in rows if any(r[:ncols])]
    if zeros is not None:
        zeros.extend(list(r) for r in rows if not any(r[:ncols]) and any(r))
    col = 0
    while work and col < ncols:
        piv = [r for r in work if r[col]]
        rest = [r for r in work if not r[col]]
        if not piv:
            col += 1
            continue
        cur = piv[0]
        for other in piv[1:]:
            a, b = cur[col], other[col]
            d, s, t = ext_gcd(a, b)
            new = [s * x + t * y for x, y in zip(cur, other)]
            red = [(b // d) * x - (a // d) * y for x, y in zip(cur, other)]
            cur = new
            if any(red[:ncols]):
                rest.append(red)
            elif zeros is not None and any(red):
                zeros.append(red)
        if cur[col] < 0:
            cur = [-x for x in cur]
        basis.append(cur)
        work = rest
        col += 1
    return basis


def integer_solve(rows: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integers x with sum_i x_i rows[i] = v, or None."""
    n, ncols = len(rows), len(v)
    aug = [list(r) + [1 if j == i else 0 for j in range(n)] for i, r in enumerate(rows)]
    target = list(v)
    coeff = [0] * n
    for row in integer_echelon(aug, ncols):
        col = next(i for i in range(ncols) if row[i])
        if target[col] % row[col]:
            return None
        q = target[col] // row[col]
        target = [a - q * b for a, b in zip(target, row[:ncols])]
        coeff = [a + q * b for a, b in zip(coeff, row[ncols:])]
    return coeff if not any(target) else None


def in_integer_span(rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return integer_solve(rows, v) is not None


def integer_kernel(M: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """A basis of the lattice {x in Z^n : M x = 0}."""
    m = len(M)
    rows = [[M[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)] for j in range(n)]
    zeros: list = []
    integer_echelon(rows, m, zeros)
    return [r[m:] for r in zeros]


def saturation(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Integer basis of span_Q(rows) intersected with Z^n."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    comp = integer_kernel(rows, n)
    if not comp:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    return integer_kernel(comp, n)


def in_rational_span(rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    rows = [list(r) for r in rows if any(r)]
    if not any(v):
        return True
    if not rows:
        return False
    comp = integer_kernel(rows, len(v))
    return all(sum(a * b for a, b in zip(c, v)) == 0 for c in comp)
