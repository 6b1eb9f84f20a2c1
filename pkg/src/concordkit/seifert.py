"""Integer Seifert matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import SeifertError


def int_det(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def frac_det(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            A[k], A[p] = A[p], A[k]
            det = -det
        det *= A[k][k]
        inv = 1 / A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] * inv
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
    return det


@dataclass(frozen=True)
class SeifertMatrix:
    matrix: tuple
    name: str = ""

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise SeifertError("Seifert matrix must be square")
        d = int_det([[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)])
        if abs(d) != 1:
            raise SeifertError(f"det(V - V^T) = {d}, not a unit")

    @property
    def size(self) -> int:
        return len(self.matrix)

    def __len__(self):
        return self.size

    def T(self) -> tuple:
        n = self.size
        return tuple(tuple(self.matrix[j][i] for j in range(n)) for i in range(n))

    def mirror(self) -> "SeifertMatrix":
        """-V^T, a Seifert matrix of the mirror image."""
        n = self.size
        return SeifertMatrix(tuple(tuple(-self.matrix[j][i] for j in range(n)) for i in range(n)),
                             f"-{self.name}" if self.name else "")

    def to_json(self) -> dict:
        return {"name": self.name, "matrix": [list(r) for r in self.matrix]}

    @classmethod
    def from_json(cls, data) -> "SeifertMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            return cls(tuple(tuple(r) for r in data))
        if "matrix" not in data:
            raise SeifertError("Seifert JSON needs a 'matrix' field")
        return cls(tuple(tuple(r) for r in data["matrix"]), data.get("name", ""))


def connected_sum(V1: SeifertMatrix, V2: SeifertMatrix, name: str | None = None) -> SeifertMatrix:
    """Block sum V1 (+) V2."""
    n1, n2 = V1.size, V2.size
    rows = [list(r) + [0] * n2 for r in V1.matrix] + [[0] * n1 + list(r) for r in V2.matrix]
    if name is None:
        name = "#".join(x for x in (V1.name, V2.name) if x)
    return SeifertMatrix(tuple(tuple(r) for r in rows), name)


def block_sum(matrices: Sequence[SeifertMatrix], name: str = "") -> SeifertMatrix:
    out = SeifertMatrix((), "")
    for V in matrices:
        out = connected_sum(out, V)
    return SeifertMatrix(out.matrix, name or out.name)


# standard examples ---------------------------------------------------------

UNKNOT = SeifertMatrix((), "unknot")
TREFOIL = SeifertMatrix(((-1, 1), (0, -1)), "trefoil")
FIGURE_EIGHT = SeifertMatrix(((1, 1), (0, -1)), "figure-eight")


def twist_knot(m: int) -> SeifertMatrix:
    """[[-1, 1], [0, m]]; m = -1 is the trefoil, m = 1 the figure-eight."""
    return SeifertMatrix(((-1, 1), (0, m)), f"twist({m})")


def torus_2(k: int) -> SeifertMatrix:
    """The (2, 2k+1) torus knot: -1 on the diagonal, 1 just above it."""
    n = 2 * k
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = -1
        if i + 1 < n:
            rows[i][i + 1] = 1
    return SeifertMatrix(tuple(tuple(r) for r in rows), f"T(2,{2 * k + 1})")


GRANNY = connected_sum(TREFOIL, TREFOIL, "granny")
SQUARE = connected_sum(TREFOIL, TREFOIL.mirror(), "square")
