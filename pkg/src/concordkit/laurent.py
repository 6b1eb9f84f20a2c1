"""Laurent polynomials in one variable with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class LaurentPoly:
    """sum c_k t^k stored as (lowest degree, coefficient tuple)."""

    __slots__ = ("low", "coeffs")

    def __init__(self, coeffs: Iterable = (), low: int = 0):
        cs = [_frac(c) for c in coeffs]
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        end = len(cs)
        while end > start and cs[end - 1] == 0:
            end -= 1
        cs = cs[start:end]
        self.coeffs = tuple(cs)
        self.low = low + start if cs else 0

    # construction ---------------------------------------------------------
    @classmethod
    def from_dict(cls, d: Mapping[int, object]) -> "LaurentPoly":
        d = {int(k): _frac(v) for k, v in d.items() if _frac(v) != 0}
        if not d:
            return cls()
        lo, hi = min(d), max(d)
        return cls([d.get(k, 0) for k in range(lo, hi + 1)], lo)

    @classmethod
    def monomial(cls, deg: int, c=1) -> "LaurentPoly":
        return cls([c], deg)

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls([c], 0)

    # basic properties -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    @property
    def span(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def to_dict(self) -> dict[int, Fraction]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def __iter__(self):
        return iter(self.to_dict().items())

    # arithmetic -----------------------------------------------------------
    def _binop(self, other, sign):
        other = _lift(other)
        if self.is_zero():
            return other if sign > 0 else -other
        if other.is_zero():
            return self
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [Fraction(0)] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.low - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.low - lo + i] += sign * c
        return LaurentPoly(out, lo)

    def __add__(self, other):
        return self._binop(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, -1)

    def __rsub__(self, other):
        return _lift(other)._binop(self, -1)

    def __neg__(self):
        return LaurentPoly([-c for c in self.coeffs], self.low)

    def __mul__(self, other):
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(out, self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials are invertible")
            return LaurentPoly([1 / self.coeffs[0] ** (-n)], self.low * n)
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.low, self.coeffs))

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.coeffs, self.low + k) if self.coeffs else self

    def scale(self, c) -> "LaurentPoly":
        return LaurentPoly([c * x for x in self.coeffs], self.low)

    def bar(self) -> "LaurentPoly":
        """t -> t^-1."""
        return LaurentPoly(list(reversed(self.coeffs)), -self.high) if self.coeffs else self

    def __call__(self, x):
        total = 0
        for k, c in self.to_dict().items():
            total += c * x ** k
        return total

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly.from_dict({k - 1: k * c for k, c in self.to_dict().items() if k})

    # normalization --------------------------------------------------------
    def normalized(self) -> "LaurentPoly":
        """Unit-normalized: lowest degree 0 and positive leading coefficient."""
        if self.is_zero():
            return self
        p = LaurentPoly(self.coeffs, 0)
        return -p if p.lead() < 0 else p

    def monic(self) -> "LaurentPoly":
        """Lowest degree 0 and leading coefficient 1."""
        if self.is_zero():
            return self
        return LaurentPoly([c / self.lead() for c in self.coeffs], 0)

    def symmetric(self) -> "LaurentPoly":
        """Shift so the support is centered at 0 (requires even span) and p(1) > 0 when nonzero."""
        if self.is_zero():
            return self
        if self.span % 2:
            raise ValueError("odd span, no symmetric representative")
        p = LaurentPoly(self.coeffs, -(self.span // 2))
        v = p(1)
        return -p if v < 0 or (v == 0 and p.lead() < 0) else p

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    # polynomial division (both normalized to lowest degree 0) -------------
    def poly_divmod(self, other: "LaurentPoly"):
        """Division treating both as ordinary polynomials after shifting to degree 0."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        a = list(self.coeffs)
        b = list(other.coeffs)
        if len(a) < len(b):
            return LaurentPoly(), LaurentPoly(a, 0)
        q = [Fraction(0)] * (len(a) - len(b) + 1)
        inv = 1 / b[-1]
        for k in range(len(q) - 1, -1, -1):
            c = a[k + len(b) - 1] * inv
            q[k] = c
            if c:
                for j, bj in enumerate(b):
                    a[k + j] -= c * bj
        return LaurentPoly(q, 0), LaurentPoly(a[:len(b) - 1], 0)

    # formatting ------------------------------------------------------------
    def __repr__(self):
        return f"LaurentPoly({self.format()})"

    def format(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.high, self.low - 1, -1):
            c = self.coeffs[k - self.low]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> dict[str, str]:
        return {str(k): str(c) for k, c in sorted(self.to_dict().items())}

    @classmethod
    def from_json(cls, d: Mapping[str, object]) -> "LaurentPoly":
        return cls.from_dict({int(k): Fraction(str(v)) for k, v in d.items()})


def _lift(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.const(x)


T = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd in Q[t, t^-1]."""
    a, b = a.monic(), b.monic()
    while not b.is_zero():
        _, r = a.poly_divmod(b)
        a, b = b, r.monic()
    return a.monic()


class LaurentRing:
    """Ring interface for ``smith.smith_invariants`` over Q[t, t^-1]."""

    zero = ZERO
    one = ONE

    @staticmethod
    def is_zero(a) -> bool:
        return a.is_zero()

    @staticmethod
    def size(a) -> int:
        return a.span

    @staticmethod
    def divmod(a, b):
        # a = t^al a0, b = t^bl b0; divide a0 by b0 then restore the units
        q0, r0 = LaurentPoly(a.coeffs, 0).poly_divmod(LaurentPoly(b.coeffs, 0))
        return q0.shift(a.low - b.low), r0.shift(a.low)

    @staticmethod
    def normalize(a):
        return a.monic()

    @staticmethod
    def is_unit(a) -> bool:
        return len(a.coeffs) == 1


QT = LaurentRing()
