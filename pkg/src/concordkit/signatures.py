"""Levine-Tristram signatures and their integrals over the circle.

Points of the circle are parametrized by s = tan(theta/2):
omega = ((1 - s^2) + 2si) / (1 + s^2), so every certified computation stays
inside Q(i).  For s > 0,

    (1 - omega) V + (1 - conj omega) V^T = 2s/(1 + s^2) * (s (V + V^T) - i (V - V^T)),

and the signature is that of the bracket.  Jumps happen at unit-circle roots
of the symmetrized Alexander polynomial; writing it as a polynomial Q in
x = cos(theta) (Chebyshev substitution) they are isolated by Sturm
sequences.  Integrals use total measure 1 on the circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

import mpmath
from mpmath import iv

from . import rootiso as R
from .alexander import alexander_poly_from_seifert
from .errors import JumpPointError, UnreachableTarget
from .laurent import LaurentPoly
from .seifert import SeifertMatrix, connected_sum, torus_2, twist_knot

DEFAULT_TOL = Fraction(1, 10 ** 6)


# ---------------------------------------------------------------------------
# Gaussian rationals


class QI:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, o):
        return QI(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return QI(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self):
        return QI(self.re, -self.im)

    def inv(self):
        n = self.re * self.re + self.im * self.im
        return QI(self.re / n, -self.im / n)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"QI({self.re}, {self.im})"


def hermitian_inertia(M: Sequence[Sequence[QI]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a Hermitian matrix over Q(i).

    Congruence by LDL^* with a 1x1 pivot when some diagonal entry is nonzero
    and a 2x2 pivot [[0, a], [conj a, 0]] (inertia (1, 1)) otherwise.
    """
    A = [list(row) for row in M]
    active = list(range(len(A)))
    pos = neg = 0
    while active:
        i = next((k for k in active if A[k][k].re), None)
        if i is not None:
            d = A[i][i].re
            pos += d > 0
            neg += d < 0
            rest = [k for k in active if k != i]
            dinv = 1 / d
            for j in rest:
                if not A[j][i]:
                    continue
                f = A[j][i] * QI(dinv)
                for k in rest:
                    if A[i][k]:
                        A[j][k] = A[j][k] - f * A[i][k]
            active = rest
            continue
        pair = next(((i, j) for i in active for j in active if i < j and A[i][j]), None)
        if pair is None:
            break
        i, j = pair
        a = A[i][j]
        ia, iac = a.inv(), a.conj().inv()
        rest = [k for k in active if k not in (i, j)]
        pos += 1
        neg += 1
        for k in rest:
            left_i = A[k][i] * iac
            left_j = A[k][j] * ia
            if not left_i and not left_j:
                continue
            for l in rest:
                A[k][l] = A[k][l] - left_i * A[j][l] - left_j * A[i][l]
        active = rest
    return pos, neg, len(A) - pos - neg


# ---------------------------------------------------------------------------
# circle points


@dataclass(frozen=True)
class CirclePoint:
    """omega = ((1 - s^2) + 2si)/(1 + s^2); s = None encodes omega = -1."""

    s: Fraction | None

    def __post_init__(self):
        if self.s is not None:
            object.__setattr__(self, "s", Fraction(self.s))
            if self.s == 0:
                raise ValueError("s = 0 gives omega = 1")

    @classmethod
    def minus_one(cls) -> "CirclePoint":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "CirclePoint":
        t = text.strip()
        if t in ("-1", "minus1", "omega=-1"):
            return cls(None)
        if t.startswith("s="):
            t = t[2:]
        return cls(Fraction(t))

    @classmethod
    def near_cos(cls, x: Fraction, lo: Fraction, hi: Fraction) -> "CirclePoint":
        """A rational point with cos(theta) strictly inside (lo, hi), aiming at x."""
        den = 16
        while True:
            s = Fraction(math.sqrt(max((1 - float(x)) / (1 + float(x)), 1e-300))).limit_denominator(den)
            if s > 0:
                p = cls(s)
                if lo < p.cos < hi:
                    return p
            den *= 16
            if den > 10 ** 60:
                raise ValueError("could not find a rational circle point in the arc")

    @property
    def cos(self) -> Fraction:
        if self.s is None:
            return Fraction(-1)
        return (1 - self.s ** 2) / (1 + self.s ** 2)

    @property
    def sin(self) -> Fraction:
        if self.s is None:
            return Fraction(0)
        return 2 * self.s / (1 + self.s ** 2)

    def conjugate(self) -> "CirclePoint":
        return self if self.s is None else CirclePoint(-self.s)

    @property
    def theta(self) -> float:
        return math.pi if self.s is None else 2 * math.atan(float(self.s))

    def __str__(self):
        return "-1" if self.s is None else f"s={self.s}"


def _bracket(V: SeifertMatrix, p: CirclePoint) -> list[list[QI]]:
    n = V.size
    M = V.matrix
    if p.s is None:
        return [[QI(M[i][j] + M[j][i]) for j in range(n)] for i in range(n)]
    s = p.s
    return [[QI(s * (M[i][j] + M[j][i]), -(M[i][j] - M[j][i])) for j in range(n)] for i in range(n)]


def lt_signature_at(V: SeifertMatrix, omega: CirclePoint) -> int:
    """Signature of (1 - omega) V + (1 - conj omega) V^T, exactly."""
    if V.size == 0:
        return 0
    pos, neg, zero = hermitian_inertia(_bracket(V, omega))
    if zero:
        raise JumpPointError(f"omega ({omega}) is a jump point; evaluate on an arc instead")
    sign = 1 if omega.s is None or omega.s > 0 else -1
    return sign * (pos - neg)


# ---------------------------------------------------------------------------
# signature functions


@dataclass(frozen=True)
class Jump:
    lo: Fraction          # isolating interval for cos(theta)
    hi: Fraction
    cyclotomic: tuple | None = None   # (k, N) when theta = 2 pi k / N exactly

    @property
    def exact(self) -> bool:
        return self.cyclotomic is not None


@dataclass(frozen=True)
class SignatureFunction:
    """Values on the open arcs of the upper half circle, ordered by increasing theta."""

    jumps: tuple
    values: tuple
    samples: tuple
    cos_poly: tuple
    size: int = 0

    def value_at_theta(self, theta: float) -> int:
        """Piecewise value (numeric lookup; jump points themselves are not assigned)."""
        theta = abs(math.remainder(theta, 2 * math.pi))
        x = math.cos(theta)
        k = sum(1 for j in self.jumps if x < float(j.lo))
        return self.values[k]

    def to_csv(self) -> str:
        lines = ["kind,cos_lo,cos_hi,value"]
        top = Fraction(1)
        for k, v in enumerate(self.values):
            bottom = self.jumps[k].hi if k < len(self.jumps) else Fraction(-1)
            lines.append(f"arc,{bottom},{top},{v}")
            if k < len(self.jumps):
                j = self.jumps[k]
                lines.append(f"jump,{j.lo},{j.hi},")
                top = j.lo
        return "\n".join(lines) + "\n"

    def to_svg(self, width: int = 480, height: int = 200) -> str:
        bound = max([2] + [abs(v) for v in self.values])
        pad = 24

        def X(theta):
            return pad + (width - 2 * pad) * theta / (2 * math.pi)

        def Y(v):
            return height / 2 - (height / 2 - pad) * v / bound

        edges = [0.0] + [math.acos(float((j.lo + j.hi) / 2)) for j in self.jumps] + [math.pi]
        pts = []
        for k, v in enumerate(self.values):
            pts += [(edges[k], v), (edges[k + 1], v)]
        full = pts + [(2 * math.pi - t, v) for t, v in reversed(pts)]
        path = " ".join(f"{'M' if i == 0 else 'L'}{X(t):.2f},{Y(v):.2f}" for i, (t, v) in enumerate(full))
        return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">\n'
                f'<line x1="{pad}" y1="{Y(0):.2f}" x2="{width - pad}" y2="{Y(0):.2f}" stroke="#999"/>\n'
                f'<path d="{path}" fill="none" stroke="#1f4e9c" stroke-width="2"/>\n'
                f'<text x="{pad}" y="{height - 4}" font-size="11">theta from 0 to 2 pi; '
                f'values in [-{bound}, {bound}]</text>\n</svg>\n')

    def to_json(self) -> dict:
        return {"jumps": [{"cos_lo": str(j.lo), "cos_hi": str(j.hi),
                           "theta_over_2pi": (f"{j.cyclotomic[0]}/{j.cyclotomic[1]}" if j.cyclotomic else None)}
                          for j in self.jumps],
                "values": list(self.values)}


def _cyclotomic(N: int) -> LaurentPoly:
    return _cyclotomic_cached(N)


@lru_cache(maxsize=None)
def _cyclotomic_cached(N: int) -> LaurentPoly:
    p = LaurentPoly([Fraction(-1)] + [Fraction(0)] * (N - 1) + [Fraction(1)], 0)
    for d in range(1, N):
        if N % d == 0:
            p, r = p.poly_divmod(_cyclotomic_cached(d))
    return p


def _totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _cyclotomic_orders(delta: LaurentPoly) -> list[int]:
    """N with Phi_N dividing delta (delta normalized to an ordinary polynomial)."""
    p = delta.normalized()
    deg = p.high
    out = []
    N = 1
    limit = max(4 * deg * deg + 10, 12)
    while N <= limit:
        if _totient(N) <= deg:
            _, r = p.poly_divmod(_cyclotomic(N))
            if r.is_zero():
                out.append(N)
        N += 1
    return out


@lru_cache(maxsize=None)
def _cyclotomic_cos_poly(N: int) -> tuple:
    """Q with Q(cos x) = e^{-i phi x / 2} Phi_N(e^{ix}); its roots are cos(2 pi k / N), gcd(k, N) = 1."""
    p = _cyclotomic(N)
    half = (len(p.coeffs) - 1) // 2
    return tuple(R.symmetric_to_cos({i - half: c for i, c in enumerate(p.coeffs)}))


def _cyclotomic_jump(orders, sq, lo: Fraction, hi: Fraction):
    """(k, N) when the root of sq isolated in [lo, hi] is exactly cos(2 pi k / N)."""
    for N in orders:
        if N < 3:
            continue
        psi = list(_cyclotomic_cos_poly(N))
        # exact membership first, the enclosure only picks k among roots 2 pi / N apart
        hit = R.evaluate(psi, lo) == 0 if lo == hi else R.count_roots(psi, lo, hi) > 0
        if not hit:
            continue
        lo2, hi2 = (lo, hi) if lo == hi else R.refine(sq, (lo, hi), Fraction(1, 2 ** 40))
        a, b = _acos_bounds(lo2, hi2)
        pl, ph = pi_enclosure(160)
        ks = [k for k in range(1, N // 2 + 1)
              if math.gcd(k, N) == 1 and 2 * pl * k / N <= b and a <= 2 * ph * k / N]
        if len(ks) == 1:
            return ks[0], N
    return None


def _mpf_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    v = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -v if sign else v


def _raw_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    v = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -v if sign else v


def _iv_bounds(x) -> tuple[Fraction, Fraction]:
    """Exact endpoints of an mpmath interval (read from its raw mpf tuples)."""
    lo, hi = (+x)._mpi_
    return _raw_fraction(lo), _raw_fraction(hi)


def acos_enclosure(x: Fraction, prec: int = 64) -> tuple[Fraction, Fraction]:
    """Rational [u, w] containing arccos(x), checked by interval cosines: cos u >= x >= cos w."""
    x = Fraction(x)
    if x == 1:
        return Fraction(0), Fraction(0)
    with mpmath.workprec(prec + 20):
        v = _mpf_fraction(mpmath.acos(mpmath.mpf(x.numerator) / x.denominator))
    delta = Fraction(1, 2 ** prec)
    saved = iv.prec
    iv.prec = prec + 20
    try:
        while True:
            u, w = max(v - delta, Fraction(0)), v + delta
            cu = _iv_bounds(iv.cos(iv.mpf(u.numerator) / u.denominator))
            cw = _iv_bounds(iv.cos(iv.mpf(w.numerator) / w.denominator))
            if cu[0] >= x >= cw[1]:
                return u, w
            delta *= 16
    finally:
        iv.prec = saved


def pi_enclosure(prec: int = 64) -> tuple[Fraction, Fraction]:
    saved = iv.prec
    iv.prec = prec
    try:
        return _iv_bounds(iv.pi)
    finally:
        iv.prec = saved


def _acos_bounds(lo: Fraction, hi: Fraction, prec: int = 64) -> tuple[Fraction, Fraction]:
    """Enclosure of arccos over [lo, hi] (arccos is decreasing)."""
    return acos_enclosure(hi, prec)[0], acos_enclosure(lo, prec)[1]


@lru_cache(maxsize=512)
def _signature_function(matrix: tuple) -> SignatureFunction:
    V = SeifertMatrix(matrix)
    if V.size == 0:
        return SignatureFunction((), (0,), (), (), 0)
    delta = alexander_poly_from_seifert(V, "symmetric")
    coeffs = {delta.low + i: c for i, c in enumerate(delta.coeffs)}
    Q = R.trim(R.symmetric_to_cos(coeffs))
    sq = R.squarefree(Q) if R.degree(Q) >= 1 else Q
    roots = R.isolate_roots(Q, -1, 1) if R.degree(Q) >= 1 else []
    # order by increasing theta, i.e. decreasing cos
    roots = sorted(roots, key=lambda ab: -ab[0])
    # shrink until neighbouring intervals (and +-1) leave open arcs between them
    width = Fraction(1, 64)
    while True:
        roots = [R.refine(sq, ab, width) for ab in roots]
        edges = [Fraction(1)] + [x for ab in roots for x in (ab[1], ab[0])] + [Fraction(-1)]
        if all(edges[2 * k] > edges[2 * k + 1] for k in range(len(roots) + 1)):
            break
        width /= 8
    orders = _cyclotomic_orders(delta)
    jumps = []
    for lo, hi in roots:
        jumps.append(Jump(lo, hi, _cyclotomic_jump(orders, sq, lo, hi)))
    # sample one rational point per arc
    edges = [Fraction(1)] + [x for j in jumps for x in (j.hi, j.lo)] + [Fraction(-1)]
    samples, values = [], []
    for k in range(len(jumps) + 1):
        top, bottom = edges[2 * k], edges[2 * k + 1]
        p = CirclePoint.near_cos((top + bottom) / 2, bottom, top)
        samples.append(p)
        values.append(lt_signature_at(V, p))
    return SignatureFunction(tuple(jumps), tuple(values), tuple(samples), tuple(Q), V.size)


def signature_function(V: SeifertMatrix) -> SignatureFunction:
    return _signature_function(V.matrix)


# ---------------------------------------------------------------------------
# integrals


@dataclass(frozen=True)
class CertifiedReal:
    lo: Fraction
    hi: Fraction
    symbolic: str = ""

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other: "CertifiedReal") -> "CertifiedReal":
        sym = f"({self.symbolic}) + ({other.symbolic})" if self.symbolic and other.symbolic else ""
        return CertifiedReal(self.lo + other.lo, self.hi + other.hi, sym)

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def disjoint(self, other: "CertifiedReal") -> bool:
        return self.hi < other.lo or other.hi < self.lo

    def __float__(self):
        return float(self.mid)

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "symbolic": self.symbolic}

    def format(self) -> str:
        if self.exact:
            return f"{self.lo} (exact)"
        return f"[{self.lo}, {self.hi}] ~ {float(self.mid):.9f}; {self.symbolic}"


def _poly_text(p: Sequence[Fraction]) -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        coef = str(c) if (k == 0 or abs(c) != 1) else ("-" if c < 0 else "")
        sep = "*" if mono and coef not in ("", "-") else ""
        terms.append(f"{coef}{sep}{mono}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def signature_integral(V: SeifertMatrix, tol=DEFAULT_TOL) -> CertifiedReal:
    """Normalized integral of the signature function, with total width <= tol.

    With arcs theta_0 = 0 < theta_1 < ... < theta_m < theta_{m+1} = pi and
    values v_0, ..., v_m, the integral is
    v_m + sum_j (v_{j-1} - v_j) arccos(x_j) / pi.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    sf = signature_function(V)
    vals = sf.values
    exact = Fraction(vals[-1])
    parts = []
    for j, jump in enumerate(sf.jumps, 1):
        c = vals[j - 1] - vals[j]
        if not c:
            continue
        if jump.cyclotomic:
            k, N = jump.cyclotomic
            exact += c * Fraction(2 * k, N)
        else:
            parts.append((c, jump))
    names = []
    for i, (c, jump) in enumerate(parts, 1):
        names.append(f"{c}*acos(r{i})/pi")
    sym_terms = [str(exact)] + names
    sq = R.squarefree(sf.cos_poly) if len(sf.cos_poly) > 1 else list(sf.cos_poly)
    where = [f"r{i} = root of {_poly_text(sq)} in [{j.lo}, {j.hi}]" for i, (_, j) in enumerate(parts, 1)]
    symbolic = " + ".join(sym_terms).replace("+ -", "- ")
    if where:
        symbolic += "; " + "; ".join(where)
    if not parts:
        return CertifiedReal(exact, exact, symbolic)
    weight = sum(abs(c) for c, _ in parts)
    # d arccos / dx is unbounded near +-1, so refine adaptively
    width = tol / (4 * weight)
    intervals = [(j.lo, j.hi) for _, j in parts]
    prec = max(64, int(-math.log2(float(tol))) + 40)
    pl, ph = pi_enclosure(prec)
    while True:
        lo = hi = exact
        for (c, _), (a, b) in zip(parts, intervals):
            amin, amax = _acos_bounds(a, b, prec)
            if c > 0:
                lo += c * amin / ph
                hi += c * amax / pl
            else:
                lo += c * amax / pl
                hi += c * amin / ph
        if hi - lo <= tol:
            return CertifiedReal(lo, hi, symbolic)
        width /= 16
        intervals = [R.refine(sq, ab, width) for ab in intervals]


def integral_sum(matrices: Sequence[SeifertMatrix], tol=DEFAULT_TOL) -> CertifiedReal:
    """Integral of the connected sum of several Seifert matrices."""
    out = SeifertMatrix(())
    for V in matrices:
        out = connected_sum(out, V)
    return signature_integral(out, tol)


# ---------------------------------------------------------------------------
# dense families


@dataclass(frozen=True)
class Generator:
    label: str
    matrix: SeifertMatrix
    integral: CertifiedReal


def generator_family(max_twist: int = 60, torus: Sequence[int] = (1, 2), tol=DEFAULT_TOL) -> list[Generator]:
    """Twist knots [[-1, 1], [0, m]] (m < 0), (2, 2k+1) torus knots, and mirrors."""
    gens = []
    for m in range(1, max_twist + 1):
        V = twist_knot(-m)
        gens.append(Generator(f"twist({-m})", V, signature_integral(V, tol)))
    for k in torus:
        V = torus_2(k)
        gens.append(Generator(f"T(2,{2 * k + 1})", V, signature_integral(V, tol)))
    mirrors = [Generator(f"-{g.label}", g.matrix.mirror(),
                         CertifiedReal(-g.integral.hi, -g.integral.lo,
                                       f"-({g.integral.symbolic})")) for g in gens]
    return gens + mirrors


@dataclass(frozen=True)
class FamilyMember:
    labels: tuple
    matrix: SeifertMatrix
    integral: CertifiedReal
    target: float | None = None

    def to_json(self) -> dict:
        return {"summands": list(self.labels), "matrix": [list(r) for r in self.matrix.matrix],
                "integral": self.integral.to_json(), "target": self.target}


def _search_space(gens: Sequence[Generator], max_summands: int):
    """All multisets of at most max_summands generators, with float integral estimates."""
    import numpy as np
    combos = [()]
    for k in range(1, max_summands + 1):
        combos.extend(combinations_with_replacement(range(len(gens)), k))
    mids = [float(g.integral.mid) for g in gens]
    values = np.array([sum(mids[i] for i in c) for c in combos])
    sizes = np.array([len(c) for c in combos])
    return combos, values, sizes


def _closest(space, t: float, radius: float):
    import numpy as np
    combos, values, sizes = space
    dist = np.abs(values - t)
    ok = np.nonzero(dist < radius)[0]
    if not len(ok):
        return None
    best = min(ok, key=lambda i: (sizes[i], dist[i]))
    return combos[best]


def _member(gens, combo, tol, target=None) -> FamilyMember:
    mats = [gens[i].matrix for i in combo]
    out = SeifertMatrix(())
    for M in mats:
        out = connected_sum(out, M)
    labels = tuple(gens[i].label for i in combo) or ("unknot",)
    return FamilyMember(labels, SeifertMatrix(out.matrix, " # ".join(labels)),
                        signature_integral(out, tol), target)


def dense_family(targets: Sequence[float] | None = None, eps: float = 0.1, value_range=(-2, 2),
                 max_summands: int = 3, tol=DEFAULT_TOL, max_size: int = 200) -> list[FamilyMember]:
    """Connected sums of generators whose integrals approximate targets or fill a range.

    With ``targets`` each target gets a member within eps (UnreachableTarget
    otherwise).  Without, the members' integrals form an eps-dense subset of
    the open interval ``value_range``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    gens = generator_family(tol=tol)
    space = _search_space(gens, max_summands)
    eps_f = Fraction(eps)

    if targets is not None:
        out = []
        for t in targets:
            combo = _closest(space, float(t), float(eps))
            if combo is None:
                raise UnreachableTarget(f"no sum of at most {max_summands} generators within {eps} of {t}")
            member = _member(gens, combo, tol, float(t))
            if abs(member.integral.mid - Fraction(t)) >= eps_f:
                raise UnreachableTarget(f"certified value for {t} misses by more than {eps}")
            out.append(member)
        return out
    lo, hi = (Fraction(x) for x in value_range)
    # range points eps apart, each met within eps/2
    chosen: dict[tuple, FamilyMember] = {}
    t = lo + eps_f / 2
    while t < hi:
        combo = _closest(space, float(t), float(eps_f / 2) * 0.999)
        if combo is None:
            raise UnreachableTarget(f"range point {float(t)} not reachable within {eps / 2}")
        if combo not in chosen:
            chosen[combo] = _member(gens, combo, tol, float(t))
        t += eps_f
    fam = sorted(chosen.values(), key=lambda m: m.integral.mid)
    if len(fam) > max_size:
        raise UnreachableTarget(f"family would need {len(fam)} members (> {max_size})")
    return fam


def density_gaps(values: Sequence[CertifiedReal], value_range=(-2, 2)) -> Fraction:
    """Largest distance from a point of the range to the nearest certified value (conservative)."""
    lo, hi = (Fraction(x) for x in value_range)
    iv_sorted = sorted(values, key=lambda c: c.lo)
    inside = [c for c in iv_sorted if c.hi > lo and c.lo < hi]
    if not inside:
        return hi - lo
    worst = max(inside[0].hi - lo, hi - inside[-1].lo)
    for a, b in zip(inside, inside[1:]):
        worst = max(worst, (b.hi - a.lo) / 2)
    return worst


def is_eps_dense(values: Sequence[CertifiedReal], eps, value_range=(-2, 2)) -> bool:
    return density_gaps(values, value_range) <= Fraction(eps)


# ---------------------------------------------------------------------------
# oracles


def monte_carlo_integral(V: SeifertMatrix, n: int = 100_000, seed: int = 0, use_numba: bool | None = None,
                         stratified: bool = True) -> float:
    """Floating-point sampling estimate of the normalized integral (an independent oracle).

    Stratified sampling puts one uniform point in each of n equal arcs, so the
    error is O(jumps / n) instead of the O(1 / sqrt(n)) of plain sampling.
    """
    import numpy as np

    from ._kernels import lt_signature_samples
    if V.size == 0:
        return 0.0
    rng = np.random.default_rng(seed)
    u = rng.uniform(0.0, 1.0, n)
    if stratified:
        u = (np.arange(n) + u) / n
    return float(lt_signature_samples([list(r) for r in V.matrix], 2 * np.pi * u, use_numba).mean())


def random_seifert(rng, size: int, entry: int = 3) -> SeifertMatrix:
    """Random symmetric S plus the standard block form, conjugated by a unimodular matrix."""
    n = 2 * (size // 2)
    S = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            S[i][j] = S[j][i] = int(rng.integers(-entry, entry + 1))
    for k in range(0, n, 2):
        S[k][k + 1] += 1
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(n):
        i, j = (int(x) for x in rng.choice(n, 2, replace=False)) if n > 1 else (0, 0)
        if i != j:
            c = int(rng.integers(-1, 2))
            for r in range(n):
                P[r][j] += c * P[r][i]
    PT = [list(r) for r in zip(*P)]
    M = [[sum(PT[i][k] * S[k][l] * P[l][j] for k in range(n) for l in range(n)) for j in range(n)]
         for i in range(n)]
    return SeifertMatrix(tuple(tuple(r) for r in M))
