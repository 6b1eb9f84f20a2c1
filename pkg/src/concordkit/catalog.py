"""Small stock of presentations and coefficient systems used by examples and tests."""

from __future__ import annotations

import re

from . import seifert as S
from . import words as W
from .errors import MorphismError, SeifertError
from .groups import EpiOverG
from .presentation import GroupPresentation, free_group, parse_presentation
from .series import PtfaCertificate
from .smith import integer_kernel


def trivial_group(name: str = "1") -> GroupPresentation:
    return GroupPresentation(name, ())


def unknot_exterior(name: str = "U") -> GroupPresentation:
    """Z generated by the meridian; the longitude is trivial."""
    return GroupPresentation(name, ("m",), (), (("meridian", W.gen(0)), ("longitude", W.EMPTY)))


def trefoil_exterior(name: str = "T") -> GroupPresentation:
    """<u, v | u^2 = v^3> with meridian v^-1 u and longitude u^2 (v^-1 u)^-6."""
    return parse_presentation(
        f"group {name}\n"
        "gens u v\n"
        "rel u^2 v^-3\n"
        "mark meridian v^-1 u\n"
        "mark longitude u^2 (v^-1 u)^-6\n"
    )


def to_trivial(A: GroupPresentation) -> EpiOverG:
    return EpiOverG(A, trivial_group(), tuple(W.EMPTY for _ in range(A.ngens)))


def knot_to_z(A: GroupPresentation, target_name: str = "Z") -> EpiOverG:
    """The abelianization A -> Z of a knot group, oriented so the meridian goes to t."""
    M = [W.exponent_sums(r, A.ngens) for r in A.relators]
    basis = integer_kernel(M, A.ngens) if M else [[1 if i == j else 0 for i in range(A.ngens)]
                                                   for j in range(A.ngens)]
    if len(basis) != 1:
        raise MorphismError(f"{A.name} does not have first Betti number 1")
    exps = basis[0]
    if A.meridian is not None:
        m = sum(exps[g] * e for g, e in A.meridian)
        if abs(m) != 1:
            raise MorphismError(f"the meridian of {A.name} does not generate H_1")
        exps = [m * e for e in exps]
    Z = free_group(target_name, ("t",))
    return EpiOverG(A, Z, tuple(W.power(W.gen(0), e) for e in exps))


def heisenberg_quotient(name: str = "H") -> GroupPresentation:
    """F/F_3 on x, y: the fundamental group of the Heisenberg manifold."""
    return parse_presentation(f"group {name}\ngens x y\nrel [[x,y],x]\nrel [[x,y],y]\n")


def fiber_exterior(name: str = "FxZ") -> GroupPresentation:
    """F(x,y) x Z: exterior of a circle fibre in the Heisenberg manifold.

    The meridian of the fibre is [x,y] t^-1 and the longitude is t.
    """
    return parse_presentation(
        f"group {name}\n"
        "gens x y t\n"
        "rel [x,t]\n"
        "rel [y,t]\n"
        "mark meridian [x,y] t^-1\n"
        "mark longitude t\n"
    )


def heisenberg_gamma(A: GroupPresentation | None = None, G: GroupPresentation | None = None) -> EpiOverG:
    """F x Z -> F/F_3 with x, y fixed and t -> [x,y]."""
    A = fiber_exterior() if A is None else A
    G = heisenberg_quotient() if G is None else G
    return EpiOverG.from_text(A, G, {"x": "x", "y": "y", "t": "[x,y]"})


def heisenberg_ptfa() -> PtfaCertificate:
    """F/F_3 -> Z^2 -> 1."""
    H = heisenberg_quotient()
    Z2 = parse_presentation("group Z2\ngens a b\nrel [a,b]\n")
    return PtfaCertificate(H, (
        EpiOverG.from_text(H, Z2, {"x": "a", "y": "b"}),
        EpiOverG(Z2, trivial_group(), (W.EMPTY, W.EMPTY)),
    ))


_NAMED = {
    "unknot": lambda: S.UNKNOT,
    "trefoil": lambda: S.TREFOIL,
    "figure-eight": lambda: S.FIGURE_EIGHT,
    "granny": lambda: S.GRANNY,
    "square": lambda: S.SQUARE,
}


def seifert_named(text: str) -> S.SeifertMatrix:
    """unknot, trefoil, figure-eight, granny, square, twist(m), T(2,k).

    A leading '-' or a wrapping mirror(...) takes the mirror image.
    """
    t = text.strip().replace(" ", "")
    if t.startswith("-"):
        return seifert_named(t[1:]).mirror()
    m = re.fullmatch(r"mirror\((.+)\)", t)
    if m:
        return seifert_named(m.group(1)).mirror()
    if t in _NAMED:
        return _NAMED[t]()
    m = re.fullmatch(r"twist\((-?\d+)\)", t)
    if m:
        return S.twist_knot(int(m.group(1)))
    m = re.fullmatch(r"T\(2,(\d+)\)", t)
    if m and int(m.group(1)) % 2 == 1 and int(m.group(1)) >= 3:
        return S.torus_2((int(m.group(1)) - 1) // 2)
    raise SeifertError(f"unknown knot name {text!r}")
