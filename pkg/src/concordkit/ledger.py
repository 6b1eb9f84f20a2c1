"""Rho-invariant bookkeeping for J-surgery and infection.

Only differences rho_i(M(K(eta, L))) - rho_i(M(K)) are produced: they vanish
for i <= n and equal the signature integral of L at i = n + 1 whenever
eta lies in the n-th term of the rational series of gamma_P but not in the
(n+1)-st.  Nothing is claimed beyond n + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import words as W
from .errors import LedgerError, MorphismError, NoCertificate, NotInKernelError
from .groups import (EpiOverG, MorphismOverG, eliminate_generators, identity_epi, j_surgery_group,
                     pushout)
from .presentation import GroupPresentation
from .seifert import SeifertMatrix
from .series import (CommutatorCertificate, SeriesMembership, Status, UserEvidence,
                     gamma_membership, rational_series_membership)
from .signatures import DEFAULT_TOL, CertifiedReal, signature_integral

RULE = "infection rule: rho_i difference is 0 for i <= n and the signature integral of L at i = n+1"
TAU_RULE = "tau_i image: trivial for i <= n, infinite cyclic (generated by the meridian of L) at i = n+1"


@dataclass(frozen=True)
class KnotData:
    exterior: GroupPresentation
    gamma: EpiOverG
    label: str
    infections: tuple = ()  # ((eta, SeifertMatrix), ...) applied so far
    symbolic: bool = False  # group not assembled; only Seifert data carried
    flags: tuple = ()
    added: tuple = ()  # generator names introduced by infections

    def __post_init__(self):
        E = self.exterior
        if E.meridian is None or E.longitude is None:
            raise LedgerError(f"{E.name} needs marked meridian and longitude")
        if self.gamma.source != E:
            raise LedgerError("gamma does not start at the exterior")

    def meridian_check(self, c: int = 4) -> SeriesMembership:
        """The meridian must die in G (it bounds a disk in the ambient manifold)."""
        return gamma_membership(self.gamma, self.exterior.meridian, c)

    def validated(self, c: int = 4) -> "KnotData":
        m = self.meridian_check(c)
        if m.status is Status.NOT_IN:
            raise LedgerError(f"meridian of {self.label} does not map to the identity in G")
        return self

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "exterior": self.exterior.to_json(),
            "gamma": self.gamma.to_json(),
            "infections": [{"eta": self.exterior.fmt(e), "L": V.to_json()} for e, V in self.infections],
            "symbolic": self.symbolic,
            "flags": list(self.flags),
        }


# ---------------------------------------------------------------------------
# J-surgery


@dataclass(frozen=True)
class SurgeryGroup:
    presentation: GroupPresentation
    gamma: EpiOverG  # P -> G
    gamma_amalgam: EpiOverG  # P -> G *_Z G
    fold: EpiOverG  # G *_Z G -> G
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __iter__(self):
        return iter((self.presentation, self.gamma))


def _amalgam_target(K: KnotData, J: KnotData, c: int):
    """G *_Z G with Z generated by a letter z sent to gamma(lambda)."""
    G = K.gamma.target
    lamK = K.gamma.apply(K.exterior.longitude)
    lamJ = J.gamma.apply(J.exterior.longitude)
    Z = GroupPresentation("Z", ("z",))
    gG = identity_epi(G)
    gZ = EpiOverG(Z, G, (lamK,))
    f1 = MorphismOverG(gZ, gG, (lamK,))
    f2 = MorphismOverG(gZ, gG, (lamJ,))
    return pushout(f1, f2, name=f"{G.name}*Z{G.name}", c=c)


def build_MK(K: KnotData, J: KnotData, orientation: str = "reversed", c: int = 4) -> SurgeryGroup:
    """pi_1 of E_K glued to -E_J, with its maps to G *_Z G and to G."""
    if K.gamma.target != J.gamma.target:
        raise MorphismError("mismatched coefficient targets")
    po = j_surgery_group(K.exterior, J.exterior, K.gamma, J.gamma, orientation,
                         name=f"M({K.label},{J.label})", c=c)
    P = po.presentation
    am = _amalgam_target(K, J, c)
    G = K.gamma.target
    imgs = K.gamma.images + tuple(W.shift(w, G.ngens) for w in J.gamma.images)
    to_amalgam = EpiOverG(P, am.presentation, imgs)
    meta = dict(po.metadata)
    meta.update({"K": K.label, "J": J.label, "amalgam": am.presentation.name,
                 "lambda_image": G.fmt(K.gamma.apply(K.exterior.longitude))})
    return SurgeryGroup(P, po.gamma, to_amalgam, am.gamma, meta)


# ---------------------------------------------------------------------------
# infection


def infect(K: KnotData, eta: W.Word, L: SeifertMatrix, L_group: GroupPresentation | None = None,
           label: str | None = None, c: int = 4) -> KnotData:
    """K(eta, L): E_K minus a neighbourhood of eta, glued to the exterior of L.

    E_K - N(eta) is modelled as E_K * <m> with m the meridian of eta; the
    gluing adds the two relators mu_L = eta^-1 and lambda_L = m.
    Without L_group only the Seifert matrix is recorded.
    """
    E = K.exterior
    eta = W.free_reduce(eta)
    for g, _ in eta:
        if not 0 <= g < E.ngens:
            raise LedgerError("eta uses a generator outside the exterior of K")
    name = label or f"{K.label}({E.fmt(eta) or '1'},{L.name or 'L'})"
    flags = K.flags
    if not eta:
        flags = flags + ("trivial eta: infection is the identity",)
        return KnotData(E, K.gamma, name, K.infections + ((eta, L),), K.symbolic, flags, K.added)
    if gamma_membership(K.gamma, eta, c).status is Status.NOT_IN:
        raise LedgerError(f"eta = {E.fmt(eta)} does not map to the identity in G")
    if L_group is None:
        return KnotData(E, K.gamma, name, K.infections + ((eta, L),), True,
                        flags + ("symbolic: exterior group not assembled",), K.added)
    if L_group.meridian is None or L_group.longitude is None:
        raise LedgerError(f"{L_group.name} needs marked meridian and longitude")
    base = E.generators + (f"m_{len(K.infections)}",)
    taken = set(base)
    lnames = []
    for g in L_group.generators:
        nm = g
        while nm in taken:
            nm = nm + "'"
        taken.add(nm)
        lnames.append(nm)
    m_idx = E.ngens
    off = E.ngens + 1
    rels = list(E.relators) + [W.shift(r, off) for r in L_group.relators]
    rels.append(W.mul(W.shift(L_group.meridian, off), eta))
    rels.append(W.mul(W.shift(L_group.longitude, off), W.gen(m_idx, -1)))
    X = GroupPresentation(name, base + tuple(lnames), tuple(rels), E.marked)
    gamma = EpiOverG(X, K.gamma.target, K.gamma.images + (W.EMPTY,) * (1 + L_group.ngens))
    added = K.added + tuple(X.generators[E.ngens:])
    return KnotData(X, gamma, name, K.infections + ((eta, L),), K.symbolic, flags, added)


def collapse(K: KnotData) -> KnotData:
    """Tietze-eliminate the bookkeeping generators, keeping those of the original exterior."""
    keep = [g for g in K.exterior.generators if g not in K.added]
    X, subst = eliminate_generators(K.exterior, keep=keep)
    images = []
    for g in X.generators:
        images.append(K.gamma.images[K.exterior.index(g)])
    added = tuple(g for g in X.generators if g in K.added)
    return KnotData(X, EpiOverG(X, K.gamma.target, tuple(images)), K.label, K.infections,
                    K.symbolic, K.flags, added)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class DepthCertificate:
    eta: tuple
    n: int
    in_evidence: SeriesMembership
    notin_evidence: SeriesMembership
    series_kind: str = "rational"
    group: str = ""

    def __post_init__(self):
        if self.in_evidence.status is not Status.IN or self.in_evidence.depth != self.n:
            raise NoCertificate(f"evidence at depth {self.n} is not In")
        if self.notin_evidence.status is not Status.NOT_IN or self.notin_evidence.depth != self.n + 1:
            raise NoCertificate(f"evidence at depth {self.n + 1} is not NotIn")
        if self.series_kind not in ("rational", "local-user-supplied"):
            raise NoCertificate(f"unknown series kind {self.series_kind!r}")

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        return {
            "eta": W.format_word(self.eta, names) if names else list(map(list, self.eta)),
            "depth": self.n,
            "series": self.series_kind,
            "group": self.group,
            "in": self.in_evidence.to_json(names),
            "not_in": self.notin_evidence.to_json(names),
        }


def certify_eta(gamma: EpiOverG, eta: W.Word, n: int,
                in_evidence: CommutatorCertificate | UserEvidence | None = None,
                notin_evidence: UserEvidence | None = None, c: int = 4) -> DepthCertificate:
    """eta in Gamma^(n) and not in Gamma^(n+1), or NoCertificate saying what failed."""
    if n < 0:
        raise ValueError("depth must be nonnegative")
    eta = W.free_reduce(eta)
    try:
        m_in = rational_series_membership(gamma, eta, n, in_evidence, c=c)
    except NotInKernelError as e:
        raise NoCertificate(f"depth {n}: {e}") from None
    if m_in.status is not Status.IN:
        raise NoCertificate(f"depth {n} membership is {m_in.status}: {m_in.certificate}")
    m_out = rational_series_membership(gamma, eta, n + 1, notin_evidence, c=c)
    if m_out.status is not Status.NOT_IN:
        raise NoCertificate(f"depth {n + 1} membership is {m_out.status}: {m_out.certificate}")
    user = isinstance(in_evidence, UserEvidence) or isinstance(notin_evidence, UserEvidence)
    return DepthCertificate(eta, n, m_in, m_out, "local-user-supplied" if user else "rational",
                            gamma.source.name)


# ---------------------------------------------------------------------------
# rho differences and tau


@dataclass(frozen=True)
class RhoLedgerEntry:
    label: str
    index: int
    value: CertifiedReal | Fraction  # Fraction(0) for the exact vanishing branch
    provenance: str = RULE

    @property
    def exact_zero(self) -> bool:
        return isinstance(self.value, Fraction) and self.value == 0

    def interval(self) -> CertifiedReal:
        if isinstance(self.value, Fraction):
            return CertifiedReal(self.value, self.value, str(self.value))
        return self.value

    def to_json(self) -> dict:
        v = {"exact": str(self.value)} if isinstance(self.value, Fraction) else self.value.to_json()
        return {"label": self.label, "index": self.index, "value": v, "provenance": self.provenance}


def rho_differences(cert: DepthCertificate, L: SeifertMatrix, i_max: int, label: str = "",
                    tol=DEFAULT_TOL) -> list[RhoLedgerEntry]:
    if i_max < 0:
        raise ValueError("index must be nonnegative")
    if i_max > cert.n + 1:
        raise LedgerError(f"index {i_max} exceeds n+1 = {cert.n + 1}; no rule is available there")
    out = [RhoLedgerEntry(label, i, Fraction(0)) for i in range(min(i_max, cert.n) + 1)]
    if i_max == cert.n + 1:
        out.append(RhoLedgerEntry(label, i_max, signature_integral(L, tol)))
    return out


class TauImage(Enum):
    TRIVIAL = "Trivial"
    INFINITE_CYCLIC = "InfiniteCyclic"

    def __str__(self):
        return self.value


def tau_image(cert: DepthCertificate, i: int) -> TauImage:
    if i < 0:
        raise ValueError("index must be nonnegative")
    if i > cert.n + 1:
        raise LedgerError(f"index {i} exceeds n+1 = {cert.n + 1}")
    return TauImage.TRIVIAL if i <= cert.n else TauImage.INFINITE_CYCLIC


def tau_table(cert: DepthCertificate) -> list[tuple[int, TauImage]]:
    return [(i, tau_image(cert, i)) for i in range(cert.n + 2)]


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class FamilyMember:
    certificate: DepthCertificate | None  # None: eta was not certified
    L: SeifertMatrix
    label: str = ""


@dataclass
class Report:
    base: str
    depth: int | None
    rows: list
    verdicts: list
    notes: list

    def to_json(self) -> dict:
        return {"base": self.base, "depth": self.depth, "family": self.rows,
                "verdicts": self.verdicts, "notes": self.notes}

    def to_text(self) -> str:
        lines = [f"base: {self.base}   depth n = {self.depth}", ""]
        w = max([len(r["label"]) for r in self.rows] + [5])
        lines.append(f"{'label':<{w}}  rho_(n+1) difference")
        for r in self.rows:
            rho = r["rho"][-1]["value"] if r["rho"] else None
            if rho is None:
                txt = "Unknown"
            elif "exact" in rho:
                txt = rho["exact"] + " (exact)"
            elif rho["lo"] == rho["hi"]:
                txt = rho["lo"] + " (exact)"
            else:
                txt = f"[{rho['lo']}, {rho['hi']}]  ~ {float((Fraction(rho['lo']) + Fraction(rho['hi'])) / 2):.9f}"
            lines.append(f"{r['label']:<{w}}  {txt}")
        lines.append("")
        for v in self.verdicts:
            gap = f"  gap >= {v['gap']}" if v["gap"] is not None else ""
            lines.append(f"{v['a']} vs {v['b']}: {v['status']}{gap}")
        for note in self.notes:
            lines.append("note: " + note)
        return "\n".join(lines) + "\n"


def _gap(a: CertifiedReal, b: CertifiedReal) -> Fraction:
    return max(a.lo - b.hi, b.lo - a.hi)


def distinguish_report(base: KnotData, family: Sequence[FamilyMember | tuple],
                       eta_bounds_disk: bool = False, base_is_J: bool = False,
                       tol=DEFAULT_TOL) -> Report:
    members = [m if isinstance(m, FamilyMember) else FamilyMember(*m) for m in family]
    depths = {m.certificate.n for m in members if m.certificate is not None}
    if len(depths) > 1:
        raise LedgerError(f"certificates have different depths {sorted(depths)}")
    n = depths.pop() if depths else None
    names = base.exterior.generators
    rows, values = [], []
    for m in members:
        cert = m.certificate
        eta_txt = base.exterior.fmt(cert.eta) if cert is not None else None
        label = m.label or f"{base.label}({eta_txt},{m.L.name or 'L'})"
        if cert is None:
            rows.append({"label": label, "eta": None, "depth": None, "L": m.L.to_json(), "rho": [],
                         "status": "Unknown"})
            values.append(None)
            continue
        entries = rho_differences(cert, m.L, cert.n + 1, label, tol)
        row = {"label": label, "eta": W.format_word(cert.eta, names), "depth": cert.n,
               "L": m.L.to_json(), "rho": [e.to_json() for e in entries], "status": "certified"}
        if base_is_J and eta_bounds_disk:
            row["j_characteristic"] = "by construction (eta bounds a disk, base is J; user-asserted)"
        rows.append(row)
        values.append(entries[-1].interval())
    verdicts = []
    for (i, a), (j, b) in combinations(enumerate(values), 2):
        la, lb = rows[i]["label"], rows[j]["label"]
        if a is None or b is None:
            verdicts.append({"a": la, "b": lb, "status": "no verdict (Unknown)", "gap": None})
        elif a.disjoint(b):
            verdicts.append({"a": la, "b": lb, "status": "not concordant", "gap": str(_gap(a, b))})
        else:
            verdicts.append({"a": la, "b": lb, "status": "no verdict (intervals overlap)", "gap": None})
    notes = []
    if not eta_bounds_disk:
        notes.append("eta bounding a disk in M is not asserted; geometric hypotheses are the user's responsibility")
    if base.symbolic:
        notes.append("base exterior is symbolic")
    return Report(base.label, n, rows, verdicts, notes)
