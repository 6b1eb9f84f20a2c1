"""ck: command-line front end.

Exit status is 0 on success, 1 on a domain error (bad file, failed check,
refused query) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .alexander import alexander_module, alexander_poly_from_seifert, alexander_polynomial, fox_jacobian
from .catalog import knot_to_z, seifert_named
from .errors import ConcordError, PresentationError
from .groups import MorphismOverG, abelianization, j_surgery_group, pushout
from .ledger import (FamilyMember, KnotData, build_MK, certify_eta, distinguish_report, infect,
                     rho_differences, tau_table)
from .localization import (PiPerfectCandidate, RewritingTerm, omega_check, parse_system,
                           pi_perfect_check, pi_perfect_to_system, solutions_to_pi_perfect,
                           solve_nilpotent, validate_system_check)
from .nilpotent import MAX_CLASS, nilpotent_quotient
from .presentation import Document, parse_document, parse_word
from .seifert import SeifertMatrix
from .series import (CommutatorCertificate, PtfaCertificate, Status, UserEvidence, ptfa_report,
                     rational_series_membership)
from .signatures import (CirclePoint, dense_family, integral_sum, is_eps_dense, lt_signature_at,
                         signature_function, signature_integral)
from .wordproblem import Budget

GRP_GRAMMAR = """\
.grp grammar (one directive per line, '#' starts a comment):
  group NAME
  gens g1 g2 ...
  rel WORD                          repeatable
  mark meridian WORD
  mark longitude WORD
  epi TARGET : g1 -> WORD, g2 -> WORD, ...   coefficient map onto TARGET ('1' = trivial group)
  map TARGET : g1 -> WORD, ...               homomorphism into TARGET
WORD: juxtaposed terms g, g^k, (WORD)^k, [WORD,WORD], 1;  [a,b] = a^-1 b^-1 a b
"""

SEIFERT_GRAMMAR = """\
Seifert input: a .json file holding {"name": ..., "matrix": [[...], ...]} or a bare
matrix, or one of the names unknot, trefoil, figure-eight, granny, square,
twist(m), T(2,q).  mirror(NAME) takes the mirror image; so does a leading '-'
after a '--' separator (ck sig sum -- trefoil -trefoil).
"""

SYSTEM_GRAMMAR = """\
.txt equation system (statements separated by newlines or ';'):
  var x1 x2 ...
  eq x1 = WORD                      WORD over the group generators and the variables
"""

WITNESS_GRAMMAR = """\
witness .json for Pi-perfect candidates:
  {"generators": ["WORD", ...],
   "rewriting": [[{"conj": "WORD", "index": j, "other": "WORD", "sign": 1}, ...], ...]}
rewriting[i] expresses generator i as a product of conj [g_j, other]^sign conj^-1.
"""

LEDGER_GRAMMAR = """\
ledger .json:
  {"groups": "file.grp",            path relative to the ledger file
   "base": "GROUP", "label": "K",   base exterior (marked meridian, longitude, epi to G)
   "J": "GROUP",                    optional: certify eta in the J-surgery group M(K)
   "eta": "WORD", "depth": n,
   "in_certificate": ["U", "V"],    optional commutator certificate for depth n
   "user_notin": "note",            optional user evidence for NotIn at depth n+1
   "eta_bounds_disk": false, "base_is_J": false,
   "family": [{"L": SEIFERT, "L_group": "GROUP", "label": "..."}, ...]}
"""


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# io helpers


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ConcordError(f"cannot read {path}: {exc.strerror}") from None


def _doc(path: str) -> Document:
    return parse_document(_read(path))


def _gamma(doc: Document, name: str | None, fallback_z: bool = False):
    G = doc.group(name)
    if G.name in doc.epi_specs:
        return doc.epi(G.name)
    if fallback_z:
        return knot_to_z(G)
    raise PresentationError(f"group {G.name!r} declares no epi")


def _seifert(text: str) -> SeifertMatrix:
    if os.path.exists(text):
        try:
            return SeifertMatrix.from_json(json.loads(_read(text)))
        except json.JSONDecodeError as exc:
            raise ConcordError(f"{text}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if text.endswith(".json"):
        raise ConcordError(f"cannot read {text}: no such file")
    return seifert_named(text)


def _seifert_data(data) -> SeifertMatrix:
    if isinstance(data, str):
        return seifert_named(data)
    return SeifertMatrix.from_json(data)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(args, obj, text: str | None = None):
    fmt = args.format or "json"
    if fmt == "json" or text is None and fmt == "text":
        out = _json(obj)
    elif fmt == "text":
        out = text if text.endswith("\n") else text + "\n"
    else:
        raise UsageError(f"--format {fmt} is not available for this command")
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _tol(args) -> Fraction:
    try:
        t = Fraction(args.tol)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad tolerance {args.tol!r}") from None
    if t <= 0:
        raise UsageError("tolerance must be positive")
    return t


def _budget(args) -> Budget:
    return Budget(max_nodes=args.budget) if args.budget else Budget()


# ---------------------------------------------------------------------------
# group


def cmd_group_parse(args):
    G = _doc(args.file).group(args.group)
    _emit(args, G.to_json(), G.to_text())


def cmd_group_abelianize(args):
    G = _doc(args.file).group(args.group)
    rank, torsion = abelianization(G)
    parts = ["Z"] * rank + [f"Z/{d}" for d in torsion]
    _emit(args, {"group": G.name, "rank": rank, "torsion": torsion},
          f"H_1({G.name}) = " + (" + ".join(parts) or "0"))


def cmd_group_nq(args):
    G = _doc(args.file).group(args.group)
    Q = nilpotent_quotient(G, args.cls)
    data = {"group": G.name, "class": args.cls, "ranks": Q.lower_central_ranks(),
            "torsion": Q.lower_central_torsion(), "pc_presentation": Q.pc_presentation()}
    lines = [f"{G.name} / gamma_{args.cls + 1}"]
    for k, (r, t) in enumerate(zip(data["ranks"], data["torsion"]), 1):
        lines.append(f"  gamma_{k}/gamma_{k + 1}: rank {r}" + (f", torsion {t}" if t else ""))
    _emit(args, data, "\n".join(lines))


def cmd_group_pushout(args):
    doc = _doc(args.file)
    gC, gA, gB = (doc.epi(n) for n in (args.over, args.left, args.right))
    f1 = MorphismOverG(gC, gA, doc.hom(args.over, args.left))
    f2 = MorphismOverG(gC, gB, doc.hom(args.over, args.right))
    po = pushout(f1, f2, c=args.cls)
    data = {"presentation": po.presentation.to_json(), "gamma": po.gamma.to_json(),
            "metadata": po.metadata}
    _emit(args, data, po.presentation.to_text())


def cmd_group_jsurgery(args):
    doc = _doc(args.file)
    gK, gJ = doc.epi(args.K), doc.epi(args.J)
    po = j_surgery_group(gK.source, gJ.source, gK, gJ, args.orientation, c=args.cls)
    data = {"presentation": po.presentation.to_json(), "gamma": po.gamma.to_json(),
            "metadata": po.metadata}
    _emit(args, data, po.presentation.to_text() + f"# {po.metadata['identification']}\n")


# ---------------------------------------------------------------------------
# alex


def cmd_alex_fox(args):
    gamma = _gamma(_doc(args.file), args.group, fallback_z=True)
    M = fox_jacobian(gamma.source, gamma)
    _emit(args, {"group": gamma.source.name, "jacobian": M.to_json()}, M.format())


def cmd_alex_snf(args):
    gamma = _gamma(_doc(args.file), args.group, fallback_z=True)
    mod = alexander_module(gamma.source, gamma)
    _emit(args, mod.to_json(), mod.format())


def cmd_alex_poly(args):
    if args.seifert:
        p = alexander_poly_from_seifert(_seifert(args.seifert), "normalized")
        src = "seifert"
    elif args.file:
        gamma = _gamma(_doc(args.file), args.group, fallback_z=True)
        p = alexander_polynomial(gamma.source, gamma)
        src = "fox"
    else:
        raise UsageError("give a .grp file or --seifert")
    p = p.normalized()
    _emit(args, {"source": src, "polynomial": p.format(), "symmetric": p.symmetric().format(),
                 "coefficients": p.to_json()}, p.format())


# ---------------------------------------------------------------------------
# series


def cmd_series_member(args):
    gamma = _gamma(_doc(args.file), args.group)
    A = gamma.source
    w = parse_word(args.word, A.generators)
    cert = None
    if args.commutator:
        u, _, v = args.commutator.partition(";")
        cert = CommutatorCertificate.single(parse_word(u, A.generators), parse_word(v, A.generators))
    elif args.user:
        cert = UserEvidence(Status(args.user), "command line")
    m = rational_series_membership(gamma, w, args.depth, cert, c=args.cls)
    _emit(args, m.to_json(A.generators),
          f"{A.fmt(w)} at depth {args.depth}: {m.status}\n  {m.certificate}")


def cmd_series_ptfa(args):
    doc = _doc(args.file)
    G = doc.group(args.group)
    maps, cur = [], G.name
    for _ in range(len(doc.groups) + 1):
        phi = doc.epi(cur)
        maps.append(phi)
        if phi.target.name == "1" or phi.target.name not in doc.groups:
            break
        cur = phi.target.name
    rep = ptfa_report(PtfaCertificate(G, tuple(maps)))
    lines = [f"{G.name}: {'PTFA' if rep.ok else 'not certified'}"]
    for sec in rep.sections:
        tors = f", torsion {sec['torsion']}" if sec.get("torsion") else ""
        if sec.get("abelian") is None:
            lines.append(f"  {sec['source']} -> {sec['target']}: {sec['reason']}")
        else:
            lines.append(f"  {sec['source']} -> {sec['target']}: kernel abelian={sec['abelian']}, "
                         f"rank {sec['rank']}{tors}")
    if rep.reason:
        lines.append("  " + rep.reason)
    _emit(args, rep.to_json(), "\n".join(lines))
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------
# loc


def _system(args):
    gamma = _gamma(_doc(args.file), args.group)
    if not args.system:
        raise UsageError("--system FILE is required")
    return parse_system(_read(args.system), gamma)


def cmd_loc_validate(args):
    sys_ = _system(args)
    ch = validate_system_check(sys_, args.cls)
    _emit(args, {"system": sys_.to_json(), "check": ch.to_json()}, f"{ch.verdict}: {ch.detail}")
    return 0 if ch else 1


def cmd_loc_solve(args):
    sys_ = _system(args)
    sol = solve_nilpotent(sys_, args.cls)
    lines = [f"{x} = {sys_.source.fmt(w) or '1'}" for x, w in zip(sys_.variables, sol.words)]
    lines.append(f"stabilized after {sol.iterations} iteration(s) at class {args.cls}")
    for k, step in enumerate(sol.trace):
        lines.append(f"  step {k}: " + ", ".join(sys_.source.fmt(w) or "1" for w in step))
    _emit(args, sol.to_json(sys_), "\n".join(lines))


def _witness(args, gamma):
    if not args.witness:
        raise UsageError("--witness FILE is required")
    try:
        data = json.loads(_read(args.witness))
    except json.JSONDecodeError as exc:
        raise ConcordError(f"{args.witness}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    A = gamma.source
    gens = tuple(parse_word(t, A.generators) for t in data.get("generators", []))
    rewriting = None
    if "rewriting" in data:
        rewriting = [[RewritingTerm(parse_word(t.get("conj", "1"), A.generators), int(t["index"]),
                                    parse_word(t["other"], A.generators), int(t.get("sign", 1)))
                      for t in terms] for terms in data["rewriting"]]
    return PiPerfectCandidate(gens, gamma), rewriting


def cmd_loc_pp_check(args):
    gamma = _gamma(_doc(args.file), args.group)
    cand, rewriting = _witness(args, gamma)
    st = pi_perfect_check(cand, args.cls, rewriting, _budget(args))
    _emit(args, {"candidate": cand.to_json(), "status": st.to_json()}, f"{st.kind}: {st.detail}")


def cmd_loc_pp_roundtrip(args):
    gamma = _gamma(_doc(args.file), args.group)
    cand, rewriting = _witness(args, gamma)
    if rewriting is None:
        raise UsageError("the witness file needs a 'rewriting' entry")
    ex = pi_perfect_to_system(cand, rewriting, args.cls, _budget(args))
    back = solutions_to_pi_perfect(ex.system, *ex.solutions, c=args.cls, budget=_budget(args))
    nq_trivial = all(nilpotent_quotient(gamma.source, k).is_trivial(g)
                     for k in range(1, args.cls + 1) for g in back.normal_generators)
    data = {"system": ex.system.to_json(),
            "solutions": [s.to_json(ex.system) for s in ex.solutions],
            "candidate": back.to_json(), "trivial_in_nilpotent_quotients": nq_trivial}
    text = ex.system.to_text() + "\n" + "\n".join(
        "solution: " + ", ".join(ex.system.source.fmt(w) or "1" for w in s.words) for s in ex.solutions)
    text += f"\nrecovered generators trivial through class {args.cls}: {nq_trivial}"
    _emit(args, data, text)


def cmd_loc_omega(args):
    doc = _doc(args.file)
    gA, gB = doc.epi(args.source), doc.epi(args.target)
    f = MorphismOverG(gA, gB, doc.hom(args.source, args.target))
    witnesses = {}
    if args.witness:
        data = json.loads(_read(args.witness))
        for side, gam in (("kernel_A", gA), ("kernel_B", gB)):
            if side in data:
                witnesses[side] = [parse_word(t, gam.source.generators) for t in data[side]]
        if "h2" in data:
            witnesses["h2"] = data["h2"]
    rep = omega_check(f, witnesses, args.cls, _budget(args))
    lines = [f"verdict: {rep.verdict}"]
    for k, ch in sorted(rep.conditions.items()):
        lines.append(f"  {k}: {ch.verdict} ({ch.method}) {ch.detail}")
    _emit(args, rep.to_json(), "\n".join(lines))


# ---------------------------------------------------------------------------
# sig


def cmd_sig_at(args):
    V = _seifert(args.seifert)
    p = CirclePoint.parse(args.omega)
    s = lt_signature_at(V, p)
    _emit(args, {"knot": V.name, "omega": str(p), "signature": s}, f"sigma_{p}({V.name or 'V'}) = {s}")


def cmd_sig_function(args):
    V = _seifert(args.seifert)
    sf = signature_function(V)
    fmt = args.format or "json"
    if fmt == "csv":
        out = sf.to_csv()
    elif fmt == "svg":
        out = sf.to_svg()
    elif fmt == "text":
        out = sf.to_csv().replace(",", "  ")
    else:
        out = _json(sf.to_json())
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def cmd_sig_integral(args):
    V = _seifert(args.seifert)
    I = signature_integral(V, _tol(args))
    _emit(args, {"knot": V.name, "integral": I.to_json()}, I.format())


def cmd_sig_sum(args):
    Vs = [_seifert(s) for s in args.seifert]
    I = integral_sum(Vs, _tol(args))
    _emit(args, {"knots": [V.name for V in Vs], "integral": I.to_json()}, I.format())


def cmd_sig_dense(args):
    lo, hi = args.range
    members = dense_family(eps=args.eps, value_range=(lo, hi), max_summands=args.max_summands,
                           tol=_tol(args))
    values = [m.integral for m in members]
    dense = is_eps_dense(values, Fraction(args.eps), (lo, hi))
    data = {"eps": str(args.eps), "range": [str(lo), str(hi)], "dense": dense,
            "members": [m.to_json() for m in members]}
    lines = [f"{len(members)} members, {args.eps}-dense in ({lo}, {hi}): {dense}"]
    for m in members:
        lines.append(f"  {' # '.join(m.labels) or 'unknot':<40} {m.integral.format()}")
    _emit(args, data, "\n".join(lines))


# ---------------------------------------------------------------------------
# ledger


class _Ledger:
    def __init__(self, path: str):
        try:
            self.data = json.loads(_read(path))
        except json.JSONDecodeError as exc:
            raise ConcordError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        for key in ("groups", "base", "eta"):
            if key not in self.data:
                raise ConcordError(f"{path}: missing field {key!r}")
        gpath = Path(path).parent / self.data["groups"]
        self.doc = _doc(str(gpath))
        gamma = self.doc.epi(self.data["base"])
        self.base = KnotData(gamma.source, gamma, self.data.get("label", gamma.source.name)).validated()
        self.eta = parse_word(self.data["eta"], self.base.exterior.generators)
        self.depth = int(self.data.get("depth", 0))

    def certificate(self, c: int):
        d = self.data
        gamma = self.base.gamma
        if "J" in d:
            gJ = self.doc.epi(d["J"])
            J = KnotData(gJ.source, gJ, d.get("J_label", gJ.source.name))
            gamma = build_MK(self.base, J, c=c).gamma
        A = self.base.exterior
        inc = None
        if "in_certificate" in d:
            u, v = d["in_certificate"]
            inc = CommutatorCertificate.single(parse_word(u, A.generators), parse_word(v, A.generators))
        notin = UserEvidence(Status.NOT_IN, d["user_notin"]) if "user_notin" in d else None
        return certify_eta(gamma, self.eta, self.depth, inc, notin, c=c)

    def family(self):
        out = []
        for k, item in enumerate(self.data.get("family", [])):
            if "L" not in item:
                raise ConcordError(f"family entry {k} has no 'L'")
            out.append((_seifert_data(item["L"]), item.get("L_group"), item.get("label", "")))
        return out


def cmd_ledger_infect(args):
    led = _Ledger(args.ledger)
    out = []
    for V, gname, label in led.family():
        Lg = led.doc.group(gname) if gname else None
        K = infect(led.base, led.eta, V, Lg, label or None, c=args.cls)
        out.append(K.to_json())
    text = "\n".join(f"{k['label']}: {len(k['exterior']['generators'])} generators, "
                     f"{len(k['exterior']['relators'])} relators" + (" (symbolic)" if k["symbolic"] else "")
                     for k in out)
    _emit(args, {"base": led.base.label, "infected": out}, text)


def cmd_ledger_certify(args):
    led = _Ledger(args.ledger)
    cert = led.certificate(args.cls)
    tau = [{"index": i, "image": str(t)} for i, t in tau_table(cert)]
    data = {"certificate": cert.to_json(led.base.exterior.generators), "tau": tau}
    text = (f"eta = {led.base.exterior.fmt(cert.eta)}: In at depth {cert.n}, NotIn at depth {cert.n + 1}"
            f" ({cert.series_kind})\n" + "\n".join(f"  tau_{t['index']}: {t['image']}" for t in tau))
    _emit(args, data, text)


def cmd_ledger_rho(args):
    led = _Ledger(args.ledger)
    cert = led.certificate(args.cls)
    i_max = cert.n + 1 if args.index is None else args.index
    rows = []
    lines = []
    for V, _, label in led.family():
        entries = rho_differences(cert, V, i_max, label or V.name, _tol(args))
        rows.append([e.to_json() for e in entries])
        for e in entries:
            val = e.value.format() if hasattr(e.value, "format") else f"{e.value} (exact)"
            lines.append(f"{e.label:<20} rho_{e.index} difference = {val}")
    _emit(args, {"depth": cert.n, "entries": rows}, "\n".join(lines))


def cmd_ledger_report(args):
    led = _Ledger(args.ledger)
    cert = led.certificate(args.cls)
    fam = [FamilyMember(cert, V, label) for V, _, label in led.family()]
    rep = distinguish_report(led.base, fam, bool(led.data.get("eta_bounds_disk")),
                             bool(led.data.get("base_is_J")), _tol(args))
    _emit(args, rep.to_json(), rep.to_text())


# ---------------------------------------------------------------------------
# parser


def _common(p, formats=("json", "text")):
    p.add_argument("--format", choices=formats, default=None, help="output format (default json)")
    p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    p.add_argument("--class", dest="cls", type=int, default=3, metavar="N",
                   help=f"nilpotent class for quotient computations (1..{MAX_CLASS}, default 3)")
    p.add_argument("--budget", type=int, default=0, metavar="N", help="node budget for rewriting searches")
    p.add_argument("--tol", default="1e-6", metavar="R", help="width of certified intervals (default 1e-6)")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.RawDescriptionHelpFormatter
    ap = argparse.ArgumentParser(prog="ck", description="Concordance invariants over a coefficient group.",
                                 formatter_class=fmt, epilog=GRP_GRAMMAR)
    top = ap.add_subparsers(dest="area", metavar="AREA")
    top.required = True

    def sub(parent, name, func, help_, epilog=GRP_GRAMMAR, formats=("json", "text")):
        p = parent.add_parser(name, help=help_, description=help_, epilog=epilog, formatter_class=fmt)
        _common(p, formats)
        p.set_defaults(func=func)
        return p

    g = top.add_parser("group", help="presentations, quotients, pushouts", epilog=GRP_GRAMMAR,
                       formatter_class=fmt).add_subparsers(dest="cmd", metavar="CMD")
    g.required = True
    for name, func, help_ in (("parse", cmd_group_parse, "parse and normalize a .grp file"),
                              ("abelianize", cmd_group_abelianize, "abelian invariants of H_1"),
                              ("nq", cmd_group_nq, "nilpotent quotient of class --class")):
        p = sub(g, name, func, help_)
        p.add_argument("file")
        p.add_argument("--group", help="group name (default: first in file)")
    p = sub(g, "pushout", cmd_group_pushout, "amalgamate LEFT <- OVER -> RIGHT using 'map' lines")
    p.add_argument("file")
    p.add_argument("--over", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p = sub(g, "jsurgery", cmd_group_jsurgery, "glue two exteriors along their boundary tori")
    p.add_argument("file")
    p.add_argument("--K", required=True)
    p.add_argument("--J", required=True)
    p.add_argument("--orientation", choices=("reversed", "same"), default="reversed")

    a = top.add_parser("alex", help="Fox calculus and Alexander invariants",
                       formatter_class=fmt).add_subparsers(dest="cmd", metavar="CMD")
    a.required = True
    for name, func, help_ in (("fox", cmd_alex_fox, "Fox Jacobian over Z[t^+-1]"),
                              ("snf", cmd_alex_snf, "Alexander module decomposition")):
        p = sub(a, name, func, help_)
        p.add_argument("file")
        p.add_argument("--group")
    p = sub(a, "poly", cmd_alex_poly, "Alexander polynomial from a presentation or a Seifert matrix",
            epilog=GRP_GRAMMAR + "\n" + SEIFERT_GRAMMAR)
    p.add_argument("file", nargs="?")
    p.add_argument("--group")
    p.add_argument("--seifert", metavar="SEIFERT")

    s = top.add_parser("series", help="rational derived series",
                       formatter_class=fmt).add_subparsers(dest="cmd", metavar="CMD")
    s.required = True
    p = sub(s, "member", cmd_series_member, "membership of a word in the rational derived series")
    p.add_argument("file")
    p.add_argument("--group")
    p.add_argument("--word", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--commutator", metavar="U;V", help="certificate: the word equals [U,V]")
    p.add_argument("--user", choices=("In", "NotIn"), help="record user-supplied evidence")
    p = sub(s, "ptfa", cmd_series_ptfa, "check a PTFA chain given by consecutive 'epi' lines")
    p.add_argument("file")
    p.add_argument("--group")

    lo = top.add_parser("loc", help="equation systems, Pi-perfect subgroups, Omega conditions",
                        formatter_class=fmt).add_subparsers(dest="cmd", metavar="CMD")
    lo.required = True
    for name, func, help_ in (("validate", cmd_loc_validate, "check the kernel condition of a system"),
                              ("solve", cmd_loc_solve, "solve a system in the class --class quotient")):
        p = sub(lo, name, func, help_, epilog=GRP_GRAMMAR + "\n" + SYSTEM_GRAMMAR)
        p.add_argument("file")
        p.add_argument("--group")
        p.add_argument("--system", required=True, metavar="FILE")
    for name, func, help_ in (("pp-check", cmd_loc_pp_check, "decide whether a candidate is Pi-perfect"),
                              ("pp-roundtrip", cmd_loc_pp_roundtrip,
                               "system with two solutions from a witness, and back")):
        p = sub(lo, name, func, help_, epilog=GRP_GRAMMAR + "\n" + WITNESS_GRAMMAR)
        p.add_argument("file")
        p.add_argument("--group")
        p.add_argument("--witness", required=True, metavar="FILE")
    p = sub(lo, "omega", cmd_loc_omega, "the four Omega conditions for a 'map' between groups",
            epilog=GRP_GRAMMAR + '\nwitness .json: {"kernel_A": [WORD, ...], "kernel_B": [...], "h2": "note"}\n')
    p.add_argument("file")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--witness", metavar="FILE")

    sg = top.add_parser("sig", help="Levine-Tristram signatures",
                        formatter_class=fmt).add_subparsers(dest="cmd", metavar="CMD")
    sg.required = True
    p = sub(sg, "at", cmd_sig_at, "signature at one point of the circle", epilog=SEIFERT_GRAMMAR)
    p.add_argument("seifert")
    p.add_argument("--omega", default="-1", help="-1, or s=P/Q for omega = ((1 - s^2) + 2si)/(1 + s^2), i.e. s = tan(theta/2)")
    p = sub(sg, "function", cmd_sig_function, "the whole signature function", epilog=SEIFERT_GRAMMAR,
            formats=("json", "text", "csv", "svg"))
    p.add_argument("seifert")
    p = sub(sg, "integral", cmd_sig_integral, "certified normalized integral", epilog=SEIFERT_GRAMMAR)
    p.add_argument("seifert")
    p = sub(sg, "sum", cmd_sig_sum, "integral of a connected sum", epilog=SEIFERT_GRAMMAR)
    p.add_argument("seifert", nargs="+")
    p = sub(sg, "dense", cmd_sig_dense, "family whose integrals are eps-dense in a range", epilog="")
    p.add_argument("--eps", type=Fraction, default=Fraction(1, 10))
    p.add_argument("--range", type=Fraction, nargs=2, default=(Fraction(-2), Fraction(2)))
    p.add_argument("--max-summands", type=int, default=3)

    lg = top.add_parser("ledger", help="infection and rho-difference bookkeeping",
                        formatter_class=fmt).add_subparsers(dest="cmd", metavar="CMD")
    lg.required = True
    for name, func, help_ in (("infect", cmd_ledger_infect, "assemble infected exteriors"),
                              ("certify", cmd_ledger_certify, "depth certificate for eta and the tau table"),
                              ("rho", cmd_ledger_rho, "rho differences per family member"),
                              ("report", cmd_ledger_report, "pairwise non-concordance report")):
        p = sub(lg, name, func, help_, epilog=LEDGER_GRAMMAR + "\n" + GRP_GRAMMAR + "\n" + SEIFERT_GRAMMAR)
        p.add_argument("ledger")
        if name == "rho":
            p.add_argument("--index", type=int, help="largest index (default n+1)")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not 1 <= args.cls <= MAX_CLASS:
        print(f"ck: usage error: --class must be between 1 and {MAX_CLASS}", file=sys.stderr)
        return 2
    try:
        rc = args.func(args)
    except UsageError as exc:
        print(f"ck: usage error: {exc}", file=sys.stderr)
        return 2
    except ConcordError as exc:
        print(f"ck: error: {exc}", file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
