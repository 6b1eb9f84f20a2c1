from fractions import Fraction

import pytest

from concordkit import catalog as C
from concordkit.errors import LedgerError, MorphismError, NoCertificate
from concordkit.groups import abelianization
from concordkit.ledger import (FamilyMember, KnotData, TauImage, build_MK, certify_eta, collapse,
                               distinguish_report, infect, rho_differences, tau_image, tau_table)
from concordkit.seifert import GRANNY, TREFOIL, UNKNOT
from concordkit.series import Status, UserEvidence
from concordkit.wordproblem import Verdict

from corpus import heisenberg_base, heisenberg_certificates


@pytest.fixture(scope="module")
def base():
    return heisenberg_base()


@pytest.fixture(scope="module")
def cert0(base):
    return heisenberg_certificates((0,))[0]


def test_knot_data_requires_marks():
    E = C.fiber_exterior().replace(marked=())
    with pytest.raises(LedgerError):
        KnotData(E, C.heisenberg_gamma(E), "bare")


def test_meridian_must_die(base):
    T = C.trefoil_exterior()
    with pytest.raises(LedgerError):
        KnotData(T, C.knot_to_z(T), "trefoil over Z").validated()


def test_build_mk(base):
    S = build_MK(base, base)
    E = base.exterior
    assert S.presentation.ngens == 2 * E.ngens
    assert len(S.presentation.relators) == 2 * len(E.relators) + 2
    assert S.gamma.check().verdict is Verdict.TRUE
    assert S.metadata["K"] == "fiber"
    P, gamma = S
    assert P is S.presentation
    T = C.trefoil_exterior()
    other = KnotData(T, C.knot_to_z(T), "trefoil")
    with pytest.raises(MorphismError):
        build_MK(base, other)


def test_depth0_certificate_on_surgery_group(base):
    S = build_MK(base, base)
    eta = base.exterior.word("[x,y] t^-1")
    cert = certify_eta(S.gamma, eta, 0)
    assert cert.n == 0 and cert.series_kind == "rational"


def test_certify_failures(base):
    A = base.exterior
    with pytest.raises(NoCertificate):
        certify_eta(base.gamma, A.word("x"), 0)
    with pytest.raises(NoCertificate):
        certify_eta(base.gamma, A.word("[x,y] t^-1"), 1)
    with pytest.raises(ValueError):
        certify_eta(base.gamma, A.word("[x,y] t^-1"), -1)


def test_infect_unknot_collapses(base):
    eta = base.exterior.word("[x,y] t^-1")
    K = infect(base, eta, UNKNOT, C.unknot_exterior())
    assert len(K.exterior.relators) == len(base.exterior.relators) + 2
    assert K.gamma.check().verdict is Verdict.TRUE
    X = collapse(K)
    assert X.exterior.generators == base.exterior.generators
    assert abelianization(X.exterior) == abelianization(base.exterior)


def test_infect_trivial_and_bad_eta():
    U = C.unknot_exterior()
    gU = C.knot_to_z(U)
    K = KnotData(U, gU, "unknot")
    # eta = 1 is flagged and changes nothing
    same = infect(K, (), TREFOIL)
    assert same.exterior == U and same.flags
    T = C.trefoil_exterior()
    base = KnotData(T, C.knot_to_z(T), "trefoil")
    with pytest.raises(LedgerError):
        infect(base, T.word("v^-1 u"), TREFOIL, T)


def test_infect_symbolic_and_errors(base):
    eta = base.exterior.word("[x,y] t^-1")
    K = infect(base, eta, GRANNY)
    assert K.symbolic and K.exterior == base.exterior
    with pytest.raises(LedgerError):
        infect(base, base.exterior.word("x"), GRANNY)
    with pytest.raises(LedgerError):
        infect(base, ((7, 1),), GRANNY)


def test_rho_differences(cert0):
    rows = rho_differences(cert0, TREFOIL, 1, "K(trefoil)")
    assert rows[0].exact_zero
    assert rows[1].value.lo == Fraction(-4, 3) == rows[1].value.hi
    assert [r.index for r in rho_differences(cert0, TREFOIL, 0)] == [0]
    with pytest.raises(LedgerError):
        rho_differences(cert0, TREFOIL, 2)


def test_tau(cert0):
    assert tau_table(cert0) == [(0, TauImage.TRIVIAL), (1, TauImage.INFINITE_CYCLIC)]
    with pytest.raises(LedgerError):
        tau_image(cert0, 2)
    with pytest.raises(ValueError):
        tau_image(cert0, -1)


def test_distinguish_report(base, cert0):
    fam = [FamilyMember(cert0, V, lab) for V, lab in ((UNKNOT, "u"), (TREFOIL, "t"), (GRANNY, "g"))]
    rep = distinguish_report(base, fam)
    assert [v["status"] for v in rep.verdicts] == ["not concordant"] * 3
    assert rep.depth == 0
    assert any("not asserted" in n for n in rep.notes)
    txt = rep.to_text()
    assert "-4/3 (exact)" in txt and "-8/3 (exact)" in txt


def test_report_unknown_and_overlap(base, cert0):
    rep = distinguish_report(base, [FamilyMember(cert0, TREFOIL, "a"), FamilyMember(None, GRANNY, "b"),
                                    FamilyMember(cert0, TREFOIL, "c")])
    status = {(v["a"], v["b"]): v["status"] for v in rep.verdicts}
    assert status[("a", "b")] == "no verdict (Unknown)"
    assert status[("a", "c")] == "no verdict (intervals overlap)"


def test_report_mixed_depths_refused(base, cert0):
    c1 = certify_eta(base.gamma, base.exterior.word("[x,y] t^-1"), 0)
    deep = type(c1)(c1.eta, 5, type(c1.in_evidence)(c1.eta, 5, Status.IN, "user", "user"),
                    type(c1.in_evidence)(c1.eta, 6, Status.NOT_IN, "user", "user"), "local-user-supplied")
    with pytest.raises(LedgerError):
        distinguish_report(base, [FamilyMember(cert0, TREFOIL), FamilyMember(deep, TREFOIL)])


def test_certificate_validation(cert0):
    with pytest.raises(NoCertificate):
        type(cert0)(cert0.eta, 1, cert0.in_evidence, cert0.notin_evidence)
    with pytest.raises(NoCertificate):
        type(cert0)(cert0.eta, 0, cert0.in_evidence, cert0.notin_evidence, "made-up")


def test_user_evidence_marks_local(base):
    A = base.exterior
    c = certify_eta(base.gamma, A.word("[x,y] t^-1"), 0, notin_evidence=UserEvidence(Status.NOT_IN, "given"))
    assert c.series_kind == "local-user-supplied"
