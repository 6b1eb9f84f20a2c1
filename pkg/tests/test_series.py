import pytest

from concordkit import catalog as C
from concordkit import words as W
from concordkit.errors import MorphismError, NotInKernelError
from concordkit.groups import EpiOverG, kernel_normal_generators
from concordkit.presentation import parse_presentation
from concordkit.series import (CommutatorCertificate, PtfaCertificate, Status, UserEvidence,
                               gamma_membership, ptfa_check, ptfa_report, rational_series_membership)


@pytest.fixture(scope="module")
def heis():
    return C.heisenberg_gamma()


def test_heisenberg_eta(heis):
    A = heis.source
    eta = A.word("[x,y] t^-1")
    assert gamma_membership(heis, eta).status is Status.IN
    m = rational_series_membership(heis, eta, 1)
    assert m.status is Status.NOT_IN
    assert rational_series_membership(heis, eta, 2).status is Status.NOT_IN


def test_heisenberg_not_in_kernel(heis):
    A = heis.source
    assert gamma_membership(heis, A.word("x")).status is Status.NOT_IN
    with pytest.raises(NotInKernelError):
        rational_series_membership(heis, A.word("x"), 1)
    assert rational_series_membership(heis, A.word("t"), 0).status is Status.NOT_IN


def test_kernel_commutators_depth_one(heis):
    ks = kernel_normal_generators(heis).words
    assert len(ks) >= 2
    for i in range(len(ks)):
        for j in range(i + 1, len(ks)):
            w = W.commutator(ks[i], ks[j])
            assert rational_series_membership(heis, w, 1).status is Status.IN
            cert = CommutatorCertificate.single(ks[i], ks[j])
            m = rational_series_membership(heis, w, 1, cert)
            assert m.status is Status.IN and m.method == "commutator certificate"


def test_deep_needs_certificate(heis):
    A = heis.source
    a = A.word("[x,y] t^-1")
    e1 = W.commutator(a, W.conjugate(a, A.word("x")))
    e2 = W.commutator(e1, W.commutator(a, W.conjugate(a, A.word("y"))))
    assert rational_series_membership(heis, e2, 3).status is Status.UNKNOWN
    ev = rational_series_membership(heis, e2, 3, UserEvidence(Status.NOT_IN, "local series"))
    assert ev.status is Status.NOT_IN and ev.method == "user"
    bad = CommutatorCertificate.single(A.word("x"), A.word("y"))
    assert rational_series_membership(heis, e2, 3, bad).status is Status.UNKNOWN


def test_negative_depth(heis):
    with pytest.raises(ValueError):
        rational_series_membership(heis, (), -1)


def test_trefoil_depth_one():
    T = C.trefoil_exterior()
    g = C.knot_to_z(T)
    # [u,v] generates the Alexander module, so it survives in the rational derived quotient
    m = rational_series_membership(g, T.word("[u,v]"), 1)
    assert m.status is Status.NOT_IN


def test_ptfa():
    assert ptfa_check(C.heisenberg_ptfa())
    Z3 = parse_presentation("group Z3\ngens a\nrel a^3\n")
    rep = ptfa_report(PtfaCertificate(Z3, [C.to_trivial(Z3)]))
    assert not rep.ok and "torsion" in rep.reason


def test_ptfa_malformed():
    H = C.heisenberg_quotient()
    Z = parse_presentation("group Z\ngens t\n")
    with pytest.raises(MorphismError):
        ptfa_report(PtfaCertificate(H, []))
    with pytest.raises(MorphismError):
        ptfa_report(PtfaCertificate(H, [EpiOverG.from_text(H, Z, ["t", "1"])]))


def test_membership_json(heis):
    m = gamma_membership(heis, heis.source.word("[x,y] t^-1"))
    js = m.to_json(heis.source.generators)
    assert js["status"] == "In" and js["depth"] == 0
