import copy
import json

import pytest

from planelinsys import constructor as cs
from planelinsys import linsys as ls
from planelinsys.errors import (AttemptsExhausted, CertificationFailed, FieldTooSmall,
                                InsufficientRationalPoints, PreconditionError)
from planelinsys.forms import intersection_multiplicity
from planelinsys.geometry import DivisorOnCurve, is_smooth, line_divisor
from planelinsys.linalg import rank


@pytest.fixture(scope="module")
def pipeline():
    req = cs.ConstructionRequest(10, 1, 0, 1009, seed=1)
    pair = cs.build_gamma_pair(req)
    C = cs.build_curve_C(req, pair.gamma, pair.points, [])
    return req, pair, C


@pytest.fixture(scope="module")
def certificate(pipeline):
    req, pair, C = pipeline
    return cs.certify(req, C, pair.gamma, pair.lines, pair.points, [])


def test_request_validation():
    with pytest.raises(PreconditionError):
        cs.ConstructionRequest(10, 0)  # a = 3
    with pytest.raises(PreconditionError):
        cs.ConstructionRequest(9, 1)  # a = 4 > d - 6
    with pytest.raises(PreconditionError):
        cs.ConstructionRequest(10, 1, beta=2)


def test_request_expectations():
    req = cs.ConstructionRequest(11, 2)
    assert (req.a, req.expected_r, req.expected_n) == (5, 6, 40)


def test_field_too_small():
    with pytest.raises(FieldTooSmall):
        cs.build_gamma_pair(cs.ConstructionRequest(10, 1, p=3))


def test_tiny_field_budget():
    req = cs.ConstructionRequest(10, 1, p=5, gamma_attempts=2, smooth_attempts=4)
    try:
        pair = cs.build_gamma_pair(req)
    except (FieldTooSmall, AttemptsExhausted):
        return
    assert len(pair.points) == 12


def test_gamma_pair(pipeline):
    req, pair, C = pipeline
    assert pair.gamma.degree == 4 and is_smooth(pair.gamma)
    assert len(set(pair.points)) == 12
    for L in pair.lines:
        D = line_divisor(L, pair.gamma)
        assert D.degree == 4 and all(m == 1 and P.degree == 1 for P, m in D.entries)
        for P, _ in D.entries:
            assert sum(M.contains(P) for M in pair.lines) == 1


def test_curve_C(pipeline):
    req, pair, C = pipeline
    assert C.degree == 10 and is_smooth(C)
    for P in pair.points:
        assert intersection_multiplicity(pair.gamma, C, P) >= 1


def test_conditions_matrix_rank(pipeline):
    req, pair, C = pipeline
    Z = DivisorOnCurve(C, [(P, 1) for P in pair.points])
    M = ls.conditions_matrix(C, Z, 4)
    assert (len(M), len(M[0])) == (12, 15)
    assert rank(req.field, M, 15) == 11


def test_certificate_values(certificate):
    assert (certificate.r, certificate.n) == (3, 28)
    assert certificate.triviality == ls.NON_TRIVIAL
    rep = certificate.report
    assert rep.base_locus.is_zero() and rep.very_special and rep.riemann_roch
    assert rep.triviality.certificate["reason"] == "no admissible m'"
    assert all(certificate.checks.values())
    assert set(certificate.checks) >= {"dimension", "base_locus", "very_special", "triviality",
                                       "namba", "riemann_roch", "n_lower_bound"}


def test_missing_point_is_forced_back(pipeline):
    # Carnot forces the last point: degree-a curves through the other 3a - 1 points pass through it
    req, pair, C = pipeline
    P = pair.points[0]
    pres = ls.SystemPresentation(C, 4, DivisorOnCurve(C, [(Q, 1) for Q in pair.points[1:]]))
    r, basis = ls.system_dimension(pres)
    assert r == 3
    assert ls.base_locus(pres, basis).entries == [(P, 1)]


def test_certify_names_failed_step(pipeline):
    req, pair, C = pipeline
    wrong = cs.ConstructionRequest(10, 1, 1, 1009, seed=1)  # expects one more point of E
    with pytest.raises(CertificationFailed) as exc:
        cs.certify(wrong, C, pair.gamma, pair.lines, pair.points, [])
    assert exc.value.step == "degree"


def test_certify_requires_full_cut(pipeline):
    req, pair, C = pipeline
    with pytest.raises(CertificationFailed) as exc:
        cs.certify(req, C, pair.gamma, pair.lines, pair.points[1:], [])
    assert exc.value.step == "gamma_cut"


def test_verify_round_trip(certificate):
    obj = json.loads(json.dumps(certificate.to_json()))
    again = cs.verify(obj)
    assert (again.r, again.n, again.triviality) == (3, 28, ls.NON_TRIVIAL)


def test_verify_detects_tampering(certificate):
    obj = copy.deepcopy(certificate.to_json())
    obj["r"] = 4
    with pytest.raises(CertificationFailed):
        cs.verify(obj)


def test_corollary_sweep(pipeline):
    req, pair, C = pipeline
    certs = cs.corollary_sweep(C, pair.gamma, pair.lines, pair.points, req)
    assert [(c.r, c.n) for c in certs] == [(3, 28), (2, 27)]
    assert all(c.triviality == ls.NON_TRIVIAL for c in certs)


def test_corollary_sweep_without_rational_points():
    req = cs.ConstructionRequest(10, 1, 0, 1009, seed=0)
    pair = cs.build_gamma_pair(req)
    C = cs.build_curve_C(req, pair.gamma, pair.points, [])
    with pytest.raises(InsufficientRationalPoints):
        cs.corollary_sweep(C, pair.gamma, pair.lines, pair.points, req)


def test_construct_with_beta():
    cert = cs.construct(cs.ConstructionRequest(10, 1, 1, 1009, seed=2))
    assert (cert.r, cert.n) == (2, 27) and len(cert.E) == 1
    assert cert.n == ls.n_lower_bound(10, cert.r)


def test_pipeline_deterministic():
    a = cs.construct(cs.ConstructionRequest(10, 1, 0, 1009, seed=5)).to_json()
    b = cs.construct(cs.ConstructionRequest(10, 1, 0, 1009, seed=5)).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
