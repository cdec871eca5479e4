import json

import pytest

from gkfol.exceptions import ChartOutOfRange
from gkfol.fields import VectorField, contract, divergence, rot
from gkfol.gkcheck import (
    Classification,
    GKCertificate,
    bracket_contract_holds,
    certify_gk,
    gamma_check,
    is_isolated_at_origin,
    kupka_data,
    m1_integral,
    replay,
    search_certificate,
)
from gkfol.poly import Poly
from gkfol.render import parse_field
from gkfol.w0space import random_element, w0_basis
from gkfol.weights import derive_params, milnor_number

from conftest import WITNESS_764

PS764 = derive_params((7, 6, 4), 8, 2)


def test_exceptional_witness_isolated():
    iso = is_isolated_at_origin(parse_field(WITNESS_764, 3), PS764)
    assert iso.isolated is True
    assert iso.quotient_dim == 15 == milnor_number((7, 6, 4), 8)


def test_plane_of_zeros_not_isolated():
    assert is_isolated_at_origin(parse_field("x1 d/dx1", 3)).isolated is False


def test_generic_421_not_isolated():
    ps = derive_params((4, 2, 1), 3, 2)
    Y = random_element(w0_basis(ps), 5, 1)
    assert is_isolated_at_origin(Y, ps).isolated is False


def test_budget_gives_unknown():
    iso = is_isolated_at_origin(parse_field(WITNESS_764, 3), PS764, budget=1)
    assert iso.isolated is None and not iso


def test_kupka_status_of_witness():
    Y = parse_field(WITNESS_764, 3)
    for chart in (2, 3):
        s = kupka_data(PS764, Y, chart)
        assert s.classification is Classification.KUPKA
        assert any(s.value_at_origin)


def test_zeroed_slot_breaks_kupka():
    # x2^2 d/dx3 is the only monomial feeding Y_2(0)
    Y = parse_field("-10*x1*x3^2 d/dx1 - 5*x2*x3^2 d/dx2 + x1^2 d/dx2 + 5*x3^3 d/dx3", 3)
    s = kupka_data(PS764, Y, 2)
    assert s.classification is not Classification.KUPKA
    assert not any(s.value_at_origin)


def test_kupka_data_of_s_itself():
    ps = derive_params((7, 6, 4), 0, 2)
    s = kupka_data(ps, VectorField.diagonal(ps.p), 2)
    assert not any(s.value_at_origin)
    assert all(s.jacobian[j][k] == 0 for j in range(3) for k in range(3) if j != k)
    assert s.classification is Classification.UNKNOWN


def test_kupka_chart_range():
    with pytest.raises(ChartOutOfRange):
        kupka_data(PS764, parse_field(WITNESS_764, 3), 1)


def test_gamma_on_divisorial_field():
    n, d = 3, 2
    x3 = Poly.var(n, 2)
    Xbar = VectorField.radial(n) * x3**d + VectorField.from_terms(n, {(2, (0, 2, 0)): 1})
    S = VectorField.diagonal(PS764.p)
    Ybar = rot(contract(S, Xbar))
    assert Ybar == Xbar * Poly.const(n, PS764.tau) - S * divergence(Xbar)
    assert gamma_check(PS764, Ybar)
    # planted common factor x1
    shifted = derive_params((7, 6, 4), 8 + 7, 2)
    assert not gamma_check(shifted, Ybar * Poly.var(n, 0))


def test_gamma_generic_element():
    ps = derive_params((6, 5, 2), 4, 2)
    assert gamma_check(ps, random_element(w0_basis(ps), 5, 3))


def test_m1_integral():
    assert m1_integral((7, 6, 4), 8)
    assert not m1_integral((4, 2, 1), 3)
    assert m1_integral((1, 1, 1), 2)


def test_certify_764_and_replay():
    cert = certify_gk(PS764)
    assert cert is not None
    assert cert.exceptional_chart is None
    assert replay(cert).ok
    assert bracket_contract_holds(cert)


def test_421_diagnostic():
    out = search_certificate(derive_params((4, 2, 1), 3, 2))
    assert out.certificate is None
    assert out.diagnostic == "non-integer Milnor bound"


def test_652_no_exceptional_chart():
    cert = certify_gk(derive_params((6, 5, 2), 4, 2))
    assert cert is not None and cert.exceptional_chart is None


def test_exceptional_chart_satisfies_equality():
    ps = derive_params((4, 2, 1), 2, 2)
    cert = certify_gk(ps)
    assert cert is not None
    i = cert.exceptional_chart
    assert i is not None and ps.lam == ps.p[i - 1] * (ps.d - 1)
    status = {s.chart: s for s in cert.chart_status}
    assert status[i].classification is Classification.ISOLATED_INVERTIBLE
    for j, s in status.items():
        if j != i:
            assert s.classification is Classification.KUPKA and ps.tau_at(j) != 0


def test_certificate_json_roundtrip_and_tamper_detection():
    cert = certify_gk(derive_params((15, 14, 12, 8), 16, 2))
    data = json.loads(json.dumps(cert.to_dict()))
    again = GKCertificate.from_dict(data)
    assert again == cert and replay(again).ok
    data["witness"] = "x1 d/dx1"
    assert not replay(GKCertificate.from_dict(data)).ok


def test_nonpositive_lambda_rejected():
    out = search_certificate(derive_params((7, 3, 1), -1, 2))
    assert out.certificate is None and "lambda" in out.diagnostic


def test_search_is_deterministic():
    ps = derive_params((9, 6, 4), 12, 3)
    a, b = certify_gk(ps, seed=5), certify_gk(ps, seed=5)
    assert a == b
