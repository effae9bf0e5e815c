import json
from fractions import Fraction
from importlib import resources

import pytest

from homconformal import adjoint_rep
from homconformal.exactmath import D, L1, Poly
from homconformal.fixtures import cur_borel, super_heisenberg
from homconformal.serialize import (
    ParseError,
    algebra_from_json,
    algebra_to_json,
    cochain_from_json,
    cochain_to_json,
    load_json,
    parse_poly_expr,
    poly_from_wire,
    poly_to_wire,
    representation_from_json,
    representation_to_json,
)


def data_text(name: str) -> str:
    return (
        resources.files("homconformal").joinpath("data").joinpath(name).read_text()
    )


# -- polynomial wire form -------------------------------------------------


def test_poly_wire_round_trip():
    p = Poly.var(L1) * Poly.var(D, 2) - Poly.const(Fraction(3, 2))
    wire = poly_to_wire(p)
    assert wire == [
        {"coeff": "-3/2", "vars": {}},
        {"coeff": "1", "vars": {"d": 2, "l1": 1}},
    ]
    assert poly_from_wire(wire) == p


def test_zero_poly_is_empty_list():
    assert poly_to_wire(Poly.zero()) == []
    assert poly_from_wire([]).is_zero


def test_wire_rejects_non_canonical_rationals():
    for bad in ("2/4", "3/1", "-0", "1/0", "+3"):
        with pytest.raises(ParseError):
            poly_from_wire([{"coeff": bad, "vars": {}}])


def test_wire_rejects_bad_exponents_and_names():
    with pytest.raises(ParseError):
        poly_from_wire([{"coeff": "1", "vars": {"d": 0}}])
    with pytest.raises(ParseError):
        poly_from_wire([{"coeff": "1", "vars": {"D": 1}}])
    with pytest.raises(ParseError):
        poly_from_wire([{"coeff": "1", "vars": {"d": -1}}])


def test_wire_rejects_zero_coeff_and_repeats():
    with pytest.raises(ParseError):
        poly_from_wire([{"coeff": "0", "vars": {}}])
    with pytest.raises(ParseError):
        poly_from_wire(
            [{"coeff": "1", "vars": {"d": 1}}, {"coeff": "2", "vars": {"d": 1}}]
        )


def test_byte_exact_round_trip_of_canonical_file():
    text = data_text("super_heisenberg_delta_plus.json")
    A = algebra_from_json(load_json(text))
    assert json.dumps(algebra_to_json(A), indent=2) + "\n" == text


# -- compact expression parser --------------------------------------------


def test_expr_parser_basics():
    assert parse_poly_expr("l1*d^2 - 3/2") == Poly.var(L1) * Poly.var(D, 2) - Poly.const(
        Fraction(3, 2)
    )
    assert parse_poly_expr("-d") == -Poly.var(D)
    assert parse_poly_expr("(l1 + d)^2") == (Poly.var(L1) + Poly.var(D)) ** 2
    assert parse_poly_expr("0").is_zero
    assert parse_poly_expr("2*l1 - l1 - l1").is_zero


def test_expr_parser_rejects_garbage():
    for bad in ("l1 +", "(l1", "l1 ** 2", "x^-1", "1/0*d", "l1 l2"):
        with pytest.raises(ParseError):
            parse_poly_expr(bad)


def test_expr_accepted_in_wire_position():
    assert poly_from_wire("l1*d - 1") == Poly.var(L1) * Poly.var(D) - Poly.const(1)


# -- algebra files --------------------------------------------------------


def shp_data():
    return load_json(data_text("super_heisenberg_delta_plus.json"))


def test_algebra_file_parses_to_fixture():
    A = algebra_from_json(shp_data())
    B = super_heisenberg(1)
    assert A.names == B.names
    assert A.parities == B.parities
    assert A.delta == B.delta
    assert A.brackets == B.brackets
    assert A.alpha == B.alpha


def test_algebra_round_trip_structural():
    A = cur_borel()
    again = algebra_from_json(algebra_to_json(A))
    assert again.brackets == A.brackets
    assert again.alpha == A.alpha


def test_unknown_field_rejected():
    data = shp_data()
    data["extra"] = 1
    with pytest.raises(ParseError, match="unknown field"):
        algebra_from_json(data)


def test_duplicate_bracket_key_rejected():
    text = data_text("super_heisenberg_delta_plus.json")
    dup = text.replace(
        '"brackets": {\n    "o1|o2"', '"brackets": {\n    "o1|o2": [],\n    "o1|o2"'
    )
    with pytest.raises(ParseError, match="duplicate key"):
        load_json(dup)


def test_grading_violation_named():
    data = shp_data()
    # o1|o2 must target even generators; point it at o1 instead
    data["brackets"]["o1|o2"] = [{"target": "o1", "poly": "1"}]
    with pytest.raises(ParseError, match="grading violation.*o1"):
        algebra_from_json(data)


def test_empty_basis_is_valid():
    A = algebra_from_json(
        {"delta": 1, "basis": [], "alpha": [], "brackets": {}}
    )
    assert A.dim == 0


def test_bad_bracket_key_rejected():
    data = shp_data()
    data["brackets"]["o1"] = []
    with pytest.raises(ParseError, match="left|right"):
        algebra_from_json(data)


# -- representation and cochain files --------------------------------------


def test_representation_round_trip():
    A = cur_borel()
    R = adjoint_rep(A)
    again = representation_from_json(representation_to_json(R), A)
    assert again.module_names == R.module_names
    assert again.beta == R.beta
    assert all(again.rho_matrix(i) == R.rho_matrix(i) for i in range(A.dim))


def test_shipped_representation_file(tmp_path):
    A = algebra_from_json(load_json(data_text("cur_borel.json")))
    R = representation_from_json(load_json(data_text("adjoint_cur_borel.json")), A)
    assert R.module_names == A.names


def test_cochain_round_trip():
    A = super_heisenberg(1)
    R = adjoint_rep(A)
    data = load_json(data_text("heisenberg_central_cochain.json"))
    psi = cochain_from_json(data, A, R)
    assert cochain_to_json(A, R, psi) == data
    assert psi.arity == 2 and psi.parity == 0


def test_cochain_rejects_unsorted_tuples():
    A = super_heisenberg(1)
    R = adjoint_rep(A)
    with pytest.raises(ParseError, match="sorted"):
        cochain_from_json(
            {"arity": 2, "parity": 0, "values": {"o2|o1": [{"target": "z", "poly": "1"}]}},
            A,
            R,
        )
