from fractions import Fraction

import pytest

from frobkit import GF, QQ, Mat, ParseError, Poly, Triple, unit_col, unit_row
from frobkit.formats import (
    dumps_canonical,
    field_from_tag,
    field_tag,
    matrix_from_json,
    matrix_to_json,
    parse_matrix,
    parse_poly,
    parse_triple,
    poly_from_json,
    poly_to_json,
    render_matrix,
    render_poly,
    render_triple,
    triple_from_json,
    triple_to_json,
)


def test_field_tags():
    assert field_tag(GF(3)) == "3"
    assert field_tag(GF(9)) == "9"
    assert field_tag(QQ) == "Q"
    assert field_from_tag("25").order == 25
    assert field_from_tag("3^2") is GF(9)
    assert field_from_tag("5^1") is GF(5)
    assert field_from_tag("Q") is QQ
    with pytest.raises(ParseError):
        field_from_tag("6")
    with pytest.raises(ParseError):
        field_from_tag("?")


def test_matrix_text_round_trip():
    m = Mat(GF(3), [[0, 1], [2, 1]])
    text = render_matrix(m)
    assert text == "3 2 2\n0 1\n2 1\n"
    assert parse_matrix(text) == m


def test_matrix_text_rationals():
    m = Mat(QQ, [[Fraction(1, 2), Fraction(-3)], [Fraction(0), Fraction(7, 5)]])
    assert parse_matrix(render_matrix(m)) == m
    assert "1/2" in render_matrix(m)


def test_matrix_text_extension_field_codes():
    F9 = GF(9)
    m = Mat.from_raw(F9, 1, 3, [0, 4, 8])
    text = render_matrix(m)
    assert text == "9 1 3\n0 4 8\n"
    assert parse_matrix(text) == m


def test_matrix_text_zero_by_zero():
    m = Mat.identity(GF(5), 0)
    assert parse_matrix(render_matrix(m)) == m


def test_matrix_text_errors():
    with pytest.raises(ParseError):
        parse_matrix("")
    with pytest.raises(ParseError):
        parse_matrix("3 2\n1 1\n")
    with pytest.raises(ParseError):
        parse_matrix("3 2 2\n1 1\n")  # missing row
    with pytest.raises(ParseError):
        parse_matrix("3 1 2\n1 1 1\n")  # wrong entry count
    with pytest.raises(ParseError):
        parse_matrix("9 1 1\n17\n")  # code out of range


def test_matrix_json_round_trip():
    for m in (
        Mat(GF(3), [[0, 1], [2, 1]]),
        Mat(QQ, [[Fraction(2, 3)]]),
        Mat.identity(GF(9), 0),
    ):
        assert matrix_from_json(matrix_to_json(m)) == m


def test_poly_text_round_trip():
    f = Poly(GF(3), [2, 0, 1])
    text = render_poly(f)
    assert text == "Fq p=3 k=1 | 2,0,1"
    assert parse_poly(text) == f
    g = Poly(QQ, [-1, 3, -3, 1])
    assert parse_poly(render_poly(g)) == g
    h = Poly(GF(9), [4, 1])
    assert parse_poly(render_poly(h)) == h
    z = Poly.zero(GF(5))
    assert parse_poly(render_poly(z)) == z


def test_poly_text_errors():
    with pytest.raises(ParseError):
        parse_poly("2,0,1")
    with pytest.raises(ParseError):
        parse_poly("Fq p=x | 1")
    with pytest.raises(ParseError):
        parse_poly("Zp | 1")


def test_poly_json_round_trip():
    f = Poly(GF(25), [3, 0, 24])
    assert poly_from_json(poly_to_json(f)) == f
    assert poly_to_json(f)["schema"] == "frobkit/1"


def test_triple_round_trips():
    F = GF(3)
    t = Triple(Mat(F, [[0, 0], [1, 0]]), unit_col(F, 2, 0), unit_row(F, 2, 1))
    assert parse_triple(render_triple(t)) == t
    assert triple_from_json(triple_to_json(t)) == t


def test_triple_text_errors():
    with pytest.raises(ParseError):
        parse_triple("3 1 1\n1\n")
    # mismatched shapes across blocks
    bad = "3 2 2\n0 0\n1 0\n\n3 1 1\n1\n\n3 1 2\n0 1\n"
    with pytest.raises(ParseError):
        parse_triple(bad)


def test_dumps_canonical_is_stable():
    a = dumps_canonical({"b": 1, "a": [2, 3]})
    b = dumps_canonical({"a": [2, 3], "b": 1})
    assert a == b
    assert a.endswith("\n")
