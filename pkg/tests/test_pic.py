from decimal import ROUND_DOWN, Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cobval.errors import MalformedPicture
from cobval.pic import (
    PicType, code_string, compare_alnum, decode_value, encode_value, resolve_pic, store, store_numeric,
    string_code,
)


@pytest.mark.parametrize("text,expected", [
    ("9(4)", PicType("numeric", False, 4, 0)),
    ("S9(3)V99", PicType("numeric", True, 3, 2)),
    ("s999v9", PicType("numeric", True, 3, 1)),
    ("X(8)", PicType("alphanumeric", length=8)),
    ("XXX", PicType("alphanumeric", length=3)),
    ("V99", PicType("numeric", False, 0, 2)),
])
def test_resolve_pic(text, expected):
    assert resolve_pic(text) == expected


@pytest.mark.parametrize("text", ["", "S", "9(0)", "X9", "SX(3)", "9V9V9", "9(19)", "Z(3)", "VV9"])
def test_resolve_pic_rejects(text):
    with pytest.raises(MalformedPicture):
        resolve_pic(text)


def _store_oracle(value: Fraction, digits, frac, signed):
    # decimal arithmetic: truncate toward zero, keep the low-order digits as text
    d = (Decimal(value.numerator) / Decimal(value.denominator)).quantize(Decimal(1).scaleb(-frac), ROUND_DOWN) \
        if frac else Decimal(int(value))
    sign = -1 if d < 0 and signed else 1
    text = format(abs(d), "f").replace(".", "")
    kept = text[-(digits + frac):] if digits + frac else ""
    return sign * Fraction(int(kept or "0"), 10 ** frac)


@given(st.fractions(min_value=-10 ** 6, max_value=10 ** 6, max_denominator=1000),
       st.integers(1, 5), st.integers(0, 3), st.booleans())
def test_store_numeric_matches_decimal_truncation(value, digits, frac, signed):
    pic = PicType("numeric", signed, digits, frac)
    assert store_numeric(value, pic) == _store_oracle(value, digits, frac, signed)


@given(st.integers(-99999, 99999), st.integers(1, 4), st.integers(0, 2), st.booleans())
def test_encode_decode_roundtrip(raw, digits, frac, signed):
    pic = PicType("numeric", signed, digits, frac)
    v = store_numeric(Fraction(raw, 10 ** frac), pic)
    text = encode_value(v, pic)
    assert decode_value(text, pic) == v
    assert len(text.lstrip("-").replace(".", "")) == digits + frac


def test_encode_preserves_scale():
    assert encode_value(Fraction(25, 2), resolve_pic("9(4)V99")) == "0012.50"
    assert encode_value(Fraction(-3), resolve_pic("S9(3)")) == "-003"
    assert encode_value("AB", resolve_pic("X(4)")) == "AB  "


@given(st.text(alphabet=st.characters(min_codepoint=0x20, max_codepoint=0x7E), max_size=6))
def test_string_code_roundtrip_and_order(text):
    assert code_string(string_code(text), len(text)) == text


@given(st.text(alphabet=" ABCZ09", max_size=4), st.text(alphabet=" ABCZ09", max_size=4))
def test_string_code_order_matches_padded_compare(a, b):
    width = max(len(a), len(b))
    ca, cb = string_code(a.ljust(width)), string_code(b.ljust(width))
    assert ((ca > cb) - (ca < cb)) == compare_alnum(a, b)


def test_store_numeric_into_alphanumeric_uses_display_digits():
    assert store(Fraction(-42), resolve_pic("X(5)"), resolve_pic("S9(3)")) == "042  "
    assert store("TOOLONG", resolve_pic("X(3)")) == "TOO"
    with pytest.raises(TypeError):
        store("A", resolve_pic("9(2)"))
