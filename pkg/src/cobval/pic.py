"""PIC clause typing and the fixed-point value semantics every stage shares.

Numeric values travel as :class:`fractions.Fraction`; alphanumeric values as
``str`` padded to the item length.  Store-back into a numeric item truncates
toward zero at the item scale and drops high-order digits (no ON SIZE ERROR).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import MalformedPicture

NUMERIC = "numeric"
ALPHANUMERIC = "alphanumeric"

# printable ASCII, the alphabet of generated strings
CHAR_LO = 0x20
CHAR_HI = 0x7E
RADIX = CHAR_HI - CHAR_LO + 1


@dataclass(frozen=True)
class PicType:
    category: str
    signed: bool = False
    int_digits: int = 0
    frac_digits: int = 0
    length: int = 0

    @property
    def is_numeric(self):
        return self.category == NUMERIC

    @property
    def scale(self):
        return self.frac_digits if self.is_numeric else 0

    def max_scaled(self):
        """Largest stored magnitude as a scaled integer."""
        if self.is_numeric:
            return 10 ** (self.int_digits + self.frac_digits) - 1
        return RADIX ** self.length - 1

    def scaled_bounds(self):
        hi = self.max_scaled()
        lo = -hi if (self.is_numeric and self.signed) else 0
        return lo, hi

    def value_bounds(self):
        lo, hi = self.scaled_bounds()
        return Fraction(lo, 10 ** self.scale), Fraction(hi, 10 ** self.scale)

    def default(self):
        return Fraction(0) if self.is_numeric else " " * self.length

    def picture(self):
        if not self.is_numeric:
            return f"X({self.length})"
        text = "S" if self.signed else ""
        if self.int_digits:
            text += f"9({self.int_digits})"
        if self.frac_digits:
            text += f"V9({self.frac_digits})"
        return text

    def to_json(self):
        if self.is_numeric:
            return {"category": NUMERIC, "signed": self.signed,
                    "intDigits": self.int_digits, "fracDigits": self.frac_digits}
        return {"category": ALPHANUMERIC, "length": self.length}

    @classmethod
    def from_json(cls, data):
        if data["category"] == NUMERIC:
            return cls(NUMERIC, data.get("signed", False), data["intDigits"], data.get("fracDigits", 0))
        return cls(ALPHANUMERIC, length=data["length"])


_PIC_RUN = re.compile(r"([9XV])(?:\((\d+)\))?")


def resolve_pic(picture: str) -> PicType:
    """Canonicalize a picture string such as ``S9(4)V99`` or ``X(8)``."""
    text = picture.strip().upper()
    if not text:
        raise MalformedPicture("empty picture")
    signed = text.startswith("S")
    body = text[1:] if signed else text
    counts = {"9": [0, 0], "X": 0}
    seen_v = False
    pos = 0
    while pos < len(body):
        m = _PIC_RUN.match(body, pos)
        if not m:
            raise MalformedPicture(f"bad picture {picture!r}")
        sym, rep = m.group(1), m.group(2)
        n = int(rep) if rep is not None else 1
        if sym == "V":
            if seen_v or rep is not None:
                raise MalformedPicture(f"bad V in {picture!r}")
            seen_v = True
        else:
            if n < 1:
                raise MalformedPicture(f"zero repetition in {picture!r}")
            if sym == "9":
                counts["9"][1 if seen_v else 0] += n
            else:
                counts["X"] += n
        pos = m.end()
    nines = counts["9"]
    if counts["X"]:
        if nines[0] or nines[1] or signed or seen_v:
            raise MalformedPicture(f"mixed picture {picture!r}")
        return PicType(ALPHANUMERIC, length=counts["X"])
    if nines[0] + nines[1] < 1:
        raise MalformedPicture(f"no digits in {picture!r}")
    if nines[0] + nines[1] > 18:
        raise MalformedPicture(f"more than 18 digits in {picture!r}")
    return PicType(NUMERIC, signed, nines[0], nines[1])


def store_numeric(value, pic: PicType) -> Fraction:
    scaled = int(Fraction(value) * 10 ** pic.frac_digits)
    if not pic.signed:
        scaled = abs(scaled)
    modulus = 10 ** (pic.int_digits + pic.frac_digits)
    mag = abs(scaled) % modulus
    return Fraction(-mag if scaled < 0 else mag, 10 ** pic.frac_digits)


def store_alnum(text: str, length: int) -> str:
    return text[:length].ljust(length)


def numeric_text(value: Fraction, digits: int, frac: int) -> str:
    """Unsigned display digits of a numeric value, as moved into alphanumeric storage."""
    scaled = abs(int(Fraction(value) * 10 ** frac))
    return str(scaled % 10 ** (digits + frac)).zfill(digits + frac)


def store(value, pic: PicType, source_pic: PicType | None = None):
    if pic.is_numeric:
        if isinstance(value, str):
            raise TypeError("alphanumeric value stored into numeric item")
        return store_numeric(value, pic)
    if isinstance(value, str):
        return store_alnum(value, pic.length)
    if source_pic is not None and source_pic.is_numeric:
        text = numeric_text(value, source_pic.int_digits, source_pic.frac_digits)
    else:
        text = literal_digits(value)
    return store_alnum(text, pic.length)


def literal_digits(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(abs(value.numerator))
    frac = 0
    while (value * 10 ** frac).denominator != 1:
        frac += 1
    return numeric_text(value, len(str(int(abs(value)))), frac)


def compare_alnum(a: str, b: str) -> int:
    width = max(len(a), len(b))
    a, b = a.ljust(width), b.ljust(width)
    return (a > b) - (a < b)


def encode_value(value, pic: PicType) -> str:
    """Scale-preserving text for a stored value, e.g. ``0012.50``."""
    if not pic.is_numeric:
        return store_alnum(value, pic.length)
    scaled = int(Fraction(value) * 10 ** pic.frac_digits)
    digits = str(abs(scaled)).zfill(pic.int_digits + pic.frac_digits)
    if pic.frac_digits:
        head, tail = digits[: len(digits) - pic.frac_digits], digits[len(digits) - pic.frac_digits:]
        text = f"{head}.{tail}" if head else f".{tail}"
    else:
        text = digits
    return ("-" + text) if scaled < 0 else text


def decode_value(text: str, pic: PicType):
    if not pic.is_numeric:
        return store_alnum(text, pic.length)
    return store_numeric(Fraction(text.strip() or "0"), pic)


def string_code(text: str) -> int:
    code = 0
    for ch in text:
        o = ord(ch)
        if not CHAR_LO <= o <= CHAR_HI:
            raise ValueError(f"character {ch!r} outside printable ASCII")
        code = code * RADIX + (o - CHAR_LO)
    return code


def code_string(code: int, length: int) -> str:
    chars = []
    for _ in range(length):
        code, digit = divmod(code, RADIX)
        chars.append(chr(CHAR_LO + digit))
    return "".join(reversed(chars))
