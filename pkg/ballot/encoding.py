"""
JSON encoding of exact rationals.

A rational is rendered as {"num": "<int>", "den": "<int>", "decimal": "<text>"};
num and den are strings so arbitrarily large integers survive any JSON parser.
The decimal field is for display only and is never read back.
"""

from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional

from ballot.config import Config
from ballot.errors import ParseError


def format_decimal(x: Fraction, places: Optional[int] = None) -> str:
    places = Config.DECIMAL_PLACES if places is None else places
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = places + len(str(abs(x.numerator // x.denominator))) + 2
        value = Decimal(x.numerator) / Decimal(x.denominator)
        text = format(value.quantize(Decimal(1).scaleb(-places)), "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def ratio_json(x: Optional[Fraction]):
    if x is None:
        return None
    x = Fraction(x)
    return {
        "num": str(x.numerator),
        "den": str(x.denominator),
        "decimal": format_decimal(x),
    }


def ratio_from_json(payload) -> Fraction:
    try:
        return Fraction(int(payload["num"]), int(payload["den"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise ParseError(f"not an encoded rational: {payload!r} ({e})") from None
