import hashlib
import json
import re
from fractions import Fraction

from .exceptions import BadScalar

SCALAR_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_scalar(token):
    """Exact rational from an int or a "p", "p/q", "-p/q" string; q must be positive."""
    if isinstance(token, bool):
        raise BadScalar(token)
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, Fraction):
        return token
    if not isinstance(token, str):
        raise BadScalar(token)
    text = token.strip()
    if not SCALAR_PATTERN.match(text):
        raise BadScalar(token)
    if "/" in text:
        numerator, denominator = text.split("/")
        if int(denominator) == 0:
            raise BadScalar(token)
        return Fraction(int(numerator), int(denominator))
    return Fraction(int(text))


def format_scalar(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_matrix(m):
    return [[format_scalar(x) for x in row] for row in m.to_lists()]


def canonical_json(payload):
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2)


def checksum(payload):
    """SHA-256 of the canonical JSON form of ``payload``."""
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()
