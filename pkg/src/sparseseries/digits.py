"""Base-k codecs for naturals and for k-adic rationals with a radix point.

Words are strings over '0'..'k-1' plus the radix glyph '.'.  A word is a
valid expansion when it is nonempty, starts and ends with a nonzero symbol
(the radix glyph counts as nonzero), and contains exactly one radix point.
Every k-adic rational m/k^e >= 0 has exactly one valid expansion; 0 is ".".
"""

from __future__ import annotations

from fractions import Fraction

RADIX = "."

MAX_BASE = 10  # digit symbols are single characters '0'..'9'


class DigitError(ValueError):
    pass


def check_base(k: int) -> None:
    if not 2 <= k <= MAX_BASE:
        raise DigitError(f"base must be in [2, {MAX_BASE}], got {k}")


def digit_alphabet(k: int, radix: bool = False) -> str:
    check_base(k)
    syms = "".join(chr(ord("0") + d) for d in range(k))
    return syms + RADIX if radix else syms


def encode_nat(n: int, k: int) -> str:
    """Base-k word of n, most significant digit first; 0 is the empty word."""
    check_base(k)
    if n < 0:
        raise DigitError(f"cannot encode negative {n}")
    out = []
    while n:
        out.append(chr(ord("0") + n % k))
        n //= k
    return "".join(reversed(out))


def decode_nat(w: str, k: int) -> int:
    """Inverse of encode_nat; rejects leading zeros and foreign symbols."""
    check_base(k)
    if w.startswith("0"):
        raise DigitError(f"leading zero in {w!r}")
    return word_value(w, k)


def word_value(w: str, k: int) -> int:
    """Positional value of a radix-free word; leading zeros allowed."""
    check_base(k)
    out = 0
    for ch in w:
        d = ord(ch) - ord("0")
        if not 0 <= d < k:
            raise DigitError(f"symbol {ch!r} not a base-{k} digit")
        out = out * k + d
    return out


def is_valid_expansion(w: str, k: int) -> bool:
    """Membership in the language of valid base-k expansions."""
    check_base(k)
    if not w or w.count(RADIX) != 1:
        return False
    if w[0] == "0" or w[-1] == "0":
        return False
    return all(ch == RADIX or 0 <= ord(ch) - ord("0") < k for ch in w)


def radix_value(w: str, k: int) -> Fraction:
    """Positional value of a word with at most one radix point.

    Leading and trailing zeros are allowed; a radix-free word is read as an
    integer.  This is the value map extended beyond valid expansions."""
    check_base(k)
    if w.count(RADIX) > 1:
        raise DigitError(f"multiple radix points in {w!r}")
    if RADIX in w:
        pre, post = w.split(RADIX)
    else:
        pre, post = w, ""
    val = Fraction(word_value(pre, k))
    if post:
        val += Fraction(word_value(post, k), k ** len(post))
    return val


def sp_parts(x, p: int):
    """Write x in S_p as (numerator, e) with x = numerator / p^e, e minimal."""
    check_base(p)
    x = Fraction(x)
    if x < 0:
        raise DigitError(f"{x} is negative, not in S_{p}")
    num, den = x.numerator, x.denominator
    e = 0
    while den > 1:
        if den % p:
            raise DigitError(f"{x} is not in S_{p}: denominator not a power of {p}")
        den //= p
        e += 1
    return num, e


def encode_sp(x, p: int) -> str:
    """The unique valid base-p expansion of x in S_p; 0 encodes as '.'."""
    num, e = sp_parts(x, p)
    intpart, rem = divmod(num, p ** e)
    frac = encode_nat(rem, p).rjust(e, "0") if e else ""
    return encode_nat(intpart, p) + RADIX + frac


def decode_sp(w: str, p: int) -> Fraction:
    """Inverse of encode_sp; rejects anything outside the valid-expansion language."""
    if not is_valid_expansion(w, p):
        raise DigitError(f"{w!r} is not a valid base-{p} expansion")
    return radix_value(w, p)


def word_to_json(w: str) -> list:
    return ["radix" if ch == RADIX else ch for ch in w]


def word_from_json(symbols) -> str:
    out = []
    for s in symbols:
        if s == "radix":
            out.append(RADIX)
        elif isinstance(s, str) and len(s) == 1:
            out.append(s)
        elif isinstance(s, int):
            out.append(chr(ord("0") + s))
        else:
            raise DigitError(f"bad word symbol {s!r}")
    return "".join(out)
