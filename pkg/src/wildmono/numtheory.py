"""Small integer helpers shared across modules."""
from fractions import Fraction

from sympy import factorint, isprime


def vp(x, p):
    """p-adic valuation of a nonzero integer or rational."""
    if x == 0:
        raise ValueError("valuation of zero")
    if isinstance(x, Fraction):
        return vp(x.numerator, p) - vp(x.denominator, p)
    x = abs(int(x))
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def prime_power(q):
    """Return (p, k) with q = p**k, or None."""
    if q < 2:
        return None
    f = factorint(q)
    if len(f) != 1:
        return None
    (p, k), = f.items()
    return p, k


def is_prime_power(q):
    return prime_power(q) is not None


def require_prime(p, what="p"):
    if not isinstance(p, int) or not isprime(p):
        raise ValueError(f"{what}={p!r} is not a prime")
    return p


def parse_rational(text):
    """Parse 'a/b' or 'a' exactly. Decimals are refused on purpose."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(s)


def fmt_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
