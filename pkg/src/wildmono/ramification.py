"""Higher ramification jumps of Z/p^n x| Z/m local extensions.

Everything is exact: jumps are ints (lower) or Fractions (upper). The
lower numbering is the stored form, upper jumps are always derived.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .numtheory import require_prime


class NotIntegralLowerJumps(ValueError):
    pass


class NonIntegralDifferent(ValueError):
    pass


class NotTame(ValueError):
    pass


class TauExceedsSigma(ValueError):
    pass


class AlphaOutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class RamFiltration:
    p: int
    n: int
    m: int
    lower_jumps: tuple

    def __post_init__(self):
        require_prime(self.p)
        if self.n < 1 or self.m < 1 or gcd(self.m, self.p) != 1:
            raise ValueError(f"need n >= 1 and m prime to p (n={self.n}, m={self.m})")
        js = tuple(self.lower_jumps)
        object.__setattr__(self, "lower_jumps", js)
        if len(js) != self.n:
            raise ValueError(f"expected {self.n} lower jumps, got {len(js)}")
        prev = 0
        for j in js:
            if not isinstance(j, int) or j <= prev:
                raise ValueError(f"lower jumps must be strictly increasing positive ints: {js}")
            prev = j


@dataclass(frozen=True)
class UpperJumps:
    values: tuple

    def __post_init__(self):
        vs = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vs)
        prev = Fraction(0)
        for v in vs:
            if v <= prev:
                raise ValueError(f"upper jumps must be strictly increasing and positive: {vs}")
            prev = v

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def lower_to_upper(f: RamFiltration) -> UpperJumps:
    p, m = f.p, f.m
    out = []
    u = Fraction(0)
    prev = 0
    for k, j in enumerate(f.lower_jumps):
        u += Fraction(j - prev, m * p ** k)
        out.append(u)
        prev = j
    return UpperJumps(tuple(out))


def upper_to_lower(p: int, n: int, m: int, upper) -> RamFiltration:
    if not isinstance(upper, UpperJumps):
        upper = UpperJumps(tuple(upper))
    if len(upper) != n:
        raise ValueError(f"expected {n} upper jumps, got {len(upper)}")
    js = []
    j = Fraction(0)
    prev = Fraction(0)
    for k, u in enumerate(upper.values):
        j += m * p ** k * (u - prev)
        prev = u
        if j.denominator != 1:
            raise NotIntegralLowerJumps(f"lower jump {k + 1} would be {j}")
        js.append(int(j))
    return RamFiltration(p, n, m, tuple(js))


def different_degree_lower(f: RamFiltration) -> int:
    """Degree of the different, from the lower jumps (two forms, checked equal)."""
    p, n, m = f.p, f.n, f.m
    base = p ** n * m - 1
    a = base + sum(j * p ** (n - i) * (p - 1) for i, j in enumerate(f.lower_jumps, 1))
    b = base
    prev = 0
    for i, j in enumerate(f.lower_jumps, 1):
        b += (p ** (n - i + 1) - 1) * (j - prev)
        prev = j
    if a != b:
        raise AssertionError(f"different forms disagree: {a} != {b}")
    return a


def different_degree_upper(p: int, n: int, m: int, upper) -> int:
    if not isinstance(upper, UpperJumps):
        upper = UpperJumps(tuple(upper))
    total = Fraction(p ** n * m - 1)
    prev = Fraction(0)
    for i, u in enumerate(upper.values, 1):
        total += m * p ** (i - 1) * (p ** (n - i + 1) - 1) * (u - prev)
        prev = u
    if total.denominator != 1:
        raise NonIntegralDifferent(f"different degree {total} is not an integer")
    return int(total)


def tame_different(e: int, p: int) -> int:
    if e < 1:
        raise ValueError("ramification index must be positive")
    if e % p == 0:
        raise NotTame(f"{e} is divisible by p={p}")
    return e - 1


def conductor(f: RamFiltration) -> Fraction:
    return lower_to_upper(f).values[-1]


def conductor_weighted(f: RamFiltration) -> Fraction:
    """The conductor as a weighted sum of lower jumps.

    Telescoping the upper-jump sum gives
    sum_{i<n} (p-1) j_i / (p^i m) + j_n / (p^(n-1) m).
    """
    p, n, m = f.p, f.n, f.m
    js = f.lower_jumps
    s = sum(Fraction((p - 1) * js[i - 1], p ** i * m) for i in range(1, n))
    return s + Fraction(js[-1], p ** (n - 1) * m)


def compositum_conductor(sigma, tau, p: int) -> Fraction:
    sigma, tau = Fraction(sigma), Fraction(tau)
    if tau > sigma:
        raise TauExceedsSigma(f"tau={tau} exceeds sigma={sigma}")
    return tau + p * (sigma - tau)


def effective_weights(p: int, r: int, alpha: int) -> list:
    """Weights on sigma_1..sigma_{r-alpha} (they sum to 1)."""
    if not 0 <= alpha < r:
        raise AlphaOutOfRange(f"alpha={alpha} not in [0, {r})")
    k = r - alpha
    w = [Fraction(p - 1, p ** i) for i in range(1, k)]
    w.append(Fraction(1, p ** (k - 1)))
    return w


def effective_invariant(p: int, sigmas, alpha: int = 0) -> Fraction:
    sigmas = [Fraction(s) for s in sigmas]
    w = effective_weights(p, len(sigmas), alpha)
    assert sum(w) == 1
    return sum((a * b for a, b in zip(w, sigmas)), Fraction(0))


def validate_hasse_arf(upper, m: int) -> bool:
    vals = upper.values if isinstance(upper, UpperJumps) else upper
    return all(m % Fraction(u).denominator == 0 for u in vals)
