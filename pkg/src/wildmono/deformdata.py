"""Deformation data at the level of signatures.

A datum is a list of critical points (h, m) with, for wild points, the
per-level invariants sigma_{1,w}..sigma_{n_w,w}. Nothing about the actual
differential form is stored.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .numtheory import parse_rational, require_prime
from .ramification import NonIntegralDifferent, UpperJumps, different_degree_upper


class InvalidDelta(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


class NonIntegralGenus(ValueError):
    pass


@dataclass(frozen=True)
class CriticalPoint:
    name: str
    kind: str  # 'tame' | 'wild'
    h: int
    m: int
    n_w: int = 0
    wild_sigmas: tuple = ()

    def __post_init__(self):
        if self.kind not in ("tame", "wild"):
            raise ValueError(f"kind must be tame or wild, not {self.kind!r}")
        if self.m < 1:
            raise ValueError("m must be positive")
        if (self.h, self.m) == (1, 1):
            raise ValueError(f"{self.name}: signature (1, 1) is not a critical point")
        object.__setattr__(self, "wild_sigmas", tuple(Fraction(s) for s in self.wild_sigmas))
        if self.kind == "tame" and (self.n_w or self.wild_sigmas):
            raise ValueError(f"{self.name}: tame point with wild data")
        if self.kind == "wild" and len(self.wild_sigmas) != self.n_w:
            raise ValueError(f"{self.name}: expected {self.n_w} wild sigmas")

    @property
    def sigma(self) -> Fraction:
        return Fraction(self.h, self.m)

    @property
    def branch_specialization(self) -> bool:
        # sigma = 0 marks the specialization of a wild branch point
        return self.h == 0


@dataclass(frozen=True)
class DeformationDatum:
    p: int
    reduction_type: str  # 'multiplicative' | 'additive'
    base_genus: int
    cover_degree: int
    mu: int
    points: tuple = field(default_factory=tuple)

    def __post_init__(self):
        require_prime(self.p)
        if self.reduction_type not in ("multiplicative", "additive"):
            raise ValueError(f"bad reduction type {self.reduction_type!r}")
        if self.base_genus < 0 or self.cover_degree < 1 or self.mu < 1:
            raise ValueError("genus must be >= 0, degree and mu positive")
        object.__setattr__(self, "points", tuple(self.points))
        for w in self.points:
            e = self.p ** w.n_w * w.m
            if self.cover_degree % e:
                raise ValueError(f"{w.name}: degree {self.cover_degree} not divisible by {e}")


@dataclass(frozen=True)
class TorsorReduction:
    delta: Fraction
    e: int
    p: int
    classification: str  # 'multiplicative' | 'additive' | 'etale'
    n_param: int | None = None


def classify_torsor(delta, e: int, p: int) -> TorsorReduction:
    delta = Fraction(delta)
    require_prime(p)
    if not 0 <= delta <= 1:
        raise InvalidDelta(f"delta={delta} outside [0, 1]")
    if delta == 1:
        return TorsorReduction(delta, e, p, "multiplicative")
    n = e * (1 - delta) / (p - 1)
    bound = Fraction(e, p - 1)
    if n.denominator != 1 or not 0 < n <= bound:
        raise InvalidDelta(f"delta={delta} gives n={n}, not an integer in (0, {bound}]")
    if delta == 0:
        return TorsorReduction(delta, e, p, "etale", int(n))
    return TorsorReduction(delta, e, p, "additive", int(n))


def check_denominators(d: DeformationDatum) -> bool:
    return all(d.mu % w.sigma.denominator == 0 for w in d.points if w.kind == "tame")


def local_raw_terms(d: DeformationDatum):
    """(lhs, rhs) of the raw local identity."""
    p = d.p
    lhs = Fraction(0)
    for w in d.points:
        if w.kind == "wild":
            lhs += w.sigma / p ** w.n_w - 1
            lhs -= sum(Fraction(p - 1, p ** i) * s for i, s in enumerate(w.wild_sigmas, 1))
        else:
            lhs += w.sigma - 1
    return lhs, Fraction(2 * d.base_genus - 2)


def check_local_raw(d: DeformationDatum) -> bool:
    lhs, rhs = local_raw_terms(d)
    return lhs == rhs


def wild_upper_jumps(w: CriticalPoint) -> UpperJumps:
    # sigma_{1,w} belongs to the top level, so reversed they increase
    return UpperJumps(tuple(reversed(w.wild_sigmas)))


def genus_consistency(d: DeformationDatum):
    """2g_V - 2 by Riemann-Hurwitz and by counting zeros of the form."""
    deg, p = d.cover_degree, d.p
    hurwitz = deg * (2 * d.base_genus - 2)
    differential = 0
    for w in d.points:
        e = p ** w.n_w * w.m
        if w.kind == "tame":
            diff = w.m - 1
        else:
            try:
                diff = different_degree_upper(p, w.n_w, w.m, wild_upper_jumps(w))
            except (NonIntegralDifferent, ValueError) as exc:
                raise NonIntegralGenus(f"{w.name}: {exc}") from exc
        hurwitz += deg // e * diff
        differential += Fraction(deg, e) * (w.h - 1)
    if differential.denominator != 1:
        raise NonIntegralGenus(f"zero count {differential} is not an integer")
    return hurwitz, int(differential)


def datum_violations(d: DeformationDatum) -> list:
    """(rule, detail) pairs for the checks that apply to a single datum."""
    out = []
    for w in d.points:
        if w.kind == "tame" and d.mu % w.sigma.denominator:
            out.append(("tame-denominator", f"{w.name}: sigma={w.sigma} not in (1/{d.mu})Z"))
        if w.branch_specialization and d.reduction_type != "multiplicative":
            out.append(("branch-specialization-multiplicative",
                        f"{w.name}: sigma=0 point on a {d.reduction_type} datum"))
    lhs, rhs = local_raw_terms(d)
    if lhs != rhs:
        out.append(("local-raw-formula", f"lhs {lhs} != 2g-2 = {rhs}"))
    return out


def node_compatibility(upper_h, lower_h, r: int, r_prime: int, node_filtration=None) -> bool:
    """Matching of the h-invariants on the two sides of a node."""
    upper_h, lower_h = list(upper_h), list(lower_h)
    if r < r_prime or len(upper_h) != r or len(lower_h) != r_prime:
        raise LengthMismatch(f"need len(upper)={r} >= len(lower)={r_prime}; "
                             f"got {len(upper_h)}, {len(lower_h)}")
    for ip in range(1, r_prime + 1):
        if upper_h[ip + r - r_prime - 1] != -lower_h[ip - 1]:
            return False
    if r > r_prime:
        if node_filtration is None or len(node_filtration.lower_jumps) < r - r_prime:
            raise LengthMismatch(f"need a filtration with at least {r - r_prime} jumps")
        for i in range(1, r - r_prime + 1):
            if upper_h[i - 1] != node_filtration.lower_jumps[i - 1]:
                return False
    return True


def datum_from_json(doc: dict) -> DeformationDatum:
    pts = []
    for i, w in enumerate(doc.get("points", [])):
        pts.append(CriticalPoint(
            name=str(w.get("name", f"w{i}")),
            kind=w["kind"],
            h=int(w["h"]),
            m=int(w["m"]),
            n_w=int(w.get("n_w", 0)),
            wild_sigmas=tuple(parse_rational(s) for s in w.get("wild_sigmas", [])),
        ))
    return DeformationDatum(
        p=int(doc["p"]),
        reduction_type=doc.get("reduction_type", "multiplicative"),
        base_genus=int(doc.get("genus", doc.get("base_genus", 0))),
        cover_degree=int(doc["cover_degree"]),
        mu=int(doc["mu"]),
        points=tuple(pts),
    )
