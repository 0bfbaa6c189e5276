"""Finite groups with a cyclic p-Sylow subgroup.

Groups are given by a GroupSpec (a kind plus generators in that kind's
native encoding) and enumerated by closure. Matrix groups go through the
kernels in :mod:`wildmono.kernels`; everything else is plain Python.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

from .fields import GF
from .kernels import MatrixKernel
from .numtheory import prime_power, require_prime, vp

DEFAULT_ORDER_CAP = 2_000_000


class OrderCapExceeded(RuntimeError):
    pass


class NoNormalPSubgroup(ValueError):
    pass


class NoSuchTraces(ValueError):
    pass


class GenerationUnverified(RuntimeError):
    pass


KINDS = ("perm", "sl2", "pgl3", "cyclic", "semidirect", "direct")


@dataclass(frozen=True)
class GroupSpec:
    """A finite group by kind and generators.

    Native encodings: perm -> tuple of 0-based images; sl2 -> (a, b, c, d)
    row-major over GF(q) codes; pgl3 -> 9-tuple scaled so the first nonzero
    entry is 1; cyclic -> int; semidirect -> (x, y) meaning x in Z/n, y in
    Z/m; direct -> tuple with one entry per factor.
    """

    kind: str
    generators: tuple = ()
    order_cap: int = DEFAULT_ORDER_CAP
    q: int | None = None
    params: tuple = ()
    factors: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.order_cap < 1:
            raise ValueError("order_cap must be positive")
        _validate(self)

    # constructors
    @classmethod
    def cyclic(cls, k, order_cap=DEFAULT_ORDER_CAP):
        if k < 1:
            raise ValueError("cyclic order must be positive")
        return cls("cyclic", (1 % k,), order_cap, params=(k,))

    @classmethod
    def semidirect(cls, n, m, action, order_cap=DEFAULT_ORDER_CAP):
        """Z/n x| Z/m where the generator of Z/m acts by x -> action*x."""
        return cls("semidirect", ((1 % n, 0), (0, 1 % m)), order_cap, params=(n, m, action % n))

    @classmethod
    def direct(cls, *factors, order_cap=DEFAULT_ORDER_CAP):
        gens = []
        ids = [_build(f).identity for f in factors]
        for i, f in enumerate(factors):
            for g in f.generators:
                e = list(ids)
                e[i] = g
                gens.append(tuple(e))
        return cls("direct", tuple(gens), order_cap, factors=tuple(factors))

    @classmethod
    def perm(cls, generators, degree=None, order_cap=DEFAULT_ORDER_CAP):
        gens = [tuple(g) for g in generators]
        deg = degree or max((len(g) for g in gens), default=1)
        gens = tuple(g + tuple(range(len(g), deg)) for g in gens)
        return cls("perm", gens, order_cap, params=(deg,))

    @classmethod
    def sl2(cls, q, order_cap=DEFAULT_ORDER_CAP):
        F = GF(q)
        gens = []
        for x in F.basis():
            gens.append((1, x, 0, 1))
            gens.append((1, 0, x, 1))
        return cls("sl2", tuple(gens), order_cap, q=q)

    @classmethod
    def pgl3(cls, q, order_cap=DEFAULT_ORDER_CAP):
        F = GF(q)
        gens = []
        for i in range(3):
            for j in range(3):
                if i != j:
                    for x in F.basis():
                        m = [1, 0, 0, 0, 1, 0, 0, 0, 1]
                        m[3 * i + j] = x
                        gens.append(tuple(m))
        g = F.primitive_element
        if g != 1:
            gens.append(_pgl3_normalize(F, (g, 0, 0, 0, 1, 0, 0, 0, 1)))
        return cls("pgl3", tuple(gens), order_cap, q=q)

    @property
    def theoretical_order(self):
        if self.kind == "sl2":
            q = self.q
            return q * (q - 1) * (q + 1)
        if self.kind == "pgl3":
            q = self.q
            return q ** 3 * (q ** 3 - 1) * (q ** 2 - 1)
        if self.kind == "cyclic":
            return self.params[0]
        if self.kind == "semidirect":
            return self.params[0] * self.params[1]
        if self.kind == "direct":
            out = 1
            for f in self.factors:
                t = f.theoretical_order
                if t is None:
                    return None
                out *= t
            return out
        return None

    def describe(self):
        if self.kind in ("sl2", "pgl3"):
            return f"{self.kind.upper()}({self.q})"
        if self.kind == "cyclic":
            return f"Z/{self.params[0]}"
        if self.kind == "semidirect":
            n, m, s = self.params
            return f"Z/{n} x| Z/{m} (action {s})"
        if self.kind == "direct":
            return " x ".join(f"({f.describe()})" for f in self.factors)
        return f"perm group of degree {self.params[0]} on {len(self.generators)} generators"


def _pgl3_normalize(F, m):
    for x in m:
        if x:
            if x == 1:
                return tuple(m)
            s = F.inv(x)
            return tuple(F.mul(y, s) for y in m)
    raise ValueError("zero matrix")


def _det2(F, a, b, c, d):
    return F.sub(F.mul(a, d), F.mul(b, c))


def _det3(F, m):
    a = m
    t1 = F.mul(a[0], F.sub(F.mul(a[4], a[8]), F.mul(a[5], a[7])))
    t2 = F.mul(a[1], F.sub(F.mul(a[3], a[8]), F.mul(a[5], a[6])))
    t3 = F.mul(a[2], F.sub(F.mul(a[3], a[7]), F.mul(a[4], a[6])))
    return F.add(F.sub(t1, t2), t3)


def _validate(spec):
    k = spec.kind
    if k == "perm":
        deg = spec.params[0] if spec.params else None
        for g in spec.generators:
            if sorted(g) != list(range(len(g))) or (deg is not None and len(g) != deg):
                raise ValueError(f"not a permutation: {g}")
    elif k in ("sl2", "pgl3"):
        if spec.q is None or prime_power(spec.q) is None:
            raise ValueError(f"q={spec.q} is not a prime power")
        F = GF(spec.q)
        size = 4 if k == "sl2" else 9
        for g in spec.generators:
            if len(g) != size or any(not 0 <= x < spec.q for x in g):
                raise ValueError(f"bad matrix encoding {g}")
            if k == "sl2" and _det2(F, *g) != 1:
                raise ValueError(f"determinant is not 1: {g}")
            if k == "pgl3":
                if _det3(F, g) == 0:
                    raise ValueError(f"singular matrix: {g}")
                if _pgl3_normalize(F, g) != tuple(g):
                    raise ValueError(f"PGL3 element not in canonical scaling: {g}")
    elif k == "semidirect":
        n, m, s = spec.params
        if n < 1 or m < 1 or gcd(s, n) != 1 or pow(s, m, n) != 1 % n:
            raise ValueError(f"action {s} does not define Z/{n} x| Z/{m}")


# ---------------------------------------------------------------- text format

_KIND_RE = re.compile(r"^\s*(\w+)\s*(.*)$")


def parse_group_spec(text, order_cap=DEFAULT_ORDER_CAP):
    """Parse e.g. 'sl2 q=251', 'perm (1 2 3)(4 5); (1 2)', 'cyclic 15',
    'semidirect 5 4 action=2' or 'direct cyclic 3 * semidirect 5 4 action=2'."""
    mt = _KIND_RE.match(text)
    if not mt:
        raise ValueError(f"cannot parse group spec {text!r}")
    kind, rest = mt.group(1).lower(), mt.group(2).strip()
    if kind == "direct":
        parts = [s for s in rest.split("*") if s.strip()]
        if len(parts) < 2:
            raise ValueError("direct product needs at least two factors separated by '*'")
        return GroupSpec.direct(*(parse_group_spec(s, order_cap) for s in parts), order_cap=order_cap)
    if kind in ("sl2", "pgl3"):
        mq = re.fullmatch(r"q\s*=\s*(\d+)", rest)
        if not mq:
            raise ValueError(f"expected 'q=<prime power>' after {kind}")
        q = int(mq.group(1))
        return GroupSpec.sl2(q, order_cap) if kind == "sl2" else GroupSpec.pgl3(q, order_cap)
    if kind == "cyclic":
        return GroupSpec.cyclic(int(rest), order_cap)
    if kind == "semidirect":
        ms = re.fullmatch(r"(\d+)\s+(\d+)\s+action\s*=\s*(\d+)", rest)
        if not ms:
            raise ValueError("expected 'semidirect <n> <m> action=<s>'")
        n, m, s = map(int, ms.groups())
        return GroupSpec.semidirect(n, m, s, order_cap)
    if kind == "perm":
        cyc_lists = []
        for chunk in rest.split(";"):
            cycles = [list(map(int, c.split())) for c in re.findall(r"\(([^)]*)\)", chunk)]
            if not cycles and chunk.strip():
                raise ValueError(f"bad permutation {chunk!r}")
            cyc_lists.append(cycles)
        deg = max((x for cl in cyc_lists for c in cl for x in c), default=1)
        gens = []
        for cycles in cyc_lists:
            img = list(range(deg))
            for c in cycles:
                if len(set(c)) != len(c) or min(c, default=1) < 1:
                    raise ValueError(f"bad cycle {c}")
                for a, b in zip(c, c[1:] + c[:1]):
                    img[a - 1] = b - 1
            gens.append(tuple(img))
        return GroupSpec.perm(gens, deg, order_cap)
    raise ValueError(f"unknown group kind {kind!r}")


# ---------------------------------------------------------------- concrete groups


class _Group:
    """Enumerated group with internal element representation."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        k = spec.kind
        self.kernel = None
        if k in ("sl2", "pgl3"):
            F = GF(spec.q)
            self.field = F
            dim = 2 if k == "sl2" else 3
            self.kernel = MatrixKernel(dim, spec.q, F.add_table, F.mul_table, F.neg_table,
                                       F.inv_table, k == "pgl3")
            self.identity = self.encode((1, 0, 0, 1) if dim == 2 else (1, 0, 0, 0, 1, 0, 0, 0, 1))
            self.gens = [self.encode(g) for g in spec.generators]
        else:
            self.identity = _identity(spec)
            self.gens = list(spec.generators)

    def encode(self, t):
        if self.kernel is None:
            return t
        code = 0
        for x in reversed(t):
            code = code * self.spec.q + x
        return code

    def decode(self, x):
        if self.kernel is None:
            return x
        out = []
        for _ in range(len(self.spec.generators[0]) if self.spec.generators else 4):
            x, r = divmod(x, self.spec.q)
            out.append(r)
        return tuple(out)

    def mul(self, a, b):
        if self.kernel is not None:
            return self.kernel.mul(a, b)
        return _mul(self.spec, a, b)

    def inv(self, a):
        if self.kernel is not None:
            return self.kernel.inverse(a)
        return _inv(self.spec, a)

    def power(self, a, k):
        if self.kernel is not None:
            return self.kernel.power(a, k, self.identity)
        r = self.identity
        while k:
            if k & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            k >>= 1
        return r

    def closure(self, gens, cap=None):
        cap = self.spec.order_cap if cap is None else cap
        if self.kernel is not None:
            return self.kernel.closure(gens, self.identity, cap)
        queue = [self.identity]
        seen = {self.identity}
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    if len(queue) > cap:
                        return None
        return queue

    @cached_property
    def elements(self):
        els = self.closure(self.gens)
        if els is None:
            raise OrderCapExceeded(
                f"{self.spec.describe()} has more than {self.spec.order_cap} elements")
        return els

    @cached_property
    def order(self):
        return len(self.elements)

    def element_order(self, x, bound=None):
        bound = bound or self.order
        if self.kernel is not None:
            return self.kernel.orders([x], self.identity, bound)[0]
        y, k = x, 1
        while y != self.identity:
            y = self.mul(y, x)
            k += 1
            if k > bound:
                return 0
        return k

    @cached_property
    def orders(self):
        if self.kernel is not None:
            return self.kernel.orders(self.elements, self.identity, self.order)
        return [self.element_order(x) for x in self.elements]

    def conj(self, g, x):
        return self.mul(self.mul(g, x), self.inv(g))

    def conj_counts(self, x, pset):
        if self.kernel is not None:
            return self.kernel.conj_counts(self.elements, x, pset)
        nn = nc = 0
        for g in self.elements:
            c = self.conj(g, x)
            if c in pset:
                nn += 1
                if c == x:
                    nc += 1
        return nn, nc

    def cyclic_subgroup(self, x):
        out = [self.identity]
        y = x
        while y != self.identity:
            out.append(y)
            y = self.mul(y, x)
        return out


def _identity(spec):
    k = spec.kind
    if k == "perm":
        return tuple(range(spec.params[0]))
    if k == "cyclic":
        return 0
    if k == "semidirect":
        return (0, 0)
    if k == "direct":
        return tuple(_identity(f) for f in spec.factors)
    raise AssertionError(k)


def _mul(spec, a, b):
    k = spec.kind
    if k == "perm":
        # apply a first, then b
        return tuple(b[i] for i in a)
    if k == "cyclic":
        return (a + b) % spec.params[0]
    if k == "semidirect":
        n, m, s = spec.params
        return ((a[0] + pow(s, a[1], n) * b[0]) % n, (a[1] + b[1]) % m)
    if k == "direct":
        return tuple(_factor_mul(f, x, y) for f, x, y in zip(spec.factors, a, b))
    raise AssertionError(k)


def _inv(spec, a):
    k = spec.kind
    if k == "perm":
        out = [0] * len(a)
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)
    if k == "cyclic":
        return (-a) % spec.params[0]
    if k == "semidirect":
        n, m, s = spec.params
        y = (-a[1]) % m
        return ((-pow(s, y, n) * a[0]) % n, y)
    if k == "direct":
        return tuple(_factor_inv(f, x) for f, x in zip(spec.factors, a))
    raise AssertionError(k)


def _factor_mul(f, x, y):
    if f.kind in ("sl2", "pgl3"):
        G = _build(f)
        return G.decode(G.mul(G.encode(x), G.encode(y)))
    return _mul(f, x, y)


def _factor_inv(f, x):
    if f.kind in ("sl2", "pgl3"):
        G = _build(f)
        return G.decode(G.inv(G.encode(x)))
    return _inv(f, x)


_CACHE: dict = {}


def _build(spec) -> _Group:
    G = _CACHE.get(spec)
    if G is None:
        G = _Group(spec)
        if len(_CACHE) > 32:
            _CACHE.clear()
        _CACHE[spec] = G
    return G


def enumerate_elements(spec: GroupSpec) -> list:
    """All elements of the group, each once, in closure (BFS) order."""
    t = spec.theoretical_order
    if t is not None and t > spec.order_cap:
        raise OrderCapExceeded(f"{spec.describe()} has order {t} > cap {spec.order_cap}")
    G = _build(spec)
    els = G.elements
    if t is not None and t % len(els):
        raise AssertionError(f"enumerated order {len(els)} does not divide {t}")
    return [G.decode(x) for x in els]


# ---------------------------------------------------------------- Sylow analysis


@dataclass(frozen=True)
class SylowAnalysis:
    p: int
    n: int
    is_cyclic: bool
    m_G: int
    center_has_p: bool
    method: str = "exhaustive"
    group_order: int | None = None

    def __post_init__(self):
        if self.is_cyclic and self.n >= 1 and (self.p - 1) % self.m_G:
            raise AssertionError(f"m_G={self.m_G} does not divide p-1")
        if self.is_cyclic and self.center_has_p and self.m_G != 1:
            raise AssertionError("central p-element forces m_G = 1")


def sylow_analyze(spec: GroupSpec, p: int, method: str = "auto") -> SylowAnalysis:
    """(p, n, m_G) for spec. method is 'auto', 'exhaustive' or 'structural'."""
    require_prime(p)
    if method not in ("auto", "exhaustive", "structural"):
        raise ValueError(f"unknown method {method!r}")
    t = spec.theoretical_order
    fits = t is None or t <= spec.order_cap
    if method == "structural" or (method == "auto" and not fits):
        res = _structural(spec, p)
        if res is not None:
            return res
        if method == "structural" or not fits:
            raise OrderCapExceeded(
                f"{spec.describe()} exceeds order cap and no structural formula covers p={p}")
    return _exhaustive(spec, p)


def _exhaustive(spec, p):
    G = _build(spec)
    N = G.order
    n = vp(N, p) if N % p == 0 else 0
    if n == 0:
        return SylowAnalysis(p, 0, True, 1, False, "exhaustive", N)
    ords = G.orders
    target = p ** n
    x = next((e for e, o in zip(G.elements, ords) if o == target), None)
    if x is not None:
        P = G.cyclic_subgroup(x)
        nn, nc = G.conj_counts(x, set(P))
        pgens = [x]
        cyclic = True
    else:
        cyclic = False
        P, pgens = _greedy_sylow(G, p, n, ords)
        pset = set(P)
        nn = nc = 0
        for g in G.elements:
            cs = [G.conj(g, h) for h in pgens]
            if all(c in pset for c in cs):
                nn += 1
                if all(c == h for c, h in zip(cs, pgens)):
                    nc += 1
    center_p = False
    for e, o in zip(G.elements, ords):
        if o == p and all(G.mul(e, h) == G.mul(h, e) for h in G.gens):
            center_p = True
            break
    return SylowAnalysis(p, n, cyclic, nn // nc, center_p, "exhaustive", N)


def _greedy_sylow(G, p, n, ords):
    target = p ** n
    P = [G.identity]
    gens = []
    pels = [e for e, o in zip(G.elements, ords) if o > 1 and p ** vp(o, p) == o]
    while len(P) < target:
        pset = set(P)
        for g in pels:
            if g in pset:
                continue
            if all(G.conj(g, h) in pset for h in gens):
                H = G.closure(gens + [g])
                if H is not None and p ** vp(len(H), p) == len(H):
                    P, gens = H, gens + [g]
                    break
        else:
            raise AssertionError("failed to grow a p-subgroup")
    return P, gens


def _structural(spec, p):
    if spec.kind == "sl2":
        q = spec.q
        ell, k = prime_power(q)
        if q % 2 == 0 or p == 2:
            return None
        order = q * (q * q - 1)
        if p == ell:
            if k != 1:
                return None
            return SylowAnalysis(p, 1, True, (q - 1) // 2, False, "structural", order)
        if (q * q - 1) % p:
            return SylowAnalysis(p, 0, True, 1, False, "structural", order)
        # p divides exactly one of q-1, q+1; the Sylow sits in a torus whose
        # normalizer acts by inversion
        return SylowAnalysis(p, vp(q * q - 1, p), True, 2, False, "structural", order)
    if spec.kind == "pgl3":
        q = spec.q
        if p < 5 or q % p == 0:
            return None
        n = vp(q * q + q + 1, p) if (q * q + q + 1) % p == 0 else 0
        if n == 0:
            return None
        return SylowAnalysis(p, n, True, 3, False, "structural", q ** 3 * (q ** 3 - 1) * (q * q - 1))
    return None


# ---------------------------------------------------------------- quotient by O_p'


@dataclass(frozen=True)
class QuotientReport:
    p: int
    n: int
    N_order: int
    group_order: int
    shape: str  # 'semidirect' | 'cyclic' | 'other'
    action_order: int | None = None

    def __post_init__(self):
        if gcd(self.N_order, self.p) != 1 or self.group_order % self.N_order:
            raise AssertionError("N must be a prime-to-p divisor of |G|")

    @property
    def quotient_order(self):
        return self.group_order // self.N_order

    @property
    def shape_text(self):
        pn = self.p ** self.n
        if self.shape == "semidirect":
            return f"Z/{pn} x| Z/{self.action_order}"
        if self.shape == "cyclic":
            return f"Z/{pn}"
        return "other"


def quotient_structure(spec: GroupSpec, p: int) -> QuotientReport:
    """Quotient of G by its largest normal prime-to-p subgroup."""
    require_prime(p)
    G = _build(spec)
    els, ords = G.elements, G.orders
    order = G.order
    n = vp(order, p) if order % p == 0 else 0

    normal_p = None
    for e, o in zip(els, ords):
        if o == p:
            H = set(G.cyclic_subgroup(e))
            if all(G.conj(g, e) in H for g in G.gens):
                normal_p = e
                break
    if normal_p is None:
        raise NoNormalPSubgroup(f"{spec.describe()} has no normal subgroup of order {p}")

    Nset = {G.identity}
    Ngens: list = []
    for e, o in zip(els, ords):
        if o % p == 0 or e in Nset:
            continue
        cls = {G.conj(g, e) for g in els}
        K = G.closure(Ngens + sorted(cls, key=repr), cap=order)
        if len(K) % p:
            Nset = set(K)
            Ngens = Ngens + sorted(cls, key=repr)

    Norder = len(Nset)
    Q = order // Norder
    pn = p ** n
    x = next((e for e, o in zip(els, ords) if o == pn), None)
    if x is None:
        return QuotientReport(p, n, Norder, order, "other")
    # work modulo N: [g, x] in N means g centralizes the image of x
    xinv = G.inv(x)
    PN = {G.mul(h, y) for h in G.cyclic_subgroup(x) for y in Nset}
    norm = cent = 0
    for g in els:
        c = G.conj(g, x)
        if c in PN:
            norm += 1
            if G.mul(c, xinv) in Nset:
                cent += 1
    norm //= Norder
    cent //= Norder
    if norm == Q and cent == pn:
        m = Q // pn
        if m == 1:
            return QuotientReport(p, n, Norder, order, "cyclic", 1)
        return QuotientReport(p, n, Norder, order, "semidirect", m)
    if Q == pn and cent == Q:
        return QuotientReport(p, n, Norder, order, "cyclic", 1)
    return QuotientReport(p, n, Norder, order, "other")


# ---------------------------------------------------------------- SL2 triples


@dataclass(frozen=True)
class MatrixTriple:
    q: int
    alpha: tuple
    beta: tuple
    orders: tuple
    tau: int
    rho: int
    generation: str  # 'exhaustive' | 'structural'

    @property
    def alphabeta(self):
        F = GF(self.q)
        a, b, c, d = self.alpha
        e, f, g, h = self.beta
        return (F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h)),
                F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h)))


def _sl2_group(q):
    return _build(GroupSpec.sl2(q))


def sl2_trace_orders(q):
    """Order of a non-scalar SL2(q) element of each trace (companion matrix)."""
    F = GF(q)
    G = _sl2_group(q)
    bound = 2 * (q + 1)
    comp = [G.encode((0, F.neg(1), 1, t)) for t in range(q)]
    return G.kernel.orders(comp, G.identity, bound)


def find_sl2_triple(q: int, orders: tuple) -> MatrixTriple:
    """alpha = [[1,1],[0,1]] and the lexicographically least beta with the
    requested orders for beta and alpha*beta, generation checked."""
    pk = prime_power(q)
    if pk is None or q % 2 == 0:
        raise ValueError(f"q={q} must be an odd prime power")
    ell, _ = pk
    o1, o2, o3 = orders
    if o1 != ell:
        raise NoSuchTraces(f"alpha is unipotent of order {ell}, not {o1}")
    F = GF(q)
    G = _sl2_group(q)
    torders = sl2_trace_orders(q)
    T2 = [t for t in range(q) if torders[t] == o2]
    T3 = [t for t in range(q) if torders[t] == o3]
    if not T2 or not T3:
        raise NoSuchTraces(f"no trace gives order {o2 if not T2 else o3} in SL2({q})")

    sols = []
    for tau in T2:
        for rho in T3:
            c = F.sub(rho, tau)
            if c == 0:
                continue
            cinv = F.inv(c)
            for a in range(q):
                d = F.sub(tau, a)
                b = F.mul(F.sub(F.mul(a, d), 1), cinv)
                sols.append((a, b, c, d, tau, rho))
    if not sols:
        raise NoSuchTraces(f"every trace pair forces c = 0 for orders {orders}")
    sols.sort()

    full = q * (q * q - 1)
    alpha = (1, 1, 0, 1)
    A = G.encode(alpha)
    exhaustive = full <= DEFAULT_ORDER_CAP
    for a, b, c, d, tau, rho in sols:
        beta = (a, b, c, d)
        B = G.encode(beta)
        AB = G.mul(A, B)
        got = tuple(G.kernel.orders([A, B, AB], G.identity, full))
        if got != (o1, o2, o3):
            continue
        if exhaustive:
            H = G.closure([A, B], cap=full)
            if H is not None and len(H) == full:
                return MatrixTriple(q, alpha, beta, got, tau, rho, "exhaustive")
        elif q == ell and ell >= 5 and o2 % 2 == 0:
            minus = G.encode((F.neg(1), 0, 0, F.neg(1)))
            if c != 0 and G.power(B, o2 // 2) == minus:
                return MatrixTriple(q, alpha, beta, got, tau, rho, "structural")
    if exhaustive:
        raise NoSuchTraces(f"no generating pair with orders {orders} in SL2({q})")
    raise GenerationUnverified(f"no candidate for orders {orders} passes a generation check")


# ---------------------------------------------------------------- PGL3 data


@dataclass(frozen=True)
class PGL3Data:
    n: int
    m_predicted: int | None
    note: str = ""

    def __iter__(self):
        return iter((self.n, self.m_predicted))


def pgl3_p_data(q: int, p: int) -> PGL3Data:
    """v_p(q^2+q+1) and the predicted m_G = 3 when it is positive."""
    require_prime(p)
    if p < 5 or q % p == 0:
        raise ValueError("need p >= 5 and p not dividing q")
    if prime_power(q) is None:
        raise ValueError(f"q={q} is not a prime power")
    s = q * q + q + 1
    n = vp(s, p) if s % p == 0 else 0
    if n == 0:
        return PGL3Data(0, None, "p-Sylow not in the q^2+q+1 torus")
    return PGL3Data(n, 3)
