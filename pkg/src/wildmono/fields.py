"""Finite fields GF(q) with elements coded as integers 0..q-1.

For q = p**k with k > 1 an element c is the polynomial whose base-p digits
are its coefficients, reduced modulo a fixed monic irreducible of degree k.
For prime q the code is just the residue.
"""
from functools import cached_property
from itertools import product

from .numtheory import prime_power


def _poly_mulmod(a, b, mod, p):
    # coefficient lists, lowest degree first; mod is monic
    k = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % p
    for d in range(len(res) - 1, k - 1, -1):
        c = res[d]
        if c:
            for i in range(k + 1):
                res[d - k + i] = (res[d - k + i] - c * mod[i]) % p
    return (res + [0] * k)[:k]


def _irreducible(p, k):
    # first monic polynomial of degree k with no monic factor of degree <= k//2
    for tail in product(range(p), repeat=k):
        f = list(tail) + [1]
        if f[0] == 0:
            continue
        if all(not _divides(g, f, p) for d in range(1, k // 2 + 1) for g in _monics(p, d)):
            return f
    raise RuntimeError("no irreducible polynomial found")


def _monics(p, d):
    for tail in product(range(p), repeat=d):
        yield list(tail) + [1]


def _divides(g, f, p):
    r = list(f)
    dg = len(g) - 1
    for d in range(len(r) - 1, dg - 1, -1):
        c = r[d]
        if c:
            for i in range(dg + 1):
                r[d - dg + i] = (r[d - dg + i] - c * g[i]) % p
    return not any(r[:dg])


class GF:
    def __init__(self, q):
        pk = prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        if self.k > 1:
            self.modulus = _irreducible(self.p, self.k)

    def __repr__(self):
        return f"GF({self.q})"

    def _digits(self, c):
        out = []
        for _ in range(self.k):
            c, r = divmod(c, self.p)
            out.append(r)
        return out

    def _undigits(self, ds):
        c = 0
        for d in reversed(ds):
            c = c * self.p + d
        return c

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.q
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.q
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.q
        return self._undigits(_poly_mulmod(self._digits(a), self._digits(b), self.modulus, self.p))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.k == 1:
            return pow(a, -1, self.q)
        return self.power(a, self.q - 2)

    def power(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def from_int(self, n):
        """Image of an integer under Z -> GF(q)."""
        return self._undigits([n % self.p] + [0] * (self.k - 1)) if self.k > 1 else n % self.q

    @cached_property
    def add_table(self):
        q = self.q
        return [self.add(a, b) for a in range(q) for b in range(q)]

    @cached_property
    def mul_table(self):
        q = self.q
        return [self.mul(a, b) for a in range(q) for b in range(q)]

    @cached_property
    def neg_table(self):
        return [self.neg(a) for a in range(self.q)]

    @cached_property
    def inv_table(self):
        return [0] + [self.inv(a) for a in range(1, self.q)]

    @cached_property
    def primitive_element(self):
        from sympy import factorint

        n = self.q - 1
        ps = list(factorint(n)) if n > 1 else []
        for g in range(1, self.q):
            if all(self.power(g, n // r) != 1 for r in ps):
                return g
        raise RuntimeError("no primitive element")

    def basis(self):
        """An F_p-basis of GF(q): 1, t, t^2, ..."""
        return [self.p ** i for i in range(self.k)]
