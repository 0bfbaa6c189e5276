"""Pure-Python twin of the compiled matrix kernels (same API, same results)."""


class MatrixKernel:
    def __init__(self, dim, q, add, mul, neg, inv, projective=False):
        if dim not in (2, 3):
            raise ValueError("only 2x2 and 3x3 matrices are supported")
        self.dim = dim
        self.q = q
        self.n = dim * dim
        self.projective = projective
        self.addt = list(add)
        self.mult = list(mul)
        self.negt = list(neg)
        self.invt = list(inv)
        self._weights = [q ** i for i in range(self.n)]

    def _decode(self, code):
        q = self.q
        out = []
        for _ in range(self.n):
            code, r = divmod(code, q)
            out.append(r)
        return out

    def _encode(self, a):
        return sum(x * w for x, w in zip(a, self._weights))

    def _normalize(self, a):
        if not self.projective:
            return a
        q, mult = self.q, self.mult
        for x in a:
            if x:
                if x == 1:
                    return a
                s = self.invt[x]
                return [mult[y * q + s] for y in a]
        return a

    def mul(self, x, y):
        a = self._decode(x)
        b = self._decode(y)
        d, q, addt, mult = self.dim, self.q, self.addt, self.mult
        c = []
        for i in range(d):
            for j in range(d):
                s = 0
                for k in range(d):
                    s = addt[s * q + mult[a[i * d + k] * q + b[k * d + j]]]
                c.append(s)
        return self._encode(self._normalize(c))

    def inverse(self, x):
        a = self._decode(x)
        q, addt, mult, neg = self.q, self.addt, self.mult, self.negt

        def m(u, v):
            return mult[u * q + v]

        def sub(u, v):
            return addt[u * q + neg[v]]

        if self.dim == 2:
            c = [a[3], neg[a[1]], neg[a[2]], a[0]]
            det = sub(m(a[0], a[3]), m(a[1], a[2]))
        else:
            c = [
                sub(m(a[4], a[8]), m(a[5], a[7])),
                sub(m(a[2], a[7]), m(a[1], a[8])),
                sub(m(a[1], a[5]), m(a[2], a[4])),
                sub(m(a[5], a[6]), m(a[3], a[8])),
                sub(m(a[0], a[8]), m(a[2], a[6])),
                sub(m(a[2], a[3]), m(a[0], a[5])),
                sub(m(a[3], a[7]), m(a[4], a[6])),
                sub(m(a[1], a[6]), m(a[0], a[7])),
                sub(m(a[0], a[4]), m(a[1], a[3])),
            ]
            det = addt[addt[m(a[0], c[0]) * q + m(a[1], c[3])] * q + m(a[2], c[6])]
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        s = self.invt[det]
        return self._encode(self._normalize([m(v, s) for v in c]))

    def power(self, x, k, identity):
        r = identity
        while k > 0:
            if k & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            k >>= 1
        return r

    def closure(self, gens, identity, cap):
        queue = [identity]
        seen = {identity}
        i = 0
        gens = [int(g) for g in gens]
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

    def orders(self, elems, identity, bound):
        out = []
        for x in elems:
            y, k = x, 1
            while y != identity:
                y = self.mul(y, x)
                k += 1
                if k > bound:
                    k = 0
                    break
            out.append(k)
        return out

    def conj_counts(self, elems, x, pset):
        nn = nc = 0
        for g in elems:
            c = self.mul(self.mul(g, x), self.inverse(g))
            if c in pset:
                nn += 1
                if c == x:
                    nc += 1
        return nn, nc
