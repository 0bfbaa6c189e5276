# Compiled hot loops for small matrix groups over a finite field.
# Matrices are packed into one integer: entry i (row-major) has weight q**i.
# The field is given by flat add/mul tables plus neg/inv lookups, so any
# GF(q) works, not only prime fields.

cdef class MatrixKernel:
    cdef public int dim
    cdef public int q
    cdef public bint projective
    cdef int n
    cdef long long[::1] addt
    cdef long long[::1] mult
    cdef long long[::1] negt
    cdef long long[::1] invt

    def __init__(self, int dim, int q, add, mul, neg, inv, bint projective=False):
        import array
        if dim not in (2, 3):
            raise ValueError("only 2x2 and 3x3 matrices are supported")
        self.dim = dim
        self.q = q
        self.n = dim * dim
        self.projective = projective
        self.addt = array.array("q", add)
        self.mult = array.array("q", mul)
        self.negt = array.array("q", neg)
        self.invt = array.array("q", inv)

    cdef inline void _decode(self, long long code, long long* out):
        cdef int i
        for i in range(self.n):
            out[i] = code % self.q
            code //= self.q

    cdef inline long long _encode(self, long long* a):
        cdef long long code = 0
        cdef int i
        for i in range(self.n - 1, -1, -1):
            code = code * self.q + a[i]
        return code

    cdef inline long long _fadd(self, long long x, long long y):
        return self.addt[x * self.q + y]

    cdef inline long long _fmul(self, long long x, long long y):
        return self.mult[x * self.q + y]

    cdef void _normalize(self, long long* a):
        cdef int i
        cdef long long s
        if not self.projective:
            return
        for i in range(self.n):
            if a[i] != 0:
                if a[i] != 1:
                    s = self.invt[a[i]]
                    for i in range(self.n):
                        a[i] = self._fmul(a[i], s)
                return

    cdef long long _mul(self, long long x, long long y):
        cdef long long a[9]
        cdef long long b[9]
        cdef long long c[9]
        cdef int i, j, k, d = self.dim
        cdef long long s
        self._decode(x, a)
        self._decode(y, b)
        for i in range(d):
            for j in range(d):
                s = 0
                for k in range(d):
                    s = self._fadd(s, self._fmul(a[i * d + k], b[k * d + j]))
                c[i * d + j] = s
        self._normalize(c)
        return self._encode(c)

    cdef long long _inverse(self, long long x):
        cdef long long a[9]
        cdef long long c[9]
        cdef long long det, s
        cdef int i
        self._decode(x, a)
        if self.dim == 2:
            c[0] = a[3]
            c[1] = self.negt[a[1]]
            c[2] = self.negt[a[2]]
            c[3] = a[0]
            det = self._fadd(self._fmul(a[0], a[3]), self.negt[self._fmul(a[1], a[2])])
        else:
            # adjugate, entry (i, j) is the cofactor of (j, i)
            c[0] = self._fadd(self._fmul(a[4], a[8]), self.negt[self._fmul(a[5], a[7])])
            c[1] = self._fadd(self._fmul(a[2], a[7]), self.negt[self._fmul(a[1], a[8])])
            c[2] = self._fadd(self._fmul(a[1], a[5]), self.negt[self._fmul(a[2], a[4])])
            c[3] = self._fadd(self._fmul(a[5], a[6]), self.negt[self._fmul(a[3], a[8])])
            c[4] = self._fadd(self._fmul(a[0], a[8]), self.negt[self._fmul(a[2], a[6])])
            c[5] = self._fadd(self._fmul(a[2], a[3]), self.negt[self._fmul(a[0], a[5])])
            c[6] = self._fadd(self._fmul(a[3], a[7]), self.negt[self._fmul(a[4], a[6])])
            c[7] = self._fadd(self._fmul(a[1], a[6]), self.negt[self._fmul(a[0], a[7])])
            c[8] = self._fadd(self._fmul(a[0], a[4]), self.negt[self._fmul(a[1], a[3])])
            det = self._fadd(self._fadd(self._fmul(a[0], c[0]), self._fmul(a[1], c[3])),
                             self._fmul(a[2], c[6]))
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        s = self.invt[det]
        for i in range(self.n):
            c[i] = self._fmul(c[i], s)
        self._normalize(c)
        return self._encode(c)

    def mul(self, long long x, long long y):
        return self._mul(x, y)

    def inverse(self, long long x):
        return self._inverse(x)

    def power(self, long long x, long long k, long long identity):
        cdef long long r = identity
        while k > 0:
            if k & 1:
                r = self._mul(r, x)
            x = self._mul(x, x)
            k >>= 1
        return r

    def closure(self, gens, long long identity, long long cap):
        """Breadth-first closure; returns None once more than cap elements appear."""
        cdef list queue = [identity]
        cdef set seen = {identity}
        cdef Py_ssize_t i = 0
        cdef long long x, y, g
        cdef list gl = [int(g) for g in gens]
        while i < len(queue):
            x = queue[i]
            i += 1
            for g in gl:
                y = self._mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
                    if len(queue) > cap:
                        return None
        return queue

    def orders(self, elems, long long identity, long long bound):
        cdef list out = []
        cdef long long x, y, k
        for x in elems:
            y = x
            k = 1
            while y != identity:
                y = self._mul(y, x)
                k += 1
                if k > bound:
                    k = 0
                    break
            out.append(k)
        return out

    def conj_counts(self, elems, long long x, pset):
        """Count g with g x g^-1 in pset (normalizer) and equal to x (centralizer)."""
        cdef long long g, c
        cdef long long nn = 0, nc = 0
        for g in elems:
            c = self._mul(self._mul(g, x), self._inverse(g))
            if c in pset:
                nn += 1
                if c == x:
                    nc += 1
        return nn, nc
