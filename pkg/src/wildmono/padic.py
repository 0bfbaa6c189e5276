"""Truncated arithmetic in Z_p[pi] with pi^e = p.

An element is stored as e integer coordinates c_0..c_{e-1} (x = sum c_i pi^i)
and an absolute precision N counted in powers of pi: x is known modulo
pi^N. Coordinate i is then known modulo p^ceil((N - i)/e) and is kept
reduced to [0, p^that). Valuations are normalized so v(p) = 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .numtheory import is_prime_power, require_prime, vp


class PrecisionExhausted(ArithmeticError):
    pass


class PrecisionInsufficient(ArithmeticError):
    pass


class NoRootAtPrecision(ValueError):
    pass


class NoSolution(ValueError):
    pass


def _cdiv(a, b):
    return -(-a // b)


# ---------------------------------------------------------------- raw ring ops
# raw elements are plain lists of e ints, meaningful modulo pi^W for some W


def _modulus(p, e, i, W):
    t = _cdiv(W - i, e)
    return p ** t if t > 0 else 1


def _reduce(a, p, e, W):
    return [x % _modulus(p, e, i, W) for i, x in enumerate(a)]


def _rmul(a, b, p, e):
    c = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                c[i + j] += x * y
    for k in range(2 * e - 2, e - 1, -1):
        c[k - e] += p * c[k]
    return c[:e]


def _rval(a, p, e, W):
    """pi-adic valuation of a raw element known mod pi^W (None if zero)."""
    best = None
    for i, x in enumerate(_reduce(a, p, e, W)):
        if x:
            v = e * vp(x, p) + i
            if best is None or v < best:
                best = v
    return best


def _rshift_down(a, p, e, k):
    a = list(a)
    for _ in range(k):
        if a[0] % p:
            raise ValueError("element not divisible by pi")
        a = a[1:] + [a[0] // p]
    return a


def _rshift_up(a, p, e, k):
    a = list(a)
    for _ in range(k):
        a = [p * a[-1]] + a[:-1]
    return a


def _rinv_unit(u, p, e, W):
    if u[0] % p == 0:
        raise ValueError("not a unit")
    y = [pow(u[0], -1, p)] + [0] * (e - 1)
    two = [2] + [0] * (e - 1)
    for _ in range(W.bit_length() + 2):
        uy = _rmul(u, y, p, e)
        if _rval([a - (1 if i == 0 else 0) for i, a in enumerate(uy)], p, e, W) is None:
            break
        y = _reduce(_rmul(y, [t - s for t, s in zip(two, uy)], p, e), p, e, W)
    return _reduce(y, p, e, W)


def _rpow(a, k, p, e, W):
    r = [1] + [0] * (e - 1)
    while k:
        if k & 1:
            r = _reduce(_rmul(r, a, p, e), p, e, W)
        a = _reduce(_rmul(a, a, p, e), p, e, W)
        k >>= 1
    return r


# ---------------------------------------------------------------- elements


@dataclass(frozen=True)
class EisensteinElem:
    p: int
    e: int
    coeffs: tuple
    prec: int  # absolute precision in powers of pi

    def __post_init__(self):
        if self.prec < 0:
            raise PrecisionExhausted("negative precision")
        if len(self.coeffs) != self.e:
            raise ValueError(f"expected {self.e} coordinates")
        object.__setattr__(self, "coeffs", tuple(_reduce(list(self.coeffs), self.p, self.e, self.prec)))

    # construction
    @classmethod
    def from_int(cls, n, p, e, prec):
        return cls(p, e, (n,) + (0,) * (e - 1), prec)

    @classmethod
    def from_rational(cls, x, p, e, prec):
        x = Fraction(x)
        if x.denominator % p == 0:
            raise ValueError(f"{x} is not integral at {p}")
        t = _cdiv(prec, e) + 1
        mod = p ** t
        return cls.from_int(x.numerator * pow(x.denominator, -1, mod), p, e, prec)

    @classmethod
    def uniformizer(cls, p, e, prec):
        return cls.from_terms({1: 1}, p, e, prec)

    @classmethod
    def from_terms(cls, terms, p, e, prec):
        """sum of c * pi^k for {k: c}; c may be an int or a p-integral Fraction."""
        a = [0] * e
        t = _cdiv(prec, e) + 1
        mod = p ** t
        for k, c in terms.items():
            c = Fraction(c)
            if c.denominator % p == 0:
                raise ValueError(f"coefficient {c} is not integral at {p}")
            ci = c.numerator * pow(c.denominator, -1, mod)
            q, r = divmod(k, e)
            a[r] += ci * p ** q
        return cls(p, e, tuple(a), prec)

    def _like(self, coeffs, prec):
        return EisensteinElem(self.p, self.e, tuple(coeffs), prec)

    # precision and valuation
    @property
    def abs_prec(self) -> Fraction:
        return Fraction(self.prec, self.e)

    def pi_valuation(self):
        return _rval(list(self.coeffs), self.p, self.e, self.prec)

    def valuation(self):
        v = self.pi_valuation()
        return None if v is None else Fraction(v, self.e)

    def is_zero(self):
        return self.pi_valuation() is None

    def lifted(self, prec):
        """Treat the stored representative as exact and restate it mod pi^prec."""
        return self._like(self.coeffs, prec)

    def truncated(self, prec):
        if prec > self.prec:
            raise PrecisionExhausted(f"cannot raise precision {self.prec} to {prec}")
        return self._like(self.coeffs, prec)

    def _check(self, other):
        if not isinstance(other, EisensteinElem):
            other = EisensteinElem.from_rational(other, self.p, self.e, self.prec)
        if (other.p, other.e) != (self.p, self.e):
            raise ValueError("elements of different rings")
        return other

    # arithmetic
    def __add__(self, other):
        other = self._check(other)
        return self._like([a + b for a, b in zip(self.coeffs, other.coeffs)], min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return self._like([-a for a in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        vx = self.pi_valuation()
        vy = other.pi_valuation()
        vx = self.prec if vx is None else vx
        vy = other.prec if vy is None else vy
        prec = min(self.prec + vy, other.prec + vx)
        out = self._like(_rmul(list(self.coeffs), list(other.coeffs), self.p, self.e), prec)
        assert out.prec <= min(self.prec, other.prec) + max(vx, vy)
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        # the exact 1 needs more precision than any power can reach
        r = EisensteinElem.from_int(1, self.p, self.e, (self.prec + self.e) * (k + 1))
        x = self
        while k:
            if k & 1:
                r = r * x
            x = x * x
            k >>= 1
        return r

    def shift_down(self, k):
        """Divide by pi^k (needs v >= k). Costs k digits of precision."""
        v = self.pi_valuation()
        if v is not None and v < k:
            raise ValueError(f"valuation {v} < {k}: quotient not integral")
        if self.prec < k:
            raise PrecisionExhausted("precision exhausted by division")
        return self._like(_rshift_down(self.coeffs, self.p, self.e, k), self.prec - k)

    def shift_up(self, k):
        return self._like(_rshift_up(self.coeffs, self.p, self.e, k), self.prec + k)

    def inverse(self):
        v = self.pi_valuation()
        if v is None:
            raise PrecisionExhausted("cannot invert an element indistinguishable from 0")
        if v:
            raise ValueError("only units can be inverted in Z_p[pi]")
        return self._like(_rinv_unit(list(self.coeffs), self.p, self.e, self.prec), self.prec)

    def __truediv__(self, other):
        other = self._check(other)
        v = other.pi_valuation()
        if v is None:
            raise PrecisionExhausted("division by an element indistinguishable from 0")
        return self.shift_down(v) * other.shift_down(v).inverse()

    def __rtruediv__(self, other):
        return self._check(other) / self

    def congruent(self, other, n):
        """x == y mod pi^n; n may not exceed the known precision."""
        other = self._check(other)
        if n > min(self.prec, other.prec):
            raise PrecisionExhausted(f"congruence mod pi^{n} beyond known precision")
        d = (self - other).truncated(n)
        return d.is_zero()

    def agrees_beyond(self, other, bound):
        """v(x - y) > bound, with bound a rational in the p-normalization."""
        n = int(Fraction(bound) * self.e) + 1
        return self.congruent(other, n)

    # display
    def digits(self):
        """pi-adic digits d_0..d_{N-1} in [0, p)."""
        p, e = self.p, self.e
        a = list(self.coeffs)
        out = []
        for _ in range(self.prec):
            d = a[0] % p
            out.append(d)
            a[0] -= d
            a = a[1:] + [a[0] // p]
        return out

    def balanced_terms(self):
        """(valuation, digit) pairs with digits in (-p/2, p/2]."""
        p, e = self.p, self.e
        a = list(self.coeffs)
        out = []
        for j in range(self.prec):
            d = a[0] % p
            if d > p // 2:
                d -= p
            if d:
                out.append((Fraction(j, e), d))
            a[0] -= d
            a = a[1:] + [a[0] // p]
        return out

    def __str__(self):
        p = self.p
        parts = []
        for v, d in self.balanced_terms():
            mag = abs(d)
            if v == 0:
                t = f"{mag}"
            else:
                pw = f"{p}" if v == 1 else f"{p}^({v})"
                t = pw if mag == 1 else f"{mag}*{pw}"
            parts.append(("- " if d < 0 else "+ ") + t)
        s = " ".join(parts) if parts else "0"
        if s.startswith("+ "):
            s = s[2:]
        elif s.startswith("- "):
            s = "-" + s[2:]
        return f"{s} + O({p}^({self.abs_prec}))"

    def coordinate_str(self):
        p, e = self.p, self.e
        terms = []
        for i, c in enumerate(self.coeffs):
            mod = _modulus(p, e, i, self.prec)
            if mod > 1:
                s = c if c <= mod // 2 else c - mod
                terms.append(f"({s} mod {mod})*pi^{i}")
        return " + ".join(terms) or "0"


# ---------------------------------------------------------------- k-th powers


@dataclass(frozen=True)
class Congruence:
    coord: int
    modulus: int
    lhs: int
    rhs: int

    @property
    def holds(self):
        return (self.lhs - self.rhs) % self.modulus == 0

    def __str__(self):
        rel = "==" if self.holds else "!="
        return f"coefficient of pi^{self.coord}: {self.lhs} {rel} {self.rhs} (mod {self.modulus})"


@dataclass(frozen=True)
class SearchNode:
    level: int
    prefix: tuple  # digits d_0..d_level
    new: tuple  # congruences newly decided at this level
    survives: bool


@dataclass
class PowerTest:
    is_power: bool
    k: int
    witness: EisensteinElem | None = None
    reason: str = ""
    nodes: list = field(default_factory=list)
    summary: list = field(default_factory=list)
    forced_digits: list = field(default_factory=list)
    failing: Congruence | None = None

    def __bool__(self):
        return self.is_power


def _cbound(p, e, k, J):
    """y == y' mod pi^J implies y^k == y'^k mod pi^c."""
    return min(e * vp(comb(k, i), p) + i * J for i in range(1, k + 1))


def _coordinate_moduli(p, e, b):
    return [_modulus(p, e, i, b) for i in range(e)]


def _prefix_raw(digits, p, e):
    a = [0] * e
    for j, d in enumerate(digits):
        q, r = divmod(j, e)
        a[r] += d * p ** q
    return a


def _search(u, k):
    """DFS over pi-digits of a k-th root of the unit u."""
    p, e, N = u.p, u.e, u.prec
    t = vp(k, p) if k % p == 0 else 0
    T = 2 * e * t + 1
    J = 0
    while _cbound(p, e, k, J) < T:
        J += 1
    target = list(u.coeffs)
    nodes = []
    survivors = []

    def bound(j):
        return min(_cbound(p, e, k, j), N)

    def rec(prefix):
        j = len(prefix)
        # past the stored precision further digits decide nothing
        if j == J or (j and _cbound(p, e, k, j) >= N):
            survivors.append(tuple(prefix))
            return
        b_old, b_new = bound(j), bound(j + 1)
        old = _coordinate_moduli(p, e, b_old)
        mods = _coordinate_moduli(p, e, b_new)
        for d in range(p):
            if j == 0 and d == 0:
                continue
            pre = prefix + [d]
            yk = _rpow(_prefix_raw(pre, p, e), k, p, e, b_new)
            cons = []
            ok = True
            for i in range(e):
                m = mods[i]
                lhs, rhs = yk[i] % m, target[i] % m
                if lhs != rhs:
                    ok = False
                if m != old[i]:
                    cons.append(Congruence(i, m, lhs, rhs))
            if len(nodes) < 5000:
                nodes.append(SearchNode(j, tuple(pre), tuple(cons), ok))
            if ok:
                rec(pre)

    rec([])
    return survivors, nodes, J, T, t


def _summarize(nodes, p):
    """Human-readable forcing chain along the unique surviving path."""
    lines, forced, failing = [], [], None
    prefix = ()
    level = 0
    while True:
        here = [n for n in nodes if n.level == level and n.prefix[:-1] == prefix]
        if not here:
            break
        alive = [n for n in here if n.survives]
        # a congruence that pins the digit down; the highest new coordinate
        # sees the new digit linearly, so try it first
        pin = None
        if here[0].new:
            for ci in reversed(range(len(here[0].new))):
                sat = [n for n in here if n.new[ci].holds]
                if len(sat) == 1:
                    pin = (ci, sat[0])
                    break
        if len(alive) == 1:
            n = alive[0]
            d = n.prefix[-1]
            forced.append(d)
            why = ""
            if pin is not None and pin[1] is n:
                c = n.new[pin[0]]
                why = f" (from the coefficient of pi^{c.coord} mod {c.modulus})"
            lines.append(f"d{level} == {d} (mod {p}){why}")
            prefix = n.prefix
            level += 1
            continue
        if not alive:
            if pin is not None:
                ci, n = pin
                c = n.new[ci]
                d = n.prefix[-1]
                forced.append(d)
                lines.append(f"d{level} == {d} (mod {p}) (from the coefficient of pi^{c.coord} mod {c.modulus})")
                bad = next(x for x in n.new if not x.holds)
                failing = bad
                lines.append(f"then {bad}: contradiction")
            else:
                lines.append(f"no digit d{level} satisfies the congruences at this level")
                for n in here:
                    bad = next((x for x in n.new if not x.holds), None)
                    if bad is not None:
                        lines.append(f"  d{level}={n.prefix[-1]}: {bad}")
            break
        lines.append(f"{len(alive)} candidates for d{level} survive")
        break
    return lines, forced, failing


def _unit_part(x, k):
    v = x.pi_valuation()
    if v is None:
        raise PrecisionInsufficient("element is zero to the known precision")
    return v, x.shift_down(v)


def is_nth_power(x: EisensteinElem, k: int) -> PowerTest:
    """Decide whether x is a k-th power in Z_p[pi] at the stored precision."""
    if k < 1:
        raise ValueError("k must be positive")
    v, u = _unit_part(x, k)
    if v % k:
        return PowerTest(False, k, reason=f"valuation {Fraction(v, x.e)} not in (1/{x.e})*{k}Z",
                         summary=[f"v(x) = {Fraction(v, x.e)} is not divisible by {k} in the value group"])
    survivors, nodes, J, T, t = _search(u, k)
    lines, forced, failing = _summarize(nodes, x.p)
    if not survivors:
        return PowerTest(False, k, reason="congruence system has no solution", nodes=nodes,
                         summary=lines, forced_digits=forced, failing=failing)
    if u.prec < T:
        raise PrecisionInsufficient(
            f"{len(survivors)} digit prefixes survive mod pi^{u.prec}; certifying needs pi^{T}")
    root = _newton_root(u, k, survivors[0], t)
    w = root.shift_up(v // k)
    return PowerTest(True, k, witness=w, reason="Hensel lift of a surviving prefix", nodes=nodes,
                     summary=lines + [f"witness digits {list(survivors[0])} lift by Newton iteration"],
                     forced_digits=forced)


def _newton_root(u, k, prefix, t):
    p, e, N = u.p, u.e, u.prec
    et = e * t
    W = N + et
    y = _prefix_raw(prefix, p, e)
    target = list(u.coeffs)
    for _ in range(4 * W.bit_length() + 8):
        fy = [a - b for a, b in zip(_rpow(y, k, p, e, W), target)]
        vf = _rval(fy, p, e, W)
        if vf is None or vf >= N:
            break
        der = [k * c for c in _rpow(y, k - 1, p, e, W)]
        num = _rshift_down(_reduce(fy, p, e, W), p, e, et)
        den = _rshift_down(der, p, e, et)
        step = _rmul(num, _rinv_unit(den, p, e, W), p, e)
        y = _reduce([a - b for a, b in zip(y, step)], p, e, W)
    else:
        raise NoRootAtPrecision("Newton iteration did not converge")
    return EisensteinElem(p, e, tuple(y), N - et)


def nth_root(x: EisensteinElem, k: int, near: EisensteinElem | None = None) -> EisensteinElem:
    """A k-th root of x. With several candidates, the one agreeing with
    `near` to the most digits wins, then the lexicographically least."""
    v, u = _unit_part(x, k)
    if v % k:
        raise NoRootAtPrecision(f"valuation {Fraction(v, x.e)} is not divisible by {k}")
    survivors, _, J, T, t = _search(u, k)
    if not survivors:
        raise NoRootAtPrecision("no residue prefix solves y^k == x")
    if u.prec < T:
        raise NoRootAtPrecision(f"precision pi^{u.prec} too low to certify a root (need pi^{T})")
    choice = survivors[0]
    if near is not None:
        nd = near.digits()

        def score(s):
            n = 0
            for a, b in zip(s, nd):
                if a != b:
                    break
                n += 1
            return -n

        choice = min(survivors, key=lambda s: (score(s), s))
    return _newton_root(u, k, choice, t).shift_up(v // k)


# ---------------------------------------------------------------- the SL2(251) chain at p = 5


@dataclass(frozen=True)
class AppendixAParams:
    r: int
    s: int = 5
    root_choice: int = -1  # sign of sqrt(1 - a) relative to 5/r
    p: int = 5
    e: int = 5

    def __post_init__(self):
        if self.r % self.p == 0:
            raise ValueError("r must be prime to p")
        if self.root_choice not in (1, -1):
            raise ValueError("root_choice is +1 or -1")

    @property
    def a(self):
        return 1 - Fraction(25, self.r ** 2)

    def d(self, prec):
        return EisensteinElem.from_terms({7: Fraction(2, self.r)}, self.p, self.e, prec)

    def sqrt_one_minus_a(self, prec):
        return EisensteinElem.from_terms({5: Fraction(self.root_choice, self.r)}, self.p, self.e, prec)


def eval_g_at_d(params: AppendixAParams, prec=Fraction(3)) -> EisensteinElem:
    """((d+1)/(d-1))^r * ((d+s)/(d-s))^5 at d = 2*5^(7/5)/r, s = sqrt(1-a)."""
    prec = Fraction(prec)
    e = params.e
    target = _cdiv(prec.numerator * e, prec.denominator)
    W = target + 2 * e
    d = params.d(W)
    s = params.sqrt_one_minus_a(W)
    one = EisensteinElem.from_int(1, params.p, e, W)
    g = ((d + one) / (d - one)) ** params.r * ((d + s) / (d - s)) ** 5
    return g.truncated(target)


@dataclass
class AppendixAResult:
    params: AppendixAParams
    g: EisensteinElem
    delta: EisensteinElem
    fifth_power_g: PowerTest
    fifth_power_delta: PowerTest
    twentyfifth_power_g: PowerTest | None
    twentyfifth_note: str = ""


def appendix_a(r=2, prec=Fraction(3), root_choice=-1) -> AppendixAResult:
    params = AppendixAParams(r, root_choice=root_choice)
    g = eval_g_at_d(params, prec)
    delta = nth_root(g, 5)
    # sign convention: take the root congruent to -1 mod pi
    if delta.digits()[0] != params.p - 1:
        delta = -delta
    fg = is_nth_power(g, 5)
    fd = is_nth_power(delta, 5)
    note = ""
    try:
        g25 = is_nth_power(g, 25)
    except PrecisionInsufficient as exc:
        g25 = None
        note = str(exc)
    return AppendixAResult(params, g, delta, fg, fd, g25, note)


# ---------------------------------------------------------------- q^2 + q + 1


def hensel_qsolve(p: int, n: int) -> list:
    """The two classes q mod p^n with q^2 + q + 1 == 0."""
    require_prime(p)
    if n < 1:
        raise ValueError("n must be positive")
    if p % 3 != 1:
        raise NoSolution(f"p={p} is not 1 mod 3")
    roots = [q for q in range(p) if (q * q + q + 1) % p == 0]
    out = []
    for q in roots:
        mod = p
        while mod < p ** n:
            mod = min(mod * mod, p ** n)
            f = q * q + q + 1
            q = (q - f * pow(2 * q + 1, -1, mod)) % mod
        q %= p ** n
        assert (q * q + q + 1) % p ** n == 0
        out.append(q)
    return sorted(out)


def smallest_prime_power_solution(p: int, n: int, limit: int = 10 ** 7) -> int:
    classes = hensel_qsolve(p, n)
    M = p ** n
    k = 0
    while k * M < limit:
        for c in classes:
            q = c + k * M
            if q >= 2 and is_prime_power(q):
                assert vp(q * q + q + 1, p) >= n
                return q
        k += 1
    raise NoSolution(f"no prime power below {limit}")
