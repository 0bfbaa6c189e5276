from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from wildmono import ramification as R

# -- oracle: lower filtration groups, Herbrand phi and Hilbert's formula --


def _group_order(p, n, m, js, u):
    """|G_u| for the lower filtration with jumps js (u >= 0 real)."""
    if u == 0:
        return m * p ** n
    k = sum(1 for j in js if j < u)  # jumps already passed
    return p ** (n - k)


def _phi(p, n, m, js, u):
    # integral of |G_t| / |G_0| dt, piecewise constant between integers
    total = F(0)
    g0 = m * p ** n
    for t in range(0, u):
        total += F(_group_order(p, n, m, js, t + F(1, 2)), g0)
    return total


def _oracle_upper(p, n, m, js):
    return tuple(_phi(p, n, m, js, j) for j in js)


def _oracle_different(p, n, m, js):
    return sum(_group_order(p, n, m, js, i) - 1 for i in range(0, js[-1] + 1))


filtrations = st.builds(
    lambda p, n, m, gaps: (p, n, m, tuple(__import__("itertools").accumulate(gaps))),
    st.sampled_from([2, 3, 5, 7]), st.integers(1, 4), st.integers(1, 6),
    st.lists(st.integers(1, 50), min_size=4, max_size=4),
).map(lambda t: (t[0], t[1], t[2], t[3][:t[1]]))


def _valid(p, n, m):
    return m % p != 0


@given(filtrations)
def test_upper_matches_herbrand_oracle(f):
    p, n, m, js = f
    assume(_valid(p, n, m))
    rf = R.RamFiltration(p, n, m, js)
    assert R.lower_to_upper(rf).values == _oracle_upper(p, n, m, js)


@given(filtrations)
def test_different_matches_hilbert_oracle(f):
    p, n, m, js = f
    assume(_valid(p, n, m))
    rf = R.RamFiltration(p, n, m, js)
    d = R.different_degree_lower(rf)
    assert d == _oracle_different(p, n, m, js)
    assert d == R.different_degree_upper(p, n, m, R.lower_to_upper(rf))


@given(filtrations)
def test_round_trip(f):
    p, n, m, js = f
    assume(_valid(p, n, m))
    rf = R.RamFiltration(p, n, m, js)
    assert R.upper_to_lower(p, n, m, R.lower_to_upper(rf)) == rf


@given(filtrations)
def test_conductor_forms(f):
    p, n, m, js = f
    assume(_valid(p, n, m))
    rf = R.RamFiltration(p, n, m, js)
    assert R.conductor(rf) == R.conductor_weighted(rf) == _oracle_upper(p, n, m, js)[-1]


@pytest.mark.parametrize("p,n,m,js,up", [
    (7, 1, 1, (4,), (4,)),
    (5, 2, 1, (1, 21), (1, 5)),
    (3, 2, 2, (2, 8), (1, 2)),
])
def test_lower_to_upper_examples(p, n, m, js, up):
    assert R.lower_to_upper(R.RamFiltration(p, n, m, js)).values == tuple(F(u) for u in up)


def test_upper_to_lower_examples():
    assert R.upper_to_lower(5, 2, 1, (1, 5)).lower_jumps == (1, 21)
    assert R.upper_to_lower(2, 1, 3, (F(1, 3),)).lower_jumps == (1,)
    with pytest.raises(R.NotIntegralLowerJumps):
        R.upper_to_lower(3, 2, 1, (1, F(3, 2)))


@pytest.mark.parametrize("p,n,m,js,d", [(2, 1, 1, (1,), 2), (5, 1, 2, (1,), 13), (5, 2, 1, (1, 21), 128)])
def test_different_examples(p, n, m, js, d):
    assert R.different_degree_lower(R.RamFiltration(p, n, m, js)) == d


def test_different_upper_examples():
    assert R.different_degree_upper(2, 1, 1, (1,)) == 2
    assert R.different_degree_upper(5, 2, 1, (1, 5)) == 128
    assert R.different_degree_upper(5, 1, 2, (F(1, 2),)) == 13
    with pytest.raises(R.NonIntegralDifferent):
        R.different_degree_upper(5, 1, 2, (F(1, 3),))


def test_tame_different():
    assert R.tame_different(1, 5) == 0
    assert R.tame_different(7, 5) == 6
    with pytest.raises(R.NotTame):
        R.tame_different(10, 5)


def test_conductor_examples():
    assert R.conductor(R.RamFiltration(5, 1, 1, (2,))) == 2
    assert R.conductor(R.RamFiltration(5, 2, 1, (1, 21))) == 5
    # 1/2 + 3/6 + 9/18: the last upper jump, by direct summation
    assert R.conductor(R.RamFiltration(3, 3, 2, (1, 4, 13))) == F(3, 2)


def test_conductor_last_weight():
    # the final lower jump enters with weight 1/(p^(n-1) m); 1/(p^n m) would give a different number
    rf = R.RamFiltration(3, 3, 2, (1, 4, 13))
    wrong = sum(F((3 - 1) * j, 3 ** i * 2) for i, j in enumerate(rf.lower_jumps[:-1], 1)) + F(13, 27 * 2)
    assert wrong != R.conductor(rf)


def test_compositum():
    assert R.compositum_conductor(1, 1, 5) == 1
    assert R.compositum_conductor(2, 1, 5) == 6
    assert R.compositum_conductor(F(3, 2), 1, 3) == F(5, 2)
    with pytest.raises(R.TauExceedsSigma):
        R.compositum_conductor(1, 2, 5)


@given(st.fractions(min_value=0, max_value=100), st.sampled_from([2, 3, 5, 7]))
def test_compositum_fixed_point(s, p):
    assert R.compositum_conductor(s, s, p) == s


def test_effective_examples():
    assert R.effective_invariant(5, [F(7, 3)]) == F(7, 3)
    assert R.effective_invariant(5, [2, 2, 2]) == 2
    assert R.effective_invariant(5, [1, 5]) == F(9, 5)
    with pytest.raises(R.AlphaOutOfRange):
        R.effective_invariant(5, [1, 5], alpha=2)


@given(st.fractions(min_value=0, max_value=50), st.integers(1, 5), st.sampled_from([2, 3, 5]))
def test_effective_constant(c, r, p):
    for a in range(r):
        assert R.effective_invariant(p, [c] * r, a) == c


@given(st.sampled_from([2, 3, 5, 7]), st.lists(st.integers(0, 5), min_size=2, max_size=4),
       st.fractions(min_value=F(1, 6), max_value=5))
def test_effective_growth(p, extra, s1):
    # eff(a) - eff(a+1) = (s_k - s_{k-1}) / p^(k-1) with k = r - a, so steps of at
    # least (p-1) p^(k-1) s_{k-1} on an increasing list give eff(a) >= p eff(a+1)
    sig = [s1]
    for k, x in enumerate(extra, 2):
        sig.append(sig[-1] * (1 + (p - 1) * p ** (k - 1)) + x)
    r = len(sig)
    for a in range(r - 1):
        k = r - a
        lhs = R.effective_invariant(p, sig, a)
        rhs = R.effective_invariant(p, sig, a + 1)
        assert lhs - rhs == (sig[k - 1] - sig[k - 2]) / p ** (k - 1)
        assert lhs >= p * rhs


def test_hasse_arf():
    assert R.validate_hasse_arf(R.UpperJumps((1, 5)), 1)
    assert R.validate_hasse_arf(R.UpperJumps((F(1, 2), F(3, 2))), 2)
    assert not R.validate_hasse_arf(R.UpperJumps((F(1, 3),)), 2)


def test_bad_filtrations():
    with pytest.raises(ValueError):
        R.RamFiltration(5, 2, 1, (3, 3))
    with pytest.raises(ValueError):
        R.RamFiltration(5, 1, 5, (1,))
    with pytest.raises(ValueError):
        R.UpperJumps((2, 1))
