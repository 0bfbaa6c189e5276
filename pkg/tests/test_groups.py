import itertools
from math import gcd

import pytest
from hypothesis import given, strategies as st
from sympy import factorint

from wildmono import groups as G
from wildmono.groups import GroupSpec


# -- an independent oracle over plain 2x2 integer matrices mod a prime ----

def _sl2_plain(q):
    return [(a, b, c, d) for a, b, c, d in itertools.product(range(q), repeat=4)
            if (a * d - b * c) % q == 1]


def _mm(x, y, q):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % q, (a * f + b * h) % q, (c * e + d * g) % q, (c * f + d * h) % q)


def _order(x, q):
    one = (1, 0, 0, 1)
    y, k = x, 1
    while y != one:
        y, k = _mm(y, x, q), k + 1
    return k


def _oracle_sylow(q, p):
    els = _sl2_plain(q)
    n = factorint(len(els)).get(p, 0)
    gen = next((x for x in els if _order(x, q) == p ** n), None)
    if gen is None:
        return n, False, None
    P = {(1, 0, 0, 1)}
    y = gen
    while y not in P:
        P.add(y)
        y = _mm(y, gen, q)
    inv = {x: next(z for z in els if _mm(x, z, q) == (1, 0, 0, 1)) for x in els}
    norm = sum(1 for x in els if _mm(_mm(x, gen, q), inv[x], q) in P)
    cent = sum(1 for x in els if _mm(x, gen, q) == _mm(gen, x, q))
    return n, True, norm // cent


# -- enumeration ---------------------------------------------------------

@pytest.mark.parametrize("spec,count", [
    (GroupSpec.cyclic(6), 6),
    (GroupSpec.sl2(3), 24),
    (GroupSpec.sl2(11), 1320),
    (GroupSpec.sl2(9), 720),
    (GroupSpec.pgl3(2), 168),
    (G.parse_group_spec("perm (1 2 3); (1 2)"), 6),
])
def test_enumerate_counts(spec, count):
    els = G.enumerate_elements(spec)
    assert len(els) == count == len(set(els))


def test_order_cap():
    with pytest.raises(G.OrderCapExceeded):
        G.enumerate_elements(GroupSpec.sl2(11, order_cap=1000))


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8, 9])
def test_sl2_order_formula(q):
    assert len(G.enumerate_elements(GroupSpec.sl2(q))) == q * (q - 1) * (q + 1)


def test_parse_formats():
    assert G.parse_group_spec("sl2 q=251").q == 251
    assert G.parse_group_spec("cyclic 15").theoretical_order == 15
    assert G.parse_group_spec("semidirect 5 4 action=2").theoretical_order == 20
    assert len(G.enumerate_elements(G.parse_group_spec("perm (1 2 3)(4 5); (1 2)"))) == 12
    with pytest.raises(ValueError):
        G.parse_group_spec("semidirect 5 4 action=3x")


# -- sylow ---------------------------------------------------------------

@pytest.mark.parametrize("text,p,expect", [
    ("perm (1 2 3); (1 2)", 3, (1, True, 2)),
    ("sl2 q=11", 5, (1, True, 2)),
    ("pgl3 q=2", 7, (1, True, 3)),
    ("cyclic 15", 5, (1, True, 1)),
    ("semidirect 5 4 action=2", 5, (1, True, 4)),
])
def test_sylow_examples(text, p, expect):
    s = G.sylow_analyze(G.parse_group_spec(text), p, method="exhaustive")
    assert (s.n, s.is_cyclic, s.m_G) == expect


def test_sylow_sl2_251_structural():
    s = G.sylow_analyze(GroupSpec.sl2(251), 5)
    assert (s.n, s.is_cyclic, s.m_G, s.method) == (3, True, 2, "structural")


@pytest.mark.parametrize("q,p", [(5, 3), (7, 3), (11, 3), (11, 5), (13, 3), (13, 7), (7, 7), (11, 11)])
def test_sylow_against_plain_oracle(q, p):
    s = G.sylow_analyze(GroupSpec.sl2(q), p, method="exhaustive")
    n, cyc, m = _oracle_sylow(q, p)
    assert (s.n, s.is_cyclic) == (n, cyc)
    if cyc:
        assert s.m_G == m


_pairs = [(q, p) for q in (3, 5, 7, 9, 11, 13) for p in (3, 5, 7, 11, 13)
          if (q * q - 1) % p == 0]


@given(st.sampled_from(_pairs))
def test_structural_matches_exhaustive(pair):
    q, p = pair
    a = G.sylow_analyze(GroupSpec.sl2(q), p, method="exhaustive")
    b = G.sylow_analyze(GroupSpec.sl2(q), p, method="structural")
    assert (a.n, a.is_cyclic, a.m_G) == (b.n, b.is_cyclic, b.m_G)


@given(st.sampled_from([(q, p) for q in (3, 4, 5, 7, 8, 9, 11) for p in (2, 3, 5, 7, 11)
                        if (q * (q * q - 1)) % p == 0]))
def test_m_divides_p_minus_1(pair):
    q, p = pair
    s = G.sylow_analyze(GroupSpec.sl2(q), p)
    if s.is_cyclic and s.n >= 1:
        assert (p - 1) % s.m_G == 0
        if s.center_has_p:
            assert s.m_G == 1


# -- quotients -----------------------------------------------------------

@pytest.mark.parametrize("text,N,shape", [
    ("cyclic 15", 3, "Z/5"),
    ("semidirect 5 4 action=2", 1, "Z/5 x| Z/4"),
    ("direct cyclic 3 * semidirect 5 4 action=2", 3, "Z/5 x| Z/4"),
])
def test_quotients(text, N, shape):
    r = G.quotient_structure(G.parse_group_spec(text), 5)
    assert r.N_order == N and r.shape_text == shape
    assert gcd(r.N_order, 5) == 1 and r.quotient_order * r.N_order == r.group_order


def test_quotient_quotient_is_reduced():
    # the quotient has a cyclic Sylow of the same order and nothing more to divide out
    spec = G.parse_group_spec("semidirect 7 3 action=2")
    r = G.quotient_structure(spec, 7)
    assert r.N_order == 1 and r.quotient_order == 7 * r.action_order


def test_no_normal_p_subgroup():
    with pytest.raises(G.NoNormalPSubgroup):
        G.quotient_structure(GroupSpec.sl2(11), 5)


# -- triples -------------------------------------------------------------

def test_triple_251():
    t = G.find_sl2_triple(251, (251, 250, 50))
    q = 251
    assert t.alpha == (1, 1, 0, 1)
    a, b, c, d = t.beta
    assert (a * d - b * c) % q == 1 and c != 0
    assert (a + d) % q == t.tau and (a + c + d) % q == t.rho
    assert _order(t.alpha, q) == 251
    assert _order(t.beta, q) == 250
    assert _order(_mm(t.alpha, t.beta, q), q) == 50


@pytest.mark.parametrize("q,orders", [(5, (5, 4, 6)), (7, (7, 8, 3)), (11, (11, 5, 6))])
def test_triple_small_exhaustive(q, orders):
    try:
        t = G.find_sl2_triple(q, orders)
    except G.NoSuchTraces:
        return
    assert t.generation == "exhaustive"
    assert (_order(t.beta, q), _order(_mm(t.alpha, t.beta, q), q)) == orders[1:]
    # lexicographic minimality over the whole group
    sols = [x for x in _sl2_plain(q) if x[2] != 0 and _order(x, q) == orders[1]
            and _order(_mm(t.alpha, x, q), q) == orders[2]]
    assert t.beta <= min(sols)


@pytest.mark.parametrize("q,orders", [(3, (3, 100, 2)), (5, (5, 4, 4))])
def test_no_traces(q, orders):
    with pytest.raises(G.NoSuchTraces):
        G.find_sl2_triple(q, orders)


@pytest.mark.parametrize("q,p,expect", [(67, 7, (2, 3)), (2, 7, (1, 3)), (3, 7, (0, None))])
def test_pgl3_data(q, p, expect):
    assert tuple(G.pgl3_p_data(q, p)) == expect


def test_pgl3_data_matches_brute_force():
    n, m = G.pgl3_p_data(2, 7)
    s = G.sylow_analyze(GroupSpec.pgl3(2), 7, method="exhaustive")
    assert (s.n, s.m_G) == (n, m)
