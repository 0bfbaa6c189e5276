"""Augmented dual graphs of stable reductions and their combinatorial checks.

The graph is stored as half-edges with an opposite pairing. Component
vertices carry the inertia exponent r (a p^r-component) and a genus; wild
branch points are extra leaf vertices carrying j with p^j | index. Tame
branch points are not vertices, they are listed on the (etale) component
they specialize to.

Effective invariants live on half-edges as a map alpha -> Fraction. They
can be given directly, derived from a per-edge stack sigma_1..sigma_r via
the weighted average in `ramification.effective_invariant`, or read off
the opposite edge.
"""
from __future__ import annotations

import itertools
import warnings
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .deformdata import datum_from_json, datum_violations
from .numtheory import fmt_rational, parse_rational, require_prime, vp
from .ramification import effective_invariant

COMPONENT = "component"
BRANCH = "wild_branch_point"

FLAVORS = ("primitive_etale", "new_etale", "new_inseparable", "inseparable_with_branch")


class MisplacedBranchPoint(ValueError):
    pass


class AlphaNotDefined(ValueError):
    pass


class MissingInvariant(ValueError):
    pass


class NoApplicableNodes(ValueError):
    pass


class GraphFormatError(ValueError):
    pass


class MonotonicityWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Violation:
    rule: str
    element: str
    detail: str

    def __str__(self):
        return f"[{self.rule}] {self.element}: {self.detail}"


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: str = COMPONENT
    genus: int = 0
    inertia: int = 0
    branch_p_exp: int | None = None
    index: int | None = None
    tame_branch: tuple = ()
    data: tuple = ()

    @property
    def is_component(self):
        return self.kind == COMPONENT

    @property
    def level(self) -> int:
        # the j with the vertex in G'_{j'} for all j' < j
        return self.inertia if self.is_component else self.branch_p_exp


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str
    opp: str
    sigma_eff: dict = field(default_factory=dict)
    sigmas: tuple | None = None


@dataclass(frozen=True)
class TailRecord:
    vertex: str
    edge: str  # the half-edge pointing from the adjoining component into the tail
    r_prime: int
    r: int
    flavor: str
    sigma: Fraction | None
    truncated: tuple  # sigma^alpha_b for r' <= alpha < r

    @property
    def is_etale(self):
        return self.r_prime == 0

    @property
    def is_new(self):
        return self.flavor in ("new_etale", "new_inseparable")


class StableGraph:
    def __init__(self, p, n, m, g_X, branch_indices, vertices, edges, root):
        require_prime(p)
        self.p, self.n, self.m, self.g_X = p, n, m, g_X
        self.branch_indices = tuple(branch_indices)
        self.vertices = {}
        for v in vertices:
            if v.id in self.vertices:
                raise GraphFormatError(f"duplicate vertex id {v.id!r}")
            self.vertices[v.id] = v
        self.edges = {}
        for e in edges:
            if e.id in self.edges:
                raise GraphFormatError(f"duplicate edge id {e.id!r}")
            for end in (e.src, e.dst):
                if end not in self.vertices:
                    raise GraphFormatError(f"edge {e.id}: unknown vertex {end!r}")
            self.edges[e.id] = e
        if root not in self.vertices:
            raise GraphFormatError(f"unknown root {root!r}")
        self.root = root

    # -- basic structure -------------------------------------------------

    @cached_property
    def out_edges(self):
        out = {v: [] for v in self.vertices}
        for e in self.edges.values():
            out[e.src].append(e)
        return out

    def is_branch_edge(self, e: Edge) -> bool:
        return not (self.vertices[e.src].is_component and self.vertices[e.dst].is_component)

    def component_neighbors(self, v):
        return [e.dst for e in self.out_edges[v] if self.vertices[e.dst].is_component]

    def edge_level(self, e: Edge) -> int:
        return max(self.vertices[e.src].level, self.vertices[e.dst].level)

    @property
    def components(self):
        return [v for v in self.vertices.values() if v.is_component]

    def pi(self, i: int = 1) -> int:
        """|Pi_i|: branch points whose index is divisible by p^i."""
        return sum(1 for b in self.branch_indices if b % self.p ** i == 0)

    def _reach(self, start, removed=None, removed_edge=None, only_components=False):
        seen = {start}
        todo = deque([start])
        while todo:
            v = todo.popleft()
            for e in self.out_edges[v]:
                if removed_edge is not None and e.id in removed_edge:
                    continue
                w = e.dst
                if w == removed or w in seen:
                    continue
                if only_components and not self.vertices[w].is_component:
                    continue
                seen.add(w)
                todo.append(w)
        return seen

    # -- effective invariants --------------------------------------------

    def _own_sigma(self, e: Edge, alpha: int):
        """Value from the edge's own data, without looking at the opposite."""
        if self.is_branch_edge(e):
            return Fraction(0)
        if alpha in e.sigma_eff:
            return e.sigma_eff[alpha]
        return self._derived_sigma(e, alpha)

    def _derived_sigma(self, e: Edge, alpha: int):
        if e.sigmas is None:
            return None
        r = self.vertices[e.src].inertia
        if r < self.vertices[e.dst].inertia or len(e.sigmas) != r or not 0 <= alpha < r:
            return None
        return effective_invariant(self.p, e.sigmas, alpha)

    def sigma(self, e, alpha: int = 0):
        """sigma^{eff,alpha}_e, or None if nothing determines it."""
        if isinstance(e, str):
            e = self.edges[e]
        val = self._own_sigma(e, alpha)
        if val is not None:
            return val
        opp = self.edges.get(e.opp)
        if opp is not None:
            val = self._own_sigma(opp, alpha)
            if val is not None:
                return -val
        return None

    # -- (de)serialization -----------------------------------------------

    @classmethod
    def from_json(cls, doc: dict) -> "StableGraph":
        try:
            p = int(doc["p"])
            vertices = []
            for raw in doc["vertices"]:
                kind = raw.get("kind", COMPONENT)
                index = raw.get("index")
                bexp = raw.get("branch_p_exp")
                if kind == BRANCH:
                    if bexp is None:
                        if index is None:
                            raise GraphFormatError(f"{raw['id']}: branch point needs index or branch_p_exp")
                        bexp = vp(int(index), p)
                elif kind != COMPONENT:
                    raise GraphFormatError(f"{raw['id']}: unknown vertex kind {kind!r}")
                vertices.append(Vertex(
                    id=str(raw["id"]),
                    kind=kind,
                    genus=int(raw.get("genus", 0)),
                    inertia=int(raw.get("inertia", 0)),
                    branch_p_exp=None if bexp is None else int(bexp),
                    index=None if index is None else int(index),
                    tame_branch=tuple(int(x) for x in raw.get("tame_branch", ())),
                    data=tuple(datum_from_json(d) for d in raw.get("data", ())),
                ))
            edges = []
            for raw in doc["edges"]:
                se = {int(k): parse_rational(v) for k, v in raw.get("sigma_eff", {}).items()}
                stack = raw.get("sigmas")
                edges.append(Edge(
                    id=str(raw["id"]), src=str(raw["src"]), dst=str(raw["dst"]),
                    opp=str(raw["opp"]), sigma_eff=se,
                    sigmas=None if stack is None else tuple(parse_rational(s) for s in stack),
                ))
            return cls(p, int(doc["n"]), int(doc["m"]), int(doc.get("gX", 0)),
                       [int(b) for b in doc.get("branch_indices", [])],
                       vertices, edges, str(doc["root"]))
        except KeyError as exc:
            raise GraphFormatError(f"missing field {exc}") from exc

    def to_json(self) -> dict:
        vs = []
        for v in self.vertices.values():
            d = {"id": v.id, "kind": v.kind}
            if v.is_component:
                d.update(genus=v.genus, inertia=v.inertia)
                if v.tame_branch:
                    d["tame_branch"] = list(v.tame_branch)
            else:
                d["branch_p_exp"] = v.branch_p_exp
                if v.index is not None:
                    d["index"] = v.index
            vs.append(d)
        es = []
        for e in self.edges.values():
            d = {"id": e.id, "src": e.src, "dst": e.dst, "opp": e.opp}
            if e.sigma_eff:
                d["sigma_eff"] = {str(a): fmt_rational(s) for a, s in sorted(e.sigma_eff.items())}
            if e.sigmas is not None:
                d["sigmas"] = [fmt_rational(s) for s in e.sigmas]
            es.append(d)
        return {"p": self.p, "n": self.n, "m": self.m, "gX": self.g_X,
                "branch_indices": list(self.branch_indices),
                "vertices": vs, "edges": es, "root": self.root}


def make_graph(p, n, m, g_X, branch_indices, vertices, links, root="v0") -> StableGraph:
    """Build a graph from undirected links (src, dst, {alpha: sigma}).

    The given values go on src -> dst, the opposite half-edge gets the
    negatives (nothing for branch edges, which are 0 anyway).
    """
    edges = []
    for k, link in enumerate(links, 1):
        src, dst = link[0], link[1]
        vals = {a: Fraction(s) for a, s in (link[2] if len(link) > 2 else {}).items()}
        edges.append(Edge(f"e{k}", src, dst, f"e{k}r", vals))
        edges.append(Edge(f"e{k}r", dst, src, f"e{k}", {a: -s for a, s in vals.items()}))
    return StableGraph(p, n, m, g_X, branch_indices, vertices, edges, root)


# -- structural validation -------------------------------------------------

def _structure_violations(g: StableGraph) -> list:
    out = []
    for e in g.edges.values():
        o = g.edges.get(e.opp)
        if o is None:
            out.append(Violation("edge-involution", e.id, f"opposite {e.opp!r} missing"))
        elif o.id == e.id or o.opp != e.id or o.src != e.dst or o.dst != e.src:
            out.append(Violation("edge-involution", e.id, f"{e.opp!r} is not its reverse partner"))
        if e.src == e.dst:
            out.append(Violation("edge-involution", e.id, "loop edge"))
    root = g.vertices[g.root]
    if not root.is_component:
        out.append(Violation("root-component", g.root, "root is a branch-point vertex"))
    for v in g.vertices.values():
        if v.is_component:
            if not 0 <= v.inertia <= g.n:
                out.append(Violation("inertia-range", v.id, f"inertia {v.inertia} outside [0, {g.n}]"))
            if v.genus < 0:
                out.append(Violation("inertia-range", v.id, f"negative genus {v.genus}"))
        else:
            es = g.out_edges[v.id]
            if len(es) != 1 or not g.vertices[es[0].dst].is_component:
                out.append(Violation("branch-vertex-attachment", v.id,
                                     f"needs exactly one edge to a component, has {len(es)}"))
            if v.branch_p_exp is None or v.branch_p_exp < 1:
                out.append(Violation("branch-vertex-attachment", v.id, "wild branch point needs p | index"))
            elif v.index is not None and vp(v.index, g.p) != v.branch_p_exp:
                out.append(Violation("branch-multiset", v.id,
                                     f"index {v.index} does not match p-exponent {v.branch_p_exp}"))
    comps = [v.id for v in g.components]
    if root.is_component:
        reach = g._reach(g.root, only_components=True)
        lost = sorted(set(comps) - reach)
        if lost:
            out.append(Violation("graph-connected", lost[0], f"{len(lost)} component(s) unreachable from root"))
        elif g.g_X == 0:
            pairs = sum(1 for e in g.edges.values()
                        if not g.is_branch_edge(e)) // 2
            if pairs != len(comps) - 1:
                out.append(Violation("graph-tree", g.root,
                                     f"{pairs} links on {len(comps)} components, a genus-0 base needs a tree"))
    if g.branch_indices:
        want = Counter(vp(b, g.p) for b in g.branch_indices)
        have = Counter(v.branch_p_exp for v in g.vertices.values() if not v.is_component)
        have.update(vp(b, g.p) for v in g.components for b in v.tame_branch)
        if want != have:
            out.append(Violation("branch-multiset", g.root,
                                 f"p-exponents on the graph {dict(sorted(have.items()))} "
                                 f"!= those of the branch indices {dict(sorted(want.items()))}"))
    return out


def _placement_violations(g: StableGraph) -> list:
    out = []
    for v in g.vertices.values():
        if not v.is_component:
            for e in g.out_edges[v.id]:
                w = g.vertices[e.dst]
                if w.is_component and w.inertia != v.branch_p_exp:
                    out.append(Violation("branch-point-placement", v.id,
                                         f"index divisible by exactly p^{v.branch_p_exp} but sits on "
                                         f"p^{w.inertia}-component {w.id}"))
        else:
            for b in v.tame_branch:
                a = vp(b, g.p)
                if a != v.inertia:
                    out.append(Violation("branch-point-placement", v.id,
                                         f"branch index {b} needs a p^{a}-component, this is p^{v.inertia}"))
    return out


def _is_leaf(g: StableGraph, v: Vertex) -> bool:
    return v.is_component and v.id != g.root and len(g.component_neighbors(v.id)) == 1


def _lemma_violations(g: StableGraph) -> list:
    out = []
    for v in g.components:
        nbrs = g.component_neighbors(v.id)
        if v.inertia == 0 and len(nbrs) > 1:
            out.append(Violation("etale-component-is-tail", v.id,
                                 f"etale component with {len(nbrs)} neighbouring components"))
        if _is_leaf(g, v):
            w = g.vertices[nbrs[0]]
            if w.inertia <= v.inertia:
                out.append(Violation("tail-inertia-drop", v.id,
                                     f"p^{v.inertia}-tail adjoins p^{w.inertia}-component {w.id}"))
    return out


def _effective_violations(g: StableGraph) -> list:
    out = []
    for e in g.edges.values():
        top = g.edge_level(e)
        opp = g.edges.get(e.opp)
        extra = sorted(a for a in e.sigma_eff if not 0 <= a < top)
        if extra:
            out.append(Violation("effective-defined", e.id,
                                 f"values given at alpha={extra}, defined only for alpha < {top}"))
        if g.is_branch_edge(e):
            bad = {a: s for a, s in e.sigma_eff.items() if s != 0}
            if bad:
                out.append(Violation("branch-edge-zero", e.id, f"nonzero values {bad} on a branch edge"))
            continue
        for a in range(top):
            given = e.sigma_eff.get(a)
            derived = g._derived_sigma(e, a)
            if given is not None and derived is not None and given != derived:
                out.append(Violation("effective-data-agreement", e.id,
                                     f"alpha={a}: given {given}, stack gives {derived}"))
            if g.sigma(e, a) is None:
                out.append(Violation("effective-defined", e.id, f"no value at alpha={a}"))
            if opp is not None:
                mine, theirs = g._own_sigma(e, a), g._own_sigma(opp, a)
                if mine is not None and theirs is not None and mine + theirs != 0:
                    out.append(Violation("effective-antisymmetry", e.id,
                                         f"alpha={a}: {mine} + {theirs} != 0"))
    for v in g.components:
        for a in range(v.inertia):
            vals = [g.sigma(e, a) for e in g.out_edges[v.id]]
            if any(s is None for s in vals):
                continue
            lhs = sum(s - 1 for s in vals)
            if lhs != 2 * v.genus - 2:
                out.append(Violation("effective-local-formula", v.id,
                                     f"alpha={a}: sum(sigma-1) = {lhs} != {2 * v.genus - 2}"))
    return out


def _data_violations(g: StableGraph) -> list:
    out = []
    for v in g.components:
        for k, d in enumerate(v.data, 1):
            for rule, detail in datum_violations(d):
                out.append(Violation(rule, f"{v.id}/datum{k}", detail))
    return out


def _outward_monotonic_violations(g: StableGraph) -> list:
    out = []
    tails = {t.vertex for t in classify_tails(g, strict=False) if t.is_etale}
    for v in g.components:
        outward = _outward_set(g, v.id)
        if tails & (outward - {v.id}):
            continue
        if not _monotonic_from(g, v.id):
            out.append(Violation("no-etale-outward-monotonic", v.id,
                                 "no etale tail lies outward, yet inertia increases outward"))
    return out


def validate(g: StableGraph) -> list:
    """All structural and local rule violations, in a fixed order."""
    out = _structure_violations(g)
    if any(v.rule in ("edge-involution", "graph-connected", "root-component") for v in out):
        return out
    out += _placement_violations(g)
    out += _lemma_violations(g)
    out += _effective_violations(g)
    out += _data_violations(g)
    if g.g_X == 0 and not any(v.rule == "graph-tree" for v in out):
        out += _outward_monotonic_violations(g)
    return out


# -- tails -----------------------------------------------------------------

def classify_tails(g: StableGraph, strict: bool = True) -> list:
    if strict:
        bad = _placement_violations(g)
        if bad:
            raise MisplacedBranchPoint(str(bad[0]))
    out = []
    for v in sorted(g.components, key=lambda v: v.id):
        if not _is_leaf(g, v):
            continue
        e = next(e for e in g.out_edges[v.id] if g.vertices[e.dst].is_component)
        into = g.edges.get(e.opp)
        w = g.vertices[e.dst]
        r, rp = w.inertia, v.inertia
        if rp == 0:
            flavor = "primitive_etale" if v.tame_branch else "new_etale"
        else:
            has_branch = any(not g.vertices[f.dst].is_component for f in g.out_edges[v.id])
            flavor = "inseparable_with_branch" if has_branch else "new_inseparable"
        if into is None:
            trunc = tuple(None for _ in range(rp, r))
        else:
            trunc = tuple(g.sigma(into, a) for a in range(rp, r))
        sig = trunc[0] if trunc else None
        out.append(TailRecord(v.id, into.id if into else e.opp, rp, r, flavor, sig, trunc))
    return out


# -- order -----------------------------------------------------------------

def _outward_set(g: StableGraph, v: str) -> frozenset:
    """Vertices w with v <= w."""
    if v == g.root:
        return frozenset(g.vertices)
    cache = g.__dict__.setdefault("_outward_cache", {})
    if v not in cache:
        near = g._reach(g.root, removed=v)
        cache[v] = frozenset(set(g.vertices) - near)
    return cache[v]


def precedes(g: StableGraph, a: str, b: str) -> bool:
    return b in _outward_set(g, a)


def partial_order(g: StableGraph):
    """Comparator: -1 if a < b, 1 if b < a, 0 if equal, None if incomparable."""
    def cmp(a, b):
        if a == b:
            return 0
        if precedes(g, a, b):
            return -1
        if precedes(g, b, a):
            return 1
        return None
    return cmp


def edge_outward(g: StableGraph, e) -> frozenset:
    """Vertices on the far side of e, seen from its source."""
    if isinstance(e, str):
        e = g.edges[e]
    return frozenset(g._reach(e.dst, removed_edge={e.id, e.opp}))


def subgraph_level(g: StableGraph, j: int):
    """(vertex ids, edge ids) of G'_j."""
    if j < 0:
        raise ValueError("level must be >= 0")
    vs = {v.id for v in g.vertices.values() if v.level > j}
    es = {e.id for e in g.edges.values() if e.src in vs or e.dst in vs}
    return frozenset(vs), frozenset(es)


# -- vanishing cycles ------------------------------------------------------

def check_effective_local(g: StableGraph, v: str, alpha: int) -> bool:
    vert = g.vertices[v]
    if not vert.is_component or not 0 <= alpha < vert.inertia:
        raise AlphaNotDefined(f"alpha={alpha} needs a component with inertia > alpha "
                              f"({v} has {vert.inertia})")
    total = Fraction(0)
    for e in g.out_edges[v]:
        s = g.sigma(e, alpha)
        if s is None:
            raise AlphaNotDefined(f"{e.id}: no effective invariant at alpha={alpha}")
        total += s - 1
    return total == 2 * vert.genus - 2


def global_terms(g: StableGraph):
    """(2 g_X - 2 + |Pi|, sum over etale tails of (sigma_b - 1))."""
    lhs = 2 * g.g_X - 2 + g.pi(1)
    rhs = Fraction(0)
    for t in classify_tails(g):
        if not t.is_etale:
            continue
        if t.sigma is None:
            raise MissingInvariant(f"tail {t.vertex} has no sigma_b")
        rhs += t.sigma - 1
    return Fraction(lhs), rhs


def check_global(g: StableGraph) -> bool:
    lhs, rhs = global_terms(g)
    return lhs == rhs


@dataclass(frozen=True)
class GeneralizedReport:
    alpha: int
    verdict: str  # holds_with_equality | holds_strict | fails
    lhs: Fraction
    rhs: Fraction
    boundary: tuple  # edge ids of B^alpha
    n_pieces: int  # |I|
    root_inside: bool  # delta
    f_sum: Fraction | None  # sum over pieces of F(U_i), when defined
    f_expected: int  # -2|I| + 2 delta g_X
    monotonic: bool
    notes: tuple = ()

    @property
    def slack(self):
        return self.lhs - self.rhs


def check_generalized(g: StableGraph, alpha: int) -> GeneralizedReport:
    comp = g.vertices
    inside = {v.id for v in g.components if v.inertia > alpha}
    applicable = [e for e in g.edges.values()
                  if not g.is_branch_edge(e) and e.src in inside and e.dst not in inside]
    if not any(comp[e.src].inertia > comp[e.dst].inertia for e in applicable):
        raise NoApplicableNodes(f"no node between a p^r- and a p^r'-component with r' <= {alpha} < r")
    # pieces of G_alpha
    pieces = []
    left = set(inside)
    while left:
        start = min(left)
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for w in g.component_neighbors(v):
                if w in left and w not in seen:
                    seen.add(w)
                    todo.append(w)
        pieces.append(seen)
        left -= seen
    delta = g.root in inside
    boundary = []
    notes = []
    rhs = Fraction(0)
    for e in sorted(applicable, key=lambda e: e.id):
        if not precedes(g, e.src, e.dst):
            continue  # points back toward the root
        if _outward_set(g, e.dst) & inside:
            continue  # another piece of G_alpha lies beyond
        s = g.sigma(e, alpha)
        if s is None:
            raise MissingInvariant(f"{e.id}: no effective invariant at alpha={alpha}")
        boundary.append(e.id)
        rhs += s - 1
    lhs = Fraction(2 * g.g_X - 2 + g.pi(alpha + 1))
    f_sum = Fraction(0)
    for piece in pieces:
        for v in piece:
            for e in g.out_edges[v]:
                if e.dst in piece:
                    continue
                s = g.sigma(e, alpha)
                if s is None:
                    f_sum = None
                    break
                f_sum += s - 1
            if f_sum is None:
                break
        if f_sum is None:
            break
    f_expected = -2 * len(pieces) + 2 * int(delta) * g.g_X
    if f_sum is not None and f_sum != f_expected:
        notes.append(f"piece sums {f_sum} != -2|I| + 2 delta g_X = {f_expected}")
    if lhs == rhs:
        verdict = "holds_with_equality"
    elif lhs > rhs:
        verdict = "holds_strict"
    else:
        verdict = "fails"
    mono = _monotonic_from(g, g.root)
    if mono and verdict != "holds_with_equality":
        notes.append("graph is monotonic but equality does not hold")
    return GeneralizedReport(alpha, verdict, lhs, rhs, tuple(boundary), len(pieces),
                             delta, f_sum, f_expected, mono, tuple(notes))


# -- monotonicity ----------------------------------------------------------

def _monotonic_from(g: StableGraph, start: str) -> bool:
    region = [w for w in _outward_set(g, start) if g.vertices[w].is_component]
    for a in region:
        ra = g.vertices[a].inertia
        for b in _outward_set(g, a):
            vb = g.vertices[b]
            if vb.is_component and vb.inertia > ra:
                return False
    return True


def is_monotonic(g: StableGraph, start: str | None = None) -> bool:
    start = g.root if start is None else start
    mono = _monotonic_from(g, start)
    if not mono:
        etale = {t.vertex for t in classify_tails(g, strict=False) if t.is_etale}
        if not etale & (_outward_set(g, start) - {start}):
            warnings.warn(f"no etale tail lies outward from {start} but the graph is not "
                          f"monotonic from it; the input cannot come from a stable reduction",
                          MonotonicityWarning, stacklevel=2)
    return mono


# -- tail constraints ------------------------------------------------------

def check_tail_constraints(g: StableGraph) -> list:
    p, m = g.p, g.m
    tails = classify_tails(g)
    out = []
    for t in tails:
        if t.sigma is None:
            out.append(Violation("effective-defined", t.vertex, "tail has no sigma_b"))
            continue
        if not t.is_etale:
            bad = [s for s in t.truncated if s is not None and s.denominator != 1]
            if bad:
                out.append(Violation("insep-tail-integrality", t.vertex,
                                     f"truncated invariants {[fmt_rational(s) for s in t.truncated]} "
                                     f"not all integers"))
        if t.is_new and t.sigma < 1 + Fraction(1, m):
            out.append(Violation("new-tail-lower-bound", t.vertex,
                                 f"new tail has sigma_b = {t.sigma} < 1 + 1/{m}"))
        if not t.is_etale:
            bound = Fraction(p) ** (t.r - t.r_prime - 1)
            if t.sigma < bound:
                out.append(Violation("insep-tail-lower-bound", t.vertex,
                                     f"p^{t.r_prime}-tail on a p^{t.r}-component has "
                                     f"sigma_b = {t.sigma} < {bound}"))
        if t.flavor == "primitive_etale":
            bound = Fraction(p ** (t.r - 1), m)
            if t.sigma < bound:
                out.append(Violation("primitive-tail-lower-bound", t.vertex,
                                     f"primitive tail on a p^{t.r}-component has "
                                     f"sigma_b = {t.sigma} < {bound}"))
        for a, s in zip(range(t.r_prime, t.r), t.truncated):
            if s is not None and m % s.denominator:
                out.append(Violation("invariant-denominator", t.vertex,
                                     f"sigma^{a}_b = {s} not in (1/{m})Z"))
    by_d = {}
    for t in tails:
        by_d.setdefault(t.r_prime, []).append(t)
    n_etale = len(by_d.get(0, []))
    if n_etale >= p:
        out.append(Violation("etale-tail-count", g.root, f"{n_etale} etale tails, need fewer than {p}"))
    for d in sorted(by_d):
        if d == 0:
            continue
        group = by_d[d]
        if len(group) >= p ** d:
            out.append(Violation("insep-tail-count", g.root,
                                 f"{len(group)} p^{d}-tails, need fewer than {p ** d}"))
        # |{c : sigma_c - 1 >= p^mu}| < p^(d - mu) for every real mu; the
        # binding mu are those with p^mu = sigma_b - 1 for some tail b
        excess = sorted((t.sigma - 1 for t in group if t.sigma is not None and t.sigma > 1), reverse=True)
        for k, x in enumerate(excess, 1):
            if k * x >= p ** d:
                out.append(Violation("large-tail-count", g.root,
                                     f"{k} p^{d}-tails with sigma_b - 1 >= {x}, need k * {x} < {p ** d}"))
                break
    kinds = Counter(t.flavor for t in tails)
    if kinds["new_etale"] == 0 and kinds["new_inseparable"] > 0:
        out.append(Violation("no-new-insep-without-new-etale", g.root,
                             f"{kinds['new_inseparable']} new inseparable tail(s) but no new etale tail"))
    return out


def outward_fraction_check(g: StableGraph, e) -> bool:
    if isinstance(e, str):
        e = g.edges[e]
    s = g.sigma(e, 0)
    if s is None:
        raise MissingInvariant(f"{e.id}: no effective invariant at alpha=0")
    far = edge_outward(g, e)
    total = Fraction(0)
    for t in classify_tails(g):
        if t.is_etale and t.vertex in far:
            if t.sigma is None:
                raise MissingInvariant(f"tail {t.vertex} has no sigma_b")
            total += t.sigma
    return (s - total).denominator == 1


# -- enumeration -----------------------------------------------------------

@dataclass(frozen=True, order=True)
class TailConfig:
    primitive: tuple
    new: tuple

    def __str__(self):
        parts = [f"prim {fmt_rational(s)}" for s in self.primitive]
        parts += [f"new {fmt_rational(s)}" for s in self.new]
        return "{" + ", ".join(parts) + "}"

    def to_json(self):
        return {"primitive": [fmt_rational(s) for s in self.primitive],
                "new": [fmt_rational(s) for s in self.new]}


def _partitions(total, max_part, max_len):
    """Non-increasing tuples of positive ints summing to total."""
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first, max_len - 1):
            yield (first,) + rest


def enumerate_tail_configs(p: int, n: int, m: int, num_wild_branch: int) -> list:
    """Etale tail signatures of a three-point genus-0 cover.

    Works in units of 1/m: a primitive tail contributes sigma_b, a new
    one sigma_b - 1, each at least 1/m, and the contributions add up to 1.
    Every tame branch point sits on its own primitive tail, so there are
    exactly 3 - num_wild_branch of those. The tails are thought of as
    bordering the p^n original component, which gives the lower bound
    p^(n-1)/m on primitive sigma_b; fewer than p tails in total.
    """
    require_prime(p)
    if m < 1 or (p - 1) % m:
        raise ValueError(f"m={m} must divide p-1={p - 1}")
    if not 0 <= num_wild_branch <= 3:
        raise ValueError("between 0 and 3 wild branch points")
    k = 3 - num_wild_branch
    floor = p ** (n - 1)  # in units of 1/m
    out = set()
    prims = (q for s in range(k, m + 1) for q in _partitions(s, m, k) if len(q) == k)
    for prim in prims:
        if any(a < floor for a in prim):
            continue
        for new in _partitions(m - sum(prim), m, p - 1 - k):
            cfg = TailConfig(tuple(sorted(Fraction(a, m) for a in prim)),
                             tuple(sorted(1 + Fraction(c, m) for c in new)))
            out.add(cfg)
    return sorted(out)


def brute_force_tail_configs(p: int, n: int, m: int, num_wild_branch: int) -> list:
    """Slow reference: try every multiset of numerators up to 2m + 1."""
    k = 3 - num_wild_branch
    vals = [Fraction(a, m) for a in range(1, 2 * m + 2)]
    found = set()
    # each tail contributes at least 1/m, so at most m of them
    for total in range(k, min(p, k + m + 1)):
        for combo in itertools.combinations_with_replacement(vals, total):
            for prim in set(itertools.combinations(combo, k)):
                rest = list(combo)
                for x in prim:
                    rest.remove(x)
                if any(s < Fraction(p ** (n - 1), m) for s in prim):
                    continue
                if any(s < 1 + Fraction(1, m) for s in rest):
                    continue
                if sum(prim) + sum(s - 1 for s in rest) == 1:
                    found.add(TailConfig(tuple(sorted(prim)), tuple(sorted(rest))))
    return sorted(found)


def realize_star(p: int, n: int, m: int, config: TailConfig, num_wild_branch: int,
                 tame_index: int = 2) -> StableGraph:
    """One p^n original component with every tail and branch point on it.

    Truncated invariants at alpha >= 1 are set equal to sigma_b, which
    keeps every local formula at the root true.
    """
    wild_index = p ** n
    verts = [Vertex("v0", inertia=n)]
    links = []
    for i in range(num_wild_branch):
        verts.append(Vertex(f"x{i + 1}", kind=BRANCH, branch_p_exp=n, index=wild_index))
        links.append(("v0", f"x{i + 1}"))
    tails = [(s, True) for s in config.primitive] + [(s, False) for s in config.new]
    for i, (s, prim) in enumerate(tails, 1):
        verts.append(Vertex(f"t{i}", inertia=0, tame_branch=(tame_index,) if prim else ()))
        links.append(("v0", f"t{i}", {a: s for a in range(n)}))
    indices = [wild_index] * num_wild_branch + [tame_index] * len(config.primitive)
    return make_graph(p, n, m, 0, indices, verts, links)


# -- decision logic --------------------------------------------------------

@dataclass(frozen=True)
class MonodromyReport:
    verdict: str
    exponent_bound: int | None
    gamma_w_trivial: bool
    gamma_w_nontrivial: bool
    small_e: bool
    reasons: tuple


def monodromy_report(g: StableGraph | None, e_abs, p: int, n: int, m_G: int,
                     center_prime_to_p: bool | None = None,
                     bad_reduction: bool | None = None,
                     no_new_etale: bool | None = None,
                     prime_to_p_indices: bool | None = None) -> MonodromyReport:
    """Combine the wild monodromy criteria into one verdict.

    Graph-derived facts (new etale tails, branch indices) can be overridden
    or supplied directly when there is no graph.
    """
    require_prime(p)
    e_abs = Fraction(e_abs)
    reasons = []
    bound = None
    if center_prime_to_p:
        bound = p ** (n - 1)
        reasons.append(f"exponent of the wild monodromy divides p^(n-1) = {bound}")
    if g is not None:
        tails = classify_tails(g)
        if no_new_etale is None:
            no_new_etale = not any(t.flavor == "new_etale" for t in tails)
        if prime_to_p_indices is None:
            prime_to_p_indices = all(b % p for b in g.branch_indices)
    small_e = e_abs < Fraction(p - 1, m_G)
    trivial = bool(prime_to_p_indices and no_new_etale)
    if trivial:
        reasons.append("branching indices prime to p and no new etale tails: wild monodromy trivial")
    nontrivial = bool(small_e and bad_reduction)
    if nontrivial:
        reasons.append(f"e = {e_abs} < (p-1)/m_G = {Fraction(p - 1, m_G)} with bad reduction: "
                       f"wild monodromy nontrivial")
    good = bool(small_e and no_new_etale and prime_to_p_indices)
    if trivial and nontrivial:
        verdict = "inconsistent input"
        reasons.append("trivial and nontrivial wild monodromy both follow from the input")
    elif good:
        verdict = "potentially good reduction"
        reasons.append(f"e = {e_abs} < {Fraction(p - 1, m_G)} and no new etale tails")
    elif nontrivial:
        verdict = "wild monodromy nontrivial"
    elif trivial:
        verdict = "wild monodromy trivial"
    else:
        verdict = "inconclusive"
        if not small_e:
            reasons.append(f"e = {e_abs} is not below (p-1)/m_G = {Fraction(p - 1, m_G)}")
    return MonodromyReport(verdict, bound, trivial, nontrivial, small_e, tuple(reasons))
