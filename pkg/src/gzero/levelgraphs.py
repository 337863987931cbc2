"""Level relations on 2^l: the trees T_l and B_l, lifts, decorations and
graph checks (acyclicity, connectivity, unique paths)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Hashable, Iterable, Mapping

import numpy as np

from .kernels import t_level_arrays, union_find_scan
from .words import all_words, sn


class PreconditionError(ValueError):
    """An input violates the stated precondition of a check."""


class UnreachableError(LookupError):
    """No path joins the two requested vertices."""


@dataclass(frozen=True)
class LevelRelation:
    level: int
    pairs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for s, t in self.pairs:
            if len(s) != self.level or len(t) != self.level:
                raise ValueError(f"pair {(s, t)} is not at level {self.level}")

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __contains__(self, pair):
        return pair in self.pairs

    def sorted_pairs(self) -> list[tuple[str, str]]:
        return sorted(self.pairs)

    def to_json(self) -> list[list[str]]:
        return [[s, t] for s, t in self.sorted_pairs()]


@dataclass(frozen=True)
class FiniteGraphInstance:
    vertices: frozenset
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset(self.edges))
        for x, y in self.edges:
            if x not in self.vertices or y not in self.vertices:
                raise ValueError(f"edge {(x, y)} leaves the vertex set")


# -- the tree T and its levels ----------------------------------------------

def in_t(s: str, t: str) -> bool:
    """Membership of (s, t) in the tree T (pairs whose box meets G_0)."""
    if len(s) != len(t) or s == t:
        return False
    n = next(i for i, (a, b) in enumerate(zip(s, t)) if a != b)
    return (s[n] == "0" and s[:n] == t[:n] == sn(n)
            and s[n + 1:] == t[n + 1:])


def t_level(l: int) -> LevelRelation:
    """T_l in closed form: (s_n 0 w, s_n 1 w) with n + 1 + |w| = l."""
    pairs = set()
    for n in range(l):
        head = sn(n)
        for w in all_words(l - n - 1):
            pairs.add((head + "0" + w, head + "1" + w))
    return LevelRelation(l, pairs)


def t_level_bruteforce(l: int) -> LevelRelation:
    """T_l by matching every word against the templates (s_n 0 g, s_n 1 g)."""
    pairs = set()
    templates = [sn(n) for n in range(l)]
    for s in all_words(l):
        for n, head in enumerate(templates):
            if s.startswith(head) and s[n] == "0":
                pairs.add((s, head + "1" + s[n + 1:]))
    return LevelRelation(l, pairs)


def b_level(l: int) -> LevelRelation:
    """B_l: B_1 = {(0,1),(1,0)}, then duplicate and join 0s_{l-1}0 to 1s_{l-1}1."""
    if l < 1:
        raise ValueError("b_level needs l >= 1")
    pairs = {("0", "1"), ("1", "0")}
    for k in range(1, l):
        pairs = {(s + e, t + e) for s, t in pairs for e in "01"}
        mid = sn(k - 1)
        pairs.add(("0" + mid + "0", "1" + mid + "1"))
        pairs.add(("1" + mid + "1", "0" + mid + "0"))
    return LevelRelation(l, pairs)


LIFT_KINDS = ("b0", "t0", "u0", "gsg0", "h0")


def lift_level(kind: str, l: int) -> LevelRelation:
    """Level-l prefix pairs of the relations built from G_0 one level down."""
    if kind not in LIFT_KINDS:
        raise ValueError(f"unknown lift kind {kind!r}")
    if l < 1:
        raise ValueError("lift_level needs l >= 1")
    below = t_level(l - 1)
    if kind == "b0":
        pairs = {("0" + s, "1" + t) for s, t in below}
    elif kind == "t0":
        pairs = {(e + s, f + t) for s, t in below for e, f in (("0", "1"), ("1", "0"))}
    elif kind == "gsg0":
        pairs = {("0" + s, "1" + t) for s, t in symmetrize(below)}
    elif kind == "u0":
        pairs = lift_level("gsg0", l).pairs | lift_level("t0", l).pairs
    else:
        pairs = {(e + w, f + w) for w in all_words(l - 1)
                 for e, f in (("0", "1"), ("1", "0"))}
    return LevelRelation(l, pairs)


# -- generic relation operations -------------------------------------------

def symmetrize(r):
    if isinstance(r, LevelRelation):
        return LevelRelation(r.level, r.pairs | {(t, s) for s, t in r.pairs})
    if isinstance(r, FiniteGraphInstance):
        return FiniteGraphInstance(r.vertices, r.edges | {(y, x) for x, y in r.edges})
    r = set(r)
    return r | {(y, x) for x, y in r}


def g_lift(a) -> FiniteGraphInstance:
    """Bipartite lift: edges (0, z) -> (1, z') for (z, z') in A.

    Tagged vertex (e, z) is encoded as 2z + e, words being read in base 2.
    """
    if isinstance(a, LevelRelation):
        zs = range(1 << a.level)
        pairs = [(int(s, 2) if s else 0, int(t, 2) if t else 0) for s, t in a.pairs]
    else:
        zs = a.vertices
        pairs = a.edges
    vertices = {2 * z + e for z in zs for e in (0, 1)}
    return FiniteGraphInstance(vertices, {(2 * x, 2 * y + 1) for x, y in pairs})


DECORATIONS = {"=": "=", "eq": "=", "□": "□", "box": "□",
               "⊏": "⊏", "left": "⊏", "⊐": "⊐", "right": "⊐"}


def decorate(r: LevelRelation, e: str) -> LevelRelation:
    """Add diagonal pairs: none (=), all (□), starting with 0 (⊏) or 1 (⊐)."""
    try:
        e = DECORATIONS[e]
    except KeyError:
        raise ValueError(f"unknown decoration {e!r}") from None
    if e == "=":
        return r
    if e in "⊏⊐" and r.level == 0:
        raise ValueError("half-diagonal decorations need level >= 1")
    first = {"□": "01", "⊏": "0", "⊐": "1"}[e]
    diag = {(w, w) for w in all_words(r.level) if r.level == 0 or w[0] in first}
    return LevelRelation(r.level, r.pairs | diag)


def relation_predicates(r) -> dict[str, bool]:
    pairs = r.pairs if isinstance(r, LevelRelation) else r.edges
    verts = all_words(r.level) if isinstance(r, LevelRelation) else r.vertices
    symmetric = all((y, x) in pairs for x, y in pairs)
    antisymmetric = all(x == y or (y, x) not in pairs for x, y in pairs)
    irreflexive = all(x != y for x, y in pairs)
    reflexive = all((x, x) in pairs for x in verts)
    return {
        "symmetric": symmetric,
        "antisymmetric": antisymmetric,
        "irreflexive": irreflexive,
        "reflexive": reflexive,
        "oriented_graph": irreflexive and antisymmetric,
        "graph": irreflexive and symmetric,
    }


# -- acyclicity, connectivity, paths --------------------------------------

def _indexed(g):
    """Vertex labels, label->index map and undirected simple edge arrays."""
    if isinstance(g, LevelRelation):
        labels = all_words(g.level)
        index = None
        raw = [(int(s, 2) if s else 0, int(t, 2) if t else 0) for s, t in g.pairs]
    else:
        try:
            labels = sorted(g.vertices)
        except TypeError:
            labels = sorted(g.vertices, key=repr)
        index = {v: i for i, v in enumerate(labels)}
        raw = [(index[x], index[y]) for x, y in g.edges]
    # sorted so that cycle witnesses do not depend on set iteration order
    seen = set()
    us, vs = [], []
    for a, b in sorted(raw):
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        if key not in seen:
            seen.add(key)
            us.append(key[0])
            vs.append(key[1])
    return labels, np.asarray(us, dtype=np.int64), np.asarray(vs, dtype=np.int64)


@dataclass(frozen=True)
class AcyclicityReport:
    acyclic: bool
    cycle: tuple | None = None

    def __bool__(self):
        return self.acyclic


def _bfs_path(adj: Mapping, a, b):
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for y in adj.get(x, ()):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    if b not in prev:
        return None
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


def is_acyclic(g) -> AcyclicityReport:
    """Decide acyclicity of the symmetrization; return a cycle witness if any."""
    labels, us, vs = _indexed(g)
    first, _ = union_find_scan(len(labels), us, vs)
    if first < 0:
        return AcyclicityReport(True)
    adj: dict[int, list[int]] = {}
    for a, b in zip(us[:first].tolist(), vs[:first].tolist()):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    path = _bfs_path(adj, int(us[first]), int(vs[first]))
    return AcyclicityReport(False, tuple(labels[i] for i in path))


def is_connected(g) -> bool:
    labels, us, vs = _indexed(g)
    if len(labels) == 0:
        return True
    _, comps = union_find_scan(len(labels), us, vs)
    return comps == 1


def _adjacency(g) -> dict:
    adj: dict = {}
    pairs = g.pairs if isinstance(g, LevelRelation) else g.edges
    for x, y in pairs:
        if x != y:
            adj.setdefault(x, set()).add(y)
            adj.setdefault(y, set()).add(x)
    return {k: sorted(v, key=repr) for k, v in adj.items()}


def _has_vertex(g, v) -> bool:
    if isinstance(g, LevelRelation):
        return isinstance(v, str) and len(v) == g.level and not v.strip("01")
    return v in g.vertices


def injective_path(g, s, t, check: bool = True) -> list:
    """The unique injective path from s to t in a connected acyclic graph."""
    if check:
        if not is_acyclic(g):
            raise PreconditionError("graph is not acyclic")
        if not is_connected(g):
            raise PreconditionError("graph is not connected")
    for v in (s, t):
        if not _has_vertex(g, v):
            raise UnreachableError(f"{v!r} is not a vertex")
    if s == t:
        return [s]
    path = _bfs_path(_adjacency(g), s, t)
    if path is None:
        raise UnreachableError(f"no path from {s!r} to {t!r}")
    return path


def all_injective_paths(g, s, t) -> list[list]:
    """Every injective path from s to t, by exhaustive DFS (small graphs)."""
    adj = _adjacency(g)
    found = []

    def walk(path, seen):
        x = path[-1]
        if x == t:
            found.append(list(path))
            return
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                path.append(y)
                walk(path, seen)
                path.pop()
                seen.discard(y)

    walk([s], {s})
    return found


# -- the two small lemmas ---------------------------------------------------

@dataclass(frozen=True)
class LemmaReport:
    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def _as_graph(g) -> FiniteGraphInstance:
    if isinstance(g, LevelRelation):
        return FiniteGraphInstance(all_words(g.level), g.pairs)
    return g


def check_lemma_2_2(g, h, hmap: Mapping[Hashable, Hashable]) -> LemmaReport:
    """An injective homomorphism out of a connected acyclic graph into an
    acyclic graph reflects edges onto its range."""
    g, h = _as_graph(g), _as_graph(h)
    for name, r in (("G", g), ("H", h)):
        flags = relation_predicates(r)
        if not flags["graph"]:
            raise PreconditionError(f"{name} is not a graph")
        rep = is_acyclic(r)
        if not rep:
            raise PreconditionError(f"{name} is not acyclic: {rep.cycle}")
    if not is_connected(g):
        raise PreconditionError("G is not connected")
    for x in g.vertices:
        if x not in hmap or hmap[x] not in h.vertices:
            raise PreconditionError(f"h is undefined or leaves H at {x!r}")
    images = {}
    for x in g.vertices:
        y = hmap[x]
        if y in images:
            raise PreconditionError(f"h is not injective: {images[y]!r}, {x!r}")
        images[y] = x
    for x, y in g.edges:
        if (hmap[x], hmap[y]) not in h.edges:
            raise PreconditionError(f"h is not a homomorphism at {(x, y)!r}")
    for a, b in h.edges:
        if a in images and b in images and (images[a], images[b]) not in g.edges:
            return LemmaReport(False, (images[a], images[b]))
    return LemmaReport(True)


def check_lemma_2_4(a: FiniteGraphInstance, direction: str,
                    parts: tuple[Iterable, Iterable] | None = None) -> LemmaReport:
    """(a): A irreflexive or antisymmetric with s(A) acyclic => s(G_A) acyclic.
    (b): A inside X0 x X1 with s(G_A) acyclic => s(A) acyclic."""
    a = _as_graph(a)
    if direction == "a":
        flags = relation_predicates(a)
        if not (flags["irreflexive"] or flags["antisymmetric"]):
            raise PreconditionError("A is neither irreflexive nor antisymmetric")
        if not is_acyclic(a):
            raise PreconditionError("s(A) is not acyclic")
        rep = is_acyclic(g_lift(a))
        return LemmaReport(rep.acyclic, rep.cycle)
    if direction == "b":
        if parts is None:
            raise PreconditionError("direction b needs the parts X0, X1")
        x0, x1 = set(parts[0]), set(parts[1])
        if x0 & x1:
            raise PreconditionError("X0 and X1 are not disjoint")
        for x, y in a.edges:
            if x not in x0 or y not in x1:
                raise PreconditionError(f"pair {(x, y)!r} is not in X0 x X1")
        if not is_acyclic(g_lift(a)):
            raise PreconditionError("s(G_A) is not acyclic")
        rep = is_acyclic(a)
        return LemmaReport(rep.acyclic, rep.cycle)
    raise ValueError("direction must be 'a' or 'b'")


def exhaustive_lemma_2_4(points: int = 3) -> dict[str, int]:
    """Run both directions over every qualifying relation on a small set.

    Returns counts of instances checked and counterexamples found.
    """
    verts = list(range(points))
    cells = list(product(verts, verts))
    checked = {"a": 0, "b": 0}
    bad = {"a": 0, "b": 0}
    for mask in range(1 << len(cells)):
        edges = {cells[i] for i in range(len(cells)) if mask >> i & 1}
        rel = FiniteGraphInstance(verts, edges)
        flags = relation_predicates(rel)
        if (flags["irreflexive"] or flags["antisymmetric"]) and is_acyclic(rel):
            checked["a"] += 1
            bad["a"] += not check_lemma_2_4(rel, "a")
    # direction b: every disjoint pair (X0, X1) and every A inside X0 x X1
    for labels in product((0, 1, 2), repeat=points):
        x0 = [v for v, c in zip(verts, labels) if c == 0]
        x1 = [v for v, c in zip(verts, labels) if c == 1]
        box = list(product(x0, x1))
        for mask in range(1 << len(box)):
            edges = {box[i] for i in range(len(box)) if mask >> i & 1}
            rel = FiniteGraphInstance(verts, edges)
            if not is_acyclic(g_lift(rel)):
                continue
            checked["b"] += 1
            bad["b"] += not check_lemma_2_4(rel, "b", (x0, x1))
    return {"checked_a": checked["a"], "checked_b": checked["b"],
            "counterexamples_a": bad["a"], "counterexamples_b": bad["b"]}


def t_level_is_tree(l: int) -> bool:
    """Fast path: s(T_l) is a spanning tree of 2^l, straight on int arrays."""
    us, vs = t_level_arrays(l)
    first, comps = union_find_scan(1 << l, us, vs)
    return first < 0 and comps == 1


# -- the D graph of a frame -----------------------------------------------

def d_level(frame, l: int) -> LevelRelation:
    """Pairs (s, t), s != t, with (0s, 1t) in T_{l+1}, symmetrized."""
    if l == 0:
        return LevelRelation(0, set())
    tree = frame.tree_level(l + 1)
    pairs = set()
    for u, v in tree:
        if u[0] == "0" and v[0] == "1" and u[1:] != v[1:]:
            pairs.add((u[1:], v[1:]))
    return symmetrize(LevelRelation(l, pairs))
