"""Oracle presentations of meager sets and the inductive embedding engines.

All oracle searches try extensions in increasing length (and
lexicographically within a length) and return the first success.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .frames import LEMMA32, frame_extend
from .ideals import EpPoint
from .levelgraphs import in_t
from .words import (SparseWord, all_words, psi, psi_inv, sn,
                    unpair, xor_words)

DEFAULT_BOUND = 1 << 16


def default_bound() -> int:
    return int(os.environ.get("GZERO_ORACLE_BOUND", DEFAULT_BOUND))


class OracleError(RuntimeError):
    """No witness was found within the search bound."""


class VerificationError(RuntimeError):
    def __init__(self, report):
        super().__init__(f"construction failed verification: {report.failures()}")
        self.report = report


def _compat(s: str, t: str) -> bool:
    return s.startswith(t) or t.startswith(s)


def _template_meets(c: str, d: str, x: str, y: str) -> bool:
    """Does N_x x N_y meet {(c g, d g) : g in 2^omega}?"""
    if not (_compat(x, c) and _compat(y, d)):
        return False
    return _compat(x[len(c):], y[len(d):])


# -- two-dimensional oracles ------------------------------------------------

class BoxOracle:
    """O_n is the complement of a closed set C_n, C_n increasing in n."""

    kind = "abstract"

    def __init__(self, bound: int | None = None):
        self.bound = default_bound() if bound is None else bound

    def meets(self, a: str, b: str, n: int) -> bool:
        raise NotImplementedError

    def horizon(self, s: str, t: str, n: int) -> int | None:
        """An m past which meets(s0^m, t0^m, n) no longer changes, if known."""
        return None

    def query(self, s: str, t: str, n: int) -> int:
        """Least m <= bound with N_{s0^m} x N_{t0^m} inside O_n."""
        if len(s) != len(t):
            raise ValueError("box queries need equal lengths")
        stop = self.bound
        h = self.horizon(s, t, n)
        if h is not None:
            stop = min(stop, h)
        for m in range(stop + 1):
            z = "0" * m
            if not self.meets(s + z, t + z, n):
                return m
        raise OracleError(f"meagerness witness not found within bound for {(s, t, n)}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "bound": self.bound}


class ComplementOfBoxes(BoxOracle):
    """C_n is the union of levels 0..n; a level holds graph templates
    {(c g, d g)} and clopen boxes N_a x N_b.  Later levels repeat nothing:
    past the end of the list C_n stays the union of every level."""

    kind = "complement-of-boxes"

    def __init__(self, levels: Sequence[dict], bound: int | None = None):
        super().__init__(bound)
        self.levels = [
            {"graphs": [tuple(g) for g in lv.get("graphs", ())],
             "boxes": [tuple(b) for b in lv.get("boxes", ())]}
            for lv in levels
        ]

    def level(self, j: int) -> dict:
        return self.levels[j]

    def _upto(self, n: int):
        return (self.level(j) for j in range(min(n + 1, len(self.levels))))

    def meets(self, a: str, b: str, n: int) -> bool:
        if len(a) != len(b):
            raise ValueError("box queries need equal lengths")
        for lv in self._upto(n):
            for c, d in lv["graphs"]:
                if _template_meets(c, d, a, b):
                    return True
            for c, d in lv["boxes"]:
                if _compat(a, c) and _compat(b, d):
                    return True
        return False

    def horizon(self, s, t, n):
        width = 0
        for lv in self._upto(n):
            for c, d in lv["graphs"] + lv["boxes"]:
                width = max(width, len(c), len(d))
        return width + len(s) + 1

    def to_json(self):
        return {"kind": self.kind, "bound": self.bound,
                "levels": [{"graphs": [list(g) for g in lv["graphs"]],
                            "boxes": [list(b) for b in lv["boxes"]]}
                           for lv in self.levels]}


class SymmetricG0Oracle(ComplementOfBoxes):
    """C_n = union over j <= n of Gr(phi_j) and its inverse, so that the
    intersection of the O_n is the complement of s(G_0)."""

    kind = "sg0"

    def __init__(self, bound: int | None = None):
        BoxOracle.__init__(self, bound)
        self.levels = _LazyLevels()

    def to_json(self):
        return {"kind": self.kind, "bound": self.bound}


class _LazyLevels:
    def __len__(self):
        return 1 << 62

    def __getitem__(self, j):
        head = sn(j)
        return {"graphs": [(head + "0", head + "1"), (head + "1", head + "0")],
                "boxes": []}


class TreeOracle(BoxOracle):
    """O_n = complement of the body of a tree, for every n.  Extending both
    sides of a node by equal bits stays in the tree, so a box that meets it
    at m = 0 meets it for every m."""

    def in_tree(self, a: str, b: str) -> bool:
        raise NotImplementedError

    def meets(self, a, b, n):
        if len(a) != len(b):
            raise ValueError("box queries need equal lengths")
        return self.in_tree(a, b)

    def horizon(self, s, t, n):
        return 0


class ClosureB0Oracle(TreeOracle):
    """F = closure of B_0 = {(0a, 1b) : (a, b) in G_0} and {(0g, 1g)}."""

    kind = "closure-b0"

    def in_tree(self, a, b):
        if not a:
            return True
        return a[0] == "0" and b[0] == "1" and (a[1:] == b[1:] or in_t(a[1:], b[1:]))


class ClosureTOracle(TreeOracle):
    """F = the body of the tree T generated by a frame."""

    kind = "closure-t"

    def __init__(self, frame=LEMMA32, bound: int | None = None):
        super().__init__(bound)
        self.frame = frame

    def in_tree(self, a, b):
        return self.frame.contains(a, b)


def meets_closure_b0(a: str, b: str) -> bool:
    return ClosureB0Oracle.in_tree(None, a, b)


# -- one-dimensional oracles --------------------------------------------------

class OneDimOracle:
    kind = "abstract"

    def __init__(self, bound: int | None = None):
        self.bound = default_bound() if bound is None else bound

    def contains(self, u, q: int) -> bool:
        """Is N_u inside O_q?"""
        raise NotImplementedError

    def extension(self, u, q: int) -> str:
        """Least x (length first, then lexicographic) with N_{ux} inside O_q."""
        u = SparseWord.of(u)
        tried = 0
        length = 0
        while True:
            for x in all_words(length):
                if self.contains(u + x, q):
                    return x
                tried += 1
                if tried > self.bound:
                    raise OracleError(f"no extension within bound at q={q}")
            length += 1

    def to_json(self) -> dict:
        return {"kind": self.kind, "bound": self.bound}


class FullSpaceOracle(OneDimOracle):
    kind = "full-space"

    def contains(self, u, q):
        return True


def ep_extends(x: EpPoint, u) -> bool:
    """Does the point x lie in N_u?  Works for very long sparse u."""
    u = SparseWord.of(u)
    s, k = len(x.prefix), len(x.period)
    head = min(s, u.length)
    if u.prefix(head) != SparseWord.of(x.prefix[:head]):
        return False
    if u.length <= s:
        return True
    ones_per = x.period.count("1")
    span = u.length - s
    if ones_per == 0:
        return not u.ones_in(s, u.length)
    # ones of x in [s, len u) must all be ones of u, so the span is short
    if (span // k) * ones_per > len(u.ones):
        return False
    return all(u.bit(q) == int(x.period[(q - s) % k]) for q in range(s, u.length))


class AvoidEpPointsOracle(OneDimOracle):
    """O_q is the complement of the first q listed points."""

    kind = "avoid-ep-points"

    def __init__(self, points: Iterable[EpPoint], bound: int | None = None):
        super().__init__(bound)
        self.points = list(points)

    def contains(self, u, q):
        return not any(ep_extends(x, u) for x in self.points[:q])

    def to_json(self):
        return {"kind": self.kind, "bound": self.bound,
                "points": [x.to_json() for x in self.points]}


def oracle_from_fsigma_boxes(levels: Sequence[dict], bound: int | None = None) -> BoxOracle:
    return ComplementOfBoxes(levels, bound)


def oracle_from_json(data, frame=None):
    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("kind")
    bound = data.get("bound")
    if kind == "complement-of-boxes":
        return ComplementOfBoxes(data.get("levels", []), bound)
    if kind == "sg0":
        return SymmetricG0Oracle(bound)
    if kind == "closure-b0":
        return ClosureB0Oracle(bound)
    if kind == "closure-t":
        return ClosureTOracle(frame if frame is not None else LEMMA32, bound)
    if kind == "full-space":
        return FullSpaceOracle(bound)
    if kind == "avoid-ep-points":
        pts = [EpPoint(p["prefix"], p["period"]) for p in data.get("points", [])]
        return AvoidEpPointsOracle(pts, bound)
    raise ValueError(f"unknown oracle kind {kind!r}")


# -- shared helpers -----------------------------------------------------------

def min_sn_extending(target: str, lo: int) -> int:
    """Least n >= lo with s_n extending target."""
    k = len(target)
    lo = max(lo, k)
    best = None
    # psi(n) a proper prefix of target, the rest of target zero
    for j in range(k):
        if "1" not in target[j:]:
            n = psi_inv(target[:j])
            if n >= lo and (best is None or n < best):
                best = n
    # psi(n) of length L >= k starting with target; ranges grow with L
    length = k
    while best is None or psi_inv(target + "0" * (length - k)) < best:
        first = psi_inv(target + "0" * (length - k))
        last = psi_inv(target + "1" * (length - k))
        if last >= lo:
            n = max(first, lo)
            if best is None or n < best:
                best = n
            break
        length += 1
    return best


def min_sn_extending_scan(target: str, lo: int) -> int:
    n = max(lo, len(target))
    while not sn(n).startswith(target):
        n += 1
    return n


def in_b_closure_level(a: str, b: str) -> bool:
    """(a, b) in B_l, the level sets of s(closure of B_0)."""
    return meets_closure_b0(a, b) or meets_closure_b0(b, a)


def in_b0(a: str, b: str) -> bool:
    return bool(a) and a[0] == "0" and b[0] == "1" and in_t(a[1:], b[1:])


@dataclass
class PartialEmbedding:
    kind: str
    psi: dict = field(default_factory=dict)
    delta: list = field(default_factory=list)
    k: list = field(default_factory=list)
    labels: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def depth(self) -> int:
        if self.labels:
            return max(len(w) for w in self.labels)
        return max((len(w) for w in self.psi), default=0)

    def to_json(self) -> dict:
        out = {"kind": self.kind,
               "psi": {w: self.psi[w] for w in sorted(self.psi, key=lambda w: (len(w), w))},
               "delta": list(self.delta), "k": list(self.k)}
        if self.labels:
            out["labels"] = {w: str(self.labels[w])
                             for w in sorted(self.labels, key=lambda w: (len(w), w))}
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_json(cls, data) -> "PartialEmbedding":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["kind"], dict(data.get("psi", {})), list(data.get("delta", [])),
                   list(data.get("k", [])),
                   {w: int(v) for w, v in data.get("labels", {}).items()},
                   dict(data.get("meta", {})))


@dataclass
class VerifyReport:
    results: list = field(default_factory=list)

    def add(self, condition: str, ok: bool, witness=None):
        self.results.append({"condition": condition, "ok": bool(ok),
                             "witness": witness if not ok else None})

    @property
    def ok(self) -> bool:
        return all(r["ok"] for r in self.results)

    def __bool__(self):
        return self.ok

    def failures(self) -> list:
        return [r for r in self.results if not r["ok"]]


def _first(pairs):
    return next(iter(pairs), None)


def _check_tree_shape(e: PartialEmbedding, rep: VerifyReport, strict: bool = True):
    depth = e.depth
    bad = [w for l in range(depth) for w in all_words(l) for c in "01"
           if w not in e.psi or w + c not in e.psi
           or not e.psi[w + c].startswith(e.psi[w])
           or (strict and e.psi[w + c] == e.psi[w])]
    rep.add("strict prefix extension", not bad, bad[:1])
    uneven = [w for w in e.psi if len(w) >= len(e.k) or len(e.psi[w]) != e.k[len(w)]]
    rep.add("level-uniform lengths", not uneven, uneven[:1])
    clash = []
    for l in range(depth + 1):
        seen = {}
        for w in all_words(l):
            img = e.psi.get(w)
            if img in seen:
                clash.append([seen[img], w])
            seen[img] = w
    rep.add("level injectivity", not clash, clash[:1])


def _check_boxes(e, rep, oracle, skip, label="box avoidance"):
    bad = []
    for l in range(1, e.depth + 1):
        words = all_words(l)
        for s in words:
            for t in words:
                if skip(s, t):
                    continue
                if oracle.meets(e.psi[s], e.psi[t], l):
                    bad.append([s, t])
                    break
            if bad:
                break
    rep.add(label, not bad, bad[:1])


# -- Theorem 2.6 engine -------------------------------------------------------

def thm26_embed(oracle: BoxOracle, depth: int, verify: bool = True) -> PartialEmbedding:
    psi_t = {"": ""}
    k = [0]
    delta: list[int] = []
    for l in range(depth):
        lo = max(delta[-1] + 1 if delta else 0, k[l])
        d = min_sn_extending(psi_t[sn(l)], lo)
        delta.append(d)
        tail = sn(d)[k[l]:]
        tilde = {u + e: psi_t[u] + tail + e for u in all_words(l) for e in "01"}
        words = all_words(l + 1)
        m = 0
        for s in words:
            for t in words:
                if s != t and not in_t(s, t) and not in_t(t, s):
                    m = max(m, oracle.query(tilde[s], tilde[t], l + 1))
        pad = "0" * m
        for w in words:
            psi_t[w] = tilde[w] + pad
        k.append(d + 1 + m)
    emb = PartialEmbedding("thm26", psi_t, delta, k)
    if verify:
        rep = verify_embedding(emb, oracle=oracle)
        if not rep:
            raise VerificationError(rep)
    return emb


def _verify_thm26(e: PartialEmbedding, rep: VerifyReport, oracle):
    _check_tree_shape(e, rep)
    depth = e.depth
    inc = all(a < b for a, b in zip(e.delta, e.delta[1:]))
    rep.add("delta strictly increasing", inc and len(e.delta) >= depth, e.delta)
    bad = [l for l in range(min(depth, len(e.delta)))
           if not sn(e.delta[l]).startswith(e.psi[sn(l)])]
    rep.add("Psi(s_l) below s_delta(l)", not bad, bad[:1])
    bad = []
    for n in range(min(depth, len(e.delta))):
        head = sn(n)
        base = sn(e.delta[n])
        for j in range(depth - n):
            for v in all_words(j):
                a, b = e.psi[head + "0" + v], e.psi[head + "1" + v]
                w = a[len(base) + 1:]
                if a != base + "0" + w or b != base + "1" + w:
                    bad.append([n, v])
    rep.add("G_0 edges sent to phi_delta(n)", not bad, bad[:1])
    hom, refl = [], []
    for l in range(1, depth + 1):
        words = all_words(l)
        for s in words:
            for t in words:
                if s == t:
                    continue
                img = in_t(e.psi[s], e.psi[t])
                if in_t(s, t) and not img:
                    hom.append([s, t])
                if not (in_t(s, t) or in_t(t, s)) and (img or in_t(e.psi[t], e.psi[s])):
                    refl.append([s, t])
    rep.add("level homomorphism", not hom, hom[:1])
    rep.add("reflection onto range", not refl, refl[:1])
    if oracle is not None:
        _check_boxes(e, rep, oracle,
                     lambda s, t: s == t or in_t(s, t) or in_t(t, s))


# -- Theorem 4.10 engine ------------------------------------------------------

def _interleave(s: str, delta: Sequence[int]) -> str:
    return "".join(c + "0" * delta[i] for i, c in enumerate(s))


def thm410_embed(frame, oracle: BoxOracle, depth: int,
                 verify: bool = True) -> PartialEmbedding:
    delta: list[int] = []
    k = [0]
    for m in range(depth):
        words = all_words(m + 1)
        tree = frame.tree_level(m + 1).pairs
        phi_w = {s: _interleave(s[:m], delta) + s[m] for s in words}
        big = 0
        for u in words:
            for v in words:
                if (u, v) not in tree:
                    big = max(big, oracle.query(phi_w[u], phi_w[v], m + 1))
        um, vm = frame.entry(m + 1)
        d = frame_extend(frame, phi_w[um], phi_w[vm], unpair(m + 1)[0], min_n=big)
        delta.append(d)
        k.append(k[-1] + 1 + d)
    table = {w: _interleave(w, delta) for l in range(depth + 1) for w in all_words(l)}
    emb = PartialEmbedding("thm410", table, delta, k)
    if verify:
        rep = verify_embedding(emb, oracle=oracle, frame=frame)
        if not rep:
            raise VerificationError(rep)
    return emb


def _verify_thm410(e: PartialEmbedding, rep: VerifyReport, oracle, frame):
    depth = len(e.delta)
    bad = [w for w in e.psi if len(w) > depth or e.psi[w] != _interleave(w, e.delta)]
    missing = [w for l in range(depth + 1) for w in all_words(l) if w not in e.psi]
    rep.add("tables interleave delta", not bad and not missing, (bad + missing)[:1])
    ks = [sum(1 + d for d in e.delta[:m]) for m in range(depth + 1)]
    rep.add("k_m = sum of (1 + delta)", ks == list(e.k), [ks, e.k])
    _check_tree_shape(e, rep)
    if frame is None:
        frame = LEMMA32
    bad = []
    for m in range(depth + 1):
        um, vm = frame.entry(m)
        fu, fv = e.psi.get(um), e.psi.get(vm)
        if fu is None or (SparseWord.of(fu), SparseWord.of(fv)) != frame.sparse_entry(e.k[m]):
            bad.append(m)
    rep.add("f_m(u_m), f_m(v_m) is a frame entry", not bad, bad[:1])
    bad = [m for m in range(depth + 1) if unpair(e.k[m])[0] != unpair(m)[0]]
    rep.add("(k_m)_0 = (m)_0", not bad, bad[:1])
    rep.add("index map injective", len(set(e.k)) == len(e.k), e.k)
    bad = []
    for m in range(1, depth + 1):
        for u, v in frame.tree_level(m):
            if not frame.contains(e.psi[u], e.psi[v]):
                bad.append([u, v])
    rep.add("T_m sent into T_k_m", not bad, bad[:1])
    if oracle is not None:
        trees = {m: frame.tree_level(m).pairs for m in range(depth + 1)}
        _check_boxes(e, rep, oracle, lambda s, t: (s, t) in trees[len(s)])
    words = all_words(depth)
    bad = []
    for a in words:
        fa = e.psi[a]
        for b in words:
            if e.psi[xor_words(a, b)] != xor_words(fa, e.psi[b]):
                bad.append([a, b])
                break
        if bad:
            break
    rep.add("xor identity", not bad, bad[:1])


# -- Theorem 4.11 engine ------------------------------------------------------

def thm411_embed(oracle: BoxOracle, depth: int, verify: bool = True) -> PartialEmbedding:
    psi_t = {"": ""}
    k = [0]
    delta = [0]
    if depth >= 1:
        n0 = oracle.query("1", "0", 0)
        psi_t["0"] = "0" + "0" * n0
        psi_t["1"] = "1" + "0" * n0
        k.append(n0 + 1)
    for l in range(1, depth):
        target = psi_t["0" + sn(l - 1)][1:]
        d = min_sn_extending(target, max(k[l] - 1, delta[-1]))
        delta.append(d + 1)
        tail = sn(d)[k[l] - 1:]
        tilde = {u + e: psi_t[u] + tail + e for u in all_words(l) for e in "01"}
        words = all_words(l + 1)
        m = 0
        for s in words:
            for t in words:
                if s[0] != t[0] and not meets_closure_b0(s, t):
                    m = max(m, oracle.query(tilde[s], tilde[t], l + 1))
        pad = "0" * m
        for w in words:
            psi_t[w] = tilde[w] + pad
        k.append(d + 2 + m)
    emb = PartialEmbedding("thm411", psi_t, delta[:max(depth, 1)], k)
    if verify:
        rep = verify_embedding(emb, oracle=oracle)
        if not rep:
            raise VerificationError(rep)
    return emb


def _verify_thm411(e: PartialEmbedding, rep: VerifyReport, oracle):
    _check_tree_shape(e, rep)
    depth = e.depth
    d = e.delta
    ok = bool(d) and d[0] == 0 and all(a < b for a, b in zip(d, d[1:]))
    rep.add("delta(0) = 0, strictly increasing", ok and len(d) >= depth, d)
    bad = []
    for j in range(depth):
        for v in all_words(j):
            a, b = e.psi["0" + v], e.psi["1" + v]
            if a[0] != "0" or b[0] != "1" or a[1:] != b[1:]:
                bad.append(v)
    rep.add("first-bit flip preserved", not bad, bad[:1])
    bad = []
    for n in range(depth - 1):
        if n + 1 >= len(d):
            bad.append(n)
            continue
        base = sn(d[n + 1] - 1)
        head = sn(n)
        for j in range(depth - n - 1):
            for v in all_words(j):
                a, b = e.psi["0" + head + "0" + v], e.psi["1" + head + "1" + v]
                w = a[len(base) + 2:]
                if a != "0" + base + "0" + w or b != "1" + base + "1" + w:
                    bad.append([n, v])
    rep.add("closure edges sent to psi_delta(n+1)", not bad, bad[:1])
    hom, refl, b0 = [], [], []
    for l in range(1, depth + 1):
        words = all_words(l)
        for s in words:
            for t in words:
                if s == t:
                    continue
                src, img = in_b_closure_level(s, t), in_b_closure_level(e.psi[s], e.psi[t])
                if src and not img:
                    hom.append([s, t])
                if img and not src:
                    refl.append([s, t])
                if in_b0(s, t) and not in_b0(e.psi[s], e.psi[t]):
                    b0.append([s, t])
    rep.add("B_l homomorphism", not hom, hom[:1])
    rep.add("B_l reflection onto range", not refl, refl[:1])
    rep.add("B_0 level homomorphism", not b0, b0[:1])
    if oracle is not None:
        _check_boxes(e, rep, oracle, lambda s, t: meets_closure_b0(s, t))


# -- Lemma 3.7 engine -----------------------------------------------------------

def lemma37_labels(frame, u: str, v: str, oracle: OneDimOracle, depth: int,
                   verify: bool = True) -> PartialEmbedding:
    """Labels l(w) for |w| <= depth, built in psi order."""
    if not frame.contains(u, v):
        raise ValueError(f"{(u, v)} is not in T")
    up, vp = ("0", "1") if u == "" else (u, v)
    big = frame_extend(frame, up, vp, 0)
    labels = {"": len(up) + big}
    n = 1 if u == "" else labels[""]
    last = (1 << (depth + 1)) - 1
    for r in range(last - 1):
        word = psi(r + 1)
        s, eps = word[:-1], word[-1]
        ls = labels[s]
        us, vs = frame.sparse_entry(ls)
        if r == 0:
            t = SparseWord(0)
        else:
            cur = frame.sparse_entry(labels[psi(r)])[0]
            t = cur.suffix_from(ls + 1) + "0"
        x = oracle.extension(us + "0" + t, len(s) + 1)
        y = oracle.extension(vs + eps + t + x, len(s) + 1)
        a = us + "0" + t + x + y
        b = vs + eps + t + x + y
        pad = frame_extend(frame, a, b, unpair(len(s) + 1)[0])
        labels[word] = a.length + pad
    emb = PartialEmbedding("lemma37", {}, [], [], labels,
                           {"u": u, "v": v, "n": n, "M": big})
    if verify:
        rep = verify_embedding(emb, oracle=oracle, frame=frame)
        if not rep:
            raise VerificationError(rep)
    return emb


def _psi_order(depth: int) -> list[str]:
    return [psi(r) for r in range((1 << (depth + 1)) - 1)]


def _verify_lemma37(e: PartialEmbedding, rep: VerifyReport, oracle, frame):
    if frame is None:
        frame = LEMMA32
    lab = e.labels
    depth = e.depth
    u, v = e.meta.get("u", ""), e.meta.get("v", "")
    n = e.meta.get("n")
    up, vp = ("0", "1") if u == "" else (u, v)
    entry = frame.sparse_entry
    l0 = lab[""]
    eu, ev = entry(l0)
    ok = (SparseWord.of(up).pad(l0 - len(up)) == eu
          and SparseWord.of(vp).pad(l0 - len(vp)) == ev)
    rep.add("(1) l(empty) = |u'| + M", ok, l0)
    un, vn = entry(n)
    rep.add("(a) (u, v) below (u_n, v_n)",
            n >= 1 and SparseWord.of(u).is_prefix_of(un) and SparseWord.of(v).is_prefix_of(vn), n)
    if oracle is not None:
        bad = [w for w in lab if w and not (oracle.contains(entry(lab[w])[0], len(w))
                                            and oracle.contains(entry(lab[w])[1], len(w)))]
        rep.add("(2) entries inside O_|w|", not bad, bad[:1])
    bad = []
    for w in lab:
        if len(w) >= depth:
            continue
        bu, bv = entry(lab[w])
        for c in "01":
            cu, cv = entry(lab[w + c])
            lw = lab[w]
            if (cu.prefix(lw) != bu or cv.prefix(lw) != bv or cu.bit(lw) != 0
                    or cv.bit(lw) != int(c) or cu.suffix_from(lw + 1) != cv.suffix_from(lw + 1)):
                bad.append(w + c)
    rep.add("(3) children branch at l(w)", not bad, bad[:1])
    order = _psi_order(depth)
    bad = [w for w, nxt in zip(order, order[1:])
           if not (entry(lab[w])[0] + "0").is_prefix_of(entry(lab[nxt])[0])]
    rep.add("(4) u_l(psi(r)) 0 below u_l(psi(r+1))", not bad, bad[:1])
    bad = [w for w in lab if unpair(lab[w])[0] != unpair(len(w))[0]]
    rep.add("(5) (l(w))_0 = (|w|)_0", not bad, bad[:1])
    alpha = entry(lab[order[-1]])[0]
    bad = []
    for beta in all_words(depth):
        top = lab[beta]
        a_win = alpha.prefix(top)
        f_win = entry(top)[1]
        diff = set(a_win.ones_in(n, top)).symmetric_difference(f_win.ones_in(n, top))
        want = {lab[beta[:m]] for m in range(depth) if beta[m] == "1"}
        if diff != want:
            bad.append(beta)
    rep.add("transfer triple on the finite window", not bad, bad[:1])


def verify_embedding(e: PartialEmbedding, oracle=None, frame=None) -> VerifyReport:
    """Re-run every construction condition independently of the engine."""
    rep = VerifyReport()
    table = e.labels if e.kind == "lemma37" else e.psi
    missing = [w for l in range(e.depth + 1) for w in all_words(l) if w not in table]
    rep.add("complete tables", not missing, missing[:1])
    if missing:
        return rep
    if e.kind == "thm26":
        _verify_thm26(e, rep, oracle)
    elif e.kind == "thm410":
        _verify_thm410(e, rep, oracle, frame)
    elif e.kind == "thm411":
        _verify_thm411(e, rep, oracle)
    elif e.kind == "lemma37":
        _verify_lemma37(e, rep, oracle, frame)
    else:
        raise ValueError(f"unknown embedding kind {e.kind!r}")
    return rep


def transfer_injection_of(e: PartialEmbedding, beta: str) -> dict[int, int]:
    """The finite injection m -> l(beta|m) witnessing the transfer triple."""
    return {m: e.labels[beta[:m]] for m in range(len(beta))}
