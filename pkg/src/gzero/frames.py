"""Frames, the explicit pairing-driven frame, and the tree T they generate."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .levelgraphs import (LevelRelation, g_lift, is_acyclic, is_connected,
                          symmetrize)
from .words import (SparseWord, last_difference, pair, psi, psi_inv, unpair)


class FrameError(ValueError):
    """A frame operation cannot be carried out (depth, shape, budget)."""


class NotInTreeError(FrameError):
    """The pair handed to a frame operation is not a node of T."""


# cores longer than this many bits are refused by frame_extend
CORE_BIT_BUDGET = 1 << 16


class _FrameBase:
    depth: int | None

    def sparse_entry(self, l: int) -> tuple[SparseWord, SparseWord]:
        raise NotImplementedError

    def entry(self, l: int) -> tuple[str, str]:
        u, v = self.sparse_entry(l)
        return u.to_str(), v.to_str()

    def _need(self, l: int) -> None:
        if l < 0:
            raise ValueError("negative frame index")
        if self.depth is not None and l > self.depth:
            raise FrameError(f"frame depth {self.depth} < required {l}")

    # the tree T generated by the frame
    def contains(self, u, v) -> bool:
        """Membership of (u, v) in T."""
        u, v = SparseWord.of(u), SparseWord.of(v)
        if u.length != v.length:
            return False
        if u.length == 0:
            return True
        d = last_difference(u, v)
        if d is None or u.bit(d) != 0 or v.bit(d) != 1:
            return False
        self._need(d)
        ud, vd = self.sparse_entry(d)
        return u.prefix(d) == ud and v.prefix(d) == vd

    def tree_level(self, l: int) -> LevelRelation:
        """T_l, grown level by level: copy with equal bits, then branch at u_l."""
        self._need(max(l - 1, 0))
        levels = self.__dict__.setdefault("_levels", [LevelRelation(0, {("", "")})])
        while len(levels) <= l:
            k = len(levels) - 1
            prev = levels[k]
            pairs = set() if k == 0 else {(a + e, b + e) for a, b in prev for e in "01"}
            uk, vk = self.entry(k)
            pairs.add((uk + "0", vk + "1"))
            levels.append(LevelRelation(k + 1, pairs))
        return levels[l]


class Lemma32Frame(_FrameBase):
    """The frame defined by (u_0, v_0) = (∅, ∅) and

    (u_{l+1}, v_{l+1}) = (u_q 0 psi(n) 0^pad, v_q 1 psi(n) 0^pad)

    with q = ((l)_1)_0, n = ((l)_1)_1 and pad = l - q - |psi(n)|.
    Unbounded; entries are computed on demand.
    """

    depth = None

    def __init__(self):
        self._sparse: dict[int, tuple[SparseWord, SparseWord]] = {
            0: (SparseWord(0), SparseWord(0))}

    @staticmethod
    def record(length: int) -> tuple[int, int, int]:
        """(q, n, pad) for the entry of the given positive length."""
        if length < 1:
            raise ValueError("record needs a positive length")
        l = length - 1
        q, n = unpair(unpair(l)[1])
        pad = l - q - ((n + 1).bit_length() - 1)
        if pad < 0:
            raise FrameError(f"negative padding at length {length}")
        return q, n, pad

    def sparse_entry(self, l: int) -> tuple[SparseWord, SparseWord]:
        self._need(l)
        hit = self._sparse.get(l)
        if hit is not None:
            return hit
        q, n, pad = self.record(l)
        core_len = (n + 1).bit_length() - 1
        if core_len > CORE_BIT_BUDGET:
            raise FrameError(f"core of entry {l} has {core_len} bits")
        core = SparseWord.of(psi(n))
        uq, vq = self.sparse_entry(q)
        out = ((uq + "0" + core).pad(pad), (vq + "1" + core).pad(pad))
        self._sparse[l] = out
        return out

    @lru_cache(maxsize=4096)
    def entry(self, l: int) -> tuple[str, str]:
        return super().entry(l)


@dataclass
class Frame(_FrameBase):
    """An explicit finite frame prefix (u_l, v_l), l <= depth."""

    entries: list = field(default_factory=list)

    def __post_init__(self):
        self.entries = [(str(u), str(v)) for u, v in self.entries]

    @property
    def depth(self) -> int:
        return len(self.entries) - 1

    def entry(self, l: int) -> tuple[str, str]:
        self._need(l)
        return self.entries[l]

    def sparse_entry(self, l: int) -> tuple[SparseWord, SparseWord]:
        u, v = self.entry(l)
        return SparseWord.of(u), SparseWord.of(v)

    def to_json(self) -> dict:
        return {"entries": [[u, v] for u, v in self.entries]}

    @classmethod
    def from_json(cls, data) -> "Frame":
        if isinstance(data, str):
            data = json.loads(data)
        return cls([tuple(e) for e in data["entries"]])


LEMMA32 = Lemma32Frame()


def build_frame(depth: int) -> Frame:
    """Explicit entries 0..depth of the pairing-driven frame."""
    return Frame([LEMMA32.entry(l) for l in range(depth + 1)])


@dataclass
class Report:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def verify_frame(frame: Frame) -> Report:
    """Check uniqueness per length and the generation condition up to depth."""
    bad = []
    by_length: dict[int, list[int]] = {}
    for i, (u, v) in enumerate(frame.entries):
        if len(u) != len(v):
            bad.append({"condition": 1, "index": i, "reason": "unequal lengths"})
            continue
        by_length.setdefault(len(u), []).append(i)
    for l in range(len(frame.entries)):
        idx = by_length.get(l, [])
        if len(idx) != 1:
            bad.append({"condition": 1, "length": l,
                        "reason": f"{len(idx)} entries of this length"})
    for n, idx in sorted(by_length.items()):
        if n >= len(frame.entries):
            bad.append({"condition": 1, "length": n, "reason": "length beyond depth"})
    if bad:
        return Report(False, bad)
    for l in range(1, len(frame.entries)):
        u, v = frame.entries[l]
        d = last_difference(u, v)
        ok = (d is not None and u[d] == "0" and v[d] == "1"
              and (u[:d], v[:d]) == frame.entries[d])
        if not ok:
            bad.append({"condition": 3, "length": l, "entry": [u, v]})
    return Report(not bad, bad)


def density_witness(frame, p: int, q: int, w: str) -> int:
    """N with (u_q 0 w 0^N, v_q 1 w 0^N) the entry of length l+1,
    l = <p+1, <q, psi^{-1}(w)>>, so that (l+1)_0 = p."""
    l = pair(p + 1, pair(q, psi_inv(w), None), None)
    if frame.depth is not None and l + 1 > frame.depth:
        raise FrameError(f"density witness needs depth {l + 1}, frame has {frame.depth}")
    n = l - q - len(w)
    uq, vq = frame.sparse_entry(q)
    want = (uq + "0" + w).pad(n), (vq + "1" + w).pad(n)
    if frame.sparse_entry(l + 1) != want:
        raise FrameError(f"entry {l + 1} does not have the expected shape")
    return n


def density_solutions(frame, p: int, q: int, w: str, max_length: int) -> list[int]:
    """All N with |u_q 0 w| + N <= max_length meeting the density condition,
    by scanning the frame entries whose length has first coordinate p."""
    uq, vq = frame.sparse_entry(q)
    a, b = uq + "0" + w, vq + "1" + w
    out = []
    k = 0
    while True:
        length = pair(p, k, None)
        if length > max_length:
            break
        k += 1
        if length < a.length:
            continue
        eu, ev = frame.sparse_entry(length)
        if (a.is_prefix_of(eu) and b.is_prefix_of(ev)
                and not eu.ones_in(a.length, length)
                and not ev.ones_in(b.length, length)):
            out.append(length - a.length)
    return out


def frame_extend(frame, a, b, p: int, min_n: int = 0) -> int:
    """Least N >= min_n with (a 0^N, b 0^N) a frame entry of length L, (L)_0 = p."""
    a, b = SparseWord.of(a), SparseWord.of(b)
    if a.length != b.length:
        raise ValueError("frame_extend needs equal lengths")
    if isinstance(frame, Frame):
        return _frame_extend_scan(frame, a, b, p, min_n, frame.depth)
    d = last_difference(a, b)
    if d is None:
        if a.length == 0 and p == 0 and min_n == 0:
            return 0
        raise NotInTreeError("no frame entry extends a diagonal pair")
    ud, vd = frame.sparse_entry(d)
    if a.bit(d) != 0 or b.bit(d) != 1 or a.prefix(d) != ud or b.prefix(d) != vd:
        raise NotInTreeError(f"pair with last difference {d} is not in T")
    tail = a.suffix_from(d + 1)
    core_len = tail.stripped_length()
    if core_len > CORE_BIT_BUDGET:
        raise FrameError(f"core of {core_len} bits exceeds the budget")
    core = tail.prefix(core_len)
    core_val = core.value()
    need = a.length + min_n
    best = None
    i = 0
    while True:
        n = (((1 << core_len) | core_val) << i) - 1
        l = pair(p + 1, pair(d, n, None), None)
        if l + 1 >= need:
            best = l
            break
        i += 1
    if p >= 1:
        d2, n2 = unpair(p - 1)
        core2 = psi(n2) if (n2 + 1).bit_length() <= CORE_BIT_BUDGET else None
        l = pair(0, p - 1, None)
        if (d2 == d and core2 is not None and len(core2) >= core_len
                and SparseWord.of(core2) == core.pad(len(core2) - core_len)
                and l + 1 >= need and l < best):
            best = l
    return best + 1 - a.length


def _frame_extend_scan(frame, a: SparseWord, b: SparseWord, p: int,
                       min_n: int, max_length: int) -> int:
    n = min_n
    while a.length + n <= max_length:
        length = a.length + n
        if unpair(length)[0] == p:
            eu, ev = frame.sparse_entry(length)
            if eu == a.pad(n) and ev == b.pad(n):
                return n
        n += 1
    raise FrameError(f"no extension within length {max_length}")


def frame_extend_scan(frame, a, b, p: int, min_n: int = 0,
                      max_length: int = 4096) -> int:
    """Brute-force counterpart of frame_extend: try every N in turn."""
    a, b = SparseWord.of(a), SparseWord.of(b)
    return _frame_extend_scan(frame, a, b, p, min_n, max_length)


def t_tree_level(frame, l: int) -> LevelRelation:
    return frame.tree_level(l)


def t_tree_level_direct(frame, l: int) -> LevelRelation:
    """T_l straight from the definition: (u_q 0 w, v_q 1 w), q < l."""
    if l == 0:
        return LevelRelation(0, {("", "")})
    from .words import all_words
    pairs = set()
    for q in range(l):
        uq, vq = frame.entry(q)
        for w in all_words(l - q - 1):
            pairs.add((uq + "0" + w, vq + "1" + w))
    return LevelRelation(l, pairs)


def verify_tree_acyclicity(frame, l_max: int) -> Report:
    """For 1 <= l <= l_max: s(T_l) acyclic and connected, s(G_{T_l}) acyclic,
    T_l inside N_0 x N_1, and the grown levels match the membership test."""
    bad = []
    if isinstance(frame, Frame):
        rep = verify_frame(Frame(frame.entries[: l_max + 1]))
        bad.extend({"check": "frame", **v} for v in rep.violations)
    for l in range(1, l_max + 1):
        tl = frame.tree_level(l)
        sym = symmetrize(tl)
        cyc = is_acyclic(sym)
        if not cyc:
            bad.append({"check": "s(T_l) acyclic", "level": l, "cycle": list(cyc.cycle)})
        if not is_connected(sym):
            bad.append({"check": "s(T_l) connected", "level": l})
        if not is_acyclic(g_lift(tl)):
            bad.append({"check": "s(G_T_l) acyclic", "level": l})
        if any(u[0] != "0" or v[0] != "1" for u, v in tl):
            bad.append({"check": "prefix classes", "level": l})
        if len(tl) != (1 << l) - 1 or not all(frame.contains(u, v) for u, v in tl):
            bad.append({"check": "membership", "level": l})
    return Report(not bad, bad)
