"""Registered invariants run by ``gzero verify``.

Each check takes ``(depth, rng)`` and returns ``(ok, details)``.  Scales are
tied to the depth so that ``--depth 10`` reproduces the acceptance sizes.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from typing import Callable

from . import __version__
from .constructors import (ClosureB0Oracle, ClosureTOracle, FullSpaceOracle,
                           PartialEmbedding, SymmetricG0Oracle, default_bound,
                           lemma37_labels, min_sn_extending,
                           min_sn_extending_scan, thm26_embed, thm410_embed,
                           thm411_embed, verify_embedding)
from .frames import (LEMMA32, Frame, build_frame, density_solutions,
                     density_witness, frame_extend, frame_extend_scan,
                     t_tree_level_direct, verify_frame, verify_tree_acyclicity)
from .ideals import (EpPoint, assemble_section_reduction, ep_and, ep_max,
                     ep_xor, fin_member, i3_member, i3_member_scan,
                     select_phi, select_vertical, transfer_injection,
                     vertical_invariance_check, word_section)
from .levelgraphs import (b_level, check_lemma_2_2,
                          d_level, decorate, exhaustive_lemma_2_4, g_lift,
                          is_acyclic, is_connected, lift_level,
                          relation_predicates, symmetrize, t_level,
                          t_level_bruteforce, t_level_is_tree)
from .words import (all_words, m_of, pair, phi, phi_inv, psi, psi_inv, sn,
                    unpair)

MODULES = ("words", "levelgraphs", "frames", "ideals", "constructors", "cli")


@dataclass(frozen=True)
class Check:
    id: str
    module: str
    invariant: str
    run: Callable


REGISTRY: dict[str, Check] = {}


def check(cid: str, invariant: str):
    def deco(fn):
        REGISTRY[cid] = Check(cid, cid.split(".")[0], invariant, fn)
        return fn
    return deco


def random_ep(rng: random.Random, max_prefix: int = 8, max_period: int = 6) -> EpPoint:
    pre = "".join(rng.choice("01") for _ in range(rng.randint(0, max_prefix)))
    per = "".join(rng.choice("01") for _ in range(rng.randint(1, max_period)))
    return EpPoint(pre, per)


def random_finite(rng: random.Random, width: int = 40, count: int = 6) -> EpPoint:
    return EpPoint.from_support(rng.sample(range(width), rng.randint(0, count)))


def random_column_injection(rng: random.Random, size: int) -> dict[int, int]:
    dom = rng.sample(range(4 * size + 20), size)
    used: set[int] = set()
    out = {}
    for m in dom:
        col = unpair(m)[0]
        while True:
            im = pair(col, rng.randrange(8 * size + 20))
            if im not in used:
                used.add(im)
                out[m] = im
                break
    return out


# -- words ----------------------------------------------------------------------

@check("words.sn_length", "|s_n| = n")
def _(depth, rng):
    top = 100 * (1 << depth)
    bad = next((n for n in range(top) if len(sn(n)) != n), None)
    return bad is None, {"range": top, "first_failure": bad}


@check("words.sn_density", "s_{psi^-1(s)} extends s")
def _(depth, rng):
    top = depth + 4
    bad = [s for l in range(top + 1) for s in all_words(l) if not sn(psi_inv(s)).startswith(s)]
    return not bad, {"max_length": top, "failures": bad[:3]}


@check("words.psi_bijection", "psi_inv(psi(n)) = n and psi is length-lex")
def _(depth, rng):
    top = 1 << (depth + 6)
    ok = all(psi_inv(psi(n)) == n for n in range(top))
    ok = ok and all((len(psi(n)), psi(n)) < (len(psi(n + 1)), psi(n + 1)) for n in range(top))
    return ok, {"range": top}


@check("words.pair_roundtrip", "unpair inverts pair")
def _(depth, rng):
    top = 16 * (1 << depth)
    ok = all(pair(*unpair(q)) == q for q in range(top))
    samples = [(rng.randrange(1 << 31), rng.randrange(1 << 31)) for _ in range(2000)]
    ok = ok and all(unpair(pair(n, p)) == (n, p) for n, p in samples)
    return ok, {"range": top, "samples": len(samples)}


@check("words.phi_roundtrip", "phi_inv inverts phi")
def _(depth, rng):
    top = 8 * (1 << depth)
    ok = all(phi(*phi_inv(q)) == q for q in range(top))
    samples = [(rng.randrange(1 << 20), rng.randrange(1 << 20)) for _ in range(2000)]
    ok = ok and all(phi_inv(phi(n, p, None)) == (n, p) for n, p in samples)
    return ok, {"range": top}


@check("words.m_of", "M(l) = (l)_0 + (l)_1")
def _(depth, rng):
    top = 100 * (1 << depth)
    bad = next((q for q in range(top) if m_of(q) != sum(unpair(q))), None)
    return bad is None, {"range": top, "first_failure": bad}


# -- level graphs ---------------------------------------------------------------

@check("levelgraphs.t_level_closed_form", "closed-form T_l equals the template scan")
def _(depth, rng):
    top = min(depth, 12)
    bad = [l for l in range(top + 1) if t_level(l) != t_level_bruteforce(l)]
    return not bad, {"levels": top, "failures": bad}


@check("levelgraphs.t_level_tree", "s(T_l) is connected and acyclic")
def _(depth, rng):
    top = depth + 6
    bad = [l for l in range(1, top + 1) if not t_level_is_tree(l)]
    small = min(top, 10)
    bad += [l for l in range(1, small + 1)
            if not (is_acyclic(symmetrize(t_level(l))) and is_connected(symmetrize(t_level(l))))]
    return not bad, {"levels": top, "failures": bad}


@check("levelgraphs.b_level_tree", "B_l is a symmetric spanning tree of 2^l")
def _(depth, rng):
    top = min(depth + 6, 16)
    bad = []
    for l in range(1, top + 1):
        b = b_level(l)
        flags = relation_predicates(b)
        if not (flags["symmetric"] and len(b) == 2 * ((1 << l) - 1)
                and is_acyclic(b) and is_connected(b)):
            bad.append(l)
    return not bad, {"levels": top, "failures": bad}


@check("levelgraphs.lift_symmetrizations", "s(t0) = s(u0) = s(gsg0), t0 and s(u0) acyclic")
def _(depth, rng):
    top = min(depth, 12)
    bad = []
    for l in range(1, top + 1):
        t0, u0, gs = (lift_level(k, l) for k in ("t0", "u0", "gsg0"))
        if not (symmetrize(t0) == symmetrize(u0) == symmetrize(gs)
                and is_acyclic(t0) and is_acyclic(symmetrize(u0))):
            bad.append(l)
    return not bad, {"levels": top, "failures": bad}


@check("levelgraphs.lemma_2_2", "injective homomorphisms between trees reflect edges")
def _(depth, rng):
    runs = 20 * depth
    fails = 0
    for _ in range(runs):
        l = rng.randint(1, min(depth, 6))
        g = symmetrize(t_level(l))
        # s -> s.tail is an injective homomorphism of s(T_l) into s(T_{l+|tail|})
        extra = rng.randint(0, 2)
        tail = "".join(rng.choice("01") for _ in range(extra))
        h = symmetrize(t_level(l + extra))
        hmap = {s: s + tail for s in all_words(l)}
        fails += not check_lemma_2_2(g, h, hmap)
    return fails == 0, {"instances": runs, "failures": fails}


@check("levelgraphs.lemma_2_4_exhaustive", "both directions hold on every relation on 3 points")
def _(depth, rng):
    counts = exhaustive_lemma_2_4(3)
    return counts["counterexamples_a"] == 0 and counts["counterexamples_b"] == 0, counts


@check("levelgraphs.remark_cycle", "the lift of the boxed level-1 tree has a 4-cycle")
def _(depth, rng):
    rel = symmetrize(decorate(t_level(1), "box"))
    rep = is_acyclic(g_lift(rel))
    ok = (not rep.acyclic) and rep.cycle is not None and len(rep.cycle) == 4
    return ok, {"cycle": list(rep.cycle) if rep.cycle else None}


@check("levelgraphs.predicates", "T_l is an oriented graph and s(T_l) a graph")
def _(depth, rng):
    bad = []
    for l in range(1, min(depth, 10) + 1):
        p, q = relation_predicates(t_level(l)), relation_predicates(symmetrize(t_level(l)))
        if not (p["oriented_graph"] and not p["symmetric"] and q["graph"]):
            bad.append(l)
    return not bad, {"failures": bad}


@check("levelgraphs.d_level_acyclic", "the D graph of the frame is acyclic at each level")
def _(depth, rng):
    bad = [l for l in range(1, min(depth, 10) + 1) if not is_acyclic(d_level(LEMMA32, l))]
    return not bad, {"failures": bad}


# -- frames -----------------------------------------------------------------------

@check("frames.verify_frame", "explicit frame prefix is a valid frame")
def _(depth, rng):
    size = 64 if depth >= 6 else 1 << depth
    rep = verify_frame(build_frame(size))
    broken = Frame(build_frame(8).entries)
    u5, v5 = broken.entries[5]
    broken.entries[5] = v5, u5
    neg = verify_frame(broken)
    return rep.ok and not neg.ok, {"depth": size, "violations": rep.violations[:3]}


@check("frames.density_witness", "closed-form density witness is among the brute-force solutions")
def _(depth, rng):
    bad = []
    checked = 0
    for p in range(6):
        for q in range(6):
            for l in range(5):
                for w in all_words(l):
                    n = density_witness(LEMMA32, p, q, w)
                    a = len(LEMMA32.entry(q)[0]) + 1 + len(w)
                    sols = density_solutions(LEMMA32, p, q, w, a + n)
                    checked += 1
                    if n not in sols:
                        bad.append([p, q, w])
    return not bad, {"instances": checked, "failures": bad[:3]}


@check("frames.tree_acyclicity", "s(T_l), s(G_T_l) acyclic and s(T_l) connected")
def _(depth, rng):
    top = depth + 4
    rep = verify_tree_acyclicity(LEMMA32, min(top, 14))
    return rep.ok, {"levels": min(top, 14), "violations": rep.violations[:3]}


@check("frames.tree_level_direct", "grown T_l equals the defining union")
def _(depth, rng):
    top = min(depth, 10)
    bad = [l for l in range(top + 1)
           if LEMMA32.tree_level(l).pairs != t_tree_level_direct(LEMMA32, l).pairs]
    return not bad, {"levels": top, "failures": bad}


@check("frames.extend_vs_scan", "structural frame_extend equals the scan")
def _(depth, rng):
    runs = 30 * depth
    bad = []
    for _ in range(runs):
        l = rng.randint(1, 8)
        pairs = sorted(LEMMA32.tree_level(l).pairs)
        a, b = rng.choice(pairs)
        p = rng.randint(0, 3)
        m = rng.randint(0, 20)
        try:
            fast = frame_extend(LEMMA32, a, b, p, min_n=m)
        except Exception:
            fast = None
        if fast is None or fast + len(a) > 4096:
            continue
        if fast != frame_extend_scan(LEMMA32, a, b, p, min_n=m):
            bad.append([a, b, p, m])
    return not bad, {"instances": runs, "failures": bad[:3]}


# -- ideals -------------------------------------------------------------------------

@check("ideals.i3_vs_scan", "exact I3 decision agrees with the truncation scan")
def _(depth, rng):
    runs = 100 * depth
    bad = []
    for _ in range(runs):
        x = random_ep(rng)
        if i3_member(x) != i3_member_scan(x, columns=24, window=2400):
            bad.append(x.to_json())
    return not bad, {"samples": runs, "failures": bad[:3]}


@check("ideals.transfer_injection", "phi(n, I(p)) = i(phi(n, p))")
def _(depth, rng):
    runs = 10 * depth
    bad = 0
    for _ in range(runs):
        i = random_column_injection(rng, rng.randint(1, 200))
        n = rng.randint(0, 5)
        big = transfer_injection(i, n)
        for p, ip in big.items():
            if phi(n, ip, None) != i[phi(n, p, None)]:
                bad += 1
    return bad == 0, {"injections": runs, "failures": bad}


@check("ideals.prop_3_10", "sections are monotone, commute with max, keep FIN")
def _(depth, rng):
    runs = 50 * depth
    bad = 0
    for _ in range(runs):
        x, z = random_ep(rng), random_ep(rng)
        y = ep_max([x, z])
        n = rng.randint(0, 8)
        length = rng.randint(1, 64)
        for sel in (select_vertical, select_phi):
            sx, sy, sz = sel(x, n, length), sel(y, n, length), sel(z, n, length)
            if any(a == "1" and b == "0" for a, b in zip(sx, sy)):
                bad += 1
            if sy != "".join(max(a, b) for a, b in zip(sx, sz)):
                bad += 1
        f = random_finite(rng)
        top = max(f.support(), default=0)
        for sel in (select_vertical, select_phi):
            if "1" in sel(f, n, 2 * top + 4)[top + 1:]:
                bad += 1
    return bad == 0, {"samples": runs, "failures": bad}


def _section_maps(n: int):
    def f(x: str) -> str:
        body = (x + x[::-1]) * (256 // max(len(x), 1) + 2)
        return "".join("1" if (c == "1") != ((i * (n + 1)) % 3 == 0) else "0"
                       for i, c in enumerate(body[:512]))
    return f


@check("ideals.section_assembly", "the n-th section of the assembled map is f_n")
def _(depth, rng):
    bad = []
    for _ in range(depth):
        x = "".join(rng.choice("01") for _ in range(16))
        out = assemble_section_reduction(_section_maps, x, 64)
        for n in range(5):
            sec = word_section(out, n)
            if not _section_maps(n)(x).startswith(sec):
                bad.append([x, n])
    return not bad, {"failures": bad[:3]}


@check("ideals.xor_algebra", "xor is an involution, and ep_le agrees with ep_and")
def _(depth, rng):
    runs = 50 * depth
    bad = 0
    for _ in range(runs):
        x, y, z = random_ep(rng), random_ep(rng), random_ep(rng)
        bad += ep_xor(ep_xor(x, y), y) != x
        bad += ep_xor(x, y) != ep_xor(y, x)
        bad += ep_xor(ep_xor(x, y), z) != ep_xor(x, ep_xor(y, z))
        bad += ep_and(x, ep_max([x, y])) != x
    return bad == 0, {"samples": runs, "failures": bad}


@check("ideals.vertical_invariance", "FIN and I3 are invariant under column-preserving injections")
def _(depth, rng):
    bad = 0
    for _ in range(depth):
        i = random_column_injection(rng, 50)
        dom = sorted(i)
        xs = [EpPoint.from_support(rng.sample(dom, rng.randint(0, 6))) for _ in range(10)]
        bad += not vertical_invariance_check("FIN", i, xs)
        bad += not vertical_invariance_check("I3", i, xs)
    return bad == 0, {"failures": bad}


@check("ideals.fin_exact", "fin_member is decided by the canonical period")
def _(depth, rng):
    bad = 0
    for _ in range(50 * depth):
        x = random_ep(rng)
        want = "1" not in x.period
        bad += (fin_member(x).verdict.value == "in") != want
    return bad == 0, {"failures": bad}


# -- constructors -------------------------------------------------------------------

def _engine(name, depth):
    d = min(depth, 6)
    if name == "thm26":
        o = SymmetricG0Oracle()
        return thm26_embed(o, d), {"oracle": o}
    if name == "thm410":
        o = ClosureTOracle(LEMMA32)
        return thm410_embed(LEMMA32, o, d), {"oracle": o, "frame": LEMMA32}
    if name == "thm411":
        o = ClosureB0Oracle()
        return thm411_embed(o, d), {"oracle": o}
    o = FullSpaceOracle()
    return lemma37_labels(LEMMA32, "", "", o, d), {"oracle": o, "frame": LEMMA32}


def _engine_check(name):
    def run(depth, rng):
        e, ctx = _engine(name, depth)
        rep = verify_embedding(e, **ctx)
        details = {"conditions": len(rep.results), "failures": rep.failures()[:2],
                   "depth": min(depth, 6)}
        if e.k:
            details["k"] = e.k
        return rep.ok, details
    return run


for _name, _inv in (("thm26", "s(G_0) embedding satisfies its construction conditions"),
                    ("thm410", "frame-tree embedding satisfies its conditions and the xor identity"),
                    ("thm411", "closure-of-B_0 embedding satisfies its conditions"),
                    ("lemma37", "labels satisfy (1)-(5) and the finite transfer triple")):
    check(f"constructors.{_name}", _inv)(_engine_check(_name))


@check("constructors.mutation", "every single-bit corruption of a table is caught")
def _(depth, rng):
    missed = []
    total = 0
    for name in ("thm26", "thm411", "thm410"):
        e, ctx = _engine(name, min(depth, 4))
        for w in e.psi:
            for i in range(len(e.psi[w])):
                f = PartialEmbedding.from_json(e.to_json())
                s = f.psi[w]
                f.psi[w] = s[:i] + ("1" if s[i] == "0" else "0") + s[i + 1:]
                total += 1
                if verify_embedding(f, **ctx).ok:
                    missed.append([name, w, i])
    return not missed, {"mutations": total, "missed": missed[:3]}


@check("constructors.min_sn", "closed-form least s_n above a word equals the scan")
def _(depth, rng):
    bad = []
    for _ in range(200 * depth):
        t = "".join(rng.choice("01") for _ in range(rng.randint(0, 7)))
        lo = rng.randint(0, 300)
        if min_sn_extending(t, lo) != min_sn_extending_scan(t, lo):
            bad.append([t, lo])
    return not bad, {"failures": bad[:3]}


# -- cli -------------------------------------------------------------------------------

@check("cli.embedding_roundtrip", "embedding JSON parses back to itself")
def _(depth, rng):
    e, _ = _engine("thm26", min(depth, 4))
    text = json.dumps(e.to_json(), sort_keys=True)
    back = PartialEmbedding.from_json(text)
    return back == e and json.dumps(back.to_json(), sort_keys=True) == text, {}


@check("cli.frame_roundtrip", "frame JSON parses back to itself")
def _(depth, rng):
    fr = build_frame(32)
    return Frame.from_json(json.dumps(fr.to_json())) == fr, {"entries": len(fr.entries)}


# -- runner ----------------------------------------------------------------------------

def select(scope: str) -> list[Check]:
    if scope == "all":
        return [REGISTRY[k] for k in sorted(REGISTRY)]
    if scope not in MODULES:
        raise ValueError(f"unknown scope {scope!r}")
    return [REGISTRY[k] for k in sorted(REGISTRY) if REGISTRY[k].module == scope]


def _jsonable(x):
    return json.loads(json.dumps(x, default=str))


def run_checks(scope: str, depth: int, seed: int) -> dict:
    if depth < 1:
        raise ValueError("depth must be at least 1")
    rows = []
    for c in select(scope):
        rng = random.Random(f"{seed}:{c.id}")
        start = time.perf_counter()
        try:
            ok, details = c.run(depth, rng)
            status = "pass" if ok else "fail"
        except Exception as exc:  # captured, never aborts the run
            status, details = "error", {"exception": f"{type(exc).__name__}: {exc}"}
        rows.append({"id": c.id, "invariant": c.invariant,
                     "params": {"depth": depth, "seed": seed},
                     "status": status, "details": _jsonable(details),
                     "duration": round(time.perf_counter() - start, 4)})
    return {"tool": "gzero", "version": __version__,
            "parameters": {"scope": scope, "depth": depth, "seed": seed,
                           "oracle_bound": default_bound()},
            "status": "pass" if all(r["status"] == "pass" for r in rows) else "fail",
            "checks": rows}


def strip_timing(cert: dict) -> dict:
    out = json.loads(json.dumps(cert))
    for r in out.get("checks", []):
        r.pop("duration", None)
    return out
