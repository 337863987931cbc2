import json
import random
from pathlib import Path

import pytest

from gzero.constructors import (AvoidEpPointsOracle, ClosureB0Oracle,
                                ClosureTOracle, ComplementOfBoxes,
                                FullSpaceOracle, OracleError,
                                PartialEmbedding, SymmetricG0Oracle,
                                ep_extends, lemma37_labels,
                                min_sn_extending, min_sn_extending_scan,
                                oracle_from_json, thm26_embed, thm410_embed,
                                thm411_embed, transfer_injection_of,
                                verify_embedding)
from gzero.frames import LEMMA32, build_frame
from gzero.ideals import EpPoint, ep_eval
from gzero.levelgraphs import in_t
from gzero.words import all_words, sn, unpair

GOLDEN = Path(__file__).parent / "golden"


def rand_word(rng, lo, hi):
    return "".join(rng.choice("01") for _ in range(rng.randint(lo, hi)))


def flip(s, i):
    return s[:i] + ("1" if s[i] == "0" else "0") + s[i + 1:]


# -- oracles ------------------------------------------------------------------------

def test_empty_presentation_answers_zero():
    o = ComplementOfBoxes([])
    assert o.query("0101", "1100", 3) == 0


def test_full_space_is_not_meager():
    o = ComplementOfBoxes([{"boxes": [["", ""]]}], bound=50)
    with pytest.raises(OracleError, match="meagerness witness not found"):
        o.query("0", "1", 0)


def sg0_stuck(s, t, n):
    # (s0^oo, t0^oo) sits on a template graph (sn(j)a g, sn(j)(1-a) g) for j <= n
    L = max(len(s), n + 1) + 1
    S, T = s.ljust(L, "0"), t.ljust(L, "0")
    return any(S[:j] == T[:j] == sn(j) and S[j] != T[j] and S[j + 1:] == T[j + 1:]
               for j in range(n + 1))


def test_sg0_queries_clear_boxes():
    o = SymmetricG0Oracle()
    stuck = 0
    for l in range(1, 11):
        rng = random.Random(l)
        for _ in range(20):
            s, t = rand_word(rng, l, l), rand_word(rng, l, l)
            if sg0_stuck(s, t, l):
                stuck += 1
                with pytest.raises(OracleError):
                    o.query(s, t, l)
                continue
            m = o.query(s, t, l)
            assert not o.meets(s + "0" * m, t + "0" * m, l)
            assert all(o.meets(s + "0" * j, t + "0" * j, l) for j in range(m))
    assert stuck > 0 and sg0_stuck("1", "0", 0) and not sg0_stuck("00", "11", 1)
    with pytest.raises(OracleError):
        o.query("1", "0", 0)


def test_template_meets_by_brute_force():
    # the graph {(c g, d g)} meets N_a x N_b iff some g makes both points fit;
    # a finite g longer than a decides it
    rng = random.Random(21)
    for _ in range(400):
        c, d = rand_word(rng, 0, 3), rand_word(rng, 0, 3)
        a = rand_word(rng, 0, 4)
        b = rand_word(rng, len(a), len(a))
        o = ComplementOfBoxes([{"graphs": [[c, d]]}])
        brute = any((c + g).startswith(a) and (d + g).startswith(b) for g in all_words(6))
        assert o.meets(a, b, 0) == brute


def test_tree_oracles():
    b0 = ClosureB0Oracle()
    assert b0.meets("0", "1", 0) and not b0.meets("1", "0", 0)
    # (0x, 1y) with x = y (the diagonal part) or (x, y) in T
    assert b0.meets("00", "10", 0) and b0.meets("00", "11", 0)
    assert not b0.meets("01", "10", 0)
    assert b0.query("1", "0", 0) == 0
    with pytest.raises(OracleError):
        b0.query("0", "1", 0)
    t = ClosureTOracle()
    assert t.meets("00", "11", 0) and not t.meets("01", "10", 0)


@pytest.mark.parametrize("oracle", [ClosureB0Oracle(), ClosureTOracle()])
def test_tree_oracles_are_pruned_trees(oracle):
    for l in range(6):
        level = {(a, b) for a in all_words(l) for b in all_words(l) if oracle.meets(a, b, 0)}
        up = {(a, b) for a in all_words(l + 1) for b in all_words(l + 1) if oracle.meets(a, b, 0)}
        assert {(a[:-1], b[:-1]) for a, b in up} == level


def test_oracle_json():
    for data in ({"kind": "sg0"}, {"kind": "closure-b0"}, {"kind": "full-space"},
                 {"kind": "complement-of-boxes", "levels": [{"graphs": [["0", "1"]], "boxes": []}]},
                 {"kind": "avoid-ep-points", "points": [{"prefix": "", "period": "10"}]}):
        o = oracle_from_json(data)
        assert o.to_json()["kind"] == data["kind"]
    with pytest.raises(ValueError):
        oracle_from_json({"kind": "nope"})


def test_bound_from_environment(monkeypatch):
    monkeypatch.setenv("GZERO_ORACLE_BOUND", "7")
    assert SymmetricG0Oracle().bound == 7


def test_ep_extends_against_dense_words():
    rng = random.Random(4)
    for _ in range(2000):
        x = EpPoint(rand_word(rng, 0, 4), rand_word(rng, 1, 4))
        u = rand_word(rng, 0, 14)
        want = all(int(c) == ep_eval(x, i) for i, c in enumerate(u))
        assert ep_extends(x, u) == want


def test_avoid_points_extension():
    pts = [EpPoint("", "0"), EpPoint("", "1"), EpPoint("", "10")]
    o = AvoidEpPointsOracle(pts)
    assert o.extension("", 0) == ""
    assert o.extension("", 1) == "1"
    # "10" and "11" still extend (10)^oo and 1^oo, "100" extends neither
    assert o.extension("1", 3) == "00"
    for u in ("", "0", "1", "01"):
        x = o.extension(u, 3)
        earlier = [y for l in range(len(x) + 1) for y in all_words(l)]
        earlier = earlier[:earlier.index(x)]
        assert o.contains(u + x, 3) and not any(o.contains(u + y, 3) for y in earlier)


# -- min_sn_extending -----------------------------------------------------------------

def test_min_sn_extending_matches_scan():
    rng = random.Random(1)
    for _ in range(3000):
        t = rand_word(rng, 0, 7)
        lo = rng.randint(0, 300)
        assert min_sn_extending(t, lo) == min_sn_extending_scan(t, lo)


# -- engines ------------------------------------------------------------------------------

def identity_tables(depth):
    return {w: w for l in range(depth + 1) for w in all_words(l)}


def test_thm26_root_and_golden():
    e = thm26_embed(SymmetricG0Oracle(), 0)
    assert e.psi == {"": ""}
    assert verify_embedding(e, oracle=SymmetricG0Oracle()).ok
    e4 = thm26_embed(SymmetricG0Oracle(), 4)
    golden = json.loads((GOLDEN / "thm26_d4.json").read_text())
    assert e4.to_json() == golden


def test_thm26_depth6():
    o = SymmetricG0Oracle()
    e = thm26_embed(o, 6)
    assert e.psi == identity_tables(6)
    rep = verify_embedding(e, oracle=o)
    assert rep.ok and len(rep.results) >= 9
    for l in range(1, 7):
        for s in all_words(l):
            for t in all_words(l):
                if in_t(s, t):
                    assert in_t(e.psi[s], e.psi[t])


def test_thm410_depth6():
    o = ClosureTOracle(LEMMA32)
    e = thm410_embed(LEMMA32, o, 6)
    rep = verify_embedding(e, oracle=o, frame=LEMMA32)
    assert rep.ok, rep.failures()
    assert "xor identity" in {r["condition"] for r in rep.results}
    assert e.psi[""] == "" and LEMMA32.entry(0) == ("", "")
    assert len(set(e.k)) == len(e.k)
    assert all(unpair(e.k[m])[0] == unpair(m)[0] for m in range(7))


def test_thm410_with_explicit_frame():
    fr = build_frame(64)
    e = thm410_embed(fr, ClosureTOracle(fr), 5)
    assert verify_embedding(e, oracle=ClosureTOracle(fr), frame=fr).ok


def test_thm411_depth6():
    o = ClosureB0Oracle()
    e = thm411_embed(o, 6)
    assert e.psi[""] == "" and e.delta[0] == 0
    assert e.psi["0"] == "0" + "0" * (e.k[1] - 1)
    rep = verify_embedding(e, oracle=o)
    assert rep.ok, rep.failures()


def test_engines_on_random_presentations():
    rng = random.Random(7)
    built = 0
    for trial in range(30):
        levels = [{"graphs": [[rand_word(rng, 1, 4), rand_word(rng, 1, 4)] for _ in range(2)]}
                  for _ in range(4)]
        o = ComplementOfBoxes(levels)
        try:
            e = thm26_embed(o, 4)
            built += 1
            assert verify_embedding(e, oracle=o).ok
        except OracleError:
            pass
        cross = [{"graphs": [["0" + rand_word(rng, 0, 3), "1" + rand_word(rng, 0, 3)]
                             for _ in range(2)]} for _ in range(4)]
        o2 = ComplementOfBoxes(cross)
        try:
            e = thm411_embed(o2, 4)
            built += 1
            assert verify_embedding(e, oracle=o2).ok
        except OracleError:
            pass
    assert built > 10


@pytest.mark.parametrize("kind", ["thm26", "thm410", "thm411"])
def test_every_single_bit_mutation_is_caught(kind):
    if kind == "thm26":
        ctx = {"oracle": SymmetricG0Oracle()}
        e = thm26_embed(ctx["oracle"], 4)
    elif kind == "thm410":
        ctx = {"oracle": ClosureTOracle(), "frame": LEMMA32}
        e = thm410_embed(LEMMA32, ctx["oracle"], 4)
    else:
        ctx = {"oracle": ClosureB0Oracle()}
        e = thm411_embed(ctx["oracle"], 4)
    for w, img in e.psi.items():
        for i in range(len(img)):
            f = PartialEmbedding.from_json(e.to_json())
            f.psi[w] = flip(img, i)
            assert not verify_embedding(f, **ctx).ok, (w, i)


def test_missing_entry_is_caught():
    o = SymmetricG0Oracle()
    e = thm26_embed(o, 3)
    del e.psi["010"]
    assert not verify_embedding(e, oracle=o).ok


def test_lemma37_values():
    e = lemma37_labels(LEMMA32, "", "", FullSpaceOracle(), 6)
    assert e.labels[""] == 2 and e.labels["0"] == 4 and e.labels["1"] == 19
    assert e.meta["n"] == 1
    rep = verify_embedding(e, oracle=FullSpaceOracle(), frame=LEMMA32)
    assert rep.ok, rep.failures()
    assert {r["condition"] for r in rep.results} >= {
        "(1) l(empty) = |u'| + M", "(3) children branch at l(w)", "transfer triple on the finite window"}
    assert len(e.labels) == 127
    assert all(unpair(e.labels[w])[0] == unpair(len(w))[0] for w in e.labels)


def test_lemma37_other_start_and_oracle():
    u, v = LEMMA32.entry(3)
    pts = [EpPoint("", "0"), EpPoint("", "1"), EpPoint("0", "10")]
    o = AvoidEpPointsOracle(pts)
    e = lemma37_labels(LEMMA32, u, v, o, 4)
    assert e.meta["n"] == e.labels[""]
    assert verify_embedding(e, oracle=o, frame=LEMMA32).ok
    with pytest.raises(ValueError):
        lemma37_labels(LEMMA32, "1", "0", o, 2)


def test_lemma37_mutation_is_caught():
    e = lemma37_labels(LEMMA32, "", "", FullSpaceOracle(), 4)
    for w in ("0", "01", "110"):
        f = PartialEmbedding.from_json(e.to_json())
        f.labels[w] += 1
        assert not verify_embedding(f, oracle=FullSpaceOracle(), frame=LEMMA32).ok


def test_lemma37_injection_columns():
    e = lemma37_labels(LEMMA32, "", "", FullSpaceOracle(), 5)
    i = transfer_injection_of(e, "10110")
    assert all(unpair(i[m])[0] == unpair(m)[0] for m in i)
    assert len(set(i.values())) == len(i)


def test_embedding_json_round_trip():
    e = lemma37_labels(LEMMA32, "", "", FullSpaceOracle(), 3)
    assert PartialEmbedding.from_json(json.dumps(e.to_json())) == e
