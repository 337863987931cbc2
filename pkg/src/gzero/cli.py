"""Command-line front end: ``gzero words|level|frame|ideal|embed|labels|verify``.

Exit codes: 0 pass, 1 fail, 2 usage error.
"""

from __future__ import annotations

import functools
import json
import sys

import click

from . import __version__
from .constructors import (OracleError, PartialEmbedding, VerificationError,
                           lemma37_labels, oracle_from_json, thm26_embed,
                           thm410_embed, thm411_embed, verify_embedding)
from .frames import (LEMMA32, Frame, FrameError, build_frame, verify_frame,
                     verify_tree_acyclicity)
from .ideals import EpPoint, IdealExpr, ideal_member, named_ideal
from .levelgraphs import (LIFT_KINDS, UnreachableError, b_level, d_level,
                          injective_path, lift_level, symmetrize, t_level)
from .words import pair, phi, psi, sn, unpair

FORMATS = click.Choice(["json", "text"])


def common_options(fn):
    """--format/--out/--seed/--depth on every leaf command; unset values fall
    back to the ones given before the subcommand."""
    @click.option("--format", "fmt", type=FORMATS, default=None, help="Output format.")
    @click.option("--out", type=click.Path(dir_okay=False), default=None,
                  help="Write output to FILE instead of stdout.")
    @click.option("--seed", type=int, default=None, help="Seed for sampled checks.")
    @click.option("--depth", type=int, default=None, help="Construction or check depth.")
    @click.pass_context
    @functools.wraps(fn)
    def wrapper(ctx, fmt, out, seed, depth, **kw):
        top = ctx.find_root().obj or {}
        opts = {"fmt": fmt or top.get("fmt") or "text",
                "out": out or top.get("out"),
                "seed": seed if seed is not None else top.get("seed", 0),
                "depth": depth if depth is not None else top.get("depth")}
        return fn(opts, **kw)
    return wrapper


def emit(opts, payload, text=None):
    if opts["fmt"] == "json" or text is None:
        body = json.dumps(payload, sort_keys=True, indent=2)
    else:
        body = text
    if opts["out"]:
        with open(opts["out"], "w") as fh:
            fh.write(body + "\n")
    else:
        click.echo(body)


def need_depth(opts, default=None):
    d = opts["depth"] if opts["depth"] is not None else default
    if d is None:
        raise click.UsageError("--depth is required")
    if d < 0:
        raise click.UsageError("--depth must be a natural number")
    return d


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def load_frame(path):
    return LEMMA32 if path is None else Frame.from_json(load_json(path))


def load_oracle(path, frame=None, default="sg0"):
    data = {"kind": default} if path is None else load_json(path)
    return oracle_from_json(data, frame=frame)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="gzero")
@click.option("--format", "fmt", type=FORMATS, default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--seed", type=int, default=None)
@click.option("--depth", type=int, default=None)
@click.pass_context
def main(ctx, fmt, out, seed, depth):
    """Level graphs, frames, ideals and embedding engines at finite depth."""
    ctx.obj = {"fmt": fmt, "out": out, "seed": 0 if seed is None else seed, "depth": depth}


# -- words -----------------------------------------------------------------------

@main.command()
@click.argument("op", type=click.Choice(["psi", "sn", "pair", "unpair", "phi"]))
@click.option("--n", type=click.IntRange(min=0), required=True)
@click.option("--p", type=click.IntRange(min=0), default=None)
@common_options
def words(opts, op, n, p):
    """Enumeration and pairing arithmetic."""
    if op in ("pair", "phi") and p is None:
        raise click.UsageError(f"words {op} needs --p")
    try:
        value = {"psi": lambda: psi(n), "sn": lambda: sn(n),
                 "pair": lambda: pair(n, p), "unpair": lambda: list(unpair(n)),
                 "phi": lambda: phi(n, p)}[op]()
    except OverflowError as exc:
        raise click.UsageError(str(exc))
    emit(opts, {"op": op, "n": n, "p": p, "value": value},
         " ".join(map(str, value)) if isinstance(value, list) else str(value))


# -- level -----------------------------------------------------------------------

def _level_relation(kind, l, frame_path):
    if kind == "t":
        return t_level(l)
    if kind == "b":
        return b_level(l)
    if kind == "d":
        return d_level(load_frame(frame_path), l)
    return lift_level(kind, l)


@main.command()
@click.argument("kind", type=click.Choice(["t", "b", "d", "path", *LIFT_KINDS]))
@click.option("--l", "l", type=click.IntRange(min=0), required=True)
@click.option("--frame", "frame_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--from", "src", default=None, help="Path start (for 'path').")
@click.option("--to", "dst", default=None, help="Path end (for 'path').")
@common_options
def level(opts, kind, l, frame_path, src, dst):
    """Level-l relations, or the unique path in s(T_l)."""
    if kind == "path":
        if src is None or dst is None:
            raise click.UsageError("level path needs --from and --to")
        try:
            path = injective_path(symmetrize(t_level(l)), src, dst)
        except (UnreachableError, ValueError) as exc:
            raise click.UsageError(str(exc))
        emit(opts, path, json.dumps(path))
        return
    try:
        rel = _level_relation(kind, l, frame_path)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    pairs = [list(p) for p in rel.sorted_pairs()]
    emit(opts, {"kind": kind, "level": l, "count": len(pairs), "pairs": pairs},
         "\n".join(f"{a} {b}" for a, b in pairs))


# -- frame -----------------------------------------------------------------------

@main.command()
@click.argument("op", type=click.Choice(["build", "verify", "entry", "tree"]))
@click.option("--frame", "--in", "frame_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--l", "l", type=click.IntRange(min=0), default=None)
@common_options
def frame(opts, op, frame_path, l):
    """Build, verify and inspect frames (default: the pairing-driven frame)."""
    if op == "build":
        depth = need_depth(opts)
        emit(opts, build_frame(depth).to_json())
        return
    if op == "verify":
        fr = load_frame(frame_path)
        depth = need_depth(opts, fr.depth if isinstance(fr, Frame) else 8)
        rep = verify_frame(fr) if isinstance(fr, Frame) else None
        tree = verify_tree_acyclicity(fr, min(depth, 14))
        ok = (rep is None or rep.ok) and tree.ok
        emit(opts, {"ok": ok, "violations": (rep.violations if rep else []) + tree.violations},
             "pass" if ok else "fail")
        sys.exit(0 if ok else 1)
    if l is None:
        raise click.UsageError(f"frame {op} needs --l")
    fr = load_frame(frame_path)
    try:
        if op == "entry":
            u, v = fr.entry(l)
            emit(opts, {"l": l, "u": u, "v": v}, f"{u} {v}")
        else:
            pairs = [list(p) for p in fr.tree_level(l).sorted_pairs()]
            emit(opts, {"level": l, "count": len(pairs), "pairs": pairs},
                 "\n".join(f"{a} {b}" for a, b in pairs))
    except FrameError as exc:
        raise click.UsageError(str(exc))


# -- ideal -----------------------------------------------------------------------

def _ideal_arg(value):
    try:
        return named_ideal(value)
    except ValueError:
        pass
    try:
        return IdealExpr.from_json(load_json(value))
    except (OSError, KeyError, ValueError) as exc:
        raise click.UsageError(f"cannot read ideal {value!r}: {exc}")


@main.command()
@click.argument("op", type=click.Choice(["member"]))
@click.option("--ideal", "ideal", required=True,
              help="fin, i3, a named ideal such as I_5 or J_omega, or an expression file.")
@click.option("--prefix", default="")
@click.option("--period", required=True)
@click.option("--bound", type=click.IntRange(min=0), default=32)
@common_options
def ideal(opts, op, ideal, prefix, period, bound):
    """Three-valued membership of eventually periodic points."""
    try:
        x = EpPoint(prefix, period)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    m = ideal_member(_ideal_arg(ideal), x, bound)
    emit(opts, {"verdict": m.verdict.value, "bound": m.bound}, m.verdict.value)


# -- embed / labels ----------------------------------------------------------------

@main.command()
@click.argument("engine", type=click.Choice(["thm26", "thm410", "thm411"]))
@click.option("--oracle", "oracle_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--frame", "frame_path", type=click.Path(exists=True, dir_okay=False))
@common_options
def embed(opts, engine, oracle_path, frame_path):
    """Run an embedding engine; the result is verified before it is written."""
    depth = need_depth(opts)
    fr = load_frame(frame_path)
    default = {"thm26": "sg0", "thm410": "closure-t", "thm411": "closure-b0"}[engine]
    try:
        oracle = load_oracle(oracle_path, fr, default)
        if engine == "thm26":
            e = thm26_embed(oracle, depth)
        elif engine == "thm410":
            e = thm410_embed(fr, oracle, depth)
        else:
            e = thm411_embed(oracle, depth)
    except (OracleError, FrameError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except VerificationError as exc:
        emit(opts, {"ok": False, "failures": exc.report.failures()})
        sys.exit(1)
    emit(opts, e.to_json())


@main.command()
@click.argument("engine", type=click.Choice(["lemma37"]))
@click.option("--oracle", "oracle_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--frame", "frame_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--u", default="")
@click.option("--v", default="")
@common_options
def labels(opts, engine, oracle_path, frame_path, u, v):
    """Labels l(w) of the transfer-triple construction."""
    depth = need_depth(opts)
    fr = load_frame(frame_path)
    try:
        oracle = load_oracle(oracle_path, fr, "full-space")
        e = lemma37_labels(fr, u, v, oracle, depth)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    except (OracleError, FrameError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except VerificationError as exc:
        emit(opts, {"ok": False, "failures": exc.report.failures()})
        sys.exit(1)
    emit(opts, e.to_json(), "\n".join(f"{w or '-'} {n}" for w, n in
                                      sorted(e.labels.items(), key=lambda kv: (len(kv[0]), kv[0]))))


@main.command("check-embedding")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--oracle", "oracle_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--frame", "frame_path", type=click.Path(exists=True, dir_okay=False))
@common_options
def check_embedding(opts, path, oracle_path, frame_path):
    """Re-verify a saved embedding."""
    e = PartialEmbedding.from_json(load_json(path))
    fr = load_frame(frame_path)
    default = {"thm26": "sg0", "thm410": "closure-t", "thm411": "closure-b0",
               "lemma37": "full-space"}.get(e.kind, "sg0")
    rep = verify_embedding(e, oracle=load_oracle(oracle_path, fr, default), frame=fr)
    emit(opts, {"ok": rep.ok, "results": rep.results}, "pass" if rep.ok else "fail")
    sys.exit(0 if rep.ok else 1)


# -- verify ------------------------------------------------------------------------

@main.command()
@click.argument("scope", default="all")
@common_options
def verify(opts, scope):
    """Run every registered invariant and emit a JSON certificate."""
    from .checks import MODULES, run_checks
    if scope != "all" and scope not in MODULES:
        raise click.UsageError(f"scope must be 'all' or one of {', '.join(MODULES)}")
    depth = need_depth(opts, 10)
    if depth < 1:
        raise click.UsageError("--depth must be at least 1")
    cert = run_checks(scope, depth, opts["seed"])
    if opts["fmt"] == "text" and not opts["out"]:
        for r in cert["checks"]:
            click.echo(f"{r['status'].upper():5} {r['id']} ({r['duration']:.2f}s)")
        click.echo(f"overall: {cert['status']}")
    else:
        emit(dict(opts, fmt="json"), cert)
    sys.exit(0 if cert["status"] == "pass" else 1)


if __name__ == "__main__":
    main()
