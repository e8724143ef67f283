"""Command line front end: ``frobtower <command> --tower SPEC --n N``.

Exact values are written as canonical strings ("p/q", surds as
"a+b*sqrt(2)"); ``--floats`` adds mirror fields with a ``_float`` suffix.
The older form ``frobtower tower SPEC --n N COMMAND`` is accepted too.

Exit codes: 0 ok, 2 configuration error, 3 splitting field failure,
4 identity check failure, 5 Jucys-Murphy assumption violated.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__
from .coherent import (VARIANTS, build_system, empirical_marginal, exact_marginal, moment,
                       sample_growth, spectral_measure)
from .errors import (AssumptionViolated, ConfigError, FrobTowerError, LevelMismatch,
                     NonRealCoordinate, SplittingFieldFailure)
from .exactlin.scalars import QQ, QQI, format_scalar, is_real
from .repn import analyse
from .towers import frobenius_step, make_tower

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SPLITTING = 3
EXIT_IDENTITY = 4
EXIT_ASSUMPTION = 5

COMMANDS = ("simples", "branching", "measures", "verify", "sample", "casimir")
DEFAULT_MAX_DIM = 1000


class IdentityFailure(FrobTowerError):
    """Raised after output is written when a verify run has failed reports."""


# configuration ----------------------------------------------------------------

def parse_k_range(text):
    """'3' -> [3], '0..2' -> [0, 1, 2], '0,2,4' -> [0, 2, 4]."""
    text = text.strip()
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise ConfigError(f"empty k range {text!r}")
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError(f"bad k range {text!r}") from None


def expected_dim(tower, n):
    """dim A_n from the tower's rank over A_0, without building the level."""
    f = math.factorial(n)
    if tower.kind == "hecke":
        return tower.d ** n * f
    if tower.kind == "wreath":
        return tower.F.dim ** n * f
    return f


def build_parser():
    p = argparse.ArgumentParser(prog="frobtower", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--tower", default="sym",
                   help="sym, hecke:d,w1,..,wd, sergeev or wreath:<name or file>")
    p.add_argument("--n", type=int, default=3, help="top level N")
    p.add_argument("--k", default=None, help="moment range such as 0..4 (casimir: lower level k)")
    p.add_argument("--variant", choices=VARIANTS + ("both",), default="both")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--paths", type=int, default=1000)
    p.add_argument("--steps", type=int, default=None, help="sample length (default N)")
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    p.add_argument("--field", choices=("q", "qi", "auto"), default="auto",
                   help="ground field; auto adjoins square roots as needed")
    p.add_argument("--max-dim", type=int, default=None,
                   help=f"ceiling on dim A_N (default $FROBTOWER_MAX_DIM or {DEFAULT_MAX_DIM})")
    p.add_argument("--all-levels", action="store_true", help="simples: list levels 0..N")
    p.add_argument("--floats", action="store_true", help="add *_float mirror fields")
    p.add_argument("--no-timestamp", action="store_true", help="omit the generated-at field")
    p.add_argument("--negative-control", choices=("dual", "jm"), default=None,
                   help="verify: run a deliberately broken check")
    p.add_argument("--failures-only", action="store_true", help="verify: list failed reports only")
    p.add_argument("--version", action="version", version=f"frobtower {__version__}")
    return p


def normalise_argv(argv):
    """Accept ``tower SPEC [flags] COMMAND`` as an alias of ``COMMAND --tower SPEC [flags]``."""
    argv = list(argv)
    if argv and argv[0] == "tower":
        if len(argv) < 2:
            raise ConfigError("tower needs a preset")
        return argv[2:] + ["--tower", argv[1]]
    return argv


def max_dim(args):
    if args.max_dim is not None:
        return args.max_dim
    env = os.environ.get("FROBTOWER_MAX_DIM")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"FROBTOWER_MAX_DIM={env!r} is not an integer") from None
    return DEFAULT_MAX_DIM


def setup(args):
    if args.n < 0:
        raise ConfigError("--n must be nonnegative")
    if args.command in ("branching", "measures", "sample", "verify", "casimir") and args.n < 1:
        raise ConfigError(f"{args.command} needs --n >= 1")
    # measures looks one level up for the transition measures of level N
    tower = make_tower(args.tower, args.n + 1, QQI if args.field == "qi" else QQ)
    ceiling = max_dim(args)
    if expected_dim(tower, args.n) > ceiling:
        raise ConfigError(f"dim A_{args.n} = {expected_dim(tower, args.n)} exceeds the ceiling "
                          f"{ceiling} (use --max-dim or FROBTOWER_MAX_DIM)")
    return tower


def field_of(args):
    return (QQI if args.field == "qi" else QQ), args.field == "auto"


# serialisation ----------------------------------------------------------------

def exact(x):
    return format_scalar(x)


def number(rec, key, x, floats):
    """Store x under key, plus key_float when requested and x is real."""
    rec[key] = exact(x)
    if floats:
        rec[key + "_float"] = float(x) if is_real(x) else None
    return rec


# commands ---------------------------------------------------------------------

def cmd_simples(args, tower):
    field, auto = field_of(args)
    data = analyse(tower, args.n, field, auto_extend=auto, with_eigen=True)
    levels = range(args.n + 1) if args.all_levels else [args.n]
    rows = []
    for n in levels:
        dec = data.decomps[n]
        for b in dec.blocks:
            rows.append({"level": n, "label": b.label, "dim_L": b.dim_L, "dim_P": b.dim_P,
                         "block_dim": b.dim_L * b.dim_P, "algebra_dim": dec.level.dim,
                         "semisimple": dec.semisimple})
    return {"field": data.field.name, "rows": rows}


def cmd_branching(args, tower):
    field, auto = field_of(args)
    data = analyse(tower, args.n, field, auto_extend=auto, with_eigen=True)
    out = []
    for br in data.branchings:
        out.append({"level": br.n, "rows": br.rows, "cols": br.cols,
                    "kappa": br.kappa, "kappa_star": br.kappa_star})
    return {"field": data.field.name, "pairs": out}


def _variants(args):
    return list(VARIANTS) if args.variant == "both" else [args.variant]


def cmd_measures(args, tower):
    field, auto = field_of(args)
    # level N+1 is needed for the transition measures of level-N vertices
    data = analyse(tower, args.n + 1, field, auto_extend=auto)
    ks = parse_k_range(args.k) if args.k is not None else [0, 1, 2]
    if any(k < 0 for k in ks):
        raise ConfigError("moments need k >= 0")
    fl = args.floats
    out = []
    for v in _variants(args):
        sys_ = build_system(data.decomps, data.branchings, v, tower.label)
        G = sys_.graph
        rec = {"variant": v, "plancherel": [], "down": [], "up": [], "spectral": []}
        levels = G.levels[:args.n + 1]
        for n, labels in enumerate(levels):
            for mu in labels:
                rec["plancherel"].append(number({"level": n, "vertex": mu}, "mass", sys_.Pl[n][mu], fl))
        for n in range(args.n):
            for (mu, lam), _ in G.edges(n):
                rec["down"].append(number({"level": n + 1, "from": lam, "to": mu}, "p",
                                          sys_.p_down(n, lam, mu), fl))
                rec["up"].append(number({"level": n, "from": mu, "to": lam}, "p",
                                        sys_.p_up(n, mu, lam), fl))
        for n, labels in enumerate(levels):
            for mu in labels:
                for direction in ("up", "down"):
                    if direction == "down" and n == 0:
                        continue
                    sm = spectral_measure(sys_, data.eigen, mu, direction, level=n)
                    atoms = [number(number({}, "location", a, fl), "mass", m, fl) for a, m in sm.atoms]
                    moments = [number({"k": k}, "value", moment(sm, k), fl) for k in ks]
                    rec["spectral"].append({"level": n, "vertex": mu, "direction": direction,
                                            "atoms": atoms, "moments": moments})
        out.append(rec)
    return {"field": data.field.name, "k": ks, "systems": out}


def measures_rows(result):
    rows = []
    for s in result["systems"]:
        v = s["variant"]
        for r in s["plancherel"]:
            rows.append([v, "plancherel", r["level"], r["vertex"], "", "", r["mass"]])
        for r in s["down"]:
            rows.append([v, "p_down", r["level"], r["from"], r["to"], "", r["p"]])
        for r in s["up"]:
            rows.append([v, "p_up", r["level"], r["from"], r["to"], "", r["p"]])
        for r in s["spectral"]:
            for a in r["atoms"]:
                rows.append([v, f"atom_{r['direction']}", r["level"], r["vertex"], a["location"], "",
                             a["mass"]])
            for m in r["moments"]:
                rows.append([v, f"moment_{r['direction']}", r["level"], r["vertex"], "", m["k"],
                             m["value"]])
    return ["variant", "kind", "level", "vertex", "other", "k", "value"], rows


def cmd_sample(args, tower):
    field, auto = field_of(args)
    steps = args.n if args.steps is None else args.steps
    if steps < 0 or steps > args.n:
        raise ConfigError(f"--steps must lie in 0..{args.n}")
    if args.paths < 0:
        raise ConfigError("--paths must be nonnegative")
    variant = "plain" if args.variant == "both" else args.variant
    data = analyse(tower, args.n, field, auto_extend=auto)
    sys_ = build_system(data.decomps, data.branchings, variant, tower.label)
    paths = sample_growth(sys_, steps, args.seed, args.paths)
    exact_m = exact_marginal(sys_, steps)
    counts = empirical_marginal(paths, steps)
    marg = []
    for lam, p in exact_m.items():
        c = counts.get(lam, 0)
        rec = {"vertex": lam, "count": c}
        number(rec, "exact", p, args.floats)
        rec["empirical"] = exact(Fraction(c, args.paths)) if args.paths else "0"
        sd = math.sqrt(float(p) * (1 - float(p)) / args.paths) if args.paths else 0.0
        rec["sigma_float"] = sd
        marg.append(rec)
    return {"variant": variant, "steps": steps, "seed": args.seed, "paths_total": args.paths,
            "marginal": marg, "paths": [{"index": p.index, "vertices": p.vertices} for p in paths]}


def sample_rows(result):
    return (["index", "step", "vertex"],
            [[p["index"], s, v] for p in result["paths"] for s, v in enumerate(p["vertices"])])


def cmd_casimir(args, tower):
    from .towers import casimir, casimir_iota, frobenius_system
    from .verify import centrality_witness
    n = args.n
    ks = parse_k_range(args.k) if args.k is not None else [n - 1]
    out = []
    for k in ks:
        if not 0 <= k < n:
            raise ConfigError(f"casimir needs 0 <= k < n, got k={k}")
        fs = frobenius_system(tower, n, k)
        rec = {"n": n, "k": k}
        for name, x in (("C", casimir(fs)), ("C_iota", casimir_iota(fs))):
            rec[name] = tower.describe(x)
            g = centrality_witness(tower, x)
            rec[name + "_central"] = g is None
            if g is not None:
                rec[name + "_witness"] = tower.describe(g)
        out.append(rec)
    return {"casimirs": out}


def cmd_verify(args, tower):
    from . import verify as V
    field, auto = field_of(args)
    if args.negative_control == "dual":
        n = args.n - 1
        rep = V.check_frobenius_axioms(V.corrupt_dual(frobenius_step(tower, n)), seed=args.seed)
        reports = [rep]
    elif args.negative_control == "jm":
        data = analyse(tower, args.n, field, auto_extend=auto)
        V.jm_negative_control(tower, data, args.n - 1, seed=args.seed)
        reports = []
    else:
        kw = {}
        if args.k is not None:
            kw["k_max"] = max(parse_k_range(args.k))
        res = V.run_suite(tower, args.n, field, seed=args.seed, auto_extend=auto, **kw)
        reports = res.reports
    failed = [r for r in reports if not r.ok]
    shown = failed if args.failures_only else reports
    return {"total": len(reports), "verified": len(reports) - len(failed), "failed": len(failed),
            "reports": [r.to_record(tower.describe) for r in shown]}


def verify_rows(result):
    return (["identity", "tower", "levels", "params", "status", "lhs", "rhs"],
            [[r["identity"], r["tower"], " ".join(map(str, r["levels"])),
              json.dumps(r["params"], sort_keys=True), r["status"], json.dumps(r["lhs"]),
              json.dumps(r["rhs"])] for r in result["reports"]])


def simples_rows(result):
    keys = ["level", "label", "dim_L", "dim_P", "block_dim", "algebra_dim", "semisimple"]
    return keys, [[r[k] for k in keys] for r in result["rows"]]


def branching_rows(result):
    rows = []
    for pr in result["pairs"]:
        for i, mu in enumerate(pr["rows"]):
            for j, lam in enumerate(pr["cols"]):
                if pr["kappa"][i][j] or pr["kappa_star"][i][j]:
                    rows.append([pr["level"], mu, lam, pr["kappa"][i][j], pr["kappa_star"][i][j]])
    return ["level", "mu", "lambda", "kappa", "kappa_star"], rows


HANDLERS = {
    "simples": (cmd_simples, simples_rows),
    "branching": (cmd_branching, branching_rows),
    "measures": (cmd_measures, measures_rows),
    "verify": (cmd_verify, verify_rows),
    "sample": (cmd_sample, sample_rows),
    "casimir": (cmd_casimir, None),
}


# output ----------------------------------------------------------------------

def render(args, result, flat):
    if args.format == "json":
        doc = {"command": args.command, "tower": args.tower, "n": args.n}
        if not args.no_timestamp:
            doc["generated"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        doc["result"] = result
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if flat is None:
        raise ConfigError(f"{args.command} output is nested; use --format json or pretty")
    header, rows = flat(result)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return buf.getvalue()
    widths = [max([len(str(h))] + [len(str(r[i])) for r in rows]) for i, h in enumerate(header)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def pretty_casimir(result):
    out = []
    for r in result["casimirs"]:
        for name in ("C", "C_iota"):
            tag = "central" if r[name + "_central"] else f"not central, witness {r[name + '_witness']}"
            out.append(f"{name}_{{{r['n']},{r['k']}}} = {r[name]}   [{tag}]")
    return "\n".join(out) + "\n"


def run(argv=None, stdout=None):
    """Parse, dispatch and print; returns the exit code."""
    stdout = stdout or sys.stdout
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(normalise_argv(argv))
    except SystemExit as err:
        return EXIT_OK if err.code == 0 else EXIT_CONFIG
    except ConfigError as err:
        print(f"frobtower: {err}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        tower = setup(args)
        handler, flat = HANDLERS[args.command]
        result = handler(args, tower)
        if args.command == "casimir" and args.format == "pretty":
            text = pretty_casimir(result)
        else:
            text = render(args, result, flat)
        stdout.write(text)
        if args.command == "verify" and result["failed"]:
            raise IdentityFailure(f"{result['failed']} of {result['total']} checks failed")
    except (ConfigError, LevelMismatch) as err:
        print(f"frobtower: configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (SplittingFieldFailure, NonRealCoordinate) as err:
        print(f"frobtower: splitting field failure: {err}", file=sys.stderr)
        return EXIT_SPLITTING
    except AssumptionViolated as err:
        print(f"frobtower: Jucys-Murphy assumption violated: {err}", file=sys.stderr)
        return EXIT_ASSUMPTION
    except FrobTowerError as err:
        print(f"frobtower: identity failure: {err}", file=sys.stderr)
        return EXIT_IDENTITY
    return EXIT_OK


def main(argv=None):
    try:
        code = run(argv)
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
