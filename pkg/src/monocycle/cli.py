"""Command-line front end: ``monocycle <subcommand> ...``.

Exit codes: 0 success, 1 verified negative result, 2 usage or input error,
3 refusal (size threshold or search budget). ``RC_SEED`` overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import constructions, finders, report, textformat
from .graph import BipartiteView, Color, GraphError, monochrome_view, verify_cycle, verify_path
from .search import two_coloring
from .spectrum import DEFAULT_ARROW_BUDGET, DEFAULT_EXACT_LIMIT, SpectrumRefused, arrows_cycle, spectrum_report
from .stability import (
    StabilityError,
    classify_stability,
    four_part_cycles,
    sparse_set_cycles,
)
from .witness import CLASSIFY_DELTA_LIMIT, DEFAULT_DELTA, PartitionWitness, SparseSetWitness, WitnessError

OK, NEGATIVE, USAGE, REFUSED = 0, 1, 2, 3

FINDERS = ("hall", "chvatal", "bondy", "bagga-varma", "berge", "jackson", "dense-even", "connected-matching")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    input: Path | None = None
    output: Path | None = None
    seed: int = 0
    delta: Fraction = DEFAULT_DELTA
    max_n_exact: int = DEFAULT_EXACT_LIMIT
    workers: int = 1

    def __post_init__(self):
        if not 0 < self.delta < CLASSIFY_DELTA_LIMIT:
            raise UsageError("--delta must lie in (0, 1/36)")
        if self.max_n_exact < 3:
            raise UsageError("--max-n-exact must be at least 3")
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")


def _delta(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _int_list(text: str) -> list[int]:
    """``4,6,8`` or ``4-18`` (even lengths only when both ends are even) or a mix."""
    out: list[int] = []
    try:
        for chunk in text.split(","):
            chunk = chunk.strip()
            if "-" in chunk:
                lo, hi = (int(x) for x in chunk.split("-", 1))
                step = 2 if lo % 2 == 0 and hi % 2 == 0 else 1
                out.extend(range(lo, hi + 1, step))
            elif chunk:
                out.append(int(chunk))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    return out


def config_from(args: argparse.Namespace) -> RunConfig:
    seed = getattr(args, "seed", 0) or 0
    if os.environ.get("RC_SEED"):
        try:
            seed = int(os.environ["RC_SEED"])
        except ValueError:
            raise UsageError("RC_SEED must be an integer") from None
    return RunConfig(
        subcommand=args.command,
        input=Path(args.input) if getattr(args, "input", None) else None,
        output=Path(args.out) if getattr(args, "out", None) else None,
        seed=seed,
        delta=getattr(args, "delta", None) or DEFAULT_DELTA,
        max_n_exact=getattr(args, "max_n_exact", DEFAULT_EXACT_LIMIT),
        workers=getattr(args, "workers", 1),
    )


def _emit(cfg: RunConfig, doc: dict, out=None) -> None:
    text = report.dumps(doc)
    if cfg.output is not None:
        cfg.output.write_text(text)
    else:
        (out or sys.stdout).write(text)


def _read_graph(cfg: RunConfig):
    try:
        return textformat.read(cfg.input)
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.input}: {exc.strerror}") from None


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from None


# -- gen --------------------------------------------------------------------------------------

_VERTEX_KEYS = {"parts", "x", "y", "edges", "via", "inner_edge"}


def _shift(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return obj + 1
    if isinstance(obj, dict):
        return {k: _shift(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, range)):
        return [_shift(v) for v in obj]
    return obj


def _external(d: dict | None) -> dict | None:
    """Sidecar view of generator metadata: vertex-valued fields become 1-indexed."""
    if d is None:
        return None
    out = {}
    for k, v in d.items():
        if k in _VERTEX_KEYS:
            out[k] = _shift(v)
        elif k == "homes":
            out[k] = {str(u + 1): h for u, h in sorted(v.items())}
        else:
            out[k] = v
    return out


def _default_name(inst) -> str:
    p = inst.params
    fam = inst.family
    if fam == "example1":
        return f"example1_t{p['t']}_r{p['r']}"
    if fam == "example2":
        return f"example2_n{p['n']}_s{p['seed']}" + (f"_{p['inside']}" if p.get("inside") else "")
    if fam == "example3":
        return f"example3_t{p['t']}"
    if fam == "random":
        return f"random_n{p['n']}_s{p['seed']}"
    if fam == "sparse":
        return f"sparse_{p['kind']}_t{p['t']}_r{p['r']}"
    if fam == "fourpart":
        return f"fourpart_n{p['n']}_{p['planting']}_s{p['seed']}"
    return fam


def cmd_gen(args, cfg: RunConfig) -> int:
    kw = {"seed": cfg.seed}
    for key in ("t", "r", "n", "kind", "planting", "v0", "missing", "inside"):
        val = getattr(args, key, None)
        if val is not None:
            kw[key] = val
    if args.delta is not None:
        kw["delta"] = args.delta
    needs = {"example1": ("t",), "example2": ("n",), "example3": ("t",), "random": ("n",), "fourpart": ("n",)}
    for key in needs.get(args.family, ()):
        if key not in kw:
            raise UsageError(f"gen {args.family} needs --{key}")
    inst = constructions.generate(args.family, **kw)
    path = cfg.output or Path(args.out_dir) / f"{_default_name(inst)}.cg"
    path.parent.mkdir(parents=True, exist_ok=True)
    textformat.write(inst.graph, path, [f"family {inst.family}"])
    side = {
        "family": inst.family,
        "params": _external(inst.params),
        "expected": inst.expected,
        "witness": None if inst.witness is None else report.witness_json(inst.witness),
        "structure": _external(inst.structure),
        "graph": path.name,
    }
    path.with_suffix(".json").write_text(report.dumps(side))
    print(path)
    return OK


# -- oracle commands -----------------------------------------------------------------------------


def cmd_spectrum(args, cfg: RunConfig) -> int:
    g = _read_graph(cfg)
    rep = spectrum_report(g, cfg.max_n_exact)
    _emit(cfg, report.spectrum_json(rep))
    return OK


def cmd_verify(args, cfg: RunConfig) -> int:
    g = _read_graph(cfg)
    if g.n < 3:
        raise UsageError("the verdict needs n >= 3")
    rep = spectrum_report(g, cfg.max_n_exact)
    doc = report.verdict_json(rep.verdict)
    doc["circumference"] = None if rep.circumference is None else report.cycle_json(rep.circumference)
    _emit(cfg, doc)
    return OK if rep.verdict.holds else NEGATIVE


def cmd_arrows(args, cfg: RunConfig) -> int:
    g = _read_graph(cfg)
    res = arrows_cycle(g, args.len, args.budget, cfg.workers)
    if res.status == "budget":
        print(f"refused: 2^{g.edge_count() - 1} colorings exceed the budget of {args.budget}", file=sys.stderr)
        return REFUSED
    doc = report.arrows_json(res)
    if res.counterexample is not None:
        cpath = Path(args.counterexample) if args.counterexample else cfg.input.with_name(
            f"{cfg.input.stem}_no_C{args.len}.cg"
        )
        textformat.write(res.counterexample, cpath, [f"coloring with no monochromatic C{args.len}"])
        doc["counterexample_file"] = str(cpath)
    _emit(cfg, doc)
    return OK if res.status == "yes" else NEGATIVE


# -- find ----------------------------------------------------------------------------------------


def _vertices(text: str | None, n: int) -> list[int] | None:
    if text is None:
        return None
    vs = [v - 1 for v in _int_list(text)]
    if any(not 0 <= v < n for v in vs):
        raise UsageError(f"vertex out of range 1..{n}")
    return vs


def _bipartite(g, args, color: Color) -> BipartiteView:
    X = _vertices(args.x, g.n)
    Y = _vertices(args.y, g.n)
    if X is None:
        view = monochrome_view(g, color)
        touched = [v for v in range(g.n) if view.adj[v]]
        split = two_coloring(view.adj, sum(1 << v for v in touched))
        if split is None:
            raise UsageError(f"the {color.label} graph is not bipartite; pass --x and --y")
        xs = [v for v in touched if split[0] >> v & 1]
        ys = [v for v in touched if split[1] >> v & 1]
        X, Y = (xs, ys) if Y is None else (xs, Y)
    if Y is None:
        Y = [v for v in range(g.n) if v not in X]
    try:
        return BipartiteView(g, X, Y, color)
    except GraphError as exc:
        raise UsageError(str(exc)) from None


def cmd_find(args, cfg: RunConfig) -> int:
    g = _read_graph(cfg)
    color = Color.parse(args.color)
    theorem = args.theorem
    subset = _vertices(args.vertices, g.n)
    doc: dict[str, Any] = {"theorem": theorem, "color": color.label}
    if theorem == "connected-matching":
        cm = finders.connected_matching(g, color)
        doc.update(component=report.one_based(sorted(cm.component)), certificates=[report.matching_json(cm.matching)])
        _emit(cfg, doc)
        return OK if cm.matching.size else NEGATIVE
    if theorem == "hall":
        view = _bipartite(g, args, color)
        try:
            res = finders.hall_matching(view)
        except GraphError as exc:
            raise UsageError(str(exc)) from None
        doc.update(report.hall_json(res))
        doc["certificates"] = [report.matching_json(res.matching)]
        _emit(cfg, doc)
        return OK if res.saturating else NEGATIVE
    simple = monochrome_view(g, color)
    if theorem == "chvatal":
        out = finders.chvatal_hamiltonian(simple, subset)
    elif theorem == "bondy":
        out = finders.bondy_pancyclic(simple, subset)
    elif theorem == "dense-even":
        out = finders.dense_even_cycles(simple, args.q, force=args.force)
    else:
        view = _bipartite(g, args, color)
        if theorem == "bagga-varma":
            out = finders.bagga_varma_bipancyclic(view)
        elif theorem == "berge":
            if not args.endpoints:
                raise UsageError("berge needs --endpoints u v")
            u, v = (e - 1 for e in args.endpoints)
            out = finders.berge_ham_path(view, u, v)
        else:
            k = args.k if args.k is not None else min((view.degree(x) for x in view.X), default=0)
            out = finders.jackson_cycle(view, k)
            doc["k"] = k
    doc.update(report.outcome_json(out))
    _emit(cfg, doc)
    return OK if out.found or out.status is finders.Status.EXCEPTIONAL else NEGATIVE


# -- stability commands --------------------------------------------------------------------------------


def cmd_classify(args, cfg: RunConfig) -> int:
    g = _read_graph(cfg)
    case = classify_stability(g, args.delta if args.delta is not None else DEFAULT_DELTA)
    _emit(cfg, report.case_json(case))
    return NEGATIVE if case.kind == "NoneFound" else OK


def cmd_pipeline(args, cfg: RunConfig) -> int:
    g = _read_graph(cfg)
    w = report.witness_from_json(_read_json(args.witness))
    if args.delta is not None:
        from dataclasses import replace

        w = replace(w, delta=args.delta)
    target = args.target
    if isinstance(w, PartitionWitness):
        doc = report.pipeline_json(four_part_cycles(g, w, target))
    elif isinstance(w, SparseSetWitness):
        doc = report.sparse_json(sparse_set_cycles(g, w, target))
    else:
        raise UsageError("pipeline needs a partition or sparse-set witness")
    _emit(cfg, doc)
    return OK if not doc["missing"] else NEGATIVE


def cmd_check(args, cfg: RunConfig) -> int:
    g = _read_graph(cfg)
    doc = _read_json(args.certificates)
    results = []
    for item in report.iter_certificates(doc):
        cert = report.certificate_from_json(item)
        if isinstance(cert, finders.Matching):
            ok, reason = finders.verify_matching(g, cert), ""
        else:
            check = (verify_cycle if "cycle" in item else verify_path)(g, cert)
            ok, reason = bool(check), check.reason
        if "len" in item and ok and item["len"] != cert.length:
            ok, reason = False, "length"
        results.append({"kind": "cycle" if "cycle" in item else "path" if "path" in item else "matching",
                        "len": item.get("len", item.get("size")), "ok": ok, "reason": reason or None})
    failed = sum(not r["ok"] for r in results)
    _emit(cfg, {"checked": len(results), "failed": failed, "results": results})
    return OK if failed == 0 else NEGATIVE


# -- bench: exploratory verdict sweep --------------------------------------------------------------------------


def cmd_bench(args, cfg: RunConfig) -> int:
    rows = []
    failures = []
    persist = Path(args.persist)
    for n in range(args.n_min, args.n_max + 1):
        for i in range(args.count):
            seed = cfg.seed + i
            inst = constructions.random_min_degree(n, seed)
            start = time.perf_counter()
            rep = spectrum_report(inst.graph, cfg.max_n_exact)
            elapsed = time.perf_counter() - start
            certs_ok = all(verify_cycle(inst.graph, c) for c in list(rep.red.values()) + list(rep.blue.values()))
            v = rep.verdict
            rows.append({"n": n, "seed": seed, "holds": v.holds, "branch": str(v.branch),
                         "certificates_ok": certs_ok, "seconds": round(elapsed, 3)})
            if not v.holds or not certs_ok:
                persist.mkdir(parents=True, exist_ok=True)
                path = persist / f"verdict_fail_n{n}_s{seed}.cg"
                textformat.write(inst.graph, path, [f"verdict {v.branch} missing {list(v.missing)}"])
                failures.append(str(path))
    if args.csv:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["n", "seed", "holds", "branch", "certificates_ok", "seconds"],
                                lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({**row, "seconds": "" if args.no_timing else row["seconds"]})
        Path(args.csv).write_text(buf.getvalue())
    summary = {
        "instances": len(rows),
        "verdict_failures": sum(not r["holds"] for r in rows),
        "certificate_failures": sum(not r["certificates_ok"] for r in rows),
        "persisted": failures,
        "branches": _tally(r["branch"] for r in rows),
    }
    _emit(cfg, summary)
    return OK if summary["certificate_failures"] == 0 else NEGATIVE


def _tally(items) -> dict[str, int]:
    out: dict[str, int] = {}
    for x in items:
        out[x] = out.get(x, 0) + 1
    return dict(sorted(out.items()))


# -- parser ----------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monocycle", description="Monochromatic cycle spectra and certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph=True, out=True):
        if graph:
            sp.add_argument("input", help="graph file in the colored edge-list format")
        if out:
            sp.add_argument("--out", help="write JSON here instead of stdout")
        sp.add_argument("--seed", type=int, default=0, help="seed (RC_SEED overrides)")
        sp.add_argument("--max-n-exact", type=int, default=DEFAULT_EXACT_LIMIT, help="largest n for exact search")
        sp.add_argument("--workers", type=int, default=1, help="parallel workers")
        sp.add_argument("--delta", type=_delta, default=None, help="rational delta, e.g. 1/1024")

    g = sub.add_parser("gen", help="write a generated instance and its expectations sidecar")
    g.add_argument("family", choices=("example1", "example2", "example3", "k4paths", "k5bulls", "random", "sparse", "fourpart"))
    for name in ("t", "r", "n", "v0", "missing"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--kind", choices=("direct", "augment", "jackson"))
    g.add_argument("--planting", choices=constructions.PLANTINGS)
    g.add_argument("--inside", choices=("R", "B"))
    g.add_argument("--out-dir", default=".", help="directory for the default file name")
    common(g, graph=False)

    common(sub.add_parser("spectrum", help="exact per-color cycle spectra"))
    common(sub.add_parser("verify", help="theorem verdict from exact spectra"))

    a = sub.add_parser("arrows", help="does every 2-coloring of the host contain a monochromatic C_len")
    common(a)
    a.add_argument("--len", type=int, required=True)
    a.add_argument("--budget", type=int, default=DEFAULT_ARROW_BUDGET)
    a.add_argument("--counterexample", help="where to write the counterexample coloring")

    f = sub.add_parser("find", help="run one classical finder")
    f.add_argument("theorem", choices=FINDERS)
    common(f)
    f.add_argument("--color", default="R")
    f.add_argument("--endpoints", type=int, nargs=2)
    f.add_argument("--q", type=int, default=2)
    f.add_argument("--k", type=int)
    f.add_argument("--force", action="store_true", help="dense-even: search even when the edge bound fails")
    f.add_argument("--x", help="bipartite part X, e.g. 1,2,3 (default: 2-coloring of the color class)")
    f.add_argument("--y", help="bipartite part Y (default: the remaining vertices)")
    f.add_argument("--vertices", help="restrict chvatal/bondy to these vertices")

    common(sub.add_parser("classify", help="search for a verified stability witness"))

    pl = sub.add_parser("pipeline", help="run the sparse-set or four-part procedure on a witness")
    common(pl)
    pl.add_argument("--witness", required=True, help="witness JSON (a gen sidecar works)")
    pl.add_argument("--target", type=_int_list, help="lengths, e.g. 4-18 or 4,6,8")

    c = sub.add_parser("check", help="re-verify every certificate in a JSON output")
    common(c)
    c.add_argument("certificates")

    b = sub.add_parser("bench", help="exploratory verdict sweep over random high-degree colorings")
    common(b, graph=False)
    b.add_argument("--n-min", type=int, default=9)
    b.add_argument("--n-max", type=int, default=14)
    b.add_argument("--count", type=int, default=20)
    b.add_argument("--persist", default="bench_failures", help="directory for verdict-failing instances")
    b.add_argument("--csv", help="per-instance CSV")
    b.add_argument("--no-timing", action="store_true", help="blank the timing column for reproducible CSV")
    return p


COMMANDS = {
    "gen": cmd_gen,
    "spectrum": cmd_spectrum,
    "verify": cmd_verify,
    "arrows": cmd_arrows,
    "find": cmd_find,
    "classify": cmd_classify,
    "pipeline": cmd_pipeline,
    "check": cmd_check,
    "bench": cmd_bench,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from(args)
        return COMMANDS[args.command](args, cfg)
    except SpectrumRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return REFUSED
    except (UsageError, WitnessError, StabilityError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
