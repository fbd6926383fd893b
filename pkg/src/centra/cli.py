"""Command-line front end: ``centra <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import logging
import os
import sys
import warnings
from dataclasses import asdict
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__, assessment, axioms, measures
from .graph import GraphError, Topology, classify, from_edge_list, generate, largest_component, to_edge_list
from .measures import MeasureId

log = logging.getLogger("centra")

DEFAULT_SEED = 42
PATH_MEASURES = {MeasureId.NBC, MeasureId.NCC}


def karate_path() -> Path:
    """Location of the bundled Zachary karate club edge list."""
    return Path(str(resources.files("centra") / "data" / "karate.edges"))


def _default_seed() -> int:
    raw = os.environ.get("CENTRA_SEED")
    return int(raw) if raw else DEFAULT_SEED


def _parse_measures(text: str) -> list[MeasureId]:
    if text.strip().lower() == "all":
        return list(MeasureId)
    try:
        return [MeasureId(tok.strip().upper()) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_topologies(text: str) -> list[Topology]:
    if text.strip().lower() == "all":
        return list(assessment.TOPOLOGY_ORDER)
    try:
        return [Topology(tok.strip()) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_n_range(text: str) -> list[int]:
    """``start:stop:step`` (stop exclusive, as in ``range``) or a comma list."""
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) == 2:
                parts.append(1)
            start, stop, step = parts
            values = list(range(start, stop, step))
        else:
            values = [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n-range {text!r}") from None
    if not values or values[0] < 3:
        raise argparse.ArgumentTypeError("n-range must be non-empty and start at n >= 3")
    return values


def _fmt(x: object) -> object:
    if isinstance(x, float):
        return f"{x:.6g}"
    return x


def _write_csv(rows: list[dict], fieldnames: Sequence[str], out: str | None, comments: Sequence[str] = ()) -> None:
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _fmt(row[k]) for k in fieldnames})
    _emit(buf.getvalue(), out)


def _write_json(payload: dict, out: str | None) -> None:
    _emit(json.dumps(payload, indent=2) + "\n", out)


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")


def _metadata(args: argparse.Namespace, **extra) -> dict:
    meta = {"centra_version": __version__, "command": args.command, "seed": args.seed}
    if not args.no_timestamp:
        meta["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    meta.update(extra)
    return meta


def _load_graph(path: str, n: int | None):
    text = Path(path).read_text(encoding="utf-8")
    return from_edge_list(text, n)


# -- subcommands -------------------------------------------------------------


def cmd_measure(args: argparse.Namespace) -> int:
    g = _load_graph(args.input, args.n)
    lcc_applied = False
    connected = g.n > 0 and classify(g).component_count == 1
    if args.lcc and not connected and g.n > 0:
        g, lcc_applied = largest_component(g), True
    elif not connected and g.n > 0 and PATH_MEASURES.intersection(args.measures):
        log.warning(
            "input is disconnected; evaluating on its largest connected component for path-based measures"
        )
        g, lcc_applied = largest_component(g), True
    rows = [
        {
            "measure": r.measure.value,
            "value": r.value,
            "n": g.n,
            "m": g.m,
            "degenerate": r.degenerate,
            "lcc_applied": lcc_applied,
        }
        for r in measures.evaluate_all(g, args.measures)
    ]
    if args.format == "json":
        _write_json({"metadata": _metadata(args, input=args.input, lcc_applied=lcc_applied), "results": rows}, args.out)
    else:
        _write_csv(rows, ["measure", "value", "n", "m", "degenerate", "lcc_applied"], args.out)
    return 0


def _params_comment(params: assessment.RuleParams) -> list[str]:
    return ["classifier " + " ".join(f"{k}={v}" for k, v in asdict(params).items())]


def _table2_rows(
    series: list[assessment.SweepSeries],
    params: assessment.RuleParams,
    topologies: Sequence[Topology] = assessment.TOPOLOGY_ORDER,
) -> tuple[list[dict], dict]:
    table = assessment.numerical_table((assessment.classify_behavior(s, params) for s in series), topologies)
    rows = []
    counts = {}
    for m, row in table.items():
        rec = {"measure": m.value}
        rec.update({t.value: int(row[t].passed) for t in topologies})
        counts[m] = assessment.passed_count(row)
        rec["passed"] = counts[m]
        rows.append(rec)
    return rows, counts


def cmd_sweep(args: argparse.Namespace) -> int:
    series = assessment.sweep(args.measures, args.topologies, args.n_range, args.seed)
    rows = [
        {"measure": s.measure.value, "topology": s.topology.value, "n": n, "value": v}
        for s in series
        for n, v in s.points
    ]
    if args.format == "json":
        _write_json({"metadata": _metadata(args), "points": rows}, args.out)
    else:
        _write_csv(rows, ["measure", "topology", "n", "value"], args.out)
    if args.table2:
        params = assessment.RuleParams()
        t2, _ = _table2_rows(series, params, args.topologies)
        cols = ["measure"] + [t.value for t in args.topologies] + ["passed"]
        _write_csv(t2, cols, args.table2, _params_comment(params))
    return 0


def _verdict_record(v: axioms.AxiomVerdict) -> dict:
    w = v.witness
    return {
        "measure": v.measure.value,
        "axiom": v.axiom,
        "status": v.status,
        "scope": v.scope,
        "witness_edges": "" if w is None else " ".join(f"{a}-{b}" for a, b in w.edge_list()),
        "witness_n": "" if w is None else w.graph.n,
        "saturated_node": "" if w is None or w.node is None else w.node,
        "value_before": "" if w is None else w.before,
        "value_after": "" if w is None or w.after is None else w.after,
        "note": v.note,
    }


def cmd_axioms(args: argparse.Namespace) -> int:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    table = axioms.compliance_table(args.max_n, args.perms, args.seed, args.family_max_n)
    t1 = []
    for m, row in table.items():
        rec = {"measure": m.value}
        rec.update({c: int(row[c].satisfied) for c in axioms.TABLE_COLUMNS})
        rec["satisfied"] = axioms.satisfied_count(row)
        t1.append(rec)
    _write_csv(t1, ["measure", *axioms.TABLE_COLUMNS, "satisfied"], str(out / "table1.csv"))

    records = [_verdict_record(v) for row in table.values() for v in row.values()]
    _write_csv(records, ["measure", "axiom", "status", "scope", "witness_edges"], str(out / "axioms.csv"))
    counter = [_verdict_record(v) for v in axioms.verify_published_counterexamples()]
    _write_json(
        {
            "metadata": _metadata(args, max_n=args.max_n, perms=args.perms, family_max_n=args.family_max_n),
            "verdicts": records,
            "counterexamples": counter,
        },
        str(out / "witnesses.json"),
    )
    bad = [c for c in counter if c["status"] != axioms.VIOLATED]
    for c in bad:
        log.warning("published counterexample %s-%s does not violate: %s", c["measure"], c["axiom"], c["note"])
    sys.stdout.write(f"wrote table1.csv, axioms.csv, witnesses.json to {out}\n")
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    if args.tables == "published":
        s_a = {m: sum(cells) for m, cells in axioms.PUBLISHED_TABLE.items()}
        s_n = {m: sum(cells) for m, cells in assessment.PUBLISHED_NUMERICAL_TABLE.items()}
    else:
        table1 = axioms.compliance_table(args.max_n, args.perms, args.seed, args.family_max_n)
        s_a = {m: axioms.satisfied_count(row) for m, row in table1.items()}
        series = assessment.sweep(None, None, args.n_range, args.seed)
        _, s_n = _table2_rows(series, assessment.RuleParams())
    rows = [
        {"measure": r.measure.value, "S_A": r.S_A, "S_N": r.S_N, "w_A": r.w_A, "w_N": r.w_N, "total": r.total}
        for r in assessment.score_table(s_a, s_n, args.wa, args.wn)
    ]
    if args.format == "json":
        _write_json({"metadata": _metadata(args, tables=args.tables), "scores": rows}, args.out)
    else:
        _write_csv(rows, ["measure", "S_A", "S_N", "w_A", "w_N", "total"], args.out)
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    _emit(to_edge_list(generate(args.topology, args.n, args.seed)), args.out)
    return 0


def cmd_lcc(args: argparse.Namespace) -> int:
    g = _load_graph(args.input, args.n)
    _emit(to_edge_list(largest_component(g)), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="centra", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, fmt: bool = True) -> None:
        p.add_argument("--seed", type=int, default=_default_seed(), help="default 42, or $CENTRA_SEED")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--no-timestamp", action="store_true", help="omit generated_at from JSON metadata")
        if fmt:
            p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("measure", help="evaluate centralization measures on an edge list")
    p.add_argument("--input", required=True, help="edge-list file ('karate' for the bundled fixture)")
    p.add_argument("--n", type=int, default=None, help="explicit node count")
    p.add_argument("--measures", type=_parse_measures, default=[MeasureId.NBC, MeasureId.NCC, MeasureId.NDC])
    p.add_argument("--lcc", action="store_true", help="evaluate on the largest connected component")
    common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("sweep", help="evaluate measures across canonical topologies")
    p.add_argument("--measures", type=_parse_measures, default=list(MeasureId))
    p.add_argument("--topologies", type=_parse_topologies, default=list(assessment.TOPOLOGY_ORDER))
    p.add_argument("--n-range", type=parse_n_range, default=list(assessment.DEFAULT_N_VALUES))
    p.add_argument("--table2", default=None, help="also write the pass/fail matrix CSV here")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("axioms", help="check all measures against the postulates")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--perms", type=int, default=20)
    p.add_argument("--family-max-n", type=int, default=20)
    p.add_argument("--out-dir", default="axioms-out")
    common(p, fmt=False)
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("score", help="combine axiomatic and numerical scores")
    p.add_argument("--wa", type=float, default=0.5)
    p.add_argument("--wn", type=float, default=0.5)
    p.add_argument("--tables", choices=["computed", "published"], default="computed")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--perms", type=int, default=20)
    p.add_argument("--family-max-n", type=int, default=20)
    p.add_argument("--n-range", type=parse_n_range, default=list(assessment.DEFAULT_N_VALUES))
    common(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("generate", help="write a canonical topology as an edge list")
    p.add_argument("--topology", choices=[t.value for t in Topology], required=True)
    p.add_argument("--n", type=int, required=True)
    common(p, fmt=False)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("lcc", help="extract the largest connected component")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, default=None)
    common(p, fmt=False)
    p.set_defaults(func=cmd_lcc)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s", stream=sys.stderr)
    warnings.filterwarnings("ignore", module="numba")
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "input", None) == "karate":
        args.input = str(karate_path())
    try:
        return args.func(args)
    except (GraphError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
