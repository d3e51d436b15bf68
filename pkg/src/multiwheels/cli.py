"""Command line: construct, verify, sweep, embed, minor and report.

Exit codes: 0 every requested claim holds, 1 a claim fails, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .constructors import ConstructionError
from .bundle import CHECKS, check_bundle, verify
from .graph import GraphError
from .io import dumps, graph_to_json, read_graph, to_dot, to_graph6
from .specs import SpecError, build

OK, CLAIM_FAILED, INPUT_ERROR = 0, 1, 2
DEFAULT_CAP = 25

FAMILY_CHECKS = {
    "plane": ("color", "critical", "planar", "bracket"),
    "grotzsch": ("color", "critical", "planar", "quad", "bracket"),
    "projective": ("color", "critical", "bracket"),
}
ROW_FIELDS = ["spec", "n", "m", "chi", "critical", "planar", "quad", "bracket", "nondefault", "pass"]


class InputError(Exception):
    pass


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(source: str):
    """A spec literal, a file path, or '-' for stdin -> (graph, embedding, spec, family)."""
    from .topology import Embedding

    if source == "-" or os.path.exists(source):
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
        g, doc = read_graph(text)
        emb = None
        if doc.get("embedding"):
            emb = Embedding.from_json(g, doc["embedding"])
        spec = doc.get("spec") or doc.get("provenance", {}).get("spec", "")
        family = doc.get("family", "named")
        return g, emb, spec or source, family
    c = build(source)
    return c.graph, c.embedding, c.spec, c.family


# -- construct --------------------------------------------------------------------


def cmd_construct(args) -> int:
    c = build(args.spec)
    if args.format == "graph6":
        text = to_graph6(c.graph) + "\n"
        if args.with_embedding:
            raise InputError("--with-embedding needs --format json")
    elif args.format == "dot":
        text = to_dot(c.graph, c.ghosts)
    else:
        doc = {"spec": c.spec, "family": c.family, "graph": graph_to_json(c.graph)}
        if c.config is not None:
            doc["configuration"] = c.config.to_json()
            doc["annihilated"] = [list(e) for e in sorted(c.ghosts)]
        if args.with_embedding:
            if c.embedding is None:
                from .topology import is_planar

                res = is_planar(c.graph, witness=False)
                if not res.planar:
                    raise InputError(f"{c.spec} has no stored embedding and is not planar")
                c.embedding = res.embedding
            doc["embedding"] = c.embedding.to_json()
        text = dumps(doc) + "\n"
    _write(text, args.out)
    return OK


# -- verify -----------------------------------------------------------------------


def _parse_checks(text: str) -> tuple[str, ...]:
    items = tuple(x.strip() for x in text.split(",") if x.strip())
    bad = [x for x in items if x not in CHECKS]
    if bad or not items:
        raise InputError(f"--checks takes a subset of {','.join(CHECKS)}; got {text!r}")
    return items


def cmd_verify(args) -> int:
    checks = _parse_checks(args.checks)
    g, emb, spec, family = _load(args.input)
    b = verify(g, checks, spec=spec, family=family, embedding=emb, all_contractions=args.all_contractions)
    doc = b.to_json()
    problems = check_bundle(doc)
    if problems:
        doc["revalidation_problems"] = problems
    _write(dumps(doc) + "\n", args.out)
    for name, c in b.checks.items():
        print(f"{name:<9} {'pass' if c['pass'] else 'FAIL'}  {c['claim']}", file=sys.stderr)
    return OK if b.passed and not problems else CLAIM_FAILED


# -- sweep ------------------------------------------------------------------------


def sweep_specs(family: str, qmax: int, k: int = 3, types: str = "rr", cmax: int = 1) -> list[str]:
    if family == "plane":
        tlist = [t.strip() for t in types.split(",")]
        out = []
        for qs in itertools.product(range(1, qmax + 1), repeat=k):
            for ts in itertools.product(tlist, repeat=k):
                out.append("w:" + "-".join(f"{q}{t}" for q, t in zip(qs, ts)))
        return out
    if family == "grotzsch":
        return [f"g:q={q}" for q in range(1, qmax + 1)]
    if family == "projective":
        out = []
        for c in range(1, cmax + 1):
            for sats in itertools.product(range(1, qmax + 1), repeat=2 * c + 1):
                out.append(f"p:c={c};s=" + ",".join(map(str, sats)))
        return out
    raise InputError(f"unknown family {family!r}")


def predicted_n(spec: str) -> int:
    """Vertex count from the spec alone, so oversize instances are never built."""
    if spec.startswith("w:"):
        return 2 * sum(int(s[:-2]) for s in spec[2:].split("-")) + 1
    if spec.startswith("g:q="):
        return 4 * int(spec[4:]) + 3
    c, s = spec[4:].split(";s=")
    sats = [int(x) for x in s.split(",")]
    # central wheel plus each satellite minus its identified vertices (2, then 3, last 4)
    kc = 2 * int(c) + 1
    n = kc + 1
    for i, q in enumerate(sats):
        n += 2 * q + 2 - (2 if i == 0 else 3) - (1 if i == kc - 1 else 0)
    return n


def sweep_row(spec: str, checks: tuple[str, ...]) -> dict:
    c = build(spec)
    b = verify(c.graph, checks, spec=c.spec, family=c.family, embedding=c.embedding, timestamp="")
    ch = b.checks

    def get(name, key="pass"):
        return ch[name][key] if name in ch else None

    return {
        "spec": c.spec,
        "n": c.graph.n,
        "m": c.graph.m,
        "chi": get("color", "chromatic_number") if "color" in ch else get("critical", "chromatic_number"),
        "critical": get("critical"),
        "planar": get("planar", "planar"),
        "quad": get("quad"),
        "bracket": get("bracket"),
        "nondefault": c.nondefault,
        "pass": b.passed,
    }


def run_sweep(specs: list[str], checks: tuple[str, ...], jobs: int = 1) -> list[dict]:
    if jobs <= 1 or len(specs) <= 1:
        return [sweep_row(s, checks) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(sweep_row, specs, itertools.repeat(checks)))


def rows_csv(rows: list[dict]) -> str:
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=ROW_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: "" if r[k] is None else r[k] for k in ROW_FIELDS})
    return buf.getvalue()


def rows_table(rows: list[dict]) -> str:
    def cell(v, f=""):
        if f == "nondefault":
            return "yes" if v else "-"
        if v is None:
            return "-"
        if isinstance(v, bool):
            return "yes" if v else "NO"
        return str(v)

    widths = [max([len(f)] + [len(cell(r[f], f)) for r in rows]) for f in ROW_FIELDS]
    lines = ["  ".join(f.ljust(w) for f, w in zip(ROW_FIELDS, widths))]
    for r in rows:
        lines.append("  ".join(cell(r[f], f).ljust(w) for f, w in zip(ROW_FIELDS, widths)).rstrip())
    lines.append(f"{len(rows)} rows, {sum(1 for r in rows if not r['pass'])} failing")
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    if args.cap > DEFAULT_CAP and not args.allow_large:
        raise InputError(f"--cap above {DEFAULT_CAP} needs --allow-large (exact searches get slow)")
    checks = _parse_checks(args.checks) if args.checks else FAMILY_CHECKS[args.family]
    specs = [s for s in sweep_specs(args.family, args.qmax, args.k, args.types, args.cmax) if predicted_n(s) <= args.cap]
    rows = run_sweep(specs, checks, args.jobs)
    sys.stdout.write(rows_table(rows))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        stem = f"sweep_{args.family}"
        (out / f"{stem}.csv").write_text(rows_csv(rows))
        (out / f"{stem}.json").write_text(dumps({"family": args.family, "checks": list(checks), "cap": args.cap, "rows": rows}) + "\n")
        from .plotting import sweep_figure

        sweep_figure(rows, str(out / f"{stem}.png"), f"{args.family} sweep (n <= {args.cap})")
    return OK if all(r["pass"] for r in rows) else CLAIM_FAILED


# -- embed / minor ------------------------------------------------------------------


def cmd_embed(args) -> int:
    from .topology import Embedding, EmbeddingError, certify_projective_quadrangulation, validate_embedding

    text = Path(args.check).read_text() if args.check != "-" else sys.stdin.read()
    g, doc = read_graph(text)
    if "embedding" not in doc:
        raise InputError("document has no 'embedding' face list")
    emb = Embedding.from_json(g, doc["embedding"])
    try:
        chk = validate_embedding(emb)
    except EmbeddingError as exc:
        print(json.dumps({"valid": False, "rule": exc.rule, "face": exc.face, "detail": str(exc)}))
        return CLAIM_FAILED
    quad = certify_projective_quadrangulation(emb)
    print(json.dumps({
        "valid": True,
        "euler_characteristic": chk.euler_characteristic,
        "face_lengths": chk.face_lengths,
        "projective_quadrangulation": quad,
    }))
    return OK


def cmd_minor(args) -> int:
    from .minors import minor_search

    pattern, _, _, _ = _load(args.pattern)
    host, _, _, _ = _load(args.host)
    res = minor_search(host, pattern)
    doc = {
        "pattern": args.pattern,
        "host": args.host,
        "found": res.found,
        "witness": res.witness.to_json() if res.found else None,
        "states": res.states,
        "treewidth_prefilter_absent": res.prefilter_absent,
    }
    print(dumps(doc))
    if args.expect is None:
        return OK
    return OK if res.found == (args.expect == "present") else CLAIM_FAILED


# -- report -----------------------------------------------------------------------

REPORT_SPECS = ["base", "g:q=2", "p:c=1;s=1,1,2", "w:1rr-1rr-3rr", "w:1rr-1rr-1rr-1rr-1rr", "nonplanar", "u:1,2,1"]


def cmd_report(args) -> int:
    """Bundles, a summary CSV/JSON, DOT files and drawings for the named instances."""
    from .plotting import draw_graph

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = []
    for spec in args.specs or REPORT_SPECS:
        c = build(spec)
        checks = ("color", "critical", "planar", "quad", "bracket") if c.embedding is not None else ("color", "critical", "planar", "bracket")
        b = verify(c.graph, checks, spec=c.spec, family=c.family, embedding=c.embedding)
        slug = "".join(ch if ch.isalnum() else "_" for ch in c.spec)
        (out / f"{slug}.bundle.json").write_text(dumps(b.to_json()) + "\n")
        (out / f"{slug}.dot").write_text(to_dot(c.graph, c.ghosts))
        draw_graph(c.graph, str(out / f"{slug}.png"), c.ghosts, c.spec)
        row = {"spec": c.spec, "n": c.graph.n, "m": c.graph.m, "sha256": b.digest()}
        row.update({k: v["pass"] for k, v in b.checks.items()})
        rows.append(row)
    fields = ["spec", "n", "m", *CHECKS, "sha256"]
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({f: r.get(f, "") for f in fields})
    (out / "report.csv").write_text(buf.getvalue())
    (out / "report.json").write_text(dumps(rows) + "\n")
    sys.stdout.write(buf.getvalue())
    return OK


# -- entry ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multiwheels", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("construct", help="build a graph from a spec literal")
    c.add_argument("spec")
    c.add_argument("--format", choices=["graph6", "json", "dot"], default="json")
    c.add_argument("--with-embedding", action="store_true")
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="certify claims about a graph (spec, file or '-')")
    v.add_argument("input")
    v.add_argument("--checks", default=",".join(CHECKS))
    v.add_argument("--out")
    v.add_argument("--all-contractions", action="store_true", help="report chi after contracting every edge, not only designated ones")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="verify a whole family within bounds")
    s.add_argument("family", choices=["plane", "grotzsch", "projective"])
    s.add_argument("--qmax", type=int, default=3, help="largest wheel order q per section")
    s.add_argument("--k", type=int, default=3, help="sections per plane multiwheel")
    s.add_argument("--types", default="rr", help="comma list of section types for plane sweeps")
    s.add_argument("--cmax", type=int, default=1, help="largest central q for projective sweeps")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP, help="skip instances with more vertices")
    s.add_argument("--allow-large", action="store_true", help="acknowledge a cap above the default")
    s.add_argument("--checks")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", help="directory for CSV, JSON and PNG output")
    s.set_defaults(func=cmd_sweep)

    e = sub.add_parser("embed", help="validate an embedding document")
    e.add_argument("--check", required=True, metavar="FILE")
    e.set_defaults(func=cmd_embed)

    m = sub.add_parser("minor", help="search for a minor")
    m.add_argument("--pattern", required=True, help="spec literal or file, e.g. O")
    m.add_argument("--host", required=True)
    m.add_argument("--expect", choices=["present", "absent"])
    m.set_defaults(func=cmd_minor)

    r = sub.add_parser("report", help="bundles, tables and figures for named instances")
    r.add_argument("--out", required=True)
    r.add_argument("specs", nargs="*")
    r.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except ConstructionError as exc:
        print(f"construction certificate failed: {exc}", file=sys.stderr)
        return CLAIM_FAILED
    except (InputError, SpecError, GraphError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
