"""The ``atlas`` command line.

Exit codes: 0 success, 1 a guaranteed property failed (or a golden diff
found mismatches), 2 usage or parse error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from pathlib import Path

import jsonschema

from . import __version__
from .actions import (
    automorphism_action,
    component_report,
    conjugation_action,
    render_summary,
    summarize_reports,
)
from .cover import analyze_cover, render_diagram
from .errors import AtlasError, GroupSpecError
from .group import build_named_group, center, parse_group_spec, split_generators
from .surface import (
    AbelianGroupWarning,
    CensusRow,
    GoldenFormatError,
    SurfaceComplex,
    census,
    diff_census,
    export_complex,
    golden_name,
    load_golden,
    render_text,
    rows_to_csv,
)

__all__ = ["main", "build_parser", "census_document", "cache_path", "load_schema"]


def load_schema(name: str) -> dict:
    return json.loads(resources.files("surfatlas.schema").joinpath(f"{name}.schema.json").read_text())


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _jobs(n):
    return n if n and n > 0 else (os.cpu_count() or 1)


def cache_dir() -> Path:
    env = os.environ.get("ATLAS_CACHE_DIR")
    return Path(env) if env else Path.home() / ".cache" / "surfatlas"


def cache_path(spec: str) -> Path:
    key = hashlib.sha256(f"census|{spec}|{__version__}".encode()).hexdigest()
    return cache_dir() / f"{key}.json"


def census_document(label: str, order: int, rows) -> dict:
    return {
        "tool": "surfatlas",
        "version": __version__,
        "group": label,
        "order": order,
        "total_components": sum(r.count for r in rows),
        "distinct_genera": len({r.genus for r in rows}),
        "rows": [r.as_dict() for r in rows],
    }


def _read_cache(spec: str):
    path = cache_path(spec)
    try:
        doc = json.loads(path.read_text())
        jsonschema.validate(doc["document"], load_schema("census"))
    except (OSError, ValueError, KeyError, jsonschema.ValidationError):
        return None
    if doc["document"]["group"] != spec:
        return None
    return doc["document"]


def _write_cache(spec: str, document: dict, seconds: float) -> None:
    path = cache_path(spec)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        # timing lives only in the cache so printed documents stay reproducible
        tmp.write_text(json.dumps({"document": document, "timing": {"seconds": round(seconds, 3)}}))
        tmp.replace(path)
    except OSError:
        pass


def _group(spec_text: str):
    spec = parse_group_spec(spec_text)
    return spec, build_named_group(spec)


def _complex(G) -> SurfaceComplex:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", AbelianGroupWarning)
        cx = SurfaceComplex(G)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return cx


def _census_rows(spec_text: str, use_cache: bool = True):
    spec = parse_group_spec(spec_text)
    label = spec.canonical
    if use_cache:
        doc = _read_cache(label)
        if doc is not None:
            return doc, [CensusRow(**r) for r in doc["rows"]]
    t0 = time.perf_counter()
    G = build_named_group(spec)
    rows = census(_complex(G))
    doc = census_document(label, G.order, rows)
    if use_cache:
        _write_cache(label, doc, time.perf_counter() - t0)
    return doc, rows


def cmd_census(args) -> int:
    doc, rows = _census_rows(args.group, use_cache=not args.no_cache)
    if args.format == "csv":
        text = rows_to_csv(rows)
    elif args.format == "json":
        text = _dump(doc)
    else:
        text = render_text(rows, doc["group"])
    _emit(text, args.out)
    if args.figure:
        from .plotting import plot_genus_distribution

        plot_genus_distribution(rows, args.figure, title=f"{doc['group']}: components by genus")
    return 0


def _kernel_indices(G, text: str) -> list[int]:
    out = []
    for g in split_generators(text):
        g = g.strip()
        try:
            if g.startswith("(") and getattr(G.rep, "kind", "") == "perm":
                out.append(G.index(G.rep.parse(g)))
            else:
                out.append(G.index_of_name(g.replace(" ", "")))
        except (KeyError, ValueError, TypeError, IndexError):
            raise GroupSpecError(f"{g!r} is not an element of {G.label}") from None
    return out


def cmd_cover(args) -> int:
    _, G = _group(args.group)
    N = center(G).tolist() if args.kernel_center else _kernel_indices(G, args.kernel)
    report = analyze_cover(G, N, cxGam=_complex(G), central=args.central)
    if args.format == "json":
        doc = {"tool": "surfatlas", "version": __version__, **report.as_dict()}
        text = _dump(doc)
    else:
        text = render_diagram(report)
    _emit(text, args.out)
    return 0


def cmd_actions(args) -> int:
    _, G = _group(args.group)
    cx = _complex(G)
    action = automorphism_action(G) if args.aut else conjugation_action(G)
    comps = range(cx.n_components)

    def one(c):
        return component_report(cx, c, action, orbits=args.aut)

    with ThreadPoolExecutor(max_workers=_jobs(args.jobs)) as pool:
        reports = list(pool.map(one, comps))
    rows = summarize_reports(reports)
    equal = sum(r.hurwitz_equality for r in reports)
    if args.format == "json":
        doc = {"tool": "surfatlas", "version": __version__, "group": G.label, "action": action.kind,
               "hurwitz_violations": 0, "hurwitz_equalities": equal, "summary": rows,
               "components": [r.as_dict() for r in reports]}
        text = _dump(doc)
    else:
        title = (f"{G.label} - {action.kind} action on {len(reports)} components; Hurwitz bound "
                 f"violations 0, equalities {equal}")
        text = render_summary(rows, title)
    _emit(text, args.out)
    return 0


def cmd_diff_golden(args) -> int:
    doc, rows = _census_rows(args.group, use_cache=not args.no_cache)
    source = args.golden
    if source is None:
        source = golden_name(doc["group"])
        if source is None:
            raise GoldenFormatError(f"no bundled golden table for {doc['group']}; pass a file")
    golden = load_golden(source)
    lines = diff_census(rows, golden)
    if lines:
        sys.stdout.write("\n".join(lines) + "\n")
        sys.stdout.write(f"{doc['group']}: {len(lines)} mismatched rows\n")
        return 1
    sys.stdout.write(f"{doc['group']}: identical, {doc['total_components']} total components, "
                     f"{doc['distinct_genera']} distinct genus values\n")
    return 0


def cmd_export(args) -> int:
    _, G = _group(args.group)
    cx = _complex(G)
    if not 0 <= args.component < cx.n_components:
        print(f"error: component {args.component} out of range 0..{cx.n_components - 1}", file=sys.stderr)
        return 2
    doc = export_complex(cx, args.component)
    _emit(_dump(doc), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="atlas", description="Surface complexes of finite groups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="components grouped by genus and cell structure")
    c.add_argument("group")
    c.add_argument("--format", choices=("text", "csv", "json"), default="text")
    c.add_argument("--out")
    c.add_argument("--figure", help="also write a genus bar chart to this file")
    c.add_argument("--no-cache", action="store_true")
    c.set_defaults(func=cmd_census)

    v = sub.add_parser("cover", help="lift components through an extension")
    v.add_argument("group")
    k = v.add_mutually_exclusive_group(required=True)
    k.add_argument("--kernel", help="generators of the normal subgroup, comma separated")
    k.add_argument("--kernel-center", action="store_true")
    v.add_argument("--central", action="store_true", help="run the central-extension checks")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out")
    v.set_defaults(func=cmd_cover)

    a = sub.add_parser("actions", help="stabilizers and quotient data per component")
    a.add_argument("group")
    a.add_argument("--aut", action="store_true", help="use the automorphism group instead of conjugation")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--out")
    a.add_argument("--jobs", type=int, default=0, help="worker threads (default: all cores)")
    a.set_defaults(func=cmd_actions)

    d = sub.add_parser("diff-golden", help="compare the census with a golden CSV")
    d.add_argument("group")
    d.add_argument("golden", nargs="?")
    d.add_argument("--no-cache", action="store_true")
    d.set_defaults(func=cmd_diff_golden)

    e = sub.add_parser("export", help="write one component as JSON")
    e.add_argument("group")
    e.add_argument("--component", type=int, required=True)
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except AtlasError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
