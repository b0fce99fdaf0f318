"""Command-line driver.

Subcommands:

* ``cf <alpha>/<beta>`` -- both continued fraction expansions of a slope.
* ``graph --seifert ...`` / ``cap --seifert ...`` -- text or DOT rendering of
  the plumbing graph and the concave cap.
* ``classify --seifert ... [--budget N] [--format json|dot] [--out DIR]`` --
  run the full classification and write the catalog.
* ``verify <config.json>`` -- re-check a stored configuration.
* ``blowdown-graph <catalog.json>`` -- DOT export of the relation DAG.

Exit codes: 0 success, 1 invalid input, 2 search budget exhausted,
3 verification found violations.

The environment variable ``SFILL_THREADS`` bounds the worker count used for
the per-entry embedding searches.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .blowdown import BlowdownGraph, blowdown_graph_to_dot
from .catalog import Catalog, build_catalog, catalog_from_json, catalog_to_json
from .cfrac import dual_expand, hj_expand
from .curveconfig import CurveConfiguration, verify_configuration
from .enumeration import BudgetExhausted, SearchBudget, ambient_bound
from .plumbing import (
    SeifertData,
    build_concave_cap,
    build_star_graph,
    graph_to_dot,
    graph_to_text,
)


def _parse_seifert(text: str, require_cap: bool = True) -> SeifertData:
    s = SeifertData.parse(text)
    if require_cap and s.b < 4:
        raise ValueError(
            f"b={s.b} < 4: the concave cap needs b - 4 extra (-1) arms, so b >= 4 is required"
        )
    return s


def _cmd_cf(args) -> int:
    try:
        alpha, beta = (int(x) for x in args.slope.split("/"))
        word = hj_expand(alpha, beta)
        dual = dual_expand(alpha, beta)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"{alpha}/{beta} = {word}")
    print(f"dual {alpha}/{alpha - beta} = {dual}")
    return 0


def _cmd_graph(args) -> int:
    try:
        s = _parse_seifert(args.seifert, require_cap=False)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    g = build_star_graph(s)
    if args.dot:
        print(graph_to_dot(g, "plumbing"), end="")
    else:
        print(graph_to_text(g))
    return 0


def _cmd_cap(args) -> int:
    try:
        s = _parse_seifert(args.seifert)
        cap = build_concave_cap(s)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    g = cap.as_graph()
    if args.dot:
        print(graph_to_dot(g, "cap"), end="")
    else:
        text = graph_to_text(g)
        if cap.minus_one_arms:
            text += f" [{cap.minus_one_arms} arms of a single -1 sphere]"
        print(text)
    return 0


def _cmd_classify(args) -> int:
    try:
        s = _parse_seifert(args.seifert)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    budget = SearchBudget(max_ambient_n=args.budget if args.budget else ambient_bound(s))
    try:
        cat = build_catalog(s, budget)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out_dir = Path(args.out) if args.out else None
    text = catalog_to_json(cat)
    if out_dir is None:
        print(text, end="")
    else:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "catalog.json").write_text(text, encoding="utf-8")
        print(f"wrote {out_dir / 'catalog.json'} ({len(cat.entries)} fillings)")
    if args.format == "dot":
        if out_dir is None:
            print("error: --format dot requires --out", file=sys.stderr)
            return 1
        (out_dir / "plumbing.dot").write_text(graph_to_dot(build_star_graph(s), "plumbing"))
        (out_dir / "cap.dot").write_text(graph_to_dot(build_concave_cap(s).as_graph(), "cap"))
        for e in cat.entries:
            (out_dir / f"{e.id}.dot").write_text(e.config.to_dot(e.id))
        graph = BlowdownGraph(
            cat.edges,
            tuple(e.reachable for e in cat.entries),
            next(i for i, e in enumerate(cat.entries) if e.minimal_resolution),
        )
        labels = [e.id for e in cat.entries]
        (out_dir / "blowdowns.dot").write_text(blowdown_graph_to_dot(graph, labels))
    return 0


def _cmd_verify(args) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
        config = CurveConfiguration.from_json(text)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read configuration: {exc}", file=sys.stderr)
        return 1
    report = verify_configuration(config)
    print(report)
    return 0 if report.ok else 3


def _cmd_blowdown_graph(args) -> int:
    try:
        cat: Catalog = catalog_from_json(Path(args.file).read_text(encoding="utf-8"))
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read catalog: {exc}", file=sys.stderr)
        return 1
    graph = BlowdownGraph(
        cat.edges,
        tuple(e.reachable for e in cat.entries),
        next(i for i, e in enumerate(cat.entries) if e.minimal_resolution),
    )
    print(blowdown_graph_to_dot(graph, [e.id for e in cat.entries]), end="")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sfill",
        description="classify minimal symplectic fillings of small Seifert 3-manifolds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cf", help="continued fraction expansions of a slope")
    p.add_argument("slope", help="slope as <alpha>/<beta>")
    p.set_defaults(func=_cmd_cf)

    p = sub.add_parser("graph", help="plumbing graph of the Seifert manifold")
    p.add_argument("--seifert", required=True)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("cap", help="concave cap of the Seifert manifold")
    p.add_argument("--seifert", required=True)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=_cmd_cap)

    p = sub.add_parser("classify", help="enumerate fillings and the blowdown graph")
    p.add_argument("--seifert", required=True)
    p.add_argument("--budget", type=int, default=None, help="ambient blow-up budget N")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out", default=None, help="output directory")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("verify", help="verify a stored configuration file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("blowdown-graph", help="DOT export of a catalog's relation DAG")
    p.add_argument("file")
    p.set_defaults(func=_cmd_blowdown_graph)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
