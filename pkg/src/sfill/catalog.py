"""Catalog assembly and persistence.

A catalog records the full classification run for one Seifert manifold:
every filling configuration, its second Betti number, the blowdown relation
edges, and reachability from the minimal resolution.  Serialization is
deterministic (sorted keys, stable entry order) so identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import __version__
from .blowdown import BlowdownEdge, BlowdownGraph, blowdown_graph
from .curveconfig import CurveConfiguration
from .enumeration import SearchBudget, ambient_bound, enumerate_fillings
from .plumbing import BlowdownTemplate, SeifertData, c_pq, gamma_pqr


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    config: CurveConfiguration
    b2_filling: int
    minimal_resolution: bool
    reachable: bool


@dataclass(frozen=True)
class Catalog:
    seifert: SeifertData
    budget: SearchBudget
    entries: tuple[CatalogEntry, ...]
    edges: tuple[BlowdownEdge, ...]
    version: str = __version__
    schema: int = 1


def build_catalog(s: SeifertData, budget: SearchBudget | None = None) -> Catalog:
    budget = budget or SearchBudget(max_ambient_n=ambient_bound(s))
    configs = enumerate_fillings(s, budget)
    graph: BlowdownGraph = blowdown_graph(configs)
    entries = []
    for i, c in enumerate(configs):
        cap_components = c.cap.component_count
        entries.append(
            CatalogEntry(
                id=f"W{i + 1}",
                config=c,
                b2_filling=(1 + c.n) - cap_components,
                minimal_resolution=(i == graph.minimal_resolution),
                reachable=graph.reachable[i],
            )
        )
    return Catalog(s, budget, tuple(entries), graph.edges)


def _config_doc(c: CurveConfiguration) -> dict:
    return {
        "ambient_N": c.n,
        "strands": [
            {"l": s.hclass.l, "e": list(s.hclass.e), "role": str(s.role)} for s in c.strands
        ],
    }


def catalog_to_json(cat: Catalog) -> str:
    doc = {
        "schema": cat.schema,
        "version": cat.version,
        "seifert": str(cat.seifert),
        "budget": {
            "max_ambient_N": cat.budget.max_ambient_n,
            "max_branches": cat.budget.max_branches,
        },
        "entries": [
            {
                "id": e.id,
                "ambient_N": e.config.n,
                "b2_W": e.b2_filling,
                "minimal_resolution": e.minimal_resolution,
                "reachable": e.reachable,
                "config": _config_doc(e.config),
            }
            for e in cat.entries
        ],
        "edges": [
            {
                "source": cat.entries[e.source].id,
                "target": cat.entries[e.target].id,
                "family": e.template.family,
                "params": list(e.template.params),
            }
            for e in cat.edges
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def catalog_from_json(text: str) -> Catalog:
    doc = json.loads(text)
    s = SeifertData.parse(doc["seifert"])
    budget = SearchBudget(doc["budget"]["max_ambient_N"], doc["budget"]["max_branches"])
    ids = {}
    entries = []
    for i, ed in enumerate(doc["entries"]):
        cfg = CurveConfiguration.from_json(
            json.dumps({"ambient_N": ed["ambient_N"], "strands": ed["config"]["strands"], "seifert": doc["seifert"]})
        )
        ids[ed["id"]] = i
        entries.append(
            CatalogEntry(ed["id"], cfg, ed["b2_W"], ed["minimal_resolution"], ed["reachable"])
        )
    edges = tuple(
        BlowdownEdge(ids[ed["source"]], ids[ed["target"]], _template(ed["family"], ed["params"]))
        for ed in doc["edges"]
    )
    return Catalog(s, budget, tuple(entries), edges, version=doc["version"], schema=doc["schema"])


def _template(family: str, params) -> BlowdownTemplate:
    if family in ("C_p", "C_pq"):
        p, q = (params[0], 1) if len(params) == 1 else params
        return c_pq(p, q)
    if family == "Gamma_pqr":
        return gamma_pqr(*params)
    raise ValueError(f"unknown template family {family!r}")
