"""Result bundle assembly plus canonical JSON and DOT serialization."""

from __future__ import annotations

import json

from .labeling import LabeledLattice
from .lattice import SubgroupLattice
from .permgroup import ChiefSeries
from .verify import chains_of_complements, descending_chains

SCHEMA_VERSION = 1


def build_bundle(name: str, lattice: SubgroupLattice, series: ChiefSeries,
                 labeled: LabeledLattice, labeled_dual: LabeledLattice | None,
                 verdicts: dict[str, bool] | None) -> dict:
    """Everything the pipeline produced, keyed by stable subgroup ids."""
    group = lattice.group
    covers = []
    for y in range(len(lattice.nodes)):
        for z in lattice.covers_up[y]:
            row = {"lower": y, "upper": z,
                   "label": list(labeled.edge_labels[(y, z)])}
            if labeled_dual is not None:
                row["label_dual"] = list(labeled_dual.edge_labels[(z, y)])
            covers.append(row)
    bundle = {
        "schema": SCHEMA_VERSION,
        "group": {
            "name": name,
            "order": group.order,
            "degree": group.degree,
            "elements": [p.cycle_string() for p in group.elements],
            "generators": [group.elements[t].cycle_string()
                           for t in group.generator_indices],
        },
        "subgroups": [{"id": t, "order": node.order,
                       "elements": list(node.indices())}
                      for t, node in enumerate(lattice.nodes)],
        "chief_series": list(series.terms),
        "covers": covers,
        "moebius": lattice.moebius[lattice.top],
        "descending_chains": [list(c) for c in descending_chains(labeled)],
        "descending_chains_dual": (
            [list(c) for c in descending_chains(labeled_dual)]
            if labeled_dual is not None else None),
        "complement_chains": [list(c.ids)
                              for c in chains_of_complements(lattice, series)],
        "verdicts": verdicts,
    }
    return bundle


def to_json(bundle: dict) -> str:
    """Canonical form: sorted keys, fixed separators, trailing newline."""
    return json.dumps(bundle, sort_keys=True, indent=2) + "\n"


def to_dot(lattice: SubgroupLattice, labeled: LabeledLattice,
           labeled_dual: LabeledLattice | None = None) -> str:
    """Hasse diagram as a DOT digraph, ranked by subgroup order."""
    lines = ["digraph subgroup_lattice {", "  rankdir=BT;",
             "  node [shape=box];"]
    for t, node in enumerate(lattice.nodes):
        lines.append(f'  s{t} [label="{node.order}:{t}"];')
    by_order: dict[int, list[int]] = {}
    for t, node in enumerate(lattice.nodes):
        by_order.setdefault(node.order, []).append(t)
    for order in sorted(by_order):
        ids = " ".join(f"s{t};" for t in by_order[order])
        lines.append(f"  {{ rank=same; {ids} }}")
    for y in range(len(lattice.nodes)):
        for z in lattice.covers_up[y]:
            i, j = labeled.edge_labels[(y, z)]
            label = f"({i},{j})"
            if labeled_dual is not None:
                di, dj = labeled_dual.edge_labels[(z, y)]
                label += f" | ({di},{dj})"
            lines.append(f'  s{y} -> s{z} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
