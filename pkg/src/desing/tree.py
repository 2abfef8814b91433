"""Chart trees, global exceptional divisors, and DOT/JSON export.

JSON is the lossless persistence format (``load_tree(export_tree(t, ..., "json"))``
reproduces ``t``); DOT output is for rendering with graphviz.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any

from .algebra import FieldSpec, PolyRing, parse_polynomial
from .blowup import Center, Chart, ExceptionalDivisor
from .errors import DesingError, PreconditionError
from .invariant import ResolutionInvariant

FORMAT_TAG = "desing-chart-tree"
FORMAT_VERSION = 1


@dataclass
class ChartTree:
    """All charts of one resolution run, indexed by ``Chart.id``.

    Edges are implied by ``Chart.parent``; the edge label is the dimension of
    the blow-up center.  ``invariants`` optionally records the resolution
    invariant of each chart (binomial runs).
    """

    charts: list[Chart] = field(default_factory=list)
    mode: str = "generic"
    info: dict[str, Any] = field(default_factory=dict)
    invariants: dict[int, ResolutionInvariant] = field(default_factory=dict)

    def add(self, chart: Chart) -> Chart:
        chart = replace(chart, id=len(self.charts))
        if chart.parent is None and self.charts:
            raise PreconditionError("only the first chart may be a root")
        if chart.parent is not None and not 0 <= chart.parent < len(self.charts):
            raise PreconditionError(f"unknown parent {chart.parent}")
        self.charts.append(chart)
        return chart

    def mark_final(self, chart_id: int, note: str | None = None) -> Chart:
        c = replace(self.charts[chart_id], final=True, note=note or self.charts[chart_id].note)
        self.charts[chart_id] = c
        return c

    @property
    def root(self) -> Chart:
        return self.charts[0]

    def __len__(self):
        return len(self.charts)

    def __getitem__(self, i: int) -> Chart:
        return self.charts[i]

    def children(self, chart_id: int) -> list[Chart]:
        return [c for c in self.charts if c.parent == chart_id]

    def edges(self) -> list[tuple[int, int, int]]:
        return [(c.parent, c.id, c.center_dim) for c in self.charts if c.parent is not None]

    def finals(self) -> list[Chart]:
        """The final charts (the resolved pieces)."""
        return [c for c in self.charts if c.final]

    def leaves(self) -> list[Chart]:
        parents = {c.parent for c in self.charts}
        return [c for c in self.charts if c.id not in parents]

    def blowup_count(self) -> int:
        return len({c.parent for c in self.charts if c.parent is not None})

    def path(self, chart_id: int) -> list[Chart]:
        out = []
        cur: int | None = chart_id
        while cur is not None:
            out.append(self.charts[cur])
            cur = self.charts[cur].parent
        return out[::-1]

    def skeleton(self) -> tuple:
        """Shape, centers and edge labels, ignoring coefficients."""
        return tuple(
            (c.id, c.parent, c.center.variables if c.center else None, c.center_dim, c.chart_variable, c.final)
            for c in self.charts
        )

    def validate(self) -> None:
        if not self.charts:
            raise DesingError("empty chart tree")
        root = self.charts[0]
        if root.parent is not None or root.exceptional:
            raise DesingError("root chart must have no parent and no exceptional divisors")
        if list(root.images) != root.ring.gens():
            raise DesingError("root images must be the identity")
        for i, c in enumerate(self.charts):
            if c.id != i:
                raise DesingError(f"chart {i} carries id {c.id}")
            if i and not (c.parent is not None and 0 <= c.parent < i):
                raise DesingError(f"chart {i} has invalid parent {c.parent}")


@dataclass
class DivisorTable:
    """Global exceptional divisors ``E_1, E_2, ...`` (one per blow-up step).

    ``classes`` maps a label to the list of ``(chart id, entry index)`` pairs
    whose exceptional entries belong to it; ``visible`` maps each chart id to
    the labels visible there.
    """

    births: dict[str, int] = field(default_factory=dict)
    classes: dict[str, list[tuple[int, int]]] = field(default_factory=dict)
    visible: dict[int, list[str]] = field(default_factory=dict)

    def __len__(self):
        return len(self.classes)

    def label_of(self, birth: int) -> str:
        for label, b in self.births.items():
            if b == birth:
                return label
        raise KeyError(birth)


def collect_divisors(tree: ChartTree) -> DivisorTable:
    """Group per-chart exceptional entries by the blow-up step that created them."""
    births = sorted({d.birth for c in tree.charts for d in c.exceptional})
    table = DivisorTable()
    for n, b in enumerate(births, 1):
        table.births[f"E{n}"] = b
        table.classes[f"E{n}"] = []
    label = {b: f"E{n}" for n, b in enumerate(births, 1)}
    for c in tree.charts:
        seen = []
        for j, d in enumerate(c.exceptional):
            table.classes[label[d.birth]].append((c.id, j))
            seen.append(label[d.birth])
        table.visible[c.id] = sorted(set(seen), key=lambda s: int(s[1:]))
    return table


# -- export ----------------------------------------------------------------

def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(tree: ChartTree, table: DivisorTable | None = None) -> str:
    table = table or collect_divisors(tree)
    lines = ["digraph resolution {", "  node [shape=box, fontname=\"Helvetica\"];"]
    for c in tree.charts:
        vis = ", ".join(table.visible.get(c.id, []))
        label = f"{c.id}\\nE={{{vis}}}"
        attrs = [f'label="{_dot_escape(label)}"']
        if c.final:
            attrs += ["peripheries=2", 'style="bold"']
        lines.append(f"  c{c.id} [{', '.join(attrs)}];")
    for parent, child, d in tree.edges():
        lines.append(f'  c{parent} -> c{child} [label="d={d}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _chart_to_json(c: Chart, table: DivisorTable, inv: ResolutionInvariant | None) -> dict:
    return {
        "id": c.id,
        "parent": c.parent,
        "variables": list(c.ring.variables),
        "ideal": [str(g) for g in c.ideal],
        "images": [str(g) for g in c.images],
        "exceptional": [
            {"generator": str(d.generator), "birth": d.birth, "class": table.label_of(d.birth)}
            for d in c.exceptional
        ],
        "center": list(c.center.variables) if c.center else None,
        "center_ambient_dim": c.center.ambient_dim if c.center else None,
        "center_dim": c.center_dim,
        "chart_variable": c.chart_variable,
        "translation": [str(a) for a in c.translation] if c.translation is not None else None,
        "final": c.final,
        "note": c.note,
        "invariant": inv.to_json() if inv is not None else None,
    }


def to_json(tree: ChartTree, table: DivisorTable | None = None) -> str:
    table = table or collect_divisors(tree)
    root = tree.root
    doc = {
        "format": FORMAT_TAG,
        "version": FORMAT_VERSION,
        "mode": tree.mode,
        "characteristic": root.ring.field.characteristic,
        "source_variables": list(root.source.variables),
        "info": tree.info,
        "nodes": [_chart_to_json(c, table, tree.invariants.get(c.id)) for c in tree.charts],
        "edges": [{"parent": p, "child": ch, "d": d} for p, ch, d in tree.edges()],
        "divisors": [
            {"label": lab, "birth": table.births[lab], "entries": [list(e) for e in entries]}
            for lab, entries in table.classes.items()
        ],
        "finals": [c.id for c in tree.finals()],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def export_tree(tree: ChartTree, table: DivisorTable | None = None, format: str = "json") -> str:
    if format == "json":
        return to_json(tree, table)
    if format == "dot":
        return to_dot(tree, table)
    if format == "text":
        return to_text(tree)
    raise PreconditionError(f"unknown export format {format!r} (expected dot, json or text)")


def to_text(tree: ChartTree) -> str:
    from .blowup import show_chart

    parts = []
    for c in tree.charts:
        head = f"// chart {c.id}"
        if c.parent is not None:
            head += f" (parent {c.parent}, center {c.center}, d={c.center_dim})"
        if c.final:
            head += " [final]"
        if c.note:
            head += f" [{c.note}]"
        parts.append(head + "\n" + show_chart(c))
    return "\n\n".join(parts) + "\n"


def load_tree(text: str) -> ChartTree:
    """Inverse of the JSON export."""
    doc = json.loads(text)
    if doc.get("format") != FORMAT_TAG:
        raise PreconditionError("not a chart-tree JSON document")
    fld = FieldSpec(doc["characteristic"])
    source = PolyRing(tuple(doc["source_variables"]), fld)
    tree = ChartTree(mode=doc["mode"], info=doc.get("info", {}))
    for node in doc["nodes"]:
        ring = PolyRing(tuple(node["variables"]), fld)
        center = None
        if node["center"] is not None:
            center = Center(tuple(node["center"]), node["center_ambient_dim"])
        translation = None
        if node["translation"] is not None:
            translation = tuple(fld.coerce(Fraction(a)) for a in node["translation"])
        chart = Chart(
            ring=ring,
            ideal=tuple(parse_polynomial(g, ring) for g in node["ideal"]),
            images=tuple(parse_polynomial(g, ring) for g in node["images"]),
            source=source,
            exceptional=tuple(
                ExceptionalDivisor(parse_polynomial(d["generator"], ring), d["birth"])
                for d in node["exceptional"]
            ),
            id=node["id"],
            parent=node["parent"],
            center=center,
            center_dim=node["center_dim"],
            chart_variable=node["chart_variable"],
            translation=translation,
            final=node["final"],
            note=node["note"],
        )
        tree.charts.append(chart)
        if node.get("invariant") is not None:
            tree.invariants[chart.id] = ResolutionInvariant.from_json(node["invariant"])
    tree.validate()
    return tree
