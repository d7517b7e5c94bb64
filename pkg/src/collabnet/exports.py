"""Network serialization: canonical edge/node CSV, GEXF 1.3, DOT and JSON.

The edge list is the interchange format: header
``institution_a,institution_b,weight`` with ``institution_a <
institution_b`` lexicographically and rows sorted, so exports are
byte-deterministic and ``read_network(write(...)) == network``. The node
list carries ``institution_id,name,category``. Published edge-list datasets
are loaded through this same path, bypassing corpus ingestion.

GEXF output targets version 1.3 with the visual conventions used for the
collaboration figures: node size proportional to weighted degree and the
category colour legend (business red, government green, higher education
blue, non-profit purple). Data files never embed timestamps.
"""

from __future__ import annotations

import csv
import json
import xml.etree.ElementTree as ET
from pathlib import Path

from .errors import MalformedRow, UnknownInstitution
from .network import CollabNetwork
from .taxonomy import CATEGORY_COLORS, Category

EDGE_HEADER = ("institution_a", "institution_b", "weight")
NODE_HEADER = ("institution_id", "name", "category")

GEXF_NS = "http://gexf.net/1.3"
GEXF_VIZ_NS = "http://gexf.net/1.3/viz"


# --- canonical CSV ------------------------------------------------------------

def write_edge_csv(network: CollabNetwork, out_file: str | Path) -> None:
    with Path(out_file).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(EDGE_HEADER)
        for a, b, w in sorted(network.edges()):
            writer.writerow([a, b, w])


def write_node_csv(network: CollabNetwork, out_file: str | Path) -> None:
    with Path(out_file).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(NODE_HEADER)
        for inst in sorted(network.nodes()):
            writer.writerow([inst, network.name(inst), network.category(inst).value])


def read_network(edges_file: str | Path, nodes_file: str | Path) -> CollabNetwork:
    """Load a network from the canonical edge + node CSV pair."""
    nodes = []
    with Path(nodes_file).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = tuple(h.strip() for h in next(reader, []))
        if header != NODE_HEADER:
            raise MalformedRow(
                f"{nodes_file}: bad header {header!r}, expected {','.join(NODE_HEADER)}"
            )
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3 or not row[0]:
                raise MalformedRow(f"{nodes_file}:{row_no}: bad node row {row!r}")
            nodes.append((row[0], row[1], Category.parse(row[2])))

    edges = []
    with Path(edges_file).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = tuple(h.strip() for h in next(reader, []))
        if header != EDGE_HEADER:
            raise MalformedRow(
                f"{edges_file}: bad header {header!r}, expected {','.join(EDGE_HEADER)}"
            )
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise MalformedRow(f"{edges_file}:{row_no}: bad edge row {row!r}")
            a, b, raw_w = row
            try:
                w = int(raw_w)
            except ValueError:
                raise MalformedRow(
                    f"{edges_file}:{row_no}: weight {raw_w!r} is not an integer"
                ) from None
            edges.append((a, b, w))

    return CollabNetwork.from_parts(nodes, edges)


# --- GEXF ---------------------------------------------------------------------

def write_gexf(network: CollabNetwork, out_file: str | Path) -> None:
    """Write an undirected GEXF 1.3 graph with visual attributes."""
    if network.node_count == 0:
        raise UnknownInstitution("refusing to export an empty network to GEXF")

    ET.register_namespace("", GEXF_NS)
    ET.register_namespace("viz", GEXF_VIZ_NS)
    root = ET.Element(f"{{{GEXF_NS}}}gexf", version="1.3")
    meta = ET.SubElement(root, f"{{{GEXF_NS}}}meta")
    ET.SubElement(meta, f"{{{GEXF_NS}}}creator").text = "collabnet"
    graph = ET.SubElement(
        root, f"{{{GEXF_NS}}}graph", defaultedgetype="undirected", mode="static"
    )
    attrs = ET.SubElement(graph, f"{{{GEXF_NS}}}attributes", **{"class": "node"})
    ET.SubElement(attrs, f"{{{GEXF_NS}}}attribute", id="0", title="category", type="string")
    ET.SubElement(attrs, f"{{{GEXF_NS}}}attribute", id="1", title="weighted_degree", type="long")

    nodes_el = ET.SubElement(graph, f"{{{GEXF_NS}}}nodes")
    for inst in sorted(network.nodes()):
        node_el = ET.SubElement(
            nodes_el, f"{{{GEXF_NS}}}node", id=inst, label=network.name(inst)
        )
        wdeg = network.weighted_degree(inst)
        vals = ET.SubElement(node_el, f"{{{GEXF_NS}}}attvalues")
        ET.SubElement(vals, f"{{{GEXF_NS}}}attvalue", **{"for": "0"},
                      value=network.category(inst).value)
        ET.SubElement(vals, f"{{{GEXF_NS}}}attvalue", **{"for": "1"}, value=str(wdeg))
        r, g, b = CATEGORY_COLORS[network.category(inst)]
        ET.SubElement(node_el, f"{{{GEXF_VIZ_NS}}}color", r=str(r), g=str(g), b=str(b))
        ET.SubElement(node_el, f"{{{GEXF_VIZ_NS}}}size", value=str(float(wdeg)))

    edges_el = ET.SubElement(graph, f"{{{GEXF_NS}}}edges")
    for i, (a, b, w) in enumerate(sorted(network.edges())):
        ET.SubElement(
            edges_el, f"{{{GEXF_NS}}}edge",
            id=str(i), source=a, target=b, weight=str(float(w)),
        )

    tree = ET.ElementTree(root)
    ET.indent(tree)
    tree.write(out_file, encoding="utf-8", xml_declaration=True)


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def read_gexf(gexf_file: str | Path) -> CollabNetwork:
    """Load a network back from a GEXF file written by this module."""
    root = ET.parse(gexf_file).getroot()
    attr_titles: dict[str, str] = {}
    nodes: list[tuple[str, str, Category]] = []
    edges: list[tuple[str, str, int]] = []

    for el in root.iter():
        tag = _local(el.tag)
        if tag == "attribute":
            attr_titles[el.get("id", "")] = el.get("title", "")
        elif tag == "node":
            node_id = el.get("id")
            label = el.get("label", node_id)
            category = None
            for sub in el.iter():
                if _local(sub.tag) == "attvalue" and attr_titles.get(sub.get("for", "")) == "category":
                    category = Category.parse(sub.get("value", ""))
            if node_id is None or category is None:
                raise MalformedRow(f"{gexf_file}: node without id/category attribute")
            nodes.append((node_id, label, category))
        elif tag == "edge":
            a, b = el.get("source"), el.get("target")
            w = int(float(el.get("weight", "1")))
            if a is None or b is None:
                raise MalformedRow(f"{gexf_file}: edge without endpoints")
            edges.append((a, b, w))

    return CollabNetwork.from_parts(nodes, edges)


# --- DOT / JSON ------------------------------------------------------------------

def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def write_dot(network: CollabNetwork, out_file: str | Path) -> None:
    """Graphviz output for quick local rendering."""
    lines = ["graph collaboration {", "  node [style=filled];"]
    for inst in sorted(network.nodes()):
        r, g, b = CATEGORY_COLORS[network.category(inst)]
        lines.append(
            f"  {_dot_quote(inst)} [label={_dot_quote(network.name(inst))}, "
            f'fillcolor="#{r:02x}{g:02x}{b:02x}", '
            f"category={_dot_quote(network.category(inst).value)}];"
        )
    for a, b, w in sorted(network.edges()):
        lines.append(f"  {_dot_quote(a)} -- {_dot_quote(b)} [weight={w}];")
    lines.append("}")
    Path(out_file).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_json(network: CollabNetwork, out_file: str | Path) -> None:
    """Full-fidelity JSON dump (includes subject breakdowns when present)."""
    payload = {
        "schema_version": "1",
        "nodes": [
            {
                "id": inst,
                "name": network.name(inst),
                "category": network.category(inst).value,
                "weighted_degree": network.weighted_degree(inst),
            }
            for inst in sorted(network.nodes())
        ],
        "edges": [
            {
                "source": a,
                "target": b,
                "weight": w,
                **(
                    {"subjects": dict(sorted(network.edge_subjects(a, b).items()))}
                    if network.has_subjects
                    else {}
                ),
            }
            for a, b, w in sorted(network.edges())
        ],
    }
    with Path(out_file).open("w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
