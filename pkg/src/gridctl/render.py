"""Text, SVG and DOT renderings of reports."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .report import LABELS

CELL = 36
MARGIN = 40
_SHAPES = ("triangle", "cross", "pentagon", "square", "diamond", "circle")
_COLOURS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def _shape(kind: str, cx: float, cy: float, r: float, colour: str) -> str:
    if kind == "cross":
        return (
            f'<path d="M{cx - r},{cy - r} L{cx + r},{cy + r} M{cx - r},{cy + r} L{cx + r},{cy - r}" '
            f'stroke="{colour}" stroke-width="2"/>'
        )
    if kind == "circle":
        return f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="{colour}" stroke-width="2"/>'
    sides = {"triangle": 3, "square": 4, "pentagon": 5, "diamond": 4}[kind]
    rot = math.pi / 4 if kind == "square" else 0.0
    pts = " ".join(
        f"{cx + r * math.sin(2 * math.pi * k / sides + rot):.2f},{cy - r * math.cos(2 * math.pi * k / sides + rot):.2f}"
        for k in range(sides)
    )
    return f'<polygon points="{pts}" fill="none" stroke="{colour}" stroke-width="2"/>'


def partition_svg(report: dict) -> str:
    """Grid drawing, axis 1 running down, axis 2 across; one glyph per line symbol.

    Eigenspace symbols are written as small text labels under the node.
    """
    dims = report["grid"]["dims"]
    rows, cols = dims[0], (dims[1] if len(dims) > 1 else 1)
    line_syms = [s["symbol"] for s in report["legend"] if s["kind"] == "line"]
    style = {s: (_SHAPES[k % len(_SHAPES)], _COLOURS[k % len(_COLOURS)]) for k, s in enumerate(line_syms)}
    legend_h = 18 * (len(report["legend"]) + 1)
    w = 2 * MARGIN + (cols - 1) * CELL
    h = 2 * MARGIN + (rows - 1) * CELL + legend_h
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="9">']
    for r in range(rows):
        y = MARGIN + r * CELL
        out.append(f'<line x1="{MARGIN}" y1="{y}" x2="{MARGIN + (cols - 1) * CELL}" y2="{y}" stroke="#bbb"/>')
    for c in range(cols):
        x = MARGIN + c * CELL
        out.append(f'<line x1="{x}" y1="{MARGIN}" x2="{x}" y2="{MARGIN + (rows - 1) * CELL}" stroke="#bbb"/>')
    for item in report["symbols"]:
        node = item["node"]
        r, c = node[0] - 1, (node[1] - 1 if len(node) > 1 else 0)
        x, y = MARGIN + c * CELL, MARGIN + r * CELL
        out.append(f'<circle cx="{x}" cy="{y}" r="2" fill="#444"><title>{escape(str(node))}</title></circle>')
        glyphs = [s for s in item["symbols"] if s in style]
        for k, s in enumerate(glyphs):
            shape, colour = style[s]
            out.append(_shape(shape, x, y, 6 + 3 * k, colour))
        tags = [s for s in item["symbols"] if s not in style]
        if tags:
            out.append(f'<text x="{x + 3}" y="{y + 12}" fill="#555">{escape(" ".join(tags))}</text>')
    y0 = 2 * MARGIN + (rows - 1) * CELL
    for k, s in enumerate(report["legend"]):
        y = y0 + 18 * k
        if s["symbol"] in style:
            shape, colour = style[s["symbol"]]
            out.append(_shape(shape, MARGIN, y - 3, 6, colour))
        out.append(f'<text x="{MARGIN + 14}" y="{y}">{escape(s["symbol"])}: {escape(s["description"])}</text>')
    out.append("</svg>")
    return "\n".join(out)


def partition_dot(report: dict) -> str:
    dims = report["grid"]["dims"]
    name = lambda node: "n" + "_".join(str(c) for c in node)
    out = [f'graph grid_{"x".join(map(str, dims))} {{', "  node [shape=box, fontsize=10];"]
    for item in report["symbols"]:
        node = item["node"]
        label = ",".join(map(str, node))
        if item["symbols"]:
            label += "\\n" + " ".join(item["symbols"])
        out.append(f'  {name(node)} [label="{label}"];')
    for item in report["symbols"]:
        node = item["node"]
        for axis, n in enumerate(dims):
            if node[axis] < n:
                nb = list(node)
                nb[axis] += 1
                out.append(f"  {name(node)} -- {name(nb)};")
    out.append("}")
    return "\n".join(out)


def analysis_text(report: dict) -> str:
    labels = LABELS[report.get("mode", "controllability")]
    v = report["verdict"]
    lines = [
        f"grid {'x'.join(map(str, report['grid']['dims']))}, nodes {report['nodes']}",
        f"verdict: {v['label']} ({v['method']}: {v['reason']})",
    ]
    if report["common_pairs"]:
        lines.append(f"shared partition tuples: {report['common_pairs']}")
    for e in report["uncontrollable_eigenvalues"]:
        lines.append(f"  {labels['lost']} eigenvalue {e['decimal']}  angles/pi {e['angles']}  multiplicity {e['multiplicity']}")
    if report.get("oracle"):
        o = report["oracle"]
        lines.append(f"oracle: {'agree' if o['agree'] else 'DISAGREE'}; Kalman rank {o['kalman_rank']}")
        lines.extend(f"  {m}" for m in o["messages"])
    return "\n".join(lines)


def spectrum_text(report: dict) -> str:
    lines = [f"grid {'x'.join(map(str, report['grid']['dims']))}: {len(report['eigenvalues'])} distinct eigenvalues"]
    for e in report["eigenvalues"]:
        line = f"  {e['decimal']:>20}  x{e['multiplicity']}  {e['grid_profile']['kind']} {e['grid_profile']['classes']}"
        if e["brick"]:
            b = e["brick"]
            line += f"  brick {'x'.join(map(str, b['dims']))}: {b['profile']['classes']} rule {b['profile']['rule']}"
        lines.append(line)
    return "\n".join(lines)


def partition_text(report: dict) -> str:
    lines = [f"{s['symbol']}: {s['description']}" for s in report["legend"]]
    for item in report["symbols"]:
        if item["symbols"]:
            lines.append(f"  {item['node']}: {' '.join(item['symbols'])}")
    return "\n".join(lines)


def suggest_text(report: dict) -> str:
    nodes = ";".join(",".join(map(str, n)) for n in report["nodes"])
    return f"{' '.join('[' + ','.join(map(str, n)) + ']' for n in report['nodes'])}\n--nodes \"{nodes}\"  ({report['justification']})"


def scan_text(report: dict) -> str:
    lines = [
        f"scanned {report['grids_scanned']} grids up to {'x'.join(map(str, report['max_dims']))}: "
        f"{report['multiple_eigenvalues']} repeated eigenvalues, {report['uninherited']} not carried by a proper brick, "
        f"{report['violations']} violations"
    ]
    for e in report["entries"]:
        if e["uninherited"]:
            tag = "VIOLATION" if e["violation"] else "uninherited, single formal cosine sum"
            lines.append(f"  {'x'.join(map(str, e['dims']))} lambda={e['decimal']} x{e['multiplicity']}: {tag}")
    return "\n".join(lines)
