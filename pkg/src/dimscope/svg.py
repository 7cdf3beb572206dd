"""Static SVG 1.1 export of a view: PCP panels on the left, graph on the right."""

from __future__ import annotations

from xml.sax.saxutils import escape

PALETTE = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628",
    "#f781bf", "#17becf", "#bcbd22", "#8c564b", "#00a0a0", "#666600",
]
NEUTRAL = "#999999"

PANEL_W = 640
PANEL_H = 200
PANEL_PAD = 46
GRAPH_SIZE = 430
MARGIN = 24


def _color(index: int) -> str:
    if index is None or index < 0:
        return NEUTRAL
    return PALETTE[index % len(PALETTE)]


def _panel_svg(panel: dict, x0: float, y0: float, opacity: float) -> list[str]:
    parts = [f'<g id="{panel["id"]}">']
    axes = panel["axes"]
    n = len(axes)
    xs = [x0 + (PANEL_W * i / max(n - 1, 1)) for i in range(n)]
    if n == 1:
        xs = [x0 + PANEL_W / 2]

    prov = panel.get("provenance", {})
    if prov.get("kind") == "rules":
        caption = f'label: {prov.get("label")}'
    else:
        caption = f'cliques: {len(prov.get("cliques", []))}'
    parts.append(
        f'<text x="{x0}" y="{y0 - 26}" font-size="12" fill="#333">{escape(panel["id"])} ({escape(caption)})</text>'
    )

    colors = panel["colors"]
    for li, line in enumerate(panel["lines"]):
        stroke = _color(colors[li] if li < len(colors) else None)
        run: list[str] = []
        for i, v in enumerate(line):
            if v is None:
                if len(run) >= 2:
                    parts.append(
                        f'<polyline class="polyline" points="{" ".join(run)}" fill="none" '
                        f'stroke="{stroke}" stroke-opacity="{opacity:g}" stroke-width="1"/>'
                    )
                run = []
                continue
            y = y0 + (1.0 - v) * PANEL_H
            run.append(f"{xs[i]:.2f},{y:.2f}")
        if len(run) >= 2:
            parts.append(
                f'<polyline class="polyline" points="{" ".join(run)}" fill="none" '
                f'stroke="{stroke}" stroke-opacity="{opacity:g}" stroke-width="1"/>'
            )

    for i, axis in enumerate(axes):
        x = xs[i]
        parts.append(
            f'<line class="axis" id="{panel["id"]}-axis-{axis["dim"]}" '
            f'x1="{x:.2f}" y1="{y0}" x2="{x:.2f}" y2="{y0 + PANEL_H}" stroke="#222" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{y0 - 6}" font-size="10" text-anchor="middle" fill="#222">'
            f"{escape(str(axis['label']))}</text>"
        )
        parts.append(
            f'<text x="{x:.2f}" y="{y0 + PANEL_H + 12}" font-size="9" text-anchor="middle" fill="#555">'
            f"{axis['vmin']:.4g} .. {axis['vmax']:.4g}</text>"
        )
    parts.append("</g>")
    return parts


def render_view_svg(view: dict, title: str | None = None) -> str:
    """Whole-window snapshot of one ViewModel as standalone SVG."""
    panels = view.get("panels", [])
    opacity = float(view.get("opacity", 0.5))
    panel_block_h = PANEL_H + 2 * PANEL_PAD
    left_h = max(len(panels) * panel_block_h, GRAPH_SIZE + 2 * MARGIN)
    width = MARGIN + PANEL_W + 2 * MARGIN + GRAPH_SIZE + MARGIN
    height = left_h + 2 * MARGIN + 20

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{MARGIN}" y="16" font-size="13" fill="#000">{escape(title)}</text>')

    y = MARGIN + PANEL_PAD + 20
    for panel in panels:
        parts.extend(_panel_svg(panel, MARGIN, y, opacity))
        y += panel_block_h
    if not panels:
        msg = view.get("advisory") or "no panels at the current thresholds"
        parts.append(f'<text x="{MARGIN}" y="{MARGIN + 40}" font-size="12" fill="#666">{escape(msg)}</text>')

    graph = view.get("graph", {})
    gx = MARGIN + PANEL_W + 2 * MARGIN
    gy = MARGIN + 20
    parts.append(f'<g id="dimension-graph" transform="translate({gx},{gy})">')
    parts.append(f'<rect width="{GRAPH_SIZE}" height="{GRAPH_SIZE}" fill="#fafafa" stroke="#ccc"/>')
    positions = graph.get("positions", {})

    def at(dim) -> tuple[float, float]:
        x, yy = positions[str(dim)]
        return x * GRAPH_SIZE, (1.0 - yy) * GRAPH_SIZE

    for a, b in graph.get("edges", []):
        xa, ya = at(a)
        xb, yb = at(b)
        parts.append(
            f'<line class="edge" x1="{xa:.2f}" y1="{ya:.2f}" x2="{xb:.2f}" y2="{yb:.2f}" '
            f'stroke="#7aa0c4" stroke-width="1"/>'
        )
    for dim in graph.get("dims", []):
        x, yy = at(dim)
        parts.append(f'<circle class="dot" id="dot-{dim}" cx="{x:.2f}" cy="{yy:.2f}" r="3" fill="#20445e"/>')
    caption = f"hidden: {graph.get('hidden_count', 0)}  stress: {graph.get('stress', 0.0):.4f}"
    parts.append(
        f'<text x="0" y="{GRAPH_SIZE + 14}" font-size="11" fill="#333">{escape(caption)}</text>'
    )
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts)
