"""Minimal SVG line charts, written directly so tests can assert on the XML.

Data curves are emitted exclusively as <polyline> elements; axes, ticks and
legend swatches use <line> and <text>.  A curve with gaps (None values)
becomes several polyline segments, one per unbroken run.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

WIDTH = 880
HEIGHT = 440
MARGIN_LEFT = 60
MARGIN_RIGHT = 150
MARGIN_TOP = 20
MARGIN_BOTTOM = 50

Y_MIN = -1.05
Y_MAX = 1.05


class Curve:
    """One named line: (t, value) points where value None marks a gap."""

    def __init__(self, label: str, color: str, points):
        self.label = label
        self.color = color
        self.points = list(points)

    def segments(self):
        """Unbroken runs of defined points."""
        run = []
        for t, v in self.points:
            if v is None:
                if run:
                    yield run
                    run = []
            else:
                run.append((t, v))
        if run:
            yield run


def _x_scale(t, t_min, t_max):
    span = max(t_max - t_min, 1)
    frac = (t - t_min) / span
    return MARGIN_LEFT + frac * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)


def _y_scale(v):
    frac = (v - Y_MIN) / (Y_MAX - Y_MIN)
    return HEIGHT - MARGIN_BOTTOM - frac * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)


def render_chart(curves, x_label: str = "t", y_label: str = "correlation") -> str:
    """Render curves to an SVG document string."""
    all_t = [t for c in curves for t, _ in c.points]
    t_min = min(all_t) if all_t else 1
    t_max = max(all_t) if all_t else 1

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(WIDTH),
        height=str(HEIGHT),
        viewBox=f"0 0 {WIDTH} {HEIGHT}",
    )
    ET.SubElement(svg, "rect", x="0", y="0", width=str(WIDTH), height=str(HEIGHT), fill="white")

    x0 = MARGIN_LEFT
    x1 = WIDTH - MARGIN_RIGHT
    y0 = HEIGHT - MARGIN_BOTTOM
    y1 = MARGIN_TOP

    def add_line(xa, ya, xb, yb, color="black", width="1", dash=None):
        attrs = {
            "x1": f"{xa:.2f}", "y1": f"{ya:.2f}",
            "x2": f"{xb:.2f}", "y2": f"{yb:.2f}",
            "stroke": color, "stroke-width": width,
        }
        if dash:
            attrs["stroke-dasharray"] = dash
        ET.SubElement(svg, "line", attrs)

    def add_text(x, y, s, anchor="middle", size="13"):
        el = ET.SubElement(
            svg, "text",
            {"x": f"{x:.2f}", "y": f"{y:.2f}", "text-anchor": anchor,
             "font-size": size, "font-family": "sans-serif"},
        )
        el.text = s

    # frame and zero line
    add_line(x0, y0, x1, y0)
    add_line(x0, y0, x0, y1)
    add_line(x0, _y_scale(0.0), x1, _y_scale(0.0), color="#bbbbbb", dash="4,4")

    # y ticks at -1, 0, 1; x ticks at the ends and midpoint
    for v in (-1.0, 0.0, 1.0):
        y = _y_scale(v)
        add_line(x0 - 4, y, x0, y)
        add_text(x0 - 8, y + 4, f"{v:g}", anchor="end", size="11")
    for t in sorted({t_min, (t_min + t_max) // 2, t_max}):
        x = _x_scale(t, t_min, t_max)
        add_line(x, y0, x, y0 + 4)
        add_text(x, y0 + 16, f"{t:g}", size="11")

    add_text((x0 + x1) / 2, HEIGHT - 10, x_label)
    add_text(16, (y0 + y1) / 2, y_label, size="13")

    for curve in curves:
        for seg in curve.segments():
            pts = " ".join(
                f"{_x_scale(t, t_min, t_max):.2f},{_y_scale(v):.2f}" for t, v in seg
            )
            ET.SubElement(
                svg, "polyline",
                {"points": pts, "fill": "none",
                 "stroke": curve.color, "stroke-width": "1.5"},
            )

    legend_x = x1 + 12
    legend_y = y1 + 12
    for i, curve in enumerate(curves):
        y = legend_y + 18 * i
        add_line(legend_x, y, legend_x + 22, y, color=curve.color, width="2")
        add_text(legend_x + 28, y + 4, curve.label, anchor="start", size="12")

    return ET.tostring(svg, encoding="unicode", xml_declaration=True)
