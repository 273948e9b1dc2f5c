"""Minimal hand-rolled SVG emitters: scatter plots and line charts.

Data fidelity rule: every plotted point carries data-x/data-y attributes
holding exactly the strings written to the CSV companion, so the two
outputs can be compared as multisets without float re-parsing drama.
"""

from dataclasses import dataclass, field
from xml.sax.saxutils import escape


def fmt(v):
    """Canonical numeric formatting shared by CSV and SVG outputs."""
    return f"{float(v):.12g}"


@dataclass
class SvgScatter:
    """Scatter plot with an iteration-index color channel.

    points are (x, y, index) triples; index -1 draws neutral gray.
    """

    width: int = 640
    height: int = 480
    radius: float = 1.6
    margin: int = 40
    title: str = ""
    meta: str = ""
    points: list = field(default_factory=list)
    polylines: list = field(default_factory=list)  # (label, [(x, y)]) pairs
    hlines: list = field(default_factory=list)  # y values for reference lines

    def add(self, x, y, index=-1):
        self.points.append((float(x), float(y), index))

    def _ranges(self):
        xs = [p[0] for p in self.points]
        ys = [p[1] for p in self.points]
        for _, pts in self.polylines:
            xs.extend(p[0] for p in pts)
            ys.extend(p[1] for p in pts)
        ys.extend(self.hlines)
        if not xs:
            xs, ys = [0.0, 1.0], [0.0, 1.0]
        lo_x, hi_x = min(xs), max(xs)
        lo_y, hi_y = min(ys), max(ys)
        if lo_x == hi_x:
            lo_x, hi_x = lo_x - 1, hi_x + 1
        if lo_y == hi_y:
            lo_y, hi_y = lo_y - 1, hi_y + 1
        return lo_x, hi_x, lo_y, hi_y

    def render(self):
        lo_x, hi_x, lo_y, hi_y = self._ranges()
        w, h, m = self.width, self.height, self.margin

        def sx(x):
            return m + (x - lo_x) / (hi_x - lo_x) * (w - 2 * m)

        def sy(y):
            return h - m - (y - lo_y) / (hi_y - lo_y) * (h - 2 * m)

        max_idx = max((p[2] for p in self.points), default=0)
        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" '
            f'height="{h}" viewBox="0 0 {w} {h}">',
            f"<!-- {escape(self.meta)} -->" if self.meta else "<!-- -->",
            f'<rect width="{w}" height="{h}" fill="white"/>',
            f'<rect x="{m}" y="{m}" width="{w - 2 * m}" height="{h - 2 * m}" '
            'fill="none" stroke="black" stroke-width="1"/>',
        ]
        if self.title:
            out.append(f'<text x="{w // 2}" y="{m - 12}" text-anchor="middle" '
                       f'font-size="13">{escape(self.title)}</text>')
        for corner, x, y, anch in (
            (lo_x, m, h - m + 14, "middle"),
            (hi_x, w - m, h - m + 14, "middle"),
        ):
            out.append(f'<text x="{x}" y="{y}" text-anchor="{anch}" '
                       f'font-size="10">{fmt(corner)}</text>')
        for val, ypos in ((lo_y, h - m), (hi_y, m)):
            out.append(f'<text x="{m - 4}" y="{ypos}" text-anchor="end" '
                       f'font-size="10">{fmt(val)}</text>')
        for yref in self.hlines:
            yy = fmt(sy(yref))
            out.append(f'<line x1="{m}" y1="{yy}" x2="{w - m}" y2="{yy}" '
                       'stroke="gray" stroke-dasharray="5,4" stroke-width="1"/>')
        palette = ("#1f6fb2", "#c2422a", "#3a8f3d", "#8050a0", "#a58020")
        for li, (label, pts) in enumerate(self.polylines):
            coords = " ".join(f"{fmt(sx(x))},{fmt(sy(y))}" for x, y in pts)
            color = palette[li % len(palette)]
            out.append(f'<polyline points="{coords}" fill="none" '
                       f'stroke="{color}" stroke-width="1.5"/>')
            if label and pts:
                lx, ly = pts[-1]
                out.append(f'<text x="{fmt(sx(lx) + 4)}" y="{fmt(sy(ly))}" '
                           f'font-size="10" fill="{color}">'
                           f"{escape(label)}</text>")
        for x, y, idx in self.points:
            if idx >= 0 and max_idx > 0:
                hue = int(240 * idx / max_idx)
                fill = f"hsl({hue},70%,45%)"
            elif idx >= 0:
                fill = "hsl(240,70%,45%)"
            else:
                fill = "#555555"
            out.append(
                f'<circle cx="{fmt(sx(x))}" cy="{fmt(sy(y))}" '
                f'r="{self.radius}" fill="{fill}" fill-opacity="0.7" '
                f'data-x="{fmt(x)}" data-y="{fmt(y)}" data-i="{idx}"/>'
            )
        out.append("</svg>")
        return "\n".join(out) + "\n"
