"""SVG and CSV pictures of compact containment and cutdowns.

Drawings are deterministic: the same instance always yields the same bytes.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from .cuntz import way_below_epsilon
from .instances import Instance
from .plfunc import PLFunction, cutdown, evaluate, superlevel
from .region import Region, closure, product, relative_closure


class RenderError(ValueError):
    pass


COLORS = {
    "K": "#e6e6e6",
    "V": "#1f4e9a",
    "U": "#7fb3e6",
    "clU": "#c0392b",
    "f": "#1f4e9a",
    "g": "#2e8b57",
    "level": "#c0392b",
}


def _num(x) -> str:
    return f"{float(x):.4f}".rstrip("0").rstrip(".")


class SVG:
    def __init__(self, width: int = 480, height: int = 320, margin: int = 30):
        self.width, self.height, self.margin = width, height, margin
        self.items: list[str] = []
        self.bounds = None

    def frame(self, x0, x1, y0, y1):
        if x1 == x0:
            x0, x1 = x0 - 1, x1 + 1
        if y1 == y0:
            y0, y1 = y0 - 1, y1 + 1
        self.bounds = (Fraction(x0), Fraction(x1), Fraction(y0), Fraction(y1))

    def px(self, x) -> Fraction:
        x0, x1, _, _ = self.bounds
        return self.margin + (Fraction(x) - x0) * (self.width - 2 * self.margin) / (x1 - x0)

    def py(self, y) -> Fraction:
        _, _, y0, y1 = self.bounds
        return self.height - self.margin - (Fraction(y) - y0) * (self.height - 2 * self.margin) / (y1 - y0)

    def rect(self, x0, y0, x1, y1, fill="none", stroke="none", dash=False, opacity=1.0, width=1.5):
        ax, bx = sorted((self.px(x0), self.px(x1)))
        ay, by = sorted((self.py(y0), self.py(y1)))
        extra = ' stroke-dasharray="6,4"' if dash else ""
        self.items.append(
            f'<rect x="{_num(ax)}" y="{_num(ay)}" width="{_num(bx - ax)}" height="{_num(by - ay)}" '
            f'fill="{fill}" fill-opacity="{opacity}" stroke="{stroke}" stroke-width="{width}"{extra}/>'
        )

    def line(self, x0, y0, x1, y1, stroke="#000", dash=False, width=1.5):
        extra = ' stroke-dasharray="6,4"' if dash else ""
        self.items.append(
            f'<line x1="{_num(self.px(x0))}" y1="{_num(self.py(y0))}" x2="{_num(self.px(x1))}" '
            f'y2="{_num(self.py(y1))}" stroke="{stroke}" stroke-width="{width}"{extra}/>'
        )

    def polyline(self, pts, stroke="#000", width=2):
        path = " ".join(f"{_num(self.px(x))},{_num(self.py(y))}" for x, y in pts)
        self.items.append(f'<polyline points="{path}" fill="none" stroke="{stroke}" stroke-width="{width}"/>')

    def dot(self, x, y, color, hollow=False, r=4):
        fill = "#ffffff" if hollow else color
        self.items.append(
            f'<circle cx="{_num(self.px(x))}" cy="{_num(self.py(y))}" r="{r}" fill="{fill}" stroke="{color}" stroke-width="1.5"/>'
        )

    def text(self, x, y, s, size=12):
        self.items.append(f'<text x="{_num(self.px(x))}" y="{_num(self.py(y))}" font-size="{size}" font-family="sans-serif">{s}</text>')

    def dumps(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">\n'
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="#ffffff"/>\n'
        )
        return head + "\n".join(self.items) + "\n</svg>\n"


def _extent(regions, axis: int):
    vals = [v for r in regions for c in (r.coords[axis],) for v in c]
    if not vals:
        return Fraction(0), Fraction(1)
    lo, hi = min(vals), max(vals)
    pad = (hi - lo) / 10 if hi > lo else Fraction(1)
    return lo - pad, hi + pad


def _clip(v, lo, hi):
    if isinstance(v, float):
        return lo if v < 0 else hi
    return v


def _draw_interval_row(svg: SVG, region: Region, y, color, x0, x1):
    for (iv,) in region.boxes:
        lo, hi = _clip(iv.lo, x0, x1), _clip(iv.hi, x0, x1)
        svg.line(lo, y, hi, y, stroke=color, width=5)
        if not isinstance(iv.lo, float):
            svg.dot(iv.lo, y, color, hollow=iv.lo_open)
        if not isinstance(iv.hi, float) and iv.hi != iv.lo:
            svg.dot(iv.hi, y, color, hollow=iv.hi_open)


def _draw_regions_2d(svg: SVG, layers):
    x0, x1, y0, y1 = svg.bounds
    for region, style in layers:
        for bx in region.boxes:
            a, b = bx
            svg.rect(_clip(a.lo, x0, x1), _clip(b.lo, y0, y1), _clip(a.hi, x0, x1), _clip(b.hi, y0, y1), **style)


def render_regions(u: Region, v: Region, k: Region) -> str:
    """U shaded, closure of U outlined, V dashed, K as the gray backdrop."""
    cl = relative_closure(u, k)
    regions = [u, v, k, cl]
    if k.dim == 1:
        svg = SVG(height=200)
        x0, x1 = _extent(regions, 0)
        svg.frame(x0, x1, 0, 5)
        rows = [("K", k, 4), ("V", v, 3), ("U", u, 2), ("cl U", cl, 1)]
        for name, region, y in rows:
            key = "clU" if name == "cl U" else name
            color = "#999999" if key == "K" else COLORS[key]
            svg.text(x0, y + Fraction(1, 5), name)
            _draw_interval_row(svg, region, y, color, x0, x1)
        return svg.dumps()
    if k.dim == 2:
        svg = SVG(width=420, height=420)
        x0, x1 = _extent(regions, 0)
        y0, y1 = _extent(regions, 1)
        svg.frame(x0, x1, y0, y1)
        _draw_regions_2d(
            svg,
            [
                (k, {"fill": COLORS["K"]}),
                (u, {"fill": COLORS["U"], "opacity": 0.8}),
                (cl, {"stroke": COLORS["clU"], "width": 1}),
                (v, {"stroke": COLORS["V"], "dash": True}),
            ],
        )
        return svg.dumps()
    raise RenderError("only 1D and 2D regions can be drawn")


def render_function(f: PLFunction, eps=None, g: PLFunction | None = None) -> str:
    """Graph of ``f`` (and ``g``), the level line at ``eps`` and the support of the cutdown."""
    top = max(f.sup, g.sup if g is not None else 0, eps or 0, Fraction(1, 2))
    comps = f.components
    svg = SVG()
    lo, hi = comps[0][0], comps[-1][1]
    svg.frame(lo - (hi - lo) / 20, hi + (hi - lo) / 20, -top / 10, top * Fraction(11, 10))
    svg.line(lo, 0, hi, 0, stroke="#999999", width=1)
    for fn, color in ((f, COLORS["f"]), (g, COLORS["g"])):
        if fn is None:
            continue
        for c0, c1 in fn.components:
            pts = [(x, evaluate(fn, x)) for x in fn.bp if c0 <= x <= c1]
            if len(pts) == 1:
                svg.dot(pts[0][0], pts[0][1], color)
            else:
                svg.polyline(pts, stroke=color)
    if eps is not None:
        eps = Fraction(eps)
        svg.line(lo, eps, hi, eps, stroke=COLORS["level"], dash=True)
        svg.text(hi, eps, f"eps={eps}", size=10)
        base = g if g is not None else f
        _draw_interval_row(svg, superlevel(base, eps), -top / 20, COLORS["level"], lo, hi)
        if g is None:
            cut = cutdown(f, eps)
            for c0, c1 in cut.components:
                pts = [(x, evaluate(cut, x)) for x in cut.bp if c0 <= x <= c1]
                if len(pts) > 1:
                    svg.polyline(pts, stroke=COLORS["level"], width=1)
    return svg.dumps()


def render(instance: Instance, fmt: str = "svg") -> str:
    if fmt == "csv":
        return render_csv(instance)
    if fmt != "svg":
        raise RenderError(f"unknown format {fmt!r}")
    kind = instance.kind
    if kind == "region-ll":
        return render_regions(instance["U"], instance["V"], instance["K"])
    if kind == "region-pair":
        first, second = instance["first"], instance["second"]
        if first["K"].dim + second["K"].dim > 2:
            raise RenderError("product of the two instances has dimension above 2")
        return render_regions(
            product(first["U"], second["U"]),
            product(first["V"], second["V"]),
            product(first["K"], second["K"]),
        )
    if kind == "function":
        return render_function(instance["f"], instance.get("eps"))
    if kind == "cuntz-ll":
        a, b = instance["a"], instance["b"]
        if a.kind != "scalar" or b.kind != "scalar":
            raise RenderError("only scalar elements can be graphed")
        eps = way_below_epsilon(a, b)
        return render_function(a.factors[0], eps, g=b.factors[0])
    raise RenderError(f"cannot render a {kind} instance")


def _probe_values(coords) -> list:
    """Vertices and cell midpoints of a compressed grid axis, plus one point beyond each end."""
    if not coords:
        return [Fraction(0)]
    out = [coords[0] - 1]
    for a, b in zip(coords, coords[1:]):
        out += [a, (a + b) / 2]
    out += [coords[-1], coords[-1] + 1]
    return out


def render_csv(instance: Instance) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    kind = instance.kind
    if kind == "region-ll":
        u, v, k = instance["U"], instance["V"], instance["K"]
        cl = closure(u)
        layers = {"U": u, "V": v, "K": k, "closure_U": cl}
        if k.dim > 2:
            raise RenderError("only 1D and 2D regions can be sampled")
        axes = []
        for axis in range(k.dim):
            coords = sorted({c for r in layers.values() for c in r.coords[axis]})
            axes.append(_probe_values(coords))
        names = ["x", "y"][: k.dim]
        w.writerow(names + list(layers))
        if k.dim == 1:
            points = [(x,) for x in axes[0]]
        else:
            points = [(x, y) for x in axes[0] for y in axes[1]]
        for p in points:
            w.writerow([str(c) for c in p] + [int(r.contains_point(p)) for r in layers.values()])
        return buf.getvalue()
    if kind in ("function", "cuntz-ll"):
        if kind == "function":
            fns = {"f": instance["f"]}
            eps = instance.get("eps")
        else:
            a, b = instance["a"], instance["b"]
            if a.kind != "scalar" or b.kind != "scalar":
                raise RenderError("only scalar elements can be sampled")
            fns = {"a": a.factors[0], "b": b.factors[0]}
            eps = way_below_epsilon(a, b)
        first = next(iter(fns.values()))
        xs = set()
        for fn in fns.values():
            xs |= set(fn.bp)
        for c0, c1 in first.components:
            xs |= {c0 + (c1 - c0) * Fraction(i, 32) for i in range(33)}
        cols = list(fns)
        if eps is not None:
            cols += [f"cutdown_{c}" for c in fns]
        w.writerow(["x"] + cols)
        for x in sorted(xs):
            row = [str(x)] + [str(evaluate(fn, x)) for fn in fns.values()]
            if eps is not None:
                row += [str(max(evaluate(fn, x) - Fraction(eps), Fraction(0))) for fn in fns.values()]
            w.writerow(row)
        return buf.getvalue()
    raise RenderError(f"cannot sample a {kind} instance")
