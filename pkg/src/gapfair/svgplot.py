"""Minimal standalone SVG 1.1 emitters for the two plot kinds.

Hand-rolled on purpose: the outputs must be byte-identical across
reruns, and general plotting libraries embed generated ids and version
strings that defeat that. Only two shapes are needed anyway, a
trade-off scatter with its front polyline and a violin.

Structural guarantee relied on by tests: a scatter SVG contains exactly
one ``<polyline>`` element, the front, with one vertex per front point.
Axes and ticks are ``<line>`` elements.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .analysis import ViolinSummary

_WIDTH = 640
_HEIGHT = 480
_MARGIN_LEFT = 72
_MARGIN_RIGHT = 24
_MARGIN_TOP = 44
_MARGIN_BOTTOM = 60

_N_TICKS = 5


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _tick_label(value: float) -> str:
    return f"{value:.4g}"


def _axis_range(values) -> tuple[float, float]:
    lo = float(min(values))
    hi = float(max(values))
    if hi == lo:
        return lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


class _Canvas:
    """Collects SVG elements over a fixed plot frame."""

    def __init__(self, title: str, x_label: str, y_label: str,
                 x_range: tuple[float, float], y_range: tuple[float, float]):
        self.parts: list[str] = []
        self.x_range = x_range
        self.y_range = y_range
        self.frame = (
            _MARGIN_LEFT, _MARGIN_TOP,
            _WIDTH - _MARGIN_RIGHT, _HEIGHT - _MARGIN_BOTTOM,
        )
        self._chrome(title, x_label, y_label)

    def x_pixel(self, x: float) -> float:
        x0, _, x1, _ = self.frame
        lo, hi = self.x_range
        return x0 + (x - lo) / (hi - lo) * (x1 - x0)

    def y_pixel(self, y: float) -> float:
        _, y0, _, y1 = self.frame
        lo, hi = self.y_range
        return y1 - (y - lo) / (hi - lo) * (y1 - y0)

    def _chrome(self, title: str, x_label: str, y_label: str) -> None:
        x0, y0, x1, y1 = self.frame
        add = self.parts.append
        add(f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>')
        add(f'<line x1="{x0}" y1="{y1}" x2="{x1}" y2="{y1}" stroke="black" stroke-width="1"/>')
        add(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black" stroke-width="1"/>')
        xlo, xhi = self.x_range
        ylo, yhi = self.y_range
        for i in range(_N_TICKS):
            frac = i / (_N_TICKS - 1)
            xv = xlo + frac * (xhi - xlo)
            xp = self.x_pixel(xv)
            add(f'<line x1="{_fmt(xp)}" y1="{y1}" x2="{_fmt(xp)}" y2="{y1 + 5}" '
                'stroke="black" stroke-width="1"/>')
            add(f'<text x="{_fmt(xp)}" y="{y1 + 20}" font-size="12" '
                f'text-anchor="middle" font-family="sans-serif">'
                f'{escape(_tick_label(xv))}</text>')
            yv = ylo + frac * (yhi - ylo)
            yp = self.y_pixel(yv)
            add(f'<line x1="{x0 - 5}" y1="{_fmt(yp)}" x2="{x0}" y2="{_fmt(yp)}" '
                'stroke="black" stroke-width="1"/>')
            add(f'<text x="{x0 - 8}" y="{_fmt(yp + 4)}" font-size="12" '
                f'text-anchor="end" font-family="sans-serif">'
                f'{escape(_tick_label(yv))}</text>')
        add(f'<text x="{(x0 + x1) / 2:.1f}" y="24" font-size="15" '
            f'text-anchor="middle" font-family="sans-serif">{escape(title)}</text>')
        add(f'<text x="{(x0 + x1) / 2:.1f}" y="{_HEIGHT - 16}" font-size="13" '
            f'text-anchor="middle" font-family="sans-serif">{escape(x_label)}</text>')
        add(f'<text x="20" y="{(y0 + y1) / 2:.1f}" font-size="13" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'transform="rotate(-90 20 {(y0 + y1) / 2:.1f})">{escape(y_label)}</text>')

    def render(self) -> str:
        body = "\n".join(f"  {part}" for part in self.parts)
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_WIDTH}" height="{_HEIGHT}" '
            f'viewBox="0 0 {_WIDTH} {_HEIGHT}">\n'
            f"{body}\n"
            "</svg>\n"
        )


def scatter_svg(points, front, title: str, x_label: str, y_label: str) -> str:
    """Trade-off cloud plus its front as the single polyline.

    ``points`` and ``front`` are sequences of (x, y) pairs; the front
    must be non-empty (a front with one point renders a one-vertex
    polyline, which is valid SVG).
    """
    points = list(points)
    front = list(front)
    if not front:
        raise ValueError("front must be non-empty")
    xs = [p[0] for p in points] + [p[0] for p in front]
    ys = [p[1] for p in points] + [p[1] for p in front]
    canvas = _Canvas(title, x_label, y_label, _axis_range(xs), _axis_range(ys))
    for x, y in points:
        canvas.parts.append(
            f'<circle cx="{_fmt(canvas.x_pixel(x))}" cy="{_fmt(canvas.y_pixel(y))}" '
            'r="3" fill="steelblue" fill-opacity="0.6"/>'
        )
    vertices = " ".join(
        f"{_fmt(canvas.x_pixel(x))},{_fmt(canvas.y_pixel(y))}" for x, y in front
    )
    canvas.parts.append(
        f'<polyline points="{vertices}" fill="none" stroke="firebrick" '
        'stroke-width="2"/>'
    )
    for x, y in front:
        canvas.parts.append(
            f'<circle cx="{_fmt(canvas.x_pixel(x))}" cy="{_fmt(canvas.y_pixel(y))}" '
            'r="4" fill="firebrick"/>'
        )
    return canvas.render()


def violin_svg(summary: ViolinSummary, title: str | None = None) -> str:
    """One violin: mirrored density polygon plus quartile lines."""
    if title is None:
        title = f"{summary.variable} by {summary.group}".strip()
    grid = np.asarray(summary.grid)
    density = np.asarray(summary.density)
    center = _WIDTH / 2
    max_half = (_WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT) / 2 - 40
    peak = float(density.max())
    halves = (density / peak) * max_half if peak > 0 else np.zeros_like(density)

    canvas = _Canvas(title, summary.group or "density",
                     summary.variable or "value",
                     (-1.0, 1.0), _axis_range(grid))
    right = [
        f"{_fmt(center + h)},{_fmt(canvas.y_pixel(v))}"
        for v, h in zip(grid, halves)
    ]
    left = [
        f"{_fmt(center - h)},{_fmt(canvas.y_pixel(v))}"
        for v, h in zip(grid[::-1], halves[::-1])
    ]
    canvas.parts.append(
        f'<polygon points="{" ".join(right + left)}" fill="steelblue" '
        'fill-opacity="0.55" stroke="black" stroke-width="1"/>'
    )
    for q, name in zip(summary.quartiles, ("q1", "median", "q3")):
        yq = canvas.y_pixel(q)
        width = max_half * 0.6 if name == "median" else max_half * 0.4
        canvas.parts.append(
            f'<line x1="{_fmt(center - width)}" y1="{_fmt(yq)}" '
            f'x2="{_fmt(center + width)}" y2="{_fmt(yq)}" '
            'stroke="black" stroke-width="1.5"/>'
        )
        canvas.parts.append(
            f'<text x="{_fmt(center + max_half + 6)}" y="{_fmt(yq + 4)}" '
            f'font-size="11" font-family="sans-serif">'
            f'{escape(f"{name}={q:.3g}")}</text>'
        )
    return canvas.render()
