"""Static SVG plots, written by hand for byte-level reproducibility.

Matplotlib timestamps and dictionary ordering leak into its SVG output, so
the two plots the command line needs (a spectrum scatter against the unit
circle and a per-period sup polyline) are emitted directly. Same inputs,
same bytes.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError

CANVAS_W = 800
CANVAS_H = 600
MARGIN = 70

_HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS_W}" height="{CANVAS_H}" '
    f'viewBox="0 0 {CANVAS_W} {CANVAS_H}">\n'
    f'<rect width="{CANVAS_W}" height="{CANVAS_H}" fill="white"/>\n'
)

_STYLE = ('<g font-family="monospace" font-size="14" fill="black" '
          'stroke="none">\n')


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _text(x: float, y: float, s: str, anchor: str = "start") -> str:
    return (f'<text x="{_fmt(x)}" y="{_fmt(y)}" text-anchor="{anchor}">'
            f"{s}</text>\n")


def _line(x1: float, y1: float, x2: float, y2: float, width: float = 1.0,
          dash: str | None = None) -> str:
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
            f'y2="{_fmt(y2)}" stroke="black" stroke-width="{width}"{extra}/>\n')


def write_eigenvalue_svg(eigenvalues, path, title: str = "monodromy spectrum") -> str:
    """Scatter of eigenvalues on the complex plane with the unit circle drawn.

    Repeated eigenvalues draw coincident markers; the annotation notes the
    total count so overlaps are not mistaken for missing points.
    """
    values = [complex(v) for v in eigenvalues]
    if not values:
        raise ValidationError("no eigenvalues to plot")
    extent = max(1.0, max(abs(v.real) for v in values),
                 max(abs(v.imag) for v in values)) * 1.25
    cx, cy = CANVAS_W / 2.0, CANVAS_H / 2.0
    radius_px = min(CANVAS_W, CANVAS_H) / 2.0 - MARGIN
    scale = radius_px / extent

    parts = [_HEADER, _STYLE]
    parts.append(_text(cx, MARGIN - 35, title, anchor="middle"))
    parts.append(_text(cx, MARGIN - 15,
                       f"{len(values)} eigenvalue(s); dashed circle is |z| = 1",
                       anchor="middle"))
    parts.append("</g>\n")
    # axes through the origin
    parts.append(_line(cx - radius_px, cy, cx + radius_px, cy))
    parts.append(_line(cx, cy - radius_px, cx, cy + radius_px))
    parts.append(_STYLE)
    parts.append(_text(cx + radius_px + 6, cy + 4, "Re"))
    parts.append(_text(cx + 6, cy - radius_px - 6, "Im"))
    # unit ticks on both axes
    tick = scale * 1.0
    parts.append(_text(cx + tick, cy + 18, "1", anchor="middle"))
    parts.append(_text(cx - tick, cy + 18, "-1", anchor="middle"))
    parts.append(_text(cx - 10, cy - tick + 4, "i", anchor="end"))
    parts.append(_text(cx - 10, cy + tick + 4, "-i", anchor="end"))
    parts.append("</g>\n")
    parts.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(scale)}" '
                 'fill="none" stroke="black" stroke-width="1" '
                 'stroke-dasharray="6,4"/>\n')
    parts.append(_line(cx + tick, cy - 5, cx + tick, cy + 5))
    parts.append(_line(cx - tick, cy - 5, cx - tick, cy + 5))
    parts.append(_line(cx - 5, cy - tick, cx + 5, cy - tick))
    parts.append(_line(cx - 5, cy + tick, cx + 5, cy + tick))
    for v in values:
        px = cx + v.real * scale
        py = cy - v.imag * scale
        parts.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="5" '
                     'fill="none" stroke="black" stroke-width="2"/>\n')
    parts.append("</svg>\n")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("".join(parts))
    return str(path)


def write_sup_svg(sups, path, title: str = "per-period sup") -> str:
    """Polyline of the per-period sup sequence against the window index."""
    values = np.asarray(sups, dtype=float)
    if values.ndim != 1 or values.size < 2:
        raise ValidationError("need at least two sup values to plot")
    if not np.all(np.isfinite(values)):
        raise ValidationError("sup values must be finite")
    x0, x1 = MARGIN, CANVAS_W - MARGIN
    y0, y1 = CANVAS_H - MARGIN, MARGIN
    top = float(np.max(values))
    bottom = float(np.min(values))
    span = top - bottom if top > bottom else max(abs(top), 1.0)
    pad = 0.05 * span
    lo, hi = bottom - pad, top + pad

    def sx(i: int) -> float:
        return x0 + (x1 - x0) * i / (values.size - 1)

    def sy(v: float) -> float:
        return y0 + (y1 - y0) * (v - lo) / (hi - lo)

    parts = [_HEADER, _STYLE]
    parts.append(_text(CANVAS_W / 2.0, MARGIN - 35, title, anchor="middle"))
    parts.append(_text(CANVAS_W / 2.0, CANVAS_H - 15, "period window n",
                       anchor="middle"))
    parts.append(_text(x0, MARGIN - 15, f"sup range [{bottom:.6g}, {top:.6g}]"))
    parts.append(_text(x0 - 8, sy(bottom) + 4, f"{bottom:.3g}", anchor="end"))
    parts.append(_text(x0 - 8, sy(top) + 4, f"{top:.3g}", anchor="end"))
    parts.append(_text(x0, y0 + 20, "0", anchor="middle"))
    parts.append(_text(x1, y0 + 20, str(values.size - 1), anchor="middle"))
    parts.append("</g>\n")
    parts.append(_line(x0, y0, x1, y0))
    parts.append(_line(x0, y0, x0, y1))
    parts.append(_line(x0 - 5, sy(top), x0 + 5, sy(top)))
    parts.append(_line(x0 - 5, sy(bottom), x0 + 5, sy(bottom)))
    points = " ".join(f"{_fmt(sx(i))},{_fmt(sy(float(v)))}"
                      for i, v in enumerate(values))
    parts.append(f'<polyline points="{points}" fill="none" stroke="black" '
                 'stroke-width="1.5"/>\n')
    parts.append("</svg>\n")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("".join(parts))
    return str(path)
