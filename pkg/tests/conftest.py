"""Shared helpers for building random linkages and valid configurations."""

import math

import numpy as np

from linkmorse import Configuration, Linkage, edge_lengths
from linkmorse.errors import InvalidLinkageError


def random_linkage(rng, n, lo=0.5, hi=2.0, margin=0.98):
    """Closable random lengths, kept away from the degenerate boundary."""
    while True:
        lengths = rng.uniform(lo, hi, size=n)
        if 2.0 * lengths.max() < margin * lengths.sum():
            return Linkage(lengths)


def pin_points(points):
    """Rigidly move a polygon into the pinned frame (p1 at origin, p2 on +y)."""
    pts = np.asarray(points, dtype=float) - np.asarray(points[0], dtype=float)
    v = pts[1]
    norm = float(np.hypot(*v))
    ang = 0.5 * math.pi - math.atan2(v[1], v[0])
    rot = np.array([[math.cos(ang), -math.sin(ang)], [math.sin(ang), math.cos(ang)]])
    out = pts @ rot.T
    out[0] = (0.0, 0.0)
    out[1] = (0.0, norm)
    return out


def random_valid_configuration(rng, n, scale=1.0):
    """A random closed polygon and the linkage it realizes exactly.

    The lengths are measured from the final pinned coordinates, so the
    configuration satisfies its linkage with zero error.  Generic samples are
    not cyclic.
    """
    while True:
        pts = rng.uniform(-scale, scale, size=(n, 2))
        if np.hypot(*(pts[1] - pts[0])) < 0.3 * scale:
            continue
        pinned = pin_points(pts)
        lengths = edge_lengths(pinned)
        if lengths.min() < 0.1 * scale:
            continue
        try:
            linkage = Linkage(lengths)
        except InvalidLinkageError:
            continue
        return linkage, Configuration(pinned)


def regular_polygon_points(n, winding=1, ccw=True):
    """Unit-edge regular polygon or star in the pinned frame.

    ``winding`` 1 gives the convex polygon, 2 the star (n = 5 pentagram).
    """
    step = 2.0 * math.pi * winding / n
    radius = 1.0 / (2.0 * math.sin(step / 2.0))
    sign = 1.0 if ccw else -1.0
    cx = math.sqrt(max(radius * radius - 0.25, 0.0))
    center = np.array([-sign * cx, 0.5])
    theta1 = math.atan2(-center[1], -center[0])
    theta = theta1 + sign * step * np.arange(n)
    pts = center[None, :] + radius * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    pts[0] = (0.0, 0.0)
    pts[1] = (0.0, 1.0)
    return pts, center, radius
