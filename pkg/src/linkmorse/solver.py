"""Enumeration of cyclic configurations by radius root finding.

For a fixed orientation string E and winding number k, a circle of radius r
carries a closed inscribed realization of the linkage exactly when

    F(r) = sum_i eps_i * arcsin(l_i / (2r)) - pi * k = 0,

with dF/dr = -delta / r where ``delta = sum_i eps_i tan(alpha_i)``.  The
solver scans r over a bracketing grid for every feasible (E, k) pair, refines
each sign change, rebuilds vertex coordinates from the root, and filters the
results for orientation consistency.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (
    CentralConfigurationError,
    InconsistentDescriptorError,
    NotInscribableError,
    SingularDerivativeError,
    SolverDomainError,
)
from .geometry import (
    CircleFit,
    Configuration,
    Linkage,
    OrientationString,
    _readonly,
    edge_orientations,
)

# Relative gap keeping the scan strictly above the minimum radius, where the
# largest edge would be a diameter.
_RMIN_MARGIN = 1e-12

_BRENTQ_RTOL = max(1e-14, 4.0 * np.finfo(float).eps)


@dataclass(frozen=True)
class SolverOptions:
    """Tunables for the radius scan and degeneracy bookkeeping."""

    samples: int = 4096          # grid points per spacing scheme
    cap_factor: float = 1e3      # upper scan bound as a multiple of min_radius
    root_rtol: float = 1e-14     # relative radius accuracy of refined roots
    dedup_rtol: float = 1e-10    # merge roots closer than this (relative)
    degeneracy_tol: float = 1e-7 # flag threshold for central/flip/delta-zero
    closure_tol: float = 1e-9    # allowed angular closure defect
    residual_tol: float = 1e-9   # |F| accepted at a double (delta-zero) root

    def __post_init__(self):
        if self.samples < 16:
            raise ValueError("samples must be at least 16")
        if self.cap_factor <= 1.0:
            raise ValueError("cap_factor must exceed 1")


@dataclass(frozen=True)
class DegeneracyFlags:
    """Near-degeneracy markers for one root; any true entry disables the
    closed-form Morse analysis for that configuration."""

    central: tuple
    near_flip: tuple
    delta_zero: bool

    @property
    def any(self) -> bool:
        return bool(self.delta_zero or any(self.central) or any(self.near_flip))

    def to_json_dict(self) -> dict:
        return {
            "central": [bool(v) for v in self.central],
            "near_flip": [bool(v) for v in self.near_flip],
            "delta_zero": bool(self.delta_zero),
        }


@dataclass(frozen=True)
class CyclicDescriptor:
    """Complete combinatorial-metric identification of a cyclic configuration:
    circle radius, winding number, orientation string, half-angles, center."""

    radius: float
    winding: int
    eps: OrientationString
    alphas: np.ndarray
    center: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "winding", int(self.winding))
        object.__setattr__(self, "alphas", _readonly(np.asarray(self.alphas, dtype=float)))
        object.__setattr__(self, "center", _readonly(np.asarray(self.center, dtype=float).reshape(2)))
        if len(self.eps) != self.alphas.size:
            raise InconsistentDescriptorError("orientation string and half-angles disagree in length")

    @property
    def n(self) -> int:
        return len(self.eps)

    @property
    def circle(self) -> CircleFit:
        return CircleFit(center=self.center, radius=self.radius)

    def closure_defect(self) -> float:
        """Absolute defect of the angular closure sum(2 eps_i alpha_i) = 2 pi k."""
        total = 2.0 * float(self.eps.array @ self.alphas)
        return abs(total - 2.0 * math.pi * self.winding)

    @classmethod
    def from_radius(cls, linkage: Linkage, eps, winding: int, radius: float) -> "CyclicDescriptor":
        """Build the descriptor for a root radius: half-angles from the chord
        relation and the center placed left/right of the pinned first edge
        according to ``eps_1``."""
        eps = eps if isinstance(eps, OrientationString) else OrientationString(tuple(eps))
        ratios = linkage.lengths / (2.0 * radius)
        if np.any(ratios > 1.0 + 1e-12):
            raise NotInscribableError("radius below the minimum circumradius")
        alphas = np.arcsin(np.clip(ratios, 0.0, 1.0))
        half = float(linkage.lengths[0]) / 2.0
        cx = math.sqrt(max(radius * radius - half * half, 0.0))
        center = np.array([-cx if eps.eps[0] > 0 else cx, half])
        return cls(radius=radius, winding=winding, eps=eps, alphas=alphas, center=center)

    def mirrored(self) -> "CyclicDescriptor":
        """Reflection across the pinned edge: all signs and the winding flip."""
        return CyclicDescriptor(
            radius=self.radius,
            winding=-self.winding,
            eps=self.eps.mirrored(),
            alphas=self.alphas,
            center=self.center * np.array([-1.0, 1.0]),
        )


@dataclass(frozen=True)
class CyclicConfiguration:
    """One enumerated critical point: descriptor, vertex coordinates, flags."""

    descriptor: CyclicDescriptor
    configuration: Configuration
    flags: DegeneracyFlags


def _eps_array(eps) -> np.ndarray:
    if isinstance(eps, OrientationString):
        return eps.array
    return OrientationString(tuple(eps)).array


def f_value(linkage: Linkage, eps, k: int, r: float) -> float:
    """Closure function ``sum_i eps_i arcsin(l_i / (2r)) - pi k``."""
    if r < linkage.min_radius:
        raise SolverDomainError(
            f"radius {r:.12g} below minimum circumradius {linkage.min_radius:.12g}"
        )
    e = _eps_array(eps)
    ratios = np.clip(linkage.lengths / (2.0 * r), 0.0, 1.0)
    return float(e @ np.arcsin(ratios)) - math.pi * k


def f_derivative(linkage: Linkage, eps, r: float) -> float:
    """Radius derivative of the closure function, ``-delta / r``.

    Each term differentiates to ``-l_i / (2 r^2 cos(alpha_i))``, which the
    chord relation turns into ``-tan(alpha_i) / r``; matches centered finite
    differences of :func:`f_value`.
    """
    if r <= linkage.min_radius:
        raise SolverDomainError(
            f"radius {r:.12g} must exceed the minimum circumradius {linkage.min_radius:.12g}"
        )
    e = _eps_array(eps)
    ratios = linkage.lengths / (2.0 * r)
    if np.any(1.0 - ratios <= 1e-15):
        raise SingularDerivativeError("an edge is (numerically) a diameter at this radius")
    tangents = ratios / np.sqrt(1.0 - ratios * ratios)
    return -float(e @ tangents) / r


def delta_at_radius(linkage: Linkage, eps, r: float) -> float:
    """``delta = sum_i eps_i tan(alpha_i)`` evaluated at radius r."""
    e = _eps_array(eps)
    ratios = np.clip(linkage.lengths / (2.0 * r), 0.0, 1.0)
    with np.errstate(divide="ignore"):
        tangents = np.where(ratios < 1.0, ratios / np.sqrt(np.maximum(1.0 - ratios * ratios, 0.0)), np.inf)
    return float(e @ tangents)


def degeneracy_flags(linkage: Linkage, eps, r: float, tol: float = 1e-7) -> DegeneracyFlags:
    """Deterministic near-degeneracy flags for (L, E, r) at tolerance ``tol``."""
    lengths = linkage.lengths
    central = tuple(bool(2.0 * r - l <= tol * r) for l in lengths)
    alphas = np.arcsin(np.clip(lengths / (2.0 * r), 0.0, 1.0))
    near_flip = tuple(bool(a < tol) for a in alphas)
    delta = delta_at_radius(linkage, eps, r)
    return DegeneracyFlags(central=central, near_flip=near_flip,
                           delta_zero=bool(math.isfinite(delta) and abs(delta) < tol))


def _radius_grid(linkage: Linkage, opts: SolverOptions) -> np.ndarray:
    """Bracketing grid: geometric spacing over the full range plus a grid
    uniform in the largest half-angle, which resolves the steep region just
    above the minimum radius."""
    r_min = linkage.min_radius
    lo = r_min * (1.0 + _RMIN_MARGIN)
    hi = r_min * opts.cap_factor
    geometric = np.geomspace(lo, hi, opts.samples)
    u = np.linspace(math.asin(r_min / hi), 0.5 * math.pi * (1.0 - _RMIN_MARGIN), opts.samples)
    steep = r_min / np.sin(u[::-1])
    grid = np.clip(np.concatenate([geometric, steep]), lo, hi)
    return np.unique(grid)


def _angle_tables(linkage: Linkage, grid: np.ndarray):
    """Per-grid-point half-angles and their tangents for every edge."""
    ratios = np.clip(linkage.lengths[None, :] / (2.0 * grid[:, None]), 0.0, 1.0)
    alphas = np.arcsin(ratios)
    with np.errstate(divide="ignore"):
        tangents = np.where(ratios < 1.0, ratios / np.sqrt(np.maximum(1.0 - ratios * ratios, 0.0)), np.inf)
    return alphas, tangents


def _bracket_roots(values: np.ndarray, grid: np.ndarray, refine) -> list:
    """Roots of a sampled scalar function: refined sign changes plus isolated
    exact zeros.  Runs of consecutive exact zeros mark a degenerate family
    (the function vanishes identically there) and yield no isolated roots."""
    signs = np.sign(values)
    roots = []
    zeros = np.nonzero(signs == 0.0)[0]
    for idx in zeros:
        left_ok = idx == 0 or signs[idx - 1] != 0.0
        right_ok = idx == len(signs) - 1 or signs[idx + 1] != 0.0
        if left_ok and right_ok:
            roots.append(float(grid[idx]))
    changes = np.nonzero(signs[:-1] * signs[1:] < 0.0)[0]
    for idx in changes:
        roots.append(refine(float(grid[idx]), float(grid[idx + 1])))
    return roots


def _merge_radii(radii: list, rtol: float) -> list:
    merged = []
    for r in sorted(radii):
        if not merged or abs(r - merged[-1]) > rtol * r:
            merged.append(r)
    return merged


def solve_radii(linkage: Linkage, eps, k: int, opts: SolverOptions | None = None) -> list:
    """All radii solving F(r) = 0 for one (E, k) pair, with degeneracy flags.

    Returns ``[(r, DegeneracyFlags), ...]`` sorted by radius.  Sign changes of
    the sampled closure function are refined by bracketing; double roots
    (where F and delta vanish together) are recovered by locating the zeros
    of delta and testing |F| there, and arrive flagged ``delta_zero``.
    """
    opts = opts or SolverOptions()
    grid = _radius_grid(linkage, opts)
    alphas, tangents = _angle_tables(linkage, grid)
    e = _eps_array(eps)
    f_vals = alphas @ e - math.pi * k
    rtol = max(opts.root_rtol, _BRENTQ_RTOL)

    def refine_f(a, b):
        return float(brentq(lambda r: f_value(linkage, eps, k, r), a, b,
                            xtol=linkage.min_radius * 1e-15, rtol=rtol))

    radii = _bracket_roots(f_vals, grid, refine_f)

    # Double roots hide at interior extrema of F, i.e. zeros of delta.
    d_vals = tangents @ e
    finite = np.isfinite(d_vals)
    if not np.all(finite):
        d_vals = np.where(finite, d_vals, np.sign(e[int(np.argmax(linkage.lengths))]) * 1e300)

    def refine_d(a, b):
        return float(brentq(lambda r: delta_at_radius(linkage, eps, r), a, b,
                            xtol=linkage.min_radius * 1e-15, rtol=rtol))

    for r_ext in _bracket_roots(d_vals, grid, refine_d):
        if abs(f_value(linkage, eps, k, r_ext)) <= opts.residual_tol:
            radii.append(r_ext)

    merged = _merge_radii(radii, opts.dedup_rtol)
    return [(r, degeneracy_flags(linkage, eps, r, opts.degeneracy_tol)) for r in merged]


def reconstruct(linkage: Linkage, desc: CyclicDescriptor) -> Configuration:
    """Vertex coordinates on the descriptor's circle in the pinned frame.

    Successive vertex angles advance by ``2 eps_i alpha_i``; the pinned
    vertices are snapped exactly to ``(0,0)`` and ``(0, l_1)``.
    """
    if desc.closure_defect() > 1e-9:
        raise InconsistentDescriptorError(
            f"angular closure defect {desc.closure_defect():.3e} exceeds 1e-9"
        )
    if desc.n != linkage.n:
        raise InconsistentDescriptorError("descriptor size does not match the linkage")
    center = desc.center
    theta1 = math.atan2(-center[1], -center[0])
    steps = 2.0 * desc.eps.array * desc.alphas
    theta = theta1 + np.concatenate([[0.0], np.cumsum(steps[:-1])])
    pts = center[None, :] + desc.radius * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    pts[0] = (0.0, 0.0)
    pts[1] = (0.0, float(linkage.lengths[0]))
    return Configuration(points=pts)


def _feasible_windings(n: int, positives: int):
    """Winding numbers k compatible with an orientation string having
    ``positives`` entries equal to +1: the closure sum is confined to the
    open interval (-(n - e) pi/2, e pi/2), so -(n - e) < 2k < e."""
    lo = math.floor(-(n - positives) / 2.0)
    hi = math.ceil(positives / 2.0)
    for k in range(lo, hi + 1):
        if -(n - positives) < 2 * k < positives:
            yield k


def _orientation_consistent(config: Configuration, desc: CyclicDescriptor,
                            flags: DegeneracyFlags) -> bool:
    """Geometric orientation of the rebuilt vertices must reproduce the
    descriptor's string; edges flagged central are exempt."""
    try:
        geo = edge_orientations(config.points, desc.center)
    except CentralConfigurationError as err:
        return flags.central[err.index - 1] if err.index else False
    return all(g == d or c for g, d, c in zip(geo.eps, desc.eps.eps, flags.central))


def enumerate_cyclic(linkage: Linkage, opts: SolverOptions | None = None) -> list:
    """Every cyclic configuration of the linkage.

    Scans all 2^n orientation strings against their feasible winding numbers,
    collects the radius roots, reconstructs coordinates, drops roots whose
    rebuilt orientations disagree with the string, and deduplicates identical
    vertex sets.  Results are sorted by (winding, orientation string, radius).

    Returns a list of :class:`CyclicConfiguration`.
    """
    opts = opts or SolverOptions()
    n = linkage.n
    grid = _radius_grid(linkage, opts)
    alphas_tab, tangents_tab = _angle_tables(linkage, grid)
    rtol = max(opts.root_rtol, _BRENTQ_RTOL)
    xtol = linkage.min_radius * 1e-15
    items = []

    for signs in itertools.product((1, -1), repeat=n):
        eps = OrientationString(signs)
        e_arr = eps.array
        positives = eps.positive_count
        s_vals = alphas_tab @ e_arr
        d_vals = tangents_tab @ e_arr
        finite = np.isfinite(d_vals)
        if not np.all(finite):
            fill = float(e_arr[int(np.argmax(linkage.lengths))]) * 1e300
            d_vals = np.where(finite, d_vals, fill)

        def refine_d(a, b, _eps=eps):
            return float(brentq(lambda r: delta_at_radius(linkage, _eps, r), a, b,
                                xtol=xtol, rtol=rtol))

        extrema = _bracket_roots(d_vals, grid, refine_d)

        for k in _feasible_windings(n, positives):
            def refine_f(a, b, _eps=eps, _k=k):
                return float(brentq(lambda r: f_value(linkage, _eps, _k, r), a, b,
                                    xtol=xtol, rtol=rtol))

            radii = _bracket_roots(s_vals - math.pi * k, grid, refine_f)
            radii.extend(r for r in extrema
                         if abs(f_value(linkage, eps, k, r)) <= opts.residual_tol)

            for r in _merge_radii(radii, opts.dedup_rtol):
                flags = degeneracy_flags(linkage, eps, r, opts.degeneracy_tol)
                desc = CyclicDescriptor.from_radius(linkage, eps, k, r)
                config = reconstruct(linkage, desc)
                if not _orientation_consistent(config, desc, flags):
                    continue
                items.append(CyclicConfiguration(desc, config, flags))

    items.sort(key=lambda it: (it.descriptor.winding, it.descriptor.eps.eps, it.descriptor.radius))
    return _dedup_vertex_sets(items, linkage)


def _dedup_vertex_sets(items: list, linkage: Linkage) -> list:
    scale = linkage.perimeter
    unique = []
    for item in items:
        pts = item.configuration.points
        if any(other.configuration.n == item.configuration.n
               and np.max(np.abs(other.configuration.points - pts)) < 1e-8 * scale
               for other in unique):
            continue
        unique.append(item)
    return unique
