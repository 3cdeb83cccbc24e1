"""The warped product X(S) of the real line with a product of trees.

A point is ``(x, t_1, ..., t_k)``. Moving along a tree edge costs ``log`` of its
branching factor; moving horizontally by ``dx`` at total height ``H`` costs
``exp(-H) |dx|``, where ``H`` is the sum of the tree heights. Tree directions
combine in the l1 (path) sense.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Literal, Union

from .group import GroupElement
from .tree import (
    TreeVertex,
    children,
    meet,
    parent,
    project,
    tree_distance,
)

__all__ = [
    "HorizontalStep",
    "Hyperplane",
    "ModelPoint",
    "TreeLine",
    "TreeStep",
    "WarpedPath",
    "coarse_distance",
    "horocycle_of",
    "hyperbolic_distance",
    "hyperplane_contains",
    "model_point",
    "path_length",
    "same_horocycle",
]

Real = Union[int, float, Fraction]


@dataclass(frozen=True)
class ModelPoint:
    x: Real
    vertices: tuple[TreeVertex, ...]

    def shifted(self, dx: Real) -> ModelPoint:
        return ModelPoint(self.x + dx, self.vertices)

    @property
    def scale(self) -> Fraction:
        """``exp(H)`` as an exact rational: the product of the vertex moduli."""
        s = Fraction(1)
        for t in self.vertices:
            s *= t.modulus
        return s


def model_point(g: GroupElement) -> ModelPoint:
    """The point of X hit by the group element ``g`` (its orbit point of ``(0, base)``)."""
    return ModelPoint(g.q.value, tuple(project(g, i + 1) for i in range(g.spec.k)))


@dataclass(frozen=True)
class TreeStep:
    factor: int  # 0-based tree index
    direction: Literal["child", "parent"]
    child: int = 0


@dataclass(frozen=True)
class HorizontalStep:
    dx: Real


Segment = Union[TreeStep, HorizontalStep]


@dataclass(frozen=True)
class WarpedPath:
    start: ModelPoint
    segments: tuple[Segment, ...] = field(default_factory=tuple)

    def points(self) -> list[ModelPoint]:
        """Start point followed by the endpoint of every segment."""
        pts = [self.start]
        x, verts = self.start.x, list(self.start.vertices)
        for seg in self.segments:
            if isinstance(seg, HorizontalStep):
                x = x + seg.dx
            elif isinstance(seg, TreeStep):
                if not 0 <= seg.factor < len(verts):
                    raise ValueError(f"tree index {seg.factor} out of range")
                t = verts[seg.factor]
                if seg.direction == "parent":
                    verts[seg.factor] = parent(t)
                elif seg.direction == "child":
                    kids = children(t)
                    if not 0 <= seg.child < len(kids):
                        raise ValueError(f"vertex {t} has no child {seg.child}")
                    verts[seg.factor] = kids[seg.child]
                else:
                    raise ValueError(f"unknown direction {seg.direction!r}")
            else:
                raise ValueError(f"malformed segment {seg!r}")
            pts.append(ModelPoint(x, tuple(verts)))
        return pts

    @property
    def end(self) -> ModelPoint:
        return self.points()[-1]

    def __add__(self, other: WarpedPath) -> WarpedPath:
        if self.end != other.start:
            raise ValueError("paths do not compose: end of the first is not the start of the second")
        return WarpedPath(self.start, self.segments + other.segments)


def _horizontal(dx: Real, scale: Fraction) -> float:
    # exp(-H) |dx| with exp(H) = scale; exact until the final conversion.
    if isinstance(dx, (int, Fraction)):
        return float(abs(Fraction(dx)) / scale)
    return abs(dx) / float(scale)


def path_length(path: WarpedPath) -> float:
    pts = path.points()
    total = 0.0
    for seg, here, there in zip(path.segments, pts, pts[1:]):
        if isinstance(seg, HorizontalStep):
            total += _horizontal(seg.dx, here.scale)
        else:
            a, b = here.vertices[seg.factor], there.vertices[seg.factor]
            low = a if a.level < b.level else b
            total += math.log(low.tree.factor_at(low.level))
    return total


def _gain_options(u: TreeVertex, w: TreeVertex, window: int) -> list[tuple[float, Fraction]]:
    # Peaks above the higher endpoint: (height gain, modulus ratio) per level.
    top = u if u.level >= w.level else w
    tree = top.tree
    out = []
    base = tree.modulus(top.level)
    for j in range(window + 1):
        ratio = tree.modulus(top.level + j) / base
        out.append((math.log(ratio), ratio))
    return out


def coarse_distance(p: ModelPoint, q: ModelPoint) -> float:
    """Length of the shortest up-over-down path between ``p`` and ``q``.

    In each tree the path climbs from the higher of the two vertices to a
    common peak, crosses horizontally there, and descends; the peak levels are
    searched over a window of ``ceil(log_n(1 + |dx| e^-H)) + 2`` periods per tree.
    The result is an upper bound for the distance in X.
    """
    if len(p.vertices) != len(q.vertices):
        raise ValueError("points belong to different model spaces")
    vertical = 0.0
    scale = Fraction(1)
    for u, w in zip(p.vertices, q.vertices):
        vertical += tree_distance(u, w, weighted=True)
        scale *= max(u.modulus, w.modulus)
    dx = p.x - q.x
    if dx == 0:
        return vertical
    offset = _horizontal(dx, scale)
    options = []
    for u, w in zip(p.vertices, q.vertices):
        n = u.tree.n
        periods = math.ceil(math.log(1 + offset, n)) + 2
        options.append(_gain_options(u, w, periods * u.tree.period))
    best = math.inf
    for combo in product(*options):
        gain = math.fsum(g for g, _ in combo)
        ratio = 1.0
        for _, r in combo:
            ratio *= float(r)
        best = min(best, 2 * gain + offset / ratio)
    return vertical + best


def hyperbolic_distance(x1: float, h1: float, x2: float, h2: float) -> float:
    """Distance in the upper half plane between ``(x1, e^h1)`` and ``(x2, e^h2)``."""
    y1, y2 = math.exp(h1), math.exp(h2)
    return math.acosh(1 + ((x1 - x2) ** 2 + (y1 - y2) ** 2) / (2 * y1 * y2))


def horocycle_of(point: ModelPoint) -> tuple[TreeVertex, ...]:
    return point.vertices


def same_horocycle(p: ModelPoint, q: ModelPoint) -> bool:
    return p.vertices == q.vertices


@dataclass(frozen=True)
class TreeLine:
    """The bi-infinite geodesic through the segment from ``u`` to ``w``.

    Past an endpoint reached from below the line keeps climbing through the
    child with the same coset representative; past an endpoint reached from
    above it descends through parents toward the fixed end.
    """

    u: TreeVertex
    w: TreeVertex

    def __post_init__(self):
        if self.u.tree != self.w.tree:
            raise ValueError("line endpoints lie in different trees")
        if self.u == self.w:
            raise ValueError("a line needs two distinct vertices")

    def contains(self, t: TreeVertex) -> bool:
        if t.tree != self.u.tree:
            raise ValueError(f"vertex of {t.tree} tested against a line in {self.u.tree}")
        d = tree_distance(self.u, self.w)
        if tree_distance(self.u, t) + tree_distance(t, self.w) == d:
            return True
        m = meet(self.u, self.w)
        for end in (self.u, self.w):
            if end == m:
                # Segment leaves this end upward, so the line continues downward.
                if t.level < end.level and meet(t, end) == t:
                    return True
            elif t.level > end.level and t.rep == end.rep:
                return True
        return False


@dataclass(frozen=True)
class Hyperplane:
    lines: tuple[TreeLine, ...]


def hyperplane_contains(H: Hyperplane, p: ModelPoint) -> bool:
    if len(H.lines) != len(p.vertices):
        raise ValueError("hyperplane and point belong to different model spaces")
    return all(line.contains(t) for line, t in zip(H.lines, p.vertices))

