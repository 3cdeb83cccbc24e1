"""The trees T^n on which BS(1, n) acts, and the projection of Gamma(S) onto them.

A vertex of T^n is a ball ``r + M * Z_n`` of the n-adic line, where the radius
``M = modulus(level)`` grows by the crossing factors of the branching sequence.
Children refine the ball, the parent coarsens it; all parents point toward
the end fixed by the whole group. Vertices are plain values, so the infinite
tree is never materialized.

For ``n = p_1^e_1 ... p_r^e_r`` the branching pattern over one period is read
off from where the line ``e_1 x_1 + ... + e_r x_r = 0`` meets the integer grid:
prime ``p_i`` contributes a crossing at every phase in ``(1/e_i) Z``, and a
vertex at a given phase branches into the product of the primes crossing there.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .group import GroupElement, GroupSpec
from .ring import factorize, reduce_mod

__all__ = [
    "BranchingSequence",
    "HeightValue",
    "TreeVertex",
    "act",
    "base_vertex",
    "branching_sequence",
    "children",
    "height",
    "height_of_vertex",
    "make_vertex",
    "meet",
    "parent",
    "project",
    "subtree_dot",
    "tree_distance",
    "trees_for",
]


@dataclass(frozen=True)
class BranchingSequence:
    n: int
    crossings: tuple[tuple[Fraction, int], ...]

    @property
    def period(self) -> int:
        """Number of levels per period; ``n`` is the product of their factors."""
        return len(self.crossings)

    def factor_at(self, level: int) -> int:
        """Number of children of a vertex at ``level``."""
        return self.crossings[level % self.period][1]

    def modulus(self, level: int) -> Fraction:
        return _modulus(self, level)

    def __str__(self):
        return f"T^{self.n}"


@lru_cache(maxsize=None)
def _modulus(seq: BranchingSequence, level: int) -> Fraction:
    c = seq.period
    periods, rest = divmod(level, c)
    m = Fraction(seq.n) ** periods
    for j in range(rest):
        m *= seq.crossings[j][1]
    return m


@lru_cache(maxsize=None)
def branching_sequence(n: int) -> BranchingSequence:
    """Crossing pattern of T^n over one period.

    >>> branching_sequence(12).crossings
    ((Fraction(0, 1), 6), (Fraction(1, 2), 2))
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"branching_sequence needs an integer >= 2, got {n!r}")
    factors: dict[Fraction, int] = defaultdict(lambda: 1)
    for p, e in factorize(n).primes:
        for j in range(e):
            factors[Fraction(j, e)] *= p
    return BranchingSequence(n, tuple(sorted(factors.items())))


@dataclass(frozen=True)
class TreeVertex:
    tree: BranchingSequence
    level: int
    rep: Fraction

    @property
    def modulus(self) -> Fraction:
        return self.tree.modulus(self.level)

    def __str__(self):
        return f"({self.level}, {self.rep})"


def make_vertex(tree: BranchingSequence, level: int, x) -> TreeVertex:
    """The vertex at ``level`` whose ball contains ``x``."""
    return TreeVertex(tree, level, reduce_mod(Fraction(x), tree.modulus(level), tree.n))


def base_vertex(tree: BranchingSequence) -> TreeVertex:
    return TreeVertex(tree, 0, Fraction(0))


def children(v: TreeVertex) -> list[TreeVertex]:
    """Children in ascending order of coset representative."""
    m = v.modulus
    return [TreeVertex(v.tree, v.level + 1, v.rep + j * m) for j in range(v.tree.factor_at(v.level))]


def parent(v: TreeVertex) -> TreeVertex:
    return TreeVertex(v.tree, v.level - 1, v.rep % v.tree.modulus(v.level - 1))


def _ancestor(v: TreeVertex, level: int) -> TreeVertex:
    return TreeVertex(v.tree, level, v.rep % v.tree.modulus(level))


def meet(u: TreeVertex, w: TreeVertex) -> TreeVertex:
    """Deepest common ancestor: the highest level at which both balls coincide."""
    if u.tree != w.tree:
        raise ValueError(f"vertices lie in different trees: {u.tree} vs {w.tree}")
    level = min(u.level, w.level)
    diff = u.rep - w.rep
    while (diff / u.tree.modulus(level)).denominator != 1:
        level -= 1
    return _ancestor(u, level)


def tree_distance(u: TreeVertex, w: TreeVertex, weighted: bool = False):
    """Edge count between ``u`` and ``w``, or the sum of ``log(factor)`` over the edges."""
    m = meet(u, w)
    if weighted:
        return math.log(u.modulus * w.modulus / m.modulus**2)
    return (u.level - m.level) + (w.level - m.level)


def height_of_vertex(v: TreeVertex) -> float:
    """Signed height relative to the base vertex, in natural-log units."""
    return math.log(v.modulus)


@lru_cache(maxsize=None)
def trees_for(spec: GroupSpec) -> tuple[BranchingSequence, ...]:
    return tuple(branching_sequence(n) for n in spec.S)


def _check_index(spec: GroupSpec, i: int) -> None:
    if not 1 <= i <= spec.k:
        raise IndexError(f"factor index {i} out of range for k={spec.k}")


def project(g: GroupElement, i: int) -> TreeVertex:
    """Image of ``g`` in the i-th tree (1-based): the ball ``q + n_i^v_i Z_{n_i}``."""
    _check_index(g.spec, i)
    tree = trees_for(g.spec)[i - 1]
    return make_vertex(tree, g.v[i - 1] * tree.period, g.q.value)


def act(g: GroupElement, i: int, vertex: TreeVertex) -> TreeVertex:
    """Isometric action of ``g`` on the i-th tree: ``x -> lam(v) x + q`` on balls."""
    _check_index(g.spec, i)
    tree = trees_for(g.spec)[i - 1]
    if vertex.tree != tree:
        raise ValueError(f"vertex of {vertex.tree} cannot be moved by an element acting on {tree}")
    level = vertex.level + g.v[i - 1] * tree.period
    x = g.q.value + g.spec.lam(g.v) * vertex.rep
    return make_vertex(tree, level, x)


@dataclass(frozen=True)
class HeightValue:
    heights: tuple[float, ...]

    @property
    def total(self) -> float:
        return math.fsum(self.heights)


def height(g: GroupElement) -> HeightValue:
    """Per-tree heights ``v_i log n_i``."""
    return HeightValue(tuple(v * math.log(n) for v, n in zip(g.v, g.spec.S)))


def subtree_dot(root: TreeVertex, depth: int, name: str = "T") -> str:
    """Graphviz source for the subtree of ``depth`` levels below ``root``."""
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    ids: dict[TreeVertex, str] = {}

    def node(v: TreeVertex) -> str:
        if v not in ids:
            ids[v] = f"v{len(ids)}"
            lines.append(f'  {ids[v]} [label="({v.level}, {v.rep})"];')
        return ids[v]

    frontier = [root]
    node(root)
    for _ in range(depth):
        nxt = []
        for v in frontier:
            for c in children(v):
                lines.append(f"  {node(v)} -> {node(c)};")
                nxt.append(c)
        frontier = nxt
    lines.append("}")
    return "\n".join(lines) + "\n"
