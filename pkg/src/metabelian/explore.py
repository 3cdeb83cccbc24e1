"""Brute-force exploration of the Cayley graph of Gamma(S).

The enumeration core stores an element ``(q, v)`` of a ball of radius ``R`` as
the integer tuple ``(q * N^R, v_1, ..., v_k)``: every element of word length
at most ``R`` has ``q`` with denominator dividing ``N^R``, so this is exact,
collision free and much cheaper than fraction arithmetic. Right multiplication
by ``b^{+-1}`` adds ``+-prod n_i^(R + v_i)``; by ``a_i^{+-1}`` it shifts ``v_i``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Literal

from .geometry import coarse_distance, model_point
from .group import (
    GroupElement,
    GroupSpec,
    Letter,
    Matrix2,
    format_word,
    generator,
    identity,
    to_matrix,
)
from .ring import NRational

__all__ = [
    "Ball",
    "BallTable",
    "CapExceeded",
    "DEFAULT_MAX_ELEMENTS",
    "QIFit",
    "WordLengthRecord",
    "bfs_ball",
    "load_table",
    "qi_compare",
    "radius_cap",
    "save_table",
    "table_csv",
    "word_length",
]

DEFAULT_MAX_ELEMENTS = 2_000_000
CACHE_FORMAT_VERSION = 1
QI_RADIUS_CAP = 8


class CapExceeded(RuntimeError):
    """A radius or memory cap was hit; results are never silently truncated."""


def radius_cap(spec: GroupSpec) -> int:
    return 12 if spec.k <= 2 else 8


@dataclass(frozen=True)
class BallTable:
    radius: int
    spheres: tuple[int, ...]
    generators: str

    @property
    def balls(self) -> tuple[int, ...]:
        out, total = [], 0
        for s in self.spheres:
            total += s
            out.append(total)
        return tuple(out)


@dataclass
class Ball:
    spec: GroupSpec
    table: BallTable
    spheres: list[list[GroupElement]]

    def elements(self) -> list[GroupElement]:
        return [g for sphere in self.spheres for g in sphere]


def _generators_descriptor(spec: GroupSpec) -> str:
    names = ["b"] + (["a"] if spec.k == 1 else [f"a{i}" for i in range(1, spec.k + 1)])
    return " ".join(f"{x}^+-1" for x in names)


class _Core:
    """Scaled-integer representation of the ball of radius ``R``."""

    def __init__(self, spec: GroupSpec, R: int):
        self.spec = spec
        self.R = R
        self.k = spec.k
        self.scale = spec.N**R
        self.powers = [[n**e for e in range(2 * R + 1)] for n in spec.S]

    def identity(self) -> tuple[int, ...]:
        return (0,) * (self.k + 1)

    def _b_step(self, key: tuple[int, ...]) -> int:
        R = self.R
        out = 1
        for i in range(self.k):
            out *= self.powers[i][R + key[i + 1]]
        return out

    def neighbors(self, key: tuple[int, ...]):
        R = self.R
        for i in range(1, self.k + 1):
            if abs(key[i]) >= R:
                raise CapExceeded("element left the scaled range of the enumeration core")
        step = self._b_step(key)
        yield (0, 1), (key[0] + step,) + key[1:]
        yield (0, -1), (key[0] - step,) + key[1:]
        for i in range(1, self.k + 1):
            lst = list(key)
            lst[i] += 1
            yield (i, 1), tuple(lst)
            lst[i] -= 2
            yield (i, -1), tuple(lst)

    def to_element(self, key: tuple[int, ...]) -> GroupElement:
        return GroupElement(NRational._raw(Fraction(key[0], self.scale), self.spec.N), key[1:], self.spec)

    def from_element(self, g: GroupElement) -> tuple[int, ...] | None:
        if any(abs(x) > self.R for x in g.v):
            return None
        Q = g.q.value * self.scale
        if Q.denominator != 1:
            return None
        return (int(Q),) + tuple(g.v)

    def left_quotient(self, g: tuple[int, ...], h: tuple[int, ...]) -> tuple[int, ...]:
        """Key of ``g^-1 h``; exact when the result lies in the scaled range."""
        num = h[0] - g[0]
        den = 1
        for i in range(self.k):
            e = g[i + 1]
            if e > 0:
                den *= self.powers[i][e]
            elif e < 0:
                num *= self.powers[i][-e]
        Q, rem = divmod(num, den)
        if rem:
            raise CapExceeded("quotient left the scaled range of the enumeration core")
        return (Q,) + tuple(y - x for x, y in zip(g[1:], h[1:]))

    def bfs(self, r: int, max_elements: int, target=None, parents: bool = False):
        start = self.identity()
        dist = {start: 0}
        back: dict = {start: None} if parents else {}
        spheres = [[start]]
        if target == start:
            return dist, spheres, back
        for d in range(1, r + 1):
            nxt = []
            for key in spheres[-1]:
                for letter, nb in self.neighbors(key):
                    if nb not in dist:
                        dist[nb] = d
                        nxt.append(nb)
                        if parents:
                            back[nb] = (key, letter)
                        if nb == target:
                            spheres.append(nxt)
                            return dist, spheres, back
            if len(dist) > max_elements:
                raise CapExceeded(f"ball of radius {d} exceeds {max_elements} elements")
            spheres.append(nxt)
        return dist, spheres, back


def _matrix_bfs(spec: GroupSpec, r: int, max_elements: int) -> list[int]:
    # Independent dedup oracle: multiply generator matrices, key by matrix entries.
    gens = []
    for i in range(spec.k + 1):
        m = to_matrix(generator(spec, i))
        inv = Matrix2(m.d, -m.b, -m.c, m.a)
        gens += [m, inv]
    one = to_matrix(identity(spec))
    seen = {one.entries()}
    frontier = [one]
    sizes = [1]
    for _ in range(r):
        nxt = []
        for m in frontier:
            for s in gens:
                p = m @ s
                key = p.entries()
                if key not in seen:
                    seen.add(key)
                    nxt.append(p)
        if len(seen) > max_elements:
            raise CapExceeded(f"ball exceeds {max_elements} elements")
        sizes.append(len(nxt))
        frontier = nxt
    return sizes


def bfs_ball(
    spec: GroupSpec,
    r: int,
    *,
    dedup: Literal["canonical", "matrix"] = "canonical",
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> Ball:
    """Ball of radius ``r`` about the identity for generators ``b, a_1, ..., a_k`` and inverses.

    ``dedup="matrix"`` enumerates matrix products instead (Gamma_n specs only);
    it yields the table but no element lists.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if r > radius_cap(spec):
        raise CapExceeded(f"radius {r} exceeds the cap {radius_cap(spec)} for k={spec.k}")
    desc = _generators_descriptor(spec)
    if dedup == "matrix":
        sizes = _matrix_bfs(spec, r, max_elements)
        return Ball(spec, BallTable(r, tuple(sizes), desc), [])
    if dedup != "canonical":
        raise ValueError(f"unknown dedup mode {dedup!r}")
    core = _Core(spec, max(r, 1))
    _, spheres, _ = core.bfs(r, max_elements)
    elems = [[core.to_element(key) for key in sphere] for sphere in spheres]
    return Ball(spec, BallTable(r, tuple(len(s) for s in spheres), desc), elems)


@dataclass(frozen=True)
class WordLengthRecord:
    element: GroupElement
    length: int
    witness: tuple[Letter, ...]

    def word(self) -> str:
        return format_word(self.witness, self.element.spec.k)


def word_length(
    g: GroupElement, cap: int, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> WordLengthRecord | None:
    """Exact word length of ``g`` with a geodesic witness, or ``None`` if it exceeds ``cap``."""
    core = _Core(g.spec, max(cap, 1))
    target = core.from_element(g)
    if target is None:
        return None
    dist, _, back = core.bfs(cap, max_elements, target=target, parents=True)
    if target not in dist:
        return None
    letters = []
    key = target
    while back[key] is not None:
        key, letter = back[key]
        letters.append(letter)
    letters.reverse()
    return WordLengthRecord(g, dist[target], tuple(letters))


@dataclass
class QIFit:
    """Quasi-isometry constants between word distance and model distance on a ball.

    ``K`` is the least constant with ``d_w / K <= d_X <= K d_w`` on every pair of
    distinct elements; ``C`` is the least additive constant for that ``K``.
    ``samples`` holds the distinct ``(d_w, d_X)`` values seen.
    """

    spec: GroupSpec
    radius: int
    K: float
    C: float
    pair_count: int
    samples: list[tuple[int, float]] = field(repr=False)
    worst: dict = field(default_factory=dict)
    rows: list[tuple[GroupElement, GroupElement, int, float]] | None = field(default=None, repr=False)

    def additive_constant(self, K: float) -> float:
        """Least ``C`` making both inequalities hold with multiplicative constant ``K``."""
        return max(
            [0.0] + [max(dx - K * dw, dw / K - dx) for dw, dx in self.samples]
        )

    def holds(self, dw: int, dx: float, tol: float = 1e-9) -> bool:
        return dw / self.K - self.C - tol <= dx <= self.K * dw + self.C + tol

    def report(self) -> dict:
        return {
            "spec": str(self.spec),
            "radius": self.radius,
            "K": self.K,
            "C": self.C,
            "pairs": self.pair_count,
            "worst": self.worst,
        }


def qi_compare(
    spec: GroupSpec,
    r: int,
    *,
    keep_pairs: bool = False,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> QIFit:
    """Compare word distance with ``coarse_distance`` over all pairs of the ball B(r).

    Both distances are invariant under left multiplication, so each pair
    ``(g, h)`` is evaluated through ``g^-1 h``, which lies in B(2r); model
    distances are cached per quotient.
    """
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if r > QI_RADIUS_CAP:
        raise CapExceeded(f"radius {r} exceeds the qi_compare cap {QI_RADIUS_CAP}")
    core = _Core(spec, max(2 * r, 1))
    dist, spheres, _ = core.bfs(2 * r, max_elements)
    ball = [key for sphere in spheres[: r + 1] for key in sphere]
    origin = model_point(identity(spec))
    model: dict[tuple[int, ...], float] = {}
    rows = [] if keep_pairs else None
    pair_count = 0
    for a, g in enumerate(ball):
        for h in ball[a + 1:]:
            d = core.left_quotient(g, h)
            if d not in model:
                model[d] = coarse_distance(origin, model_point(core.to_element(d)))
            pair_count += 1
            if rows is not None:
                rows.append((core.to_element(g), core.to_element(h), dist[d], model[d]))
    samples = sorted({(dist[d], dx) for d, dx in model.items()})
    K, worst = 1.0, {}
    for d, dx in model.items():
        dw = dist[d]
        ratio = max(dx / dw, dw / dx)
        if ratio > K:
            K = ratio
            worst = {"quotient": str(core.to_element(d)), "word_distance": dw, "model_distance": dx}
    fit = QIFit(spec, r, K, 0.0, pair_count, samples, worst, rows)
    # At this K the additive slack is zero up to floating noise.
    slack = fit.additive_constant(K)
    fit.C = 0.0 if slack < 1e-12 else slack
    return fit


def table_csv(table: BallTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["radius", "sphere", "ball"])
    for i, (s, b) in enumerate(zip(table.spheres, table.balls)):
        writer.writerow([i, s, b])
    return buf.getvalue()


def save_table(path: Path | str, spec: GroupSpec, table: BallTable) -> None:
    payload = {
        "format_version": CACHE_FORMAT_VERSION,
        "spec": list(spec.S),
        "radius": table.radius,
        "generators": table.generators,
        "spheres": list(table.spheres),
    }
    Path(path).write_text(json.dumps(payload), encoding="utf-8")


def load_table(path: Path | str, spec: GroupSpec, r: int) -> BallTable | None:
    """Cached table for ``(spec, r)``, or ``None`` if absent, stale or mismatched."""
    path = Path(path)
    if not path.exists():
        return None
    data = json.loads(path.read_text(encoding="utf-8"))
    if data.get("format_version") != CACHE_FORMAT_VERSION:
        return None
    if tuple(data["spec"]) != spec.S or data["radius"] != r:
        return None
    return BallTable(r, tuple(data["spheres"]), data["generators"])


def distance_report(fit: QIFit) -> Iterable[dict]:
    """JSON-ready rows ``{pair, word_distance, model_distance}`` (needs ``keep_pairs``)."""
    if fit.rows is None:
        raise ValueError("qi_compare was run without keep_pairs=True")
    for g, h, dw, dx in fit.rows:
        yield {"pair": [str(g), str(h)], "word_distance": dw, "model_distance": dx}
