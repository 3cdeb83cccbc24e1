"""The groups Gamma(S) = Z[1/N] x| Z^k as exact algebra.

Elements are pairs ``(q, v)`` with ``q`` in Z[1/N] and ``v`` in Z^k, multiplied by

    (q, v) * (q', v') = (q + lam(v) * q', v + v'),    lam(v) = prod n_i ** v_i.

Generators are ``b = (1, 0)`` and ``a_i = (0, e_i)``, so that
``a_i b a_i^-1 = b^(n_i)`` and the ``a_i`` commute. The other common
orientation, ``a_i^-1 b a_i = b^(n_i)``, is the image of this one under
``a_i -> a_i^-1``; the two presentations define isomorphic groups.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence, Union

from .ring import Factorization, NRational, factorize, n_adic_norm

__all__ = [
    "GroupElement",
    "GroupSpec",
    "Matrix2",
    "NormalForm",
    "SpecError",
    "affine_action",
    "element_from_json",
    "element_to_json",
    "evaluate_word",
    "expansion",
    "format_word",
    "generator",
    "identity",
    "inverse",
    "mul",
    "normal_form",
    "parse_word",
    "similarity_factor",
    "to_matrix",
]


class SpecError(ValueError):
    """Invalid group specification, e.g. entries that are not pairwise coprime."""


@dataclass(frozen=True)
class GroupSpec:
    """The parameter list ``S = (n_1, ..., n_k)`` of Gamma(S).

    ``gamma_n`` is set when the spec was derived from the upper triangular
    group Gamma_n, in which case ``S = (p_1^(2 e_1), ..., p_k^(2 e_k))``.
    """

    S: tuple[int, ...]
    gamma_n: int | None = field(default=None, compare=False)

    def __post_init__(self):
        S = tuple(self.S)
        object.__setattr__(self, "S", S)
        if not S:
            raise SpecError("S must contain at least one entry")
        for n in S:
            if not isinstance(n, int) or n < 2:
                raise SpecError(f"entries of S must be integers >= 2, got {n!r}")
        for x, y in combinations(S, 2):
            g = math.gcd(x, y)
            if g != 1:
                raise SpecError(f"entries of S must be pairwise coprime; gcd({x}, {y}) = {g}")

    @property
    def k(self) -> int:
        return len(self.S)

    @cached_property
    def N(self) -> int:
        return math.prod(self.S)

    @cached_property
    def factorizations(self) -> tuple[Factorization, ...]:
        return tuple(factorize(n) for n in self.S)

    def lam(self, v: Sequence[int]) -> Fraction:
        """``prod n_i ** v_i`` as an exact fraction."""
        num = den = 1
        for n, e in zip(self.S, v):
            if e >= 0:
                num *= n**e
            else:
                den *= n ** (-e)
        return Fraction(num, den)

    def __str__(self):
        if self.gamma_n is not None:
            return f"gamma:{self.gamma_n}"
        return ",".join(map(str, self.S))


@dataclass(frozen=True, slots=True)
class GroupElement:
    q: NRational
    v: tuple[int, ...]
    spec: GroupSpec

    def __mul__(self, other: GroupElement) -> GroupElement:
        return mul(self, other)

    def __invert__(self) -> GroupElement:
        return inverse(self)

    def __pow__(self, k: int) -> GroupElement:
        result = identity(self.spec)
        base = self if k >= 0 else inverse(self)
        for _ in range(abs(k)):
            result = mul(result, base)
        return result

    def is_identity(self) -> bool:
        return self.q.value == 0 and not any(self.v)

    def __str__(self):
        return f"({self.q}, {list(self.v)})"


def identity(spec: GroupSpec) -> GroupElement:
    return GroupElement(NRational._raw(Fraction(0), spec.N), (0,) * spec.k, spec)


def make_element(spec: GroupSpec, q, v: Sequence[int]) -> GroupElement:
    """Build ``(q, v)`` validating that ``q`` lies in Z[1/N]."""
    v = tuple(int(x) for x in v)
    if len(v) != spec.k:
        raise ValueError(f"v must have length {spec.k}, got {len(v)}")
    return GroupElement(NRational(q, spec.N), v, spec)


def generator(spec: GroupSpec, which: str | int) -> GroupElement:
    """Generator ``b`` (``which`` = "b" or 0) or ``a_i`` (``"a<i>"`` or ``i``, 1-based)."""
    if isinstance(which, str):
        if which == "b":
            index = 0
        elif which == "a" and spec.k == 1:
            index = 1
        elif re.fullmatch(r"a\d+", which):
            index = int(which[1:])
        else:
            raise ValueError(f"unknown generator {which!r}")
    else:
        index = which
    if index == 0:
        return GroupElement(NRational._raw(Fraction(1), spec.N), (0,) * spec.k, spec)
    if not 1 <= index <= spec.k:
        raise IndexError(f"generator a{index} out of range for k={spec.k}")
    v = [0] * spec.k
    v[index - 1] = 1
    return GroupElement(NRational._raw(Fraction(0), spec.N), tuple(v), spec)


def _check_same(g: GroupElement, h: GroupElement) -> None:
    if g.spec != h.spec:
        raise ValueError(f"elements belong to different groups: {g.spec} vs {h.spec}")


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    _check_same(g, h)
    q = g.q.value + g.spec.lam(g.v) * h.q.value
    v = tuple(x + y for x, y in zip(g.v, h.v))
    return GroupElement(NRational._raw(q, g.spec.N), v, g.spec)


def inverse(g: GroupElement) -> GroupElement:
    q = -g.q.value / g.spec.lam(g.v)
    return GroupElement(NRational._raw(q, g.spec.N), tuple(-x for x in g.v), g.spec)


# A letter is (generator index, exponent): index 0 is b, index i >= 1 is a_i.
Letter = tuple[int, int]
Word = Union[str, Iterable[Letter]]

_TOKEN = re.compile(r"^(b|a\d*)(?:\^([+-]?\d+))?$")


def parse_word(spec: GroupSpec, text: str) -> list[Letter]:
    """Parse whitespace separated tokens like ``"a1 b a1^-1 b^-2"``.

    For k = 1 the bare letter ``a`` means ``a1``.
    """
    letters = []
    for token in text.split():
        match = _TOKEN.match(token)
        if not match:
            raise ValueError(f"cannot parse token {token!r}")
        name, power = match.group(1), match.group(2)
        if name == "b":
            index = 0
        elif name == "a":
            if spec.k != 1:
                raise ValueError("bare 'a' is ambiguous when k > 1; use a1, a2, ...")
            index = 1
        else:
            index = int(name[1:])
            if not 1 <= index <= spec.k:
                raise ValueError(f"generator {name} out of range for k={spec.k}")
        letters.append((index, int(power) if power is not None else 1))
    return letters


def format_word(letters: Iterable[Letter], k: int | None = None) -> str:
    parts = []
    for index, power in letters:
        if power == 0:
            continue
        name = "b" if index == 0 else ("a" if k == 1 else f"a{index}")
        parts.append(name if power == 1 else f"{name}^{power}")
    return " ".join(parts)


def evaluate_word(spec: GroupSpec, word: Word) -> GroupElement:
    """Left-to-right product of a word; the empty word is the identity."""
    letters = parse_word(spec, word) if isinstance(word, str) else list(word)
    q = Fraction(0)
    v = [0] * spec.k
    for index, power in letters:
        if index == 0:
            q += spec.lam(v) * power
        elif 1 <= index <= spec.k:
            v[index - 1] += power
        else:
            raise ValueError(f"invalid letter {(index, power)!r} for k={spec.k}")
    return GroupElement(NRational._raw(q, spec.N), tuple(v), spec)


@dataclass(frozen=True)
class NormalForm:
    """The word ``a_1^-u_1 ... a_k^-u_k  b^m  a_1^w_1 ... a_k^w_k``."""

    u: tuple[int, ...]
    m: int
    w: tuple[int, ...]

    def letters(self) -> list[Letter]:
        out: list[Letter] = [(i + 1, -x) for i, x in enumerate(self.u) if x]
        if self.m:
            out.append((0, self.m))
        out.extend((i + 1, x) for i, x in enumerate(self.w) if x)
        return out

    def satisfies_invariants(self, spec: GroupSpec) -> bool:
        if len(self.u) != spec.k or len(self.w) != spec.k:
            return False
        return all(x >= 0 and (x == 0 or self.m % n != 0) for x, n in zip(self.u, spec.S))

    def __str__(self):
        k = len(self.u)
        return format_word(self.letters(), k) or "1"


def normal_form(g: GroupElement) -> NormalForm:
    """Canonical word for ``g``; ``u`` is the least exponent vector clearing q's denominator."""
    spec = g.spec
    den = g.q.value.denominator
    u = []
    for fac in spec.factorizations:
        need = 0
        for p, e in fac.primes:
            d = 0
            while den % p == 0:
                den //= p
                d += 1
            need = max(need, -(-d // e))
        u.append(need)
    m = g.q.value * spec.lam(u)
    assert m.denominator == 1
    w = tuple(x + y for x, y in zip(u, g.v))
    return NormalForm(tuple(u), int(m), w)


@dataclass(frozen=True)
class Matrix2:
    a: NRational
    b: NRational
    c: NRational
    d: NRational

    def __matmul__(self, o: Matrix2) -> Matrix2:
        return Matrix2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def det(self) -> NRational:
        return self.a * self.d - self.b * self.c

    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a.value, self.b.value, self.c.value, self.d.value)

    def rows(self) -> list[list[str]]:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]


def _gamma_roots(spec: GroupSpec) -> list[int]:
    # For S = (p_i^(2 e_i)) return p_i^(e_i).
    if spec.gamma_n is None:
        raise SpecError(f"{spec} is not the spec of an upper triangular group Gamma_n")
    roots = []
    for n in spec.S:
        r = math.isqrt(n)
        if r * r != n or len(factorize(n).primes) != 1:
            raise SpecError(f"{spec} is not of the form (p_i^(2 e_i))")
        roots.append(r)
    return roots


def to_matrix(g: GroupElement) -> Matrix2:
    """Image in SL_2(Z[1/n]) under a_i -> diag(p_i^e_i, p_i^-e_i), b -> [[1,1],[0,1]].

    ``(q, v)`` maps to ``[[s, q/s], [0, 1/s]]`` with ``s = prod (p_i^e_i)^v_i``.
    """
    spec = g.spec
    roots = _gamma_roots(spec)
    n = spec.gamma_n
    s = Fraction(1)
    for r, e in zip(roots, g.v):
        s *= Fraction(r) ** e
    R = lambda x: NRational(x, n)  # noqa: E731
    return Matrix2(R(s), R(g.q.value / s), R(0), R(1 / s))


def expansion(g: GroupElement) -> Fraction:
    """Stretch factor ``lam(v)`` of the affine action on the real line."""
    return g.spec.lam(g.v)


def affine_action(g: GroupElement, x):
    """``g . x = lam(v) x + q``; exact for rational ``x``, float otherwise."""
    lam = g.spec.lam(g.v)
    if isinstance(x, NRational):
        return NRational(lam * x.value + g.q.value, x.n)
    if isinstance(x, (int, Fraction)):
        return lam * x + g.q.value
    return float(lam) * x + float(g.q.value)


def similarity_factor(g: GroupElement, i: int) -> Fraction:
    """Similarity ratio of ``g`` on the n_i-adic line: ``|lam(v)|_{n_i}`` (``i`` is 1-based)."""
    if not 1 <= i <= g.spec.k:
        raise IndexError(f"factor index {i} out of range for k={g.spec.k}")
    return n_adic_norm(NRational._raw(g.spec.lam(g.v), g.spec.N), g.spec.S[i - 1])


def element_to_json(g: GroupElement) -> dict:
    return {"q": str(g.q), "v": list(g.v)}


def element_from_json(spec: GroupSpec, data: dict) -> GroupElement:
    return make_element(spec, Fraction(data["q"]), data["v"])
