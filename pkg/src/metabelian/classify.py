"""Quasi-isometry and commensurability criteria as decision procedures.

* Gamma_n and Gamma_m are quasi-isometric iff n and m have the same prime support.
* Gamma(S1) and Gamma(S2) are quasi-isometric iff they have the same number of
  factors and, after reordering, each n_i is a rational power of m_i.
* BS(1, m) and BS(1, n) are commensurable (equivalently quasi-isometric) iff
  m = r^j and n = r^k for some integers r, j, k > 0.

Two integers >= 2 are rational powers of one another exactly when their
primitive roots agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .group import GroupSpec
from .ring import factorize, primitive_root

__all__ = [
    "ClassificationVerdict",
    "commensurable_bs",
    "gamma_n_spec",
    "qi_gamma",
    "qi_gamma_S",
    "rational_power_equivalent",
]


@dataclass(frozen=True)
class ClassificationVerdict:
    equivalent: bool
    matching: tuple[tuple[int, int], ...] | None = None
    witness: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "matching": [list(pair) for pair in self.matching] if self.matching is not None else None,
            "witness": self.witness,
        }


def _check(*values: int) -> None:
    for x in values:
        if not isinstance(x, int) or x < 2:
            raise ValueError(f"expected an integer >= 2, got {x!r}")


def gamma_n_spec(n: int) -> GroupSpec:
    """Spec ``(p_1^(2 e_1), ..., p_k^(2 e_k))`` of the upper triangular group Gamma_n."""
    _check(n)
    return GroupSpec(tuple(p ** (2 * e) for p, e in factorize(n).primes), gamma_n=n)


def qi_gamma(n: int, m: int) -> ClassificationVerdict:
    _check(n, m)
    ps, qs = factorize(n).support, factorize(m).support
    witness = {"support_n": list(ps), "support_m": list(qs)}
    if set(ps) != set(qs):
        return ClassificationVerdict(False, None, witness)
    # Both supports are sorted ascending, so the matching is positional.
    return ClassificationVerdict(True, tuple((i, i) for i in range(len(ps))), witness)


def rational_power_equivalent(a: int, b: int) -> bool:
    _check(a, b)
    return primitive_root(a)[0] == primitive_root(b)[0]


def qi_gamma_S(S1: GroupSpec, S2: GroupSpec) -> ClassificationVerdict:
    """Compare the multisets of primitive roots of the two parameter lists."""
    roots1 = [primitive_root(n) for n in S1.S]
    roots2 = [primitive_root(m) for m in S2.S]
    witness = {
        "roots_1": [list(r) for r in roots1],
        "roots_2": [list(r) for r in roots2],
    }
    if len(roots1) != len(roots2):
        witness["reason"] = f"different number of factors: {len(roots1)} vs {len(roots2)}"
        return ClassificationVerdict(False, None, witness)
    order1 = sorted(range(len(roots1)), key=lambda i: roots1[i][0])
    order2 = sorted(range(len(roots2)), key=lambda j: roots2[j][0])
    matching = []
    for i, j in zip(order1, order2):
        if roots1[i][0] != roots2[j][0]:
            witness["reason"] = (
                f"primitive roots differ: {roots1[i][0]} (of {S1.S[i]}) vs {roots2[j][0]} (of {S2.S[j]})"
            )
            return ClassificationVerdict(False, None, witness)
        matching.append((i, j))
    return ClassificationVerdict(True, tuple(sorted(matching)), witness)


def commensurable_bs(m: int, n: int) -> bool:
    return rational_power_equivalent(m, n)
