import itertools
import math

import pytest

from metabelian.classify import (
    commensurable_bs,
    gamma_n_spec,
    qi_gamma,
    qi_gamma_S,
    rational_power_equivalent,
)
from metabelian.group import GroupSpec, SpecError


def test_gamma_n_spec_examples():
    assert gamma_n_spec(6).S == (4, 9)
    assert gamma_n_spec(12).S == (16, 9)
    for p in (2, 3, 5, 7, 97):
        assert gamma_n_spec(p).S == (p**2,)
    assert gamma_n_spec(6).gamma_n == 6
    with pytest.raises(ValueError):
        gamma_n_spec(1)


def test_qi_gamma_examples():
    v = qi_gamma(6, 12)
    assert v.equivalent and v.matching == ((0, 0), (1, 1))
    assert not qi_gamma(6, 10).equivalent
    assert qi_gamma(30, 30).equivalent
    assert not qi_gamma(2, 6).equivalent
    with pytest.raises(ValueError):
        qi_gamma(1, 6)


def test_rational_powers():
    assert rational_power_equivalent(4, 8)
    assert not rational_power_equivalent(2, 3)
    assert rational_power_equivalent(12, 144)
    assert not rational_power_equivalent(12, 6)
    with pytest.raises(ValueError):
        rational_power_equivalent(0, 4)


def test_rational_power_is_equivalence():
    values = range(2, 130)
    rel = {(a, b) for a in values for b in values if rational_power_equivalent(a, b)}
    for a, b in rel:
        assert (b, a) in rel
    for a, b in rel:
        for c in values:
            if (b, c) in rel:
                assert (a, c) in rel
    # matches the definition: a^x = b^y for some positive integers
    for a, b in itertools.product(range(2, 70), repeat=2):
        brute = any(a**x == b**y for x in range(1, 8) for y in range(1, 8))
        assert brute == rational_power_equivalent(a, b)


def test_qi_gamma_S_examples():
    v = qi_gamma_S(GroupSpec((4, 9)), GroupSpec((8, 3)))
    assert v.equivalent and v.matching == ((0, 0), (1, 1))
    assert not qi_gamma_S(GroupSpec((4, 9)), GroupSpec((4, 25))).equivalent
    v = qi_gamma_S(GroupSpec((4, 9)), GroupSpec((4, 9, 25)))
    assert not v.equivalent and "different number" in v.witness["reason"]
    v = qi_gamma_S(GroupSpec((9, 4)), GroupSpec((8, 27)))
    assert v.equivalent and v.matching == ((0, 1), (1, 0))
    with pytest.raises(SpecError):
        qi_gamma_S(GroupSpec((6, 10)), GroupSpec((2,)))


def test_qi_gamma_S_permutation_invariance():
    specs = [(4, 9, 25), (8, 3, 5), (2, 27, 125), (4, 9, 7), (16, 81)]
    for s1, s2 in itertools.product(specs, repeat=2):
        base = qi_gamma_S(GroupSpec(s1), GroupSpec(s2)).equivalent
        for perm in itertools.permutations(s1):
            assert qi_gamma_S(GroupSpec(perm), GroupSpec(s2)).equivalent == base


def test_commensurable():
    assert commensurable_bs(4, 8)
    assert not commensurable_bs(2, 6)
    for n in range(2, 50):
        assert commensurable_bs(n, n)
    for m, n in itertools.product(range(2, 60), repeat=2):
        if commensurable_bs(m, n):
            assert qi_gamma_S(GroupSpec((m,)), GroupSpec((n,))).equivalent


def test_verdict_json():
    data = qi_gamma_S(GroupSpec((4, 9)), GroupSpec((8, 3))).to_json()
    assert list(data) == ["equivalent", "matching", "witness"]
    assert data["matching"] == [[0, 0], [1, 1]]
    assert math.isfinite(len(data["witness"]))
