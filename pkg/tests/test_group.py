import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from metabelian.classify import gamma_n_spec
from metabelian.explore import bfs_ball
from metabelian.group import (
    GroupSpec,
    NormalForm,
    SpecError,
    affine_action,
    element_from_json,
    element_to_json,
    evaluate_word,
    expansion,
    generator,
    identity,
    inverse,
    make_element,
    mul,
    normal_form,
    parse_word,
    similarity_factor,
    to_matrix,
)
from metabelian.ring import NRational, n_adic_norm

from conftest import random_element

BS2 = GroupSpec((2,))
G23 = GroupSpec((2, 3))
G49 = GroupSpec((4, 9))
SPECS = [BS2, G23, G49, GroupSpec((16, 9)), GroupSpec((2, 3, 5)), GroupSpec((12,))]


def elements(spec):
    return st.builds(
        lambda word: evaluate_word(spec, word),
        st.lists(st.tuples(st.integers(0, spec.k), st.sampled_from([-1, 1])), max_size=10),
    )


def test_spec_validation():
    with pytest.raises(SpecError):
        GroupSpec((6, 10))
    with pytest.raises(SpecError):
        GroupSpec(())
    with pytest.raises(SpecError):
        GroupSpec((1, 3))
    assert GroupSpec((4, 9)).N == 36


def test_generators():
    assert generator(BS2, "b") == make_element(BS2, 1, (0,))
    assert generator(G23, "a2") == make_element(G23, 0, (0, 1))
    assert generator(G49, 1) == make_element(G49, 0, (1, 0))
    with pytest.raises(IndexError):
        generator(G23, 3)
    with pytest.raises(ValueError):
        generator(G23, "c")


def test_mul_examples():
    a, b = generator(BS2, "a"), generator(BS2, "b")
    assert mul(b, a) == make_element(BS2, 1, (1,))
    assert mul(a, b) == make_element(BS2, 2, (1,))
    assert mul(a, b) == mul(mul(b, b), a)
    with pytest.raises(ValueError):
        mul(a, generator(G23, "b"))


def test_inverse_examples():
    assert inverse(identity(BS2)) == identity(BS2)
    g = make_element(BS2, 1, (1,))
    assert inverse(g) == make_element(BS2, Fraction(-1, 2), (-1,))
    assert mul(g, inverse(g)).is_identity()


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_defining_relations(spec):
    b = generator(spec, 0)
    for i, n in enumerate(spec.S, start=1):
        a = generator(spec, i)
        assert a * b * ~a == b**n
        for j in range(1, spec.k + 1):
            c = generator(spec, j)
            assert (a * c * ~a * ~c).is_identity()


@pytest.mark.parametrize("spec", SPECS[:4], ids=str)
def test_group_axioms(spec):
    @settings(max_examples=60, deadline=None)
    @given(elements(spec), elements(spec), elements(spec))
    def check(g, h, k):
        assert (g * h) * k == g * (h * k)
        assert (g * identity(spec)) == g == identity(spec) * g
        assert (g * ~g).is_identity() and (~g * g).is_identity()
        assert ~~g == g

    check()


def test_evaluate_word_examples():
    assert evaluate_word(G23, "a1 a2 a1^-1 a2^-1").is_identity()
    assert evaluate_word(BS2, "a b a^-1 b^-1 b^-1").is_identity()
    assert evaluate_word(BS2, "b b b") == make_element(BS2, 3, (0,))
    assert evaluate_word(BS2, "").is_identity()
    assert evaluate_word(BS2, []).is_identity()
    with pytest.raises(ValueError):
        evaluate_word(G23, "a")
    with pytest.raises(ValueError):
        evaluate_word(G23, "a3")
    with pytest.raises(ValueError):
        evaluate_word(G23, "c1")
    with pytest.raises(ValueError):
        evaluate_word(G23, [(5, 1)])


def test_parse_word_powers():
    assert parse_word(G23, "a1 b a1^-1 b^-2") == [(1, 1), (0, 1), (1, -1), (0, -2)]
    assert evaluate_word(G23, "b^3") == evaluate_word(G23, "b b b")


def test_normal_form_examples():
    nf = normal_form(make_element(BS2, Fraction(1, 2), (0,)))
    assert nf == NormalForm((1,), 1, (1,))
    assert str(nf) == "a^-1 b a"
    assert normal_form(identity(BS2)) == NormalForm((0,), 0, (0,))
    g12 = GroupSpec((12,))
    assert normal_form(make_element(g12, Fraction(1, 2), (0,))) == NormalForm((1,), 6, (1,))


def test_normal_form_minimality_bruteforce():
    # u is the least exponent vector for which lam(u) q is an integer.
    rng = random.Random(5)
    for spec in (BS2, G23, GroupSpec((12,)), G49):
        for _ in range(200):
            g = random_element(spec, rng, 10)
            nf = normal_form(g)
            candidates = [
                u for u in itertools.product(range(8), repeat=spec.k)
                if (g.q.value * spec.lam(u)).denominator == 1
            ]
            assert min(candidates, key=sum) == nf.u
            assert all(all(x >= y for x, y in zip(c, nf.u)) for c in candidates)


@pytest.mark.parametrize("spec", [BS2, G23, G49], ids=str)
def test_normal_form_round_trip_ball(spec):
    radius = 6 if spec.k == 1 else 4
    for g in bfs_ball(spec, radius).elements():
        nf = normal_form(g)
        assert nf.satisfies_invariants(spec)
        assert evaluate_word(spec, nf.letters()) == g


def test_to_matrix_examples():
    g6 = gamma_n_spec(6)
    a1 = to_matrix(generator(g6, 1))
    assert a1.entries() == (2, Fraction(0), Fraction(0), Fraction(1, 2))
    assert to_matrix(generator(g6, 0)).entries() == (1, 1, 0, 1)
    prod = to_matrix(generator(g6, 1) * generator(g6, 0))
    assert prod == to_matrix(generator(g6, 1)) @ to_matrix(generator(g6, 0))
    with pytest.raises(SpecError):
        to_matrix(generator(G49, 0))


@given(st.integers(2, 40))
@settings(max_examples=25, deadline=None)
def test_to_matrix_homomorphism_and_det(n):
    spec = gamma_n_spec(n)
    rng = random.Random(n)
    for _ in range(20):
        g, h = random_element(spec, rng, 8), random_element(spec, rng, 8)
        m = to_matrix(g * h)
        assert m == to_matrix(g) @ to_matrix(h)
        assert m.det() == 1 and m.c == 0
        assert m.a > 0 and m.d > 0


def test_affine_action():
    b, a = generator(BS2, "b"), generator(BS2, "a")
    assert affine_action(b, Fraction(3)) == 4 and expansion(b) == 1
    assert affine_action(a, Fraction(3)) == 6 and expansion(a) == 2
    assert expansion(generator(G49, 1) * generator(G49, 2)) == 36
    assert affine_action(a, 1.5) == 3.0


@given(elements(G49), elements(G49), st.fractions())
def test_action_axiom(g, h, x):
    assert affine_action(g * h, x) == affine_action(g, affine_action(h, x))


def test_similarity_examples():
    b = generator(G49, 0)
    assert similarity_factor(b, 1) == similarity_factor(b, 2) == 1
    a1 = generator(G49, 1)
    assert similarity_factor(a1, 1) == Fraction(1, 4)
    assert similarity_factor(a1, 2) == 1
    with pytest.raises(IndexError):
        similarity_factor(a1, 3)


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_similarity_axiom_and_unimodularity(spec, rng):
    N = spec.N
    for _ in range(200):
        g = random_element(spec, rng)
        x = NRational(Fraction(rng.randint(-999, 999), N ** rng.randint(0, 4)), N)
        y = NRational(Fraction(rng.randint(-999, 999), N ** rng.randint(0, 4)), N)
        prod = expansion(g)
        for i, n in enumerate(spec.S, start=1):
            f = similarity_factor(g, i)
            assert n_adic_norm(affine_action(g, x) - affine_action(g, y), n) == f * n_adic_norm(x - y, n)
            prod *= f
        assert prod == 1


@given(elements(G23))
def test_json_round_trip(g):
    data = element_to_json(g)
    assert element_from_json(G23, data) == g
