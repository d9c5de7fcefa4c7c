import itertools
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hypercone.components import (
    WSubset, components_report, count_components, dumps, elm_parity, enumerate_components,
    normalize, scroll_of_twist, vandermonde_hyperplane,
)
from hypercone.curve import LineBundleSpec, curve_from_roots
from hypercone.errors import InvalidCurve, InvalidInput, Unsupported


def test_subset_basics():
    T = WSubset.from_indices([0, 2], 6)
    assert T.mask == 5 and T.indices == (0, 2) and T.size == 2
    assert T.complement().mask == 58
    assert T.canonical() == T and T.complement().canonical() == T
    with pytest.raises(InvalidInput):
        WSubset(1, 5)
    with pytest.raises(InvalidInput):
        WSubset.from_indices([6], 6)


def test_hyperplane_examples():
    nodes = list(range(1, 7))
    assert vandermonde_hyperplane(nodes, WSubset(0, 6)) == (1, -5, 10, -10, 5, -1)
    assert vandermonde_hyperplane(nodes, WSubset(1, 6)) == (1, 5, -10, 10, -5, 1)


def test_normalize():
    assert normalize([Fraction(-2, 3), Fraction(4, 3), 0]) == (1, -2, 0)
    assert normalize([0, 0]) == (0, 0)


def test_hyperplane_is_the_determinant():
    # the hyperplane vanishes on a point whose last column is a combination of the others
    nodes = [Fraction(x) for x in (-2, 0, 1, 3, 4, 7)]
    for mask in (0, 9, 22):
        T = WSubset(mask, 6)
        h = vandermonde_hyperplane(nodes, T)
        for power in range(5):
            s = [(-1 if T.contains(i) else 1) * x ** power for i, x in enumerate(nodes)]
            assert sum(c * v for c, v in zip(h, s)) == 0


def test_g2_count_and_distinctness():
    comps = enumerate_components(range(1, 7))
    assert len(comps) == 32
    assert len({c.hyperplane for c in comps}) == 32
    assert all(all(c.hyperplane) for c in comps)


@pytest.mark.parametrize("nodes", [(1, 2, 3, 4), (1, 2, 3, 4, 5, 6)])
def test_equality_criterion_exhaustive(nodes):
    n = len(nodes)
    planes = {m: vandermonde_hyperplane(nodes, WSubset(m, n)) for m in range(1 << n)}
    full = (1 << n) - 1
    for a, b in itertools.product(range(1 << n), repeat=2):
        assert (planes[a] == planes[b]) == (a == b or a == full ^ b)


def test_equality_criterion_sampled_g3():
    nodes = (-3, -1, 0, 2, 5, 6, 9, 11)
    rng = random.Random(3)
    full = 255
    for _ in range(400):
        a = rng.randrange(256)
        b = rng.choice([a, full ^ a, rng.randrange(256)])
        same = vandermonde_hyperplane(nodes, WSubset(a, 8)) == vandermonde_hyperplane(nodes, WSubset(b, 8))
        assert same == (a == b or a == full ^ b)


def test_even_classes():
    for g in (1, 2, 3):
        n = 2 * g + 2
        even = {WSubset(m, n).canonical().mask for m in range(1 << n) if bin(m).count("1") % 2 == 0}
        assert len(even) == 2 ** (2 * g)


def test_repeated_nodes_rejected():
    with pytest.raises(InvalidCurve):
        vandermonde_hyperplane([1, 1, 2, 3], WSubset(0, 4))


@given(st.integers(0, 63), st.integers(0, 63), st.integers(-5, 5))
def test_elm_parity_is_additive(a, b, e):
    A, B = WSubset(a, 6), WSubset(b, 6)
    assert elm_parity(elm_parity(e, A), B) == elm_parity(e, A ^ B)


def test_scroll_of_twist():
    C = curve_from_roots(2, range(1, 7))
    L = LineBundleSpec(6)
    a0, b0 = scroll_of_twist(C, L, WSubset(0, 6))
    for mask in range(64):
        T = WSubset(mask, 6)
        if T.size % 2:
            with pytest.raises(InvalidInput):
                scroll_of_twist(C, L, T)
            continue
        a, b = scroll_of_twist(C, L, T)
        assert a + b == 2 * 6 - C.g - 1
        assert 0 <= a - b <= C.g + 1
        assert (a - b) % 2 == elm_parity(a0 - b0, T)
    assert scroll_of_twist(C, L, WSubset(63, 6)) == (a0, b0)


def test_count_components():
    assert count_components(3)["count"] == 128
    assert count_components(3, True)["annotation"].startswith("+1")
    assert "annotation" not in count_components(4, True)
    with pytest.raises(Unsupported):
        count_components(1)


def test_report_json():
    rep = components_report(range(1, 7))
    assert rep["count"] == rep["distinct_hyperplanes"] == 32
    assert not rep["outside_theorem_range"]
    assert json.loads(dumps(rep)) == json.loads(json.dumps(rep))
    assert components_report(range(1, 5))["outside_theorem_range"]
