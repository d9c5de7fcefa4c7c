from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from hypercone.cone import (
    apply_relation, ceil_half, check_parametrization, cone_equations_general, cone_equations_kg12,
    determinantal_relation, expected_generator_count, hand_relation_points,
    hyperplane_section_equations, multiplication_matrix_rank, points_cone_from_roots,
    relation_in_span, rolling_property, rolling_relation, syzygy_basis, verify_relation_identities,
)
from hypercone.curve import HyperellipticCurve, MumfordDivisor, curve_from_roots, mumford_from_points
from hypercone.errors import InvalidCurve, InvalidDivisor, Unsupported
from hypercone.exactmath import MPoly, SparseEchelon


@pytest.fixture(scope="module")
def cone26():
    return cone_equations_kg12(HyperellipticCurve.special(2), 6)


@pytest.fixture(scope="module")
def points212():
    return points_cone_from_roots(2, range(1, 13))


def test_ceil_half():
    assert [ceil_half(m) for m in range(-3, 4)] == [-1, -1, 0, 0, 1, 1, 2]


def test_kg12_counts(cone26):
    assert len(cone26.coords) == 11
    assert len(cone26.minors) == comb(9, 2) == 36
    assert len(cone26.phis) == 7
    assert (len(cone26.top), len(cone26.bottom)) == (9, 9)
    assert expected_generator_count(cone26) == 43


def test_phi0(cone26):
    C = HyperellipticCurve.special(2)
    v = cone26.var
    expected = v("w0") * v("w0")
    for i, a in enumerate(C.a):
        expected = expected - v(f"z{i // 2}") * v(f"z{(i + 1) // 2}") * a
    assert cone26.phis[0] == expected


def test_last_phi_index_bound():
    for g, k in [(2, 4), (2, 7), (3, 6), (3, 9)]:
        pres = cone_equations_kg12(curve_from_roots(g, range(1, 2 * g + 3)), k)
        used = pres.phis[-1].variables_used()
        assert f"z{k}" in used and f"w{k - g - 1}" in used
        assert all(int(v[1:]) <= (k if v[0] == "z" else k - g - 1) for v in used)


def test_kg12_range():
    with pytest.raises(Unsupported):
        cone_equations_kg12(HyperellipticCurve.special(2), 3)


def test_all_generators_quadrics(cone26, points212):
    for pres in (cone26, points212):
        assert all(p.is_homogeneous() and p.total_degree() == 2 for p in pres.generators)


@pytest.mark.parametrize("g,k", [(2, 4), (2, 6), (2, 7), (3, 5), (3, 8)])
def test_parametrization_kg12(g, k):
    C = curve_from_roots(g, [i for i in range(-g - 1, g + 2) if i])
    pres = cone_equations_kg12(C, k)
    assert check_parametrization(pres)
    assert rolling_property(pres)


def test_general_bundle():
    D = HyperellipticCurve(2, (1, 1, 0, 0, 0, 0, 1))
    M = mumford_from_points(D, [(0, 1)])
    pres = cone_equations_general(D, M, 5)
    assert pres.d == 2 * 5 + 1
    assert len(M.W) - 1 == D.g + 1 + M.e
    assert check_parametrization(pres) and rolling_property(pres)
    assert check_parametrization(cone_equations_general(D, mumford_from_points(D, [(-1, 1), (0, 1)]), 5))


def test_general_with_empty_divisor_is_kg12():
    C = curve_from_roots(2, range(1, 7))
    empty = MumfordDivisor((1,), (), tuple(C.a), C.g + 1)
    assert cone_equations_general(C, empty, 6).generators == cone_equations_kg12(C, 6).generators


def test_general_rejects_bad_triple():
    C = curve_from_roots(2, range(1, 7))
    with pytest.raises(InvalidDivisor):
        cone_equations_general(C, MumfordDivisor((0, 1), (1,), (1, 0, 0, 0, 0), 1), 5)


def test_points_cone(points212):
    assert len(points212.top) == 9
    assert len(points212.minors) == 36 and len(points212.phis) == 7
    assert expected_generator_count(points212) == 43
    assert check_parametrization(points212) and rolling_property(points212)


def test_points_cone_rejects_nonsquarefree():
    d = 12
    F = [1] + [0] * d          # xb^d
    with pytest.raises(InvalidCurve):
        hyperplane_section_equations(2, d, F)
    with pytest.raises(Unsupported):
        points_cone_from_roots(2, range(1, 7))


@settings(max_examples=10, deadline=None)
@given(st.sets(st.integers(-30, 30), min_size=9, max_size=9))
def test_points_parametrization_random(roots):
    assert check_parametrization(points_cone_from_roots(2, sorted(roots)))


def test_hand_relation_matches_rolling(points212):
    a = [Fraction(c) for c in _coeffs(range(1, 13))]
    for j in range(4):
        for m in range(4):
            hand = hand_relation_points(points212, j, m, a)
            assert apply_relation(points212, hand).is_zero()
            assert hand == rolling_relation(points212, j, m)


def _coeffs(roots):
    from hypercone.exactmath import upoly_mul
    f = [Fraction(1)]
    for r in roots:
        f = upoly_mul(f, [-Fraction(r), Fraction(1)])
    return f


def test_syzygies_contain_hand_relations(points212, cone26):
    syz = syzygy_basis(points212)
    a = _coeffs(range(1, 13))
    assert relation_in_span(hand_relation_points(points212, 0, 0, a), syz, points212.coords)
    syz_c = syzygy_basis(cone26)
    assert relation_in_span(determinantal_relation(cone26, 0, 1, 2), syz_c, cone26.coords)
    # a mutated relation is not a syzygy and not in the span
    bad = dict(rolling_relation(cone26, 0, 0))
    bad[0] = bad.get(0, MPoly(cone26.coords)) + cone26.var("z0")
    assert not relation_in_span(bad, syz_c, cone26.coords)


def test_syzygy_kernel_dimension(cone26):
    syz = syzygy_basis(cone26)
    r, cols = multiplication_matrix_rank(cone26)
    assert len(syz) == cols - r
    for s in syz[:40]:
        assert sum((c * g for c, g in zip(s, cone26.generators)), MPoly(cone26.coords)).is_zero()


def test_relation_identities(points212, cone26):
    assert verify_relation_identities(points212, max_index=3)["passed"]
    rep = verify_relation_identities(cone26)
    assert rep["passed"] and rep["checked"] > 0
    D = HyperellipticCurve(2, (1, 1, 0, 0, 0, 0, 1))
    gen = cone_equations_general(D, mumford_from_points(D, [(-1, 1), (0, 1)]), 5)
    assert verify_relation_identities(gen)["passed"]


def test_identity_checker_detects_corruption(cone26):
    # corrupt one rolling decomposition: the identity check must fail
    import dataclasses
    m0 = list(cone26.rolling[0])
    col, c = m0[0]
    m0[0] = (col, c + cone26.var("z0"))
    broken = dataclasses.replace(cone26, rolling=(tuple(m0),) + cone26.rolling[1:])
    assert not verify_relation_identities(broken, max_index=2)["passed"]


def test_degree_four_syzygies_are_generated_in_degree_three():
    pres = cone_equations_kg12(curve_from_roots(2, range(1, 7)), 4)
    deg3 = syzygy_basis(pres, 3)
    deg4 = syzygy_basis(pres, 4)
    index = {}
    ech = SparseEchelon()
    for s in deg3:
        for x in pres.coords:
            xv = pres.var(x)
            vec = {}
            for a, p in enumerate(s):
                for e, c in (p * xv).terms.items():
                    vec[index.setdefault((a, e), len(index))] = c
            ech.add(vec)
    assert ech.rank == len(deg4)


def test_json_is_canonical(cone26):
    js = cone26.to_json()
    assert js["coordinates"][:2] == ["z0", "z1"]
    assert js["generators"][0]["name"] == "f[z0,z1]"
    assert js["generators"][-1]["name"] == "phi6"
    assert cone26.dumps() == cone_equations_kg12(HyperellipticCurve.special(2), 6).dumps()
