from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypercone.exactmath import (
    MPoly, SparseEchelon, as_rat, is_prime, kernel_basis, monomials, rank, rank_mod_p,
    rat_mod_p, rref, smith_normal_form, sparse_rank, upoly_deriv, upoly_divmod, upoly_eval,
    upoly_gcd, upoly_interpolate, upoly_mul,
)

VARS = ("a", "b", "c")
small = st.integers(-4, 4)


def det(M):
    """Leibniz expansion; independent of the elimination code."""
    n = len(M)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(1)
        for i in range(n):
            prod *= M[i][perm[i]]
        total += sign * prod
    return total


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), small, max_size=5))
    return MPoly(VARS, terms)


@st.composite
def matrices(draw, max_rows=5, max_cols=5, lo=-3, hi=3):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(st.integers(lo, hi)) for _ in range(c)] for _ in range(r)]


def test_as_rat_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        as_rat(0.5)
    with pytest.raises(TypeError):
        as_rat(True)
    assert as_rat("-3/4") == Fraction(-3, 4)


def test_parse_and_print():
    p = MPoly.parse("t0*s1 + 2*s5*s2 - s4^2", ("t0", "s1", "s2", "s4", "s5"))
    assert p.coefficient((0, 0, 0, 2, 0)) == -1
    assert MPoly.parse(str(p), p.vars) == p


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p - p).is_zero()


@given(polys(), polys())
def test_product_rule(p, q):
    for v in VARS:
        assert (p * q).derivative(v) == p.derivative(v) * q + p * q.derivative(v)


@given(polys(), st.tuples(small, small, small))
def test_evaluate_is_ring_map(p, pt):
    vals = dict(zip(VARS, pt))
    q = p * p + p
    assert q.evaluate(vals) == p.evaluate(vals) ** 2 + p.evaluate(vals)


def test_subs_composes():
    x, y = MPoly.gens(("x", "y"))
    p = x * x + y
    q = p.subs({"x": y + 1, "y": y}, ("x", "y"))
    assert q == (y + 1) * (y + 1) + y


def test_monomial_count():
    assert len(monomials(("a", "b", "c", "d"), 3)) == 20


@given(matrices(max_rows=4, max_cols=4))
def test_rank_matches_minors(M):
    # rank = largest size of a nonzero minor
    from itertools import combinations
    r = 0
    for k in range(1, min(len(M), len(M[0])) + 1):
        if any(det([[M[i][j] for j in cols] for i in rows])
               for rows in combinations(range(len(M)), k)
               for cols in combinations(range(len(M[0])), k)):
            r = k
    assert rank(M) == r


@given(matrices(max_rows=5, max_cols=5, lo=-2, hi=2))
def test_rank_mod_p_equals_exact_for_small_entries(M):
    # every minor is below the prime in absolute value
    assert rank_mod_p(M, 2097143) == rank(M)


@given(matrices(max_rows=6, max_cols=6))
def test_kernel_basis(M):
    ker = kernel_basis(M)
    assert len(ker) == len(M[0]) - rank(M)
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)


@given(matrices(max_rows=6, max_cols=6))
def test_sparse_echelon_agrees(M):
    rows = [{j: v for j, v in enumerate(r) if v} for r in M]
    assert sparse_rank(rows) == rank(M)
    ech = SparseEchelon()
    for r in rows:
        ech.add(r)
    for r in rows:
        assert ech.contains(r)
    ker = ech.kernel_of_rows(len(M[0]))
    assert len(ker) == len(M[0]) - rank(M)


def test_rref_pivots():
    R, piv = rref([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert piv == [0, 1]
    assert R[0][:2] == [1, 0]


def test_rank_mod_p_tall_blocked():
    rng = np.random.default_rng(0)
    A = rng.integers(0, 5, size=(40, 7))
    M = np.vstack([A @ rng.integers(0, 3, size=(7, 30))] * 30)
    assert rank_mod_p(M, 2096993, block_rows=64) == rank(M[:40].tolist())


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@settings(max_examples=60)
@given(matrices(max_rows=4, max_cols=4, lo=-6, hi=6))
def test_smith_normal_form(M):
    D, U, V = smith_normal_form(M)
    assert _matmul(_matmul(U, M), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)


def test_is_prime_against_trial_division():
    trial = lambda n: n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))
    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if trial(n)]
    assert is_prime(2097143) and is_prime(2096993)


def test_rat_mod_p():
    assert rat_mod_p(Fraction(1, 2), 7) * 2 % 7 == 1
    with pytest.raises(ZeroDivisionError):
        rat_mod_p(Fraction(1, 7), 7)


@given(st.lists(small, min_size=1, max_size=6), st.lists(small, min_size=1, max_size=4))
def test_upoly_division(a, b):
    if not any(b):
        return
    q, r = upoly_divmod(a, b)
    lhs = [Fraction(x) for x in a]
    prod = upoly_mul(q, b)
    for i in range(max(len(lhs), len(prod), len(r))):
        get = lambda p: p[i] if i < len(p) else 0
        assert get(lhs) == get(prod) + get(r)
    assert len(r) < len([x for x in b]) or not any(r)


def test_upoly_gcd_and_interpolation():
    f = upoly_mul([-1, 1], [-2, 1])        # (x-1)(x-2)
    g = upoly_mul([-1, 1], [3, 1])         # (x-1)(x+3)
    assert upoly_gcd(f, g) == [-1, 1]
    assert upoly_deriv([1, 2, 3]) == [2, 6]
    p = upoly_interpolate([0, 1, 2], [1, 3, 7])
    assert [upoly_eval(p, x) for x in (0, 1, 2, 5)] == [1, 3, 7, 31]
