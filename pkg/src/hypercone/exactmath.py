"""Exact arithmetic: rationals, sparse multivariate polynomials, linear algebra.

Rationals are :class:`fractions.Fraction`.  Polynomials are sparse maps from
dense exponent tuples to rational coefficients.  Linear algebra is offered in
three flavours:

* dense fraction-free elimination over Q (:func:`rank`, :func:`kernel_basis`),
* sparse exact elimination over Q (:class:`SparseEchelon`) for the larger
  graded pieces,
* elimination over a prime field with numpy (:func:`rank_mod_p`).

Smith normal form over Z is in :func:`smith_normal_form`.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

Rat = Fraction
Exponent = Tuple[int, ...]

__all__ = [
    "Rat", "as_rat", "MPoly", "poly_reduce_mod_curve", "monomials",
    "rank", "rref", "kernel_basis", "SparseEchelon", "sparse_rank",
    "rank_mod_p", "smith_normal_form", "is_prime",
    "upoly_trim", "upoly_mul", "upoly_add", "upoly_sub", "upoly_divmod",
    "upoly_gcd", "upoly_deriv", "upoly_eval", "upoly_interpolate",
]


def as_rat(value) -> Fraction:
    """Coerce ints, strings like ``"-3/4"`` and Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an exact rational")
    return Fraction(value)


# ---------------------------------------------------------------------------
# multivariate polynomials

class MPoly:
    """Sparse polynomial with rational coefficients in named variables.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    Fractions.  Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms", "_index")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        self.vars = tuple(vars)
        clean: Dict[Exponent, Fraction] = {}
        n = len(self.vars)
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} variables")
                c = as_rat(c)
                if c:
                    clean[tuple(e)] = clean.get(tuple(e), 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._index = None

    # construction -----------------------------------------------------
    @classmethod
    def gen(cls, vars: Sequence[str], name: str) -> "MPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): 1})

    @classmethod
    def const(cls, vars: Sequence[str], c=1) -> "MPoly":
        return cls(vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def gens(cls, vars: Sequence[str]) -> List["MPoly"]:
        return [cls.gen(vars, v) for v in vars]

    @classmethod
    def parse(cls, text: str, vars: Sequence[str]) -> "MPoly":
        """Parse sums of products such as ``"t0*s1 + 2*s5*s2 - s4^2"``.

        Implicit multiplication is not supported: factors need ``*``.
        """
        vars = tuple(vars)
        out = cls(vars)
        text = text.replace(" ", "").replace("**", "^")
        if not text:
            return out
        for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
            term = cls.const(vars, -1 if sign == "-" else 1)
            for factor in body.split("*"):
                if "^" in factor:
                    base, power = factor.split("^")
                    power = int(power)
                else:
                    base, power = factor, 1
                if base in vars:
                    term = term * cls.gen(vars, base) ** power
                else:
                    term = term * as_rat(base) ** power
            out = out + term
        return out

    # basic protocol ---------------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"ring mismatch: {self.vars} vs {other.vars}")
            return other
        return MPoly.const(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return _raw(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = as_rat(other)
            if not c:
                return MPoly(self.vars)
            return _raw(self.vars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        t: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return _raw(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection -------------------------------------------------------
    def coefficient(self, exponent: Exponent) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degrees(self, weights: Sequence[int]) -> set:
        return {sum(w * a for w, a in zip(weights, e)) for e in self.terms}

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        weights = weights or [1] * len(self.vars)
        return len(self.weighted_degrees(weights)) <= 1

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def variables_used(self) -> set:
        used = set()
        for e in self.terms:
            used.update(v for v, a in zip(self.vars, e) if a)
        return used

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms in descending lexicographic order of exponents."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    # transformations --------------------------------------------------
    def derivative(self, name: str) -> "MPoly":
        i = self.vars.index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                t[tuple(f)] = c * e[i]
        return _raw(self.vars, t)

    def in_ring(self, vars: Sequence[str]) -> "MPoly":
        """Re-express in a ring whose variables include all used ones."""
        vars = tuple(vars)
        pos = [vars.index(v) if v in vars else -1 for v in self.vars]
        t = {}
        for e, c in self.terms.items():
            f = [0] * len(vars)
            for i, a in enumerate(e):
                if a:
                    if pos[i] < 0:
                        raise ValueError(f"variable {self.vars[i]} missing from target ring")
                    f[pos[i]] = a
            t[tuple(f)] = c
        return _raw(vars, t)

    def subs(self, mapping: Mapping[str, object], target_vars: Sequence[str] | None = None) -> "MPoly":
        """Substitute polynomials (in ``target_vars``) for variables.

        Unmapped variables must exist in the target ring.
        """
        target_vars = tuple(target_vars) if target_vars is not None else self.vars
        images = []
        for v in self.vars:
            if v in mapping:
                img = mapping[v]
                img = img if isinstance(img, MPoly) else MPoly.const(target_vars, img)
                if img.vars != target_vars:
                    img = img.in_ring(target_vars)
                images.append(img)
            else:
                images.append(MPoly.gen(target_vars, v))
        cache: Dict[Tuple[int, int], MPoly] = {}

        def power(i, a):
            key = (i, a)
            if key not in cache:
                cache[key] = images[i] ** a
            return cache[key]

        out = MPoly(target_vars)
        for e, c in self.terms.items():
            term = MPoly.const(target_vars, c)
            for i, a in enumerate(e):
                if a:
                    term = term * power(i, a)
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        vals = [as_rat(values[v]) if v in values else None for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, a in zip(vals, e):
                if a:
                    if v is None:
                        raise KeyError("missing value for a variable in use")
                    term *= v ** a
            total += term
        return total

    def linear_coefficients(self) -> Dict[str, Fraction]:
        """Coefficients of a homogeneous linear form."""
        out = {}
        for e, c in self.terms.items():
            if sum(e) != 1:
                raise ValueError("not a linear form")
            out[self.vars[e.index(1)]] = c
        return out

    # output -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if a == 1 else f"{v}^{a}" for v, a in zip(self.vars, e) if a
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        text = "".join(f" {s} {b}" for s, b in pieces)
        text = text[3:] if text.startswith(" + ") else "-" + text[3:]
        return text

    def __repr__(self):
        return f"MPoly({str(self)!r})"

    def to_json(self) -> list:
        """Canonical term list: ``[[{var: exp}, "num/den"], ...]``."""
        return [
            [{v: a for v, a in zip(self.vars, e) if a}, str(c)]
            for e, c in self.sorted_terms()
        ]


def _raw(vars, terms) -> MPoly:
    p = MPoly.__new__(MPoly)
    p.vars = vars
    p.terms = terms
    p._index = None
    return p


def monomials(vars: Sequence[str], degree: int) -> List[MPoly]:
    """All monomials of a given total degree, in a fixed order."""
    vars = tuple(vars)
    n = len(vars)
    out = []
    for combo in combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(_raw(vars, {tuple(e): Fraction(1)}))
    return out


def poly_reduce_mod_curve(P: MPoly, F: MPoly, yvar: str = "y") -> MPoly:
    """Reduce ``P`` modulo ``yvar**2 - F`` to y-degree at most one.

    ``F`` must not involve ``yvar``; it is moved into ``P``'s ring.
    """
    F = F.in_ring(P.vars)
    if F.degree_in(yvar) > 0:
        raise ValueError("F must not involve y")
    iy = P.vars.index(yvar)
    top = P.degree_in(yvar)
    if top <= 1:
        return P
    fpow = [MPoly.const(P.vars, 1)]
    for _ in range(top // 2):
        fpow.append(fpow[-1] * F)
    out = MPoly(P.vars)
    for e, c in P.terms.items():
        q, r = divmod(e[iy], 2)
        f = list(e)
        f[iy] = r
        out = out + _raw(P.vars, {tuple(f): c}) * fpow[q]
    return out


# ---------------------------------------------------------------------------
# dense linear algebra over Q

def _to_rows(M) -> List[List[Fraction]]:
    return [[as_rat(x) for x in row] for row in M]


def rank(M) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    rows = _to_rows(M)
    if not rows or not rows[0]:
        return 0
    # scale each row to integers
    A = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        A.append([int(x * den) for x in row])
    m, n = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, m):
            a = A[i][c]
            Ai = A[i]
            Ar = A[r]
            for j in range(c + 1, n):
                Ai[j] = (p * Ai[j] - a * Ar[j]) // prev
            Ai[c] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r


def rref(M) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    A = _to_rows(M)
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def kernel_basis(M, ncols: int | None = None) -> List[List[Fraction]]:
    """Basis of the right null space ``{v : M v = 0}``."""
    rows = _to_rows(M)
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(rows[0])
    R, pivots = rref(rows)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# sparse exact elimination over Q

class SparseEchelon:
    """Incrementally maintained echelon basis of sparse rational vectors.

    Vectors are dicts ``column -> Fraction``.  Each stored row has a pivot
    (its smallest column) with coefficient 1 and is reduced against earlier
    pivots, so membership tests are a single reduction pass.
    """

    def __init__(self):
        self.rows: Dict[int, Dict[int, Fraction]] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[int, object]) -> Dict[int, Fraction]:
        v = {c: as_rat(x) for c, x in vec.items() if x}
        rows = self.rows
        while True:
            hits = [c for c in v if c in rows]
            if not hits:
                return v
            c = min(hits)
            f = v[c]
            for j, x in rows[c].items():
                y = v.get(j, 0) - f * x
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)

    def add(self, vec: Mapping[int, object]) -> bool:
        """Insert a vector; return True when it was independent."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = 1 / v[p]
        self.rows[p] = {j: x * inv for j, x in v.items()}
        return True

    def contains(self, vec: Mapping[int, object]) -> bool:
        return not self.reduce(vec)

    def full_rref(self) -> Dict[int, Dict[int, Fraction]]:
        """Fully reduced rows keyed by pivot (back substitution)."""
        out: Dict[int, Dict[int, Fraction]] = {}
        for p in sorted(self.rows, reverse=True):
            v = dict(self.rows[p])
            for c in sorted(c for c in v if c != p and c in out):
                f = v.get(c)
                if not f:
                    continue
                for j, x in out[c].items():
                    y = v.get(j, 0) - f * x
                    if y:
                        v[j] = y
                    else:
                        v.pop(j, None)
            out[p] = v
        return out

    def kernel_of_rows(self, ncols: int) -> List[Dict[int, Fraction]]:
        """Null space of the matrix whose rows were added."""
        R = self.full_rref()
        free = [c for c in range(ncols) if c not in R]
        basis = []
        for f in free:
            v = {f: Fraction(1)}
            for p, row in R.items():
                x = row.get(f)
                if x:
                    v[p] = -x
            basis.append(v)
        return basis


def sparse_rank(vectors: Iterable[Mapping[int, object]]) -> int:
    ech = SparseEchelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


# ---------------------------------------------------------------------------
# prime fields

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rat_mod_p(x: Fraction, p: int) -> int:
    x = as_rat(x)
    if x.denominator % p == 0:
        raise ZeroDivisionError(f"denominator divisible by {p}")
    return x.numerator * pow(x.denominator, -1, p) % p


# float64 matmul is exact while p*p*block < 2**53
_BLAS_PRIME_LIMIT = 1 << 21
_BLOCK = 1 << 10


def _mulmod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact ``A @ B mod p`` for int64 arrays with entries in [0, p)."""
    if p < _BLAS_PRIME_LIMIT:
        Af = A.astype(np.float64)
        Bf = B.astype(np.float64)
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for s in range(0, A.shape[1], _BLOCK):
            part = Af[:, s:s + _BLOCK] @ Bf[s:s + _BLOCK]
            out = (out + np.fmod(part, p).astype(np.int64)) % p
        return out
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(A.shape[1]):
        out = (out + np.outer(A[:, s], B[s]) % p) % p
    return out


def _eliminate_dense(A: np.ndarray, p: int) -> int:
    """In-place row reduction mod p; returns the rank."""
    m, n = A.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = A[r, c:] * inv % p
        below = A[r + 1:, c]
        idx = np.nonzero(below)[0]
        if idx.size:
            rows = r + 1 + idx
            A[rows, c:] = (A[rows, c:] - np.outer(A[rows, c], A[r, c:]) % p) % p
        r += 1
    return r


def rank_mod_p(M, p: int, block_rows: int = 512) -> int:
    """Rank over the field with ``p`` elements.

    ``M`` is an integer array-like (entries reduced mod p).  Tall matrices
    are processed in row blocks against a reduced echelon basis so the work
    stays proportional to ``rows * cols * rank``.
    """
    A = np.asarray(M, dtype=np.int64) % p
    if A.ndim != 2 or A.size == 0:
        return 0
    m, n = A.shape
    if m <= block_rows:
        return _eliminate_dense(A.copy(), p)
    basis = np.zeros((0, n), dtype=np.int64)   # RREF rows
    pivots = np.zeros(0, dtype=np.int64)
    for s in range(0, m, block_rows):
        X = A[s:s + block_rows].copy()
        if pivots.size:
            X = (X - _mulmod(X[:, pivots], basis, p)) % p
        X = X[np.any(X, axis=1)]
        if X.shape[0] == 0:
            continue
        k = _eliminate_dense(X, p)
        if k == 0:
            continue
        X = X[:k]
        newpiv = np.array([int(np.nonzero(row)[0][0]) for row in X], dtype=np.int64)
        # back substitution inside the new block
        for a in range(k - 1, -1, -1):
            col = newpiv[a]
            above = np.nonzero(X[:a, col])[0]
            if above.size:
                X[above] = (X[above] - np.outer(X[above, col], X[a]) % p) % p
        if pivots.size:
            basis = (basis - _mulmod(basis[:, newpiv], X, p)) % p
        basis = np.vstack([basis, X])
        pivots = np.concatenate([pivots, newpiv])
        if pivots.size == n:
            break
    return int(pivots.size)


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(A) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    """Smith normal form ``D = U A V`` with unimodular U, V.

    Diagonal entries are nonnegative and each divides the next.
    """
    M = [[int(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):      # row_dst += f * row_src
        M[dst] = [a + f * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):      # col_dst += f * col_src
        for row in M:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    add_row(i, t, -q)
                    if M[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    add_col(j, t, -q)
                    if M[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                 if M[i][j] % M[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return M, U, V


# ---------------------------------------------------------------------------
# univariate helpers; coefficient lists low -> high

def upoly_trim(a: Sequence) -> List[Fraction]:
    a = [as_rat(x) for x in a]
    while a and not a[-1]:
        a.pop()
    return a


def upoly_add(a, b):
    n = max(len(a), len(b))
    return upoly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def upoly_sub(a, b):
    return upoly_add(a, [-x for x in b])


def upoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return upoly_trim(out)


def upoly_divmod(a, b):
    a, b = upoly_trim(a), upoly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, y in enumerate(b):
            r[shift + i] -= f * y
        r = upoly_trim(r)
    return upoly_trim(q), r


def upoly_gcd(a, b):
    a, b = upoly_trim(a), upoly_trim(b)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    if not a:
        return []
    return [x / a[-1] for x in a]


def upoly_deriv(a):
    return upoly_trim([i * a[i] for i in range(1, len(a))])


def upoly_eval(a, x):
    x = as_rat(x)
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def upoly_interpolate(xs, ys) -> List[Fraction]:
    """Lagrange interpolation through the points ``(xs[i], ys[i])``."""
    xs = [as_rat(x) for x in xs]
    ys = [as_rat(y) for y in ys]
    out: List[Fraction] = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = upoly_mul(basis, [-xj, Fraction(1)])
                den *= xi - xj
        out = upoly_add(out, [c * yi / den for c in basis])
    return out
