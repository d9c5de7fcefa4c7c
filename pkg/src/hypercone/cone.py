"""Rolling-factors presentations of cones over hyperelliptic curves and points.

A presentation consists of the 2x2 minors of a 2-row scroll matrix and the
extra quadrics phi_0..phi_b.  Every phi_m carries a *rolling decomposition*
``phi_m = sum top(col) c_col`` with ``phi_{m+1} = sum bottom(col) c_col``;
the linear relations among the generators are built from it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .curve import (
    RING, HyperellipticCurve, LineBundleSpec, MumfordDivisor, generator_forms,
)
from .errors import InvalidCurve, Unsupported
from .exactmath import (
    MPoly, SparseEchelon, as_rat, monomials, upoly_deriv, upoly_gcd, upoly_trim,
)

RelationVector = Dict[int, MPoly]


def floor_half(m: int) -> int:
    return m // 2


def ceil_half(m: int) -> int:
    # ceil(m/2) == floor((m+1)/2) for integers
    return (m + 1) // 2


# ---------------------------------------------------------------------------
# parametrizations

@dataclass(frozen=True)
class CurveModel:
    """Coordinates realized as reduced forms on the curve."""

    curve: HyperellipticCurve
    L: LineBundleSpec
    images: Tuple[MPoly, ...]

    kind = "curve"

    @property
    def weight(self) -> int:
        return self.L.weight(self.curve)

    def image(self, P: MPoly, coords: Sequence[str]) -> MPoly:
        return self.curve.reduce(P.subs(dict(zip(coords, self.images)), RING))


@dataclass(frozen=True)
class PointsModel:
    """Coordinates evaluated at the points (xb_j : x_j) of a rational normal curve."""

    points: Tuple[Tuple[Fraction, Fraction], ...]
    top: int  # coordinates are z_i = xb^(top-i) x^i

    kind = "points"

    def values(self, i: int) -> Tuple[Fraction, ...]:
        return tuple(xb ** (self.top - i) * x ** i for xb, x in self.points)

    def image(self, P: MPoly, coords: Sequence[str]) -> Tuple[Fraction, ...]:
        out = []
        for xb, x in self.points:
            vals = {c: xb ** (self.top - i) * x ** i for i, c in enumerate(coords)}
            out.append(P.evaluate(vals))
        return tuple(out)


# ---------------------------------------------------------------------------
# presentation

@dataclass(frozen=True)
class RollingFactorsPresentation:
    kind: str
    g: int
    d: int
    coords: Tuple[str, ...]
    top: Tuple[str, ...]
    bottom: Tuple[str, ...]
    minors: Tuple[MPoly, ...]
    minor_columns: Tuple[Tuple[int, int], ...]
    phis: Tuple[MPoly, ...]
    rolling: Tuple[Tuple[Tuple[int, MPoly], ...], ...]
    model: object = None

    @property
    def generators(self) -> Tuple[MPoly, ...]:
        return self.minors + self.phis

    @property
    def generator_names(self) -> List[str]:
        names = [f"f[{self.top[p]},{self.top[q]}]" for p, q in self.minor_columns]
        return names + [f"phi{m}" for m in range(len(self.phis))]

    @property
    def ncols(self) -> int:
        return len(self.top)

    @property
    def b(self) -> int:
        """Index of the last phi."""
        return len(self.phis) - 1

    def phi_index(self, m: int) -> int:
        return len(self.minors) + m

    def minor_index(self, p: int, q: int) -> Tuple[int, int]:
        """(sign, generator index) of the minor on columns p, q; sign 0 if p == q."""
        if p == q:
            return 0, -1
        n = self.ncols
        lo, hi = min(p, q), max(p, q)
        idx = lo * n - lo * (lo + 1) // 2 + (hi - lo - 1)
        return (1 if p < q else -1), idx

    def var(self, name: str) -> MPoly:
        return MPoly.gen(self.coords, name)

    def top_var(self, col: int) -> MPoly:
        return self.var(self.top[col])

    def bottom_var(self, col: int) -> MPoly:
        return self.var(self.bottom[col])

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "g": self.g,
            "d": self.d,
            "coordinates": list(self.coords),
            "matrix": [list(self.top), list(self.bottom)],
            "generators": [
                {"name": n, "text": str(p), "terms": p.to_json()}
                for n, p in zip(self.generator_names, self.generators)
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def _scroll_minors(coords, top, bottom):
    n = len(top)
    minors, cols = [], []
    T = [MPoly.gen(coords, v) for v in top]
    B = [MPoly.gen(coords, v) for v in bottom]
    for p in range(n):
        for q in range(p + 1, n):
            minors.append(T[p] * B[q] - T[q] * B[p])
            cols.append((p, q))
    return tuple(minors), tuple(cols)


def _rolled(coords, col_of, blocks, mmax):
    """phi_m and rolling decompositions from blocks.

    Each block ``(coeffs, X, Y)`` contributes
    ``sum_i coeffs[i] * X[floor((m+i)/2)] * Y[ceil((m+i)/2)]`` where X, Y are
    lists of coordinate names.  For even m+i the Y factor rolls, for odd m+i
    the X factor rolls.
    """
    phis, rolling = [], []
    for m in range(mmax + 1):
        phi = MPoly(coords)
        dec: Dict[int, MPoly] = {}
        for coeffs, X, Y in blocks:
            for i, c in enumerate(coeffs):
                if not c:
                    continue
                lo, hi = floor_half(m + i), ceil_half(m + i)
                x, y = MPoly.gen(coords, X[lo]), MPoly.gen(coords, Y[hi])
                phi = phi + x * y * c
                if m < mmax:
                    if (m + i) % 2 == 0:
                        col, rest = col_of[Y[hi]], x
                    else:
                        col, rest = col_of[X[lo]], y
                    dec[col] = dec.get(col, MPoly(coords)) + rest * c
        phis.append(phi)
        if m < mmax:
            rolling.append(tuple(sorted((c, p) for c, p in dec.items() if p)))
    return tuple(phis), tuple(rolling)


def _curve_presentation(curve, L, U, V, W, e, k):
    g = curve.g
    d = L.d
    z = [f"z{i}" for i in range(k + 1)]
    w = [f"w{i}" for i in range(k - e + 1)]
    coords = tuple(z + w)
    top = tuple(z[:-1] + w[:-1])
    bottom = tuple(z[1:] + w[1:])
    col_of = {v: i for i, v in enumerate(top)}
    minors, cols = _scroll_minors(coords, top, bottom)
    blocks = [
        (list(U), w, w),
        ([-2 * c for c in V], w, z),
        ([-c for c in W], z, z),
    ]
    phis, rolling = _rolled(coords, col_of, blocks, d - 2 * g - 2)
    zf, wf = generator_forms(curve, L)
    model = CurveModel(curve, L, tuple(zf + wf))
    return RollingFactorsPresentation(
        "curve", g, d, coords, top, bottom, minors, cols, phis, rolling, model
    )


def cone_equations_kg12(curve: HyperellipticCurve, k: int) -> RollingFactorsPresentation:
    """Equations of the cone over C embedded by k g^1_2."""
    g = curve.g
    if k <= g + 1 or 2 * k < 2 * g + 3:
        raise Unsupported("need k > g+1")
    L = LineBundleSpec(k)
    return _curve_presentation(curve, L, [1], [], curve.a, g + 1, k)


def cone_equations_general(curve: HyperellipticCurve, M: MumfordDivisor, k: int) -> RollingFactorsPresentation:
    """Equations for L = k g^1_2 + D with D given by its Mumford triple."""
    M.check(curve)
    L = LineBundleSpec(k, M)
    if L.d < 2 * curve.g + 3:
        raise Unsupported("need d >= 2g+3")
    return _curve_presentation(curve, L, upoly_trim(M.U), upoly_trim(M.V), upoly_trim(M.W), M.e, k)


def hyperplane_section_equations(g: int, d: int, F: Sequence, points: Optional[Sequence] = None) -> RollingFactorsPresentation:
    """Cone over the d points F = 0 on the rational normal curve of degree d-g-1.

    ``F`` lists a_0..a_d (coefficient of xb^(d-i) x^i).  ``points`` are the
    roots as pairs (xb, x) or affine x values; when given, they drive the
    evaluation model used by the graded computations.
    """
    a = [as_rat(c) for c in F]
    if len(a) != d + 1:
        raise ValueError("F needs d+1 coefficients")
    if not d > 2 * g + 2:
        raise Unsupported("need d > 2g+2")
    f = upoly_trim(a)
    if len(f) - 1 < d - 1 or len(upoly_gcd(f, upoly_deriv(f))) > 1:
        raise InvalidCurve("F is not squarefree")
    n = d - g - 1
    z = [f"z{i}" for i in range(n + 1)]
    coords = tuple(z)
    top, bottom = tuple(z[:-1]), tuple(z[1:])
    col_of = {v: i for i, v in enumerate(top)}
    minors, cols = _scroll_minors(coords, top, bottom)
    phis, rolling = _rolled(coords, col_of, [(a, z, z)], d - 2 * g - 2)
    model = None
    if points is not None:
        pts = []
        for p in points:
            xb, x = (Fraction(1), as_rat(p)) if not isinstance(p, (tuple, list)) else (as_rat(p[0]), as_rat(p[1]))
            pts.append((xb, x))
        if len(set(pts)) != d:
            raise InvalidCurve("need d distinct points")
        for xb, x in pts:
            val = sum(c * xb ** (d - i) * x ** i for i, c in enumerate(a))
            if val:
                raise InvalidCurve("point is not a root of F")
        model = PointsModel(tuple(pts), n)
    return RollingFactorsPresentation("points", g, d, coords, top, bottom, minors, cols, phis, rolling, model)


def points_cone_from_roots(g: int, roots: Sequence) -> RollingFactorsPresentation:
    """Hyperplane-section presentation for F = prod (x - r)."""
    from .exactmath import upoly_mul
    roots = [as_rat(r) for r in roots]
    f = [Fraction(1)]
    for r in roots:
        f = upoly_mul(f, [-r, Fraction(1)])
    return hyperplane_section_equations(g, len(roots), f, roots)


# ---------------------------------------------------------------------------
# parametrization and relations

def parametrization_residues(pres: RollingFactorsPresentation) -> List:
    """Images of all generators under the parametrization (all zero when valid)."""
    if pres.model is None:
        raise Unsupported("presentation has no parametrization model")
    return [pres.model.image(P, pres.coords) for P in pres.generators]


def check_parametrization(pres: RollingFactorsPresentation) -> bool:
    res = parametrization_residues(pres)
    if pres.model.kind == "curve":
        return all(r.is_zero() for r in res)
    return all(not any(v) for v in res)


def rolling_property(pres: RollingFactorsPresentation) -> bool:
    """phi_m = sum top*c and phi_{m+1} = sum bottom*c for every decomposition."""
    for m, dec in enumerate(pres.rolling):
        lhs_top = sum((pres.top_var(c) * p for c, p in dec), MPoly(pres.coords))
        lhs_bot = sum((pres.bottom_var(c) * p for c, p in dec), MPoly(pres.coords))
        if lhs_top != pres.phis[m] or lhs_bot != pres.phis[m + 1]:
            return False
    return True


def _acc(vec: RelationVector, idx: int, poly: MPoly) -> None:
    if poly.is_zero():
        return
    cur = vec.get(idx)
    new = poly if cur is None else cur + poly
    if new.is_zero():
        vec.pop(idx, None)
    else:
        vec[idx] = new


def apply_relation(pres: RollingFactorsPresentation, vec: RelationVector) -> MPoly:
    """sum_alpha vec[alpha] * generator_alpha."""
    gens = pres.generators
    out = MPoly(pres.coords)
    for i, c in vec.items():
        out = out + c * gens[i]
    return out


def rolling_relation(pres: RollingFactorsPresentation, col: int, m: int) -> RelationVector:
    """phi_{m+1} top(col) - phi_m bottom(col) - sum_a c_a minor(col, a)."""
    vec: RelationVector = {}
    _acc(vec, pres.phi_index(m + 1), pres.top_var(col))
    _acc(vec, pres.phi_index(m), -pres.bottom_var(col))
    for a, c in pres.rolling[m]:
        sign, idx = pres.minor_index(col, a)
        if sign:
            _acc(vec, idx, c * (-sign))
    return vec


def determinantal_relation(pres: RollingFactorsPresentation, i: int, j: int, k: int, row: str = "top") -> RelationVector:
    """f_{i,j} x_k - f_{i,k} x_j + f_{j,k} x_i with x from the given matrix row."""
    pick = pres.top_var if row == "top" else pres.bottom_var
    vec: RelationVector = {}
    for (p, q), x, s in (((i, j), pick(k), 1), ((i, k), pick(j), -1), ((j, k), pick(i), 1)):
        sign, idx = pres.minor_index(p, q)
        if sign:
            _acc(vec, idx, x * (s * sign))
    return vec


def koszul_relation(pres: RollingFactorsPresentation, a: int, b: int) -> RelationVector:
    """e_a * gen_b - e_b * gen_a."""
    gens = pres.generators
    vec: RelationVector = {}
    _acc(vec, a, gens[b])
    _acc(vec, b, -gens[a])
    return vec


def hand_relation_points(pres: RollingFactorsPresentation, j: int, m: int, a: Sequence) -> RelationVector:
    """R_{j,m} for a points cone, written out term by term.

    R_{j,m} = phi_{m+1} z_j - phi_m z_{j+1} - sum_i a_i f_{j, floor((m+i)/2)} z_{ceil((m+i)/2)}
    """
    z = lambda i: pres.var(f"z{i}")
    vec: RelationVector = {}
    _acc(vec, pres.phi_index(m + 1), z(j))
    _acc(vec, pres.phi_index(m), -z(j + 1))
    for i, c in enumerate(a):
        if c:
            sign, idx = pres.minor_index(j, floor_half(m + i))
            if sign:
                _acc(vec, idx, z(ceil_half(m + i)) * (-as_rat(c) * sign))
    return vec


def vec_add(*terms: Tuple[object, RelationVector]) -> RelationVector:
    """Linear combination sum coeff * vec with polynomial or scalar coeffs."""
    out: RelationVector = {}
    for coeff, vec in terms:
        for i, p in vec.items():
            _acc(out, i, p * coeff)
    return out


def verify_relation_identities(pres: RollingFactorsPresentation, max_index: Optional[int] = None) -> dict:
    """Check R_{j,m} x_k - R_{k,m} x_j - sum c_a R_{j,k,a} = phi_m j(f_jk) - f_jk j(phi_m).

    Here x_j = top(j); the right side is the Koszul relation with phi_m in the
    slot of f_{j,k}.  Every relation involved is also checked to be a syzygy.
    Columns range over both z- and w-columns (the w-columns give the S_{j,m}).
    """
    ncols = pres.ncols
    cols = range(ncols if max_index is None else min(ncols, max_index + 1))
    failures = []
    checked = 0
    for m in range(len(pres.rolling)):
        if max_index is not None and m > max_index:
            break
        rel = {c: rolling_relation(pres, c, m) for c in cols}
        for c, v in rel.items():
            if not apply_relation(pres, v).is_zero():
                failures.append(("not a syzygy", c, m))
        for j in cols:
            for k in cols:
                if j >= k:
                    continue
                lhs = vec_add((pres.top_var(k), rel[j]), (-pres.top_var(j), rel[k]))
                for a, c in pres.rolling[m]:
                    lhs = vec_add((1, lhs), (-c, determinantal_relation(pres, j, k, a)))
                sign, fidx = pres.minor_index(j, k)
                rhs = koszul_relation(pres, pres.phi_index(m), fidx)
                if sign < 0:
                    rhs = vec_add((-1, rhs))
                checked += 1
                if lhs != rhs:
                    failures.append((j, k, m))
    return {"passed": not failures, "checked": checked, "failures": failures}


# ---------------------------------------------------------------------------
# syzygies

def _poly_key(P: MPoly, index: dict) -> Dict[int, Fraction]:
    return {index.setdefault(e, len(index)): c for e, c in P.terms.items()}


def syzygy_basis(pres: RollingFactorsPresentation, total_degree: int = 3) -> List[Tuple[MPoly, ...]]:
    """Basis of relations sum c_a gen_a = 0 with c_a forms of degree total_degree-2."""
    cdeg = total_degree - 2
    if cdeg < 0:
        return []
    gens = pres.generators
    monos = monomials(pres.coords, cdeg)
    N, n = len(gens), len(monos)
    # rows indexed by target monomials; columns by (generator, coefficient monomial)
    rows: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
    for a, f in enumerate(gens):
        for j, mono in enumerate(monos):
            (me, _), = mono.terms.items()
            col = a * n + j
            for e, c in f.terms.items():
                key = tuple(x + y for x, y in zip(e, me))
                rows.setdefault(key, {})[col] = c
    ech = SparseEchelon()
    for key in sorted(rows):
        ech.add(rows[key])
    out = []
    for vec in ech.kernel_of_rows(N * n):
        coeffs = [MPoly(pres.coords) for _ in range(N)]
        for col, c in vec.items():
            a, j = divmod(col, n)
            coeffs[a] = coeffs[a] + monos[j] * c
        out.append(tuple(coeffs))
    return out


def multiplication_matrix_rank(pres: RollingFactorsPresentation, total_degree: int = 3) -> Tuple[int, int]:
    """(rank, number of columns) of (forms)^N -> forms of total_degree."""
    cdeg = total_degree - 2
    gens = pres.generators
    monos = monomials(pres.coords, cdeg)
    n = len(monos)
    rows: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
    for a, f in enumerate(gens):
        for j, mono in enumerate(monos):
            (me, _), = mono.terms.items()
            for e, c in f.terms.items():
                key = tuple(x + y for x, y in zip(e, me))
                rows.setdefault(key, {})[a * n + j] = c
    ech = SparseEchelon()
    for key in sorted(rows):
        ech.add(rows[key])
    return ech.rank, len(gens) * n


def relation_in_span(relation: RelationVector, basis: Sequence[Tuple[MPoly, ...]], coords: Sequence[str]) -> bool:
    """Membership of a relation vector in the span of syzygy vectors (over Q)."""
    index: dict = {}

    def flat(vec_items):
        out = {}
        for a, p in vec_items:
            for e, c in p.terms.items():
                out[index.setdefault((a, e), len(index))] = c
        return out

    ech = SparseEchelon()
    for s in basis:
        ech.add(flat((a, p) for a, p in enumerate(s) if not p.is_zero()))
    return ech.contains(flat(relation.items()))


def expected_generator_count(pres: RollingFactorsPresentation) -> int:
    return comb(pres.ncols, 2) + len(pres.phis)
