"""Hyperelliptic curves y^2 = F(xb, x), Mumford triples and section spaces.

The function ring of a curve is modelled bihomogeneously: polynomials in
``xb, x, y`` where ``y`` has weight g+1, reduced modulo ``y^2 - F``.  A section
of a line bundle of weight ``w`` is a form of total weight ``w``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import ConsistencyError, InvalidCurve, InvalidDivisor, InvalidInput, InvalidPoint, Unsupported
from .exactmath import (
    MPoly, SparseEchelon, as_rat, poly_reduce_mod_curve, rank,
    upoly_deriv, upoly_divmod, upoly_eval, upoly_gcd, upoly_interpolate,
    upoly_mul, upoly_sub, upoly_trim,
)

RING = ("xb", "x", "y")


def binary_form(coeffs: Sequence, degree: int, vars: Sequence[str] = RING) -> MPoly:
    """Homogenize ``sum c_i x^i`` to degree ``degree`` in (xb, x)."""
    vars = tuple(vars)
    ib, ix = vars.index("xb"), vars.index("x")
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            if i > degree:
                raise ValueError("coefficient beyond homogenizing degree")
            e = [0] * len(vars)
            e[ib], e[ix] = degree - i, i
            terms[tuple(e)] = c
    return MPoly(vars, terms)


@dataclass(frozen=True)
class HyperellipticCurve:
    """The curve ``y^2 = sum a_i xb^(2g+2-i) x^i``."""

    g: int
    a: Tuple[Fraction, ...]
    branch_xs: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        if self.g < 1:
            raise InvalidCurve("genus must be at least 1")
        a = tuple(as_rat(c) for c in self.a)
        if len(a) != 2 * self.g + 3:
            raise InvalidCurve(f"need {2 * self.g + 3} coefficients, got {len(a)}")
        object.__setattr__(self, "a", a)
        f = upoly_trim(a)
        if len(f) - 1 < 2 * self.g + 1:
            raise InvalidCurve("binary form is not squarefree (multiple root at infinity)")
        if len(upoly_gcd(f, upoly_deriv(f))) > 1:
            raise InvalidCurve("F is not squarefree")
        if self.branch_xs is not None:
            xs = tuple(as_rat(x) for x in self.branch_xs)
            object.__setattr__(self, "branch_xs", xs)
            if len(set(xs)) != len(xs) or len(xs) != 2 * self.g + 2:
                raise InvalidCurve("branch_xs must be 2g+2 distinct rationals")
            if any(upoly_eval(f, x) for x in xs):
                raise InvalidCurve("branch_xs are not roots of F")

    @classmethod
    def special(cls, g: int) -> "HyperellipticCurve":
        """The curve y^2 = 1 - x^(2g+2)."""
        a = [0] * (2 * g + 3)
        a[0], a[-1] = 1, -1
        return cls(g, tuple(a))

    @property
    def F_poly(self) -> List[Fraction]:
        return upoly_trim(self.a)

    def F_form(self, vars: Sequence[str] = RING) -> MPoly:
        return binary_form(self.a, 2 * self.g + 2, vars)

    def F(self, x) -> Fraction:
        return upoly_eval(self.F_poly, x)

    def reduce(self, P: MPoly) -> MPoly:
        return poly_reduce_mod_curve(P, self.F_form(P.vars))

    def contains(self, x, y) -> bool:
        return as_rat(y) ** 2 == self.F(x)

    @property
    def weights(self) -> Tuple[int, int, int]:
        return (1, 1, self.g + 1)

    def to_json(self) -> dict:
        out = {"g": self.g, "coeffs": [str(c) for c in self.a]}
        if self.branch_xs is not None:
            out["roots"] = [str(x) for x in self.branch_xs]
        return out


def curve_from_roots(g: int, roots: Sequence) -> HyperellipticCurve:
    """Curve with F = prod (x - r_i) (monic, degree 2g+2)."""
    roots = [as_rat(r) for r in roots]
    if len(roots) != 2 * g + 2:
        raise InvalidCurve(f"need {2 * g + 2} roots, got {len(roots)}")
    if len(set(roots)) != len(roots):
        raise InvalidCurve("roots must be distinct")
    f = [Fraction(1)]
    for r in roots:
        f = upoly_mul(f, [-r, Fraction(1)])
    return HyperellipticCurve(g, tuple(f), tuple(roots))


# ---------------------------------------------------------------------------
# divisors and line bundles

@dataclass(frozen=True)
class MumfordDivisor:
    """Mumford triple with F = V^2 + U W; deg U = g+1-e."""

    U: Tuple[Fraction, ...]
    V: Tuple[Fraction, ...]
    W: Tuple[Fraction, ...]
    e: int
    points: Tuple[Tuple[Fraction, Fraction], ...] = ()

    @property
    def degree(self) -> int:
        return len(upoly_trim(self.U)) - 1

    def check(self, curve: HyperellipticCurve) -> None:
        g = curve.g
        if self.degree != g + 1 - self.e or upoly_trim(self.U)[-1] != 1:
            raise InvalidDivisor("U must be monic of degree g+1-e")
        if len(upoly_trim(self.V)) - 1 > g - self.e:
            raise InvalidDivisor("deg V exceeds g-e")
        if len(upoly_trim(self.W)) - 1 > g + 1 + self.e:
            raise InvalidDivisor("deg W exceeds g+1+e")
        lhs = upoly_sub(curve.F_poly, upoly_mul(self.V, self.V))
        if upoly_sub(lhs, upoly_mul(self.U, self.W)):
            raise InvalidDivisor("F != V^2 + U W")


def mumford_from_points(curve: HyperellipticCurve, points: Sequence[Tuple]) -> MumfordDivisor:
    """Mumford triple of the reduced divisor P_1 + ... + P_n."""
    g = curve.g
    pts = [(as_rat(x), as_rat(y)) for x, y in points]
    n = len(pts)
    if n > g + 1:
        raise InvalidDivisor("at most g+1 points")
    xs = [x for x, _ in pts]
    if len(set(xs)) != n:
        raise Unsupported("repeated x-coordinates are not supported")
    for x, y in pts:
        if not curve.contains(x, y):
            raise InvalidPoint(f"({x}, {y}) is not a rational point of the curve")
    e = g + 1 - n
    U = [Fraction(1)]
    for x in xs:
        U = upoly_mul(U, [-x, Fraction(1)])
    V = upoly_interpolate(xs, [y for _, y in pts]) if pts else []
    W, rem = upoly_divmod(upoly_sub(curve.F_poly, upoly_mul(V, V)), U)
    if rem:
        raise ConsistencyError("F - V^2 not divisible by U")
    D = MumfordDivisor(tuple(U), tuple(V), tuple(W), e, tuple(pts))
    D.check(curve)
    return D


def rational_points_with_x(curve: HyperellipticCurve, xs: Sequence) -> List[Tuple[Fraction, Fraction]]:
    """Points (x, y) with y >= 0 over the given x when F(x) is a rational square."""
    out = []
    for x in xs:
        v = curve.F(x)
        if v < 0:
            continue
        num, den = _isqrt_exact(v.numerator), _isqrt_exact(v.denominator)
        if num is not None and den is not None:
            out.append((as_rat(x), Fraction(num, den)))
    return out


def _isqrt_exact(n: int):
    import math
    r = math.isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class LineBundleSpec:
    """L = k g^1_2 + D - sum_{i in vanish_at} P_i.

    ``vanish_at`` lists Weierstrass points (indices into ``branch_xs``) where
    every section must vanish; it realizes twists by 2-torsion bundles.
    """

    k: int
    divisor: Optional[MumfordDivisor] = None
    vanish_at: Tuple[int, ...] = ()

    @property
    def d(self) -> int:
        extra = self.divisor.degree if self.divisor is not None else 0
        return 2 * self.k + extra - len(self.vanish_at)

    def e(self, curve: HyperellipticCurve) -> int:
        return self.divisor.e if self.divisor is not None else curve.g + 1

    def weight(self, curve: HyperellipticCurve) -> int:
        """Weight in (xb, x) of the forms representing sections."""
        if self.divisor is None:
            return self.k
        return self.k + self.divisor.degree


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    basis: Tuple
    dim: int


# ---------------------------------------------------------------------------
# sections

def generator_forms(curve: HyperellipticCurve, L: LineBundleSpec) -> Tuple[List[MPoly], List[MPoly]]:
    """The z- and w-sections spanning H^0(L) (no twist)."""
    if L.vanish_at:
        raise Unsupported("generator forms are defined for untwisted bundles")
    g, k = curve.g, L.k
    xb, x, y = MPoly.gens(RING)
    if L.divisor is None:
        if k < g + 1:
            raise Unsupported("need k >= g+1")
        z = [xb ** (k - i) * x ** i for i in range(k + 1)]
        w = [y * xb ** (k - g - 1 - i) * x ** i for i in range(k - g)]
        return z, w
    D = L.divisor
    D.check(curve)
    e = D.e
    Uh = binary_form(D.U, g + 1 - e)
    Vh = binary_form(D.V, g + 1)
    z = [Uh * xb ** (k - i) * x ** i for i in range(k + 1)]
    w = [(y + Vh) * xb ** (k - e - i) * x ** i for i in range(k - e + 1)]
    return z, w


def _monomial_forms(weight: int, g: int) -> List[MPoly]:
    out = []
    for eps in (0, 1):
        rest = weight - eps * (g + 1)
        for i in range(rest + 1):
            out.append(MPoly(RING, {(rest - i, i, eps): 1}))
    return out


def form_vector(P: MPoly) -> dict:
    """Sparse coordinate vector of a reduced form, keyed by exponent tuple."""
    return dict(P.terms)


def _span_basis(forms: Sequence[MPoly]) -> List[MPoly]:
    ech = SparseEchelon()
    index: dict = {}
    chosen = []
    for P in forms:
        vec = {}
        for e, c in P.terms.items():
            vec[index.setdefault(e, len(index))] = c
        if ech.add(vec):
            chosen.append(P)
    return chosen


def section_basis(curve: HyperellipticCurve, L: LineBundleSpec, nu: int) -> GradedPiece:
    """Basis of H^0(C, L^nu) as reduced forms of weight nu * weight(L)."""
    g = curve.g
    d = L.d
    if nu < 1 or nu * d <= 2 * g - 2:
        raise Unsupported("only the nonspecial range nu*d > 2g-2, nu >= 1 is supported")
    expected = nu * d - g + 1
    if L.vanish_at:
        if nu != 1 or L.divisor is not None:
            raise Unsupported("twisted bundles are supported for nu = 1, L = k g^1_2")
        basis = _twisted_sections(curve, L)
    elif L.divisor is None:
        if nu == 1:
            z, w = generator_forms(curve, L)
            basis = z + w
        else:
            basis = _monomial_forms(nu * L.k, g)
    else:
        z, w = generator_forms(curve, L)
        gens = z + w
        if nu == 1:
            basis = gens
        else:
            products = gens
            for _ in range(nu - 1):
                products = [curve.reduce(p * q) for p in _span_basis(products) for q in gens]
            basis = _span_basis(products)
    if len(basis) != expected:
        raise ConsistencyError(f"h0 = {len(basis)} but Riemann-Roch gives {expected}")
    return GradedPiece(nu, tuple(basis), len(basis))


def _twisted_sections(curve: HyperellipticCurve, L: LineBundleSpec) -> List[MPoly]:
    if curve.branch_xs is None:
        raise Unsupported("twists need rational branch points")
    z, w = generator_forms(curve, LineBundleSpec(L.k))
    roots = [curve.branch_xs[i] for i in L.vanish_at]
    # a section A + yB vanishes at the Weierstrass point (r, 0) iff A(r) = 0
    rows = [[upoly_eval(_dehomogenize(p)[0], r) for p in z] for r in roots]
    from .exactmath import kernel_basis
    combos = kernel_basis(rows, len(z)) if rows else [[int(i == j) for i in range(len(z))] for j in range(len(z))]
    forms = []
    for v in combos:
        P = MPoly(RING)
        for c, p in zip(v, z):
            if c:
                P = P + p * c
        forms.append(P)
    return forms + w


def _dehomogenize(P: MPoly) -> Tuple[List[Fraction], List[Fraction]]:
    """Write P(1, x, y) = A(x) + y B(x)."""
    A, B = {}, {}
    for (_, i, eps), c in P.terms.items():
        tgt = B if eps else A
        tgt[i] = tgt.get(i, 0) + c
    def to_list(dct):
        n = max(dct, default=-1) + 1
        return upoly_trim([dct.get(i, 0) for i in range(n)])
    return to_list(A), to_list(B)


def _generic_fibres(curve: HyperellipticCurve, L: LineBundleSpec, n: int) -> List[Fraction]:
    avoid = []
    if L.divisor is not None:
        avoid.append(list(L.divisor.U))
    out = []
    c = 2
    while len(out) < n:
        cf = Fraction(c)
        if curve.F(cf) and all(upoly_eval(U, cf) for U in avoid):
            out.append(cf)
        c += 1
    return out


def h0_twist(curve: HyperellipticCurve, L: LineBundleSpec, n: int) -> int:
    """h^0(L - n g^1_2): sections of L vanishing on n general fibres."""
    sections = list(section_basis(curve, L, 1).basis)
    if n <= 0:
        return len(sections)
    parts = [_dehomogenize(P) for P in sections]
    rows = []
    for c in _generic_fibres(curve, L, n):
        # both points over x = c are conjugate; y != 0 there, so A(c) = B(c) = 0
        rows.append([upoly_eval(A, c) for A, _ in parts])
        rows.append([upoly_eval(B, c) for _, B in parts])
    return len(sections) - rank(rows)


def scroll_type(curve: HyperellipticCurve, L: LineBundleSpec) -> Tuple[int, int]:
    """(a, b), a >= b, with pi_* L = O(a) + O(b)."""
    d, g = L.d, curve.g
    if d < 2 * g + 3:
        raise Unsupported("scroll type needs d >= 2g+3")
    a = 0
    while h0_twist(curve, L, a + 1) > 0:
        a += 1
    b = d - g - 1 - a
    if b > a:
        raise ConsistencyError("h0 sequence inconsistent with a >= b")
    return a, b


# ---------------------------------------------------------------------------
# configuration

def curve_from_config(cfg) -> Tuple[HyperellipticCurve, Optional[LineBundleSpec]]:
    """Build (curve, L) from ``{"g", "roots" | "coeffs", "k", "divisor_points"}``.

    ``cfg`` may be a dict or a JSON string.
    """
    if isinstance(cfg, str):
        cfg = json.loads(cfg)
    if "g" not in cfg:
        raise InvalidInput("config needs 'g'")
    g = int(cfg["g"])
    has_roots, has_coeffs = "roots" in cfg, "coeffs" in cfg
    if has_roots == has_coeffs:
        raise InvalidInput("give exactly one of 'roots' or 'coeffs'")
    if has_roots:
        curve = curve_from_roots(g, [as_rat(str(r)) for r in cfg["roots"]])
    else:
        curve = HyperellipticCurve(g, tuple(as_rat(str(c)) for c in cfg["coeffs"]))
    L = None
    if "k" in cfg:
        divisor = None
        if cfg.get("divisor_points"):
            divisor = mumford_from_points(
                curve, [(as_rat(str(x)), as_rat(str(y))) for x, y in cfg["divisor_points"]]
            )
        L = LineBundleSpec(int(cfg["k"]), divisor)
    return curve, L
