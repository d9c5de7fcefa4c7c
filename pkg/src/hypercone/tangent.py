"""Graded pieces of T^1 and T^2 for cones over curves and point sets.

The oracle computes T^1(nu) directly from a presentation: homomorphisms from
the ideal to the coordinate ring that respect the linear syzygies, modulo
those induced by ambient derivations.  Ranks are taken modulo two large
primes and must agree.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from .cone import CurveModel, PointsModel, RollingFactorsPresentation, syzygy_basis
from .curve import GradedPiece, section_basis
from .errors import ConsistencyError, Unsupported
from .exactmath import MPoly, SparseEchelon, rank_mod_p, rat_mod_p

PRIMES = (2097143, 2096993)
NU_WINDOW = (-3, 1)


# ---------------------------------------------------------------------------
# graded pieces of the coordinate ring

def ring_piece(pres: RollingFactorsPresentation, m: int) -> GradedPiece:
    """Basis of the degree-m part of the coordinate ring of the cone."""
    if m <= 0:
        raise Unsupported("ring pieces are exposed for m >= 1")
    return _piece(pres, m)


def _piece(pres, m: int) -> GradedPiece:
    model = pres.model
    if model is None:
        raise Unsupported("presentation has no parametrization model")
    if m < 0:
        return GradedPiece(m, (), 0)
    if isinstance(model, CurveModel):
        if m == 0:
            return GradedPiece(0, (MPoly.const(model.images[0].vars, 1),), 1)
        return section_basis(model.curve, model.L, m)
    # points: degree-m forms on the rational normal curve, evaluated
    n = model.top * m
    vecs = [tuple(xb ** (n - i) * x ** i for xb, x in model.points) for i in range(n + 1)]
    ech = SparseEchelon()
    basis = []
    for v in vecs:
        if ech.add({j: c for j, c in enumerate(v) if c}):
            basis.append(v)
        if len(basis) == len(model.points):
            break
    return GradedPiece(m, tuple(basis), len(basis))


class _Ambient:
    """Sparse coordinates for ring elements: monomial dicts or value tuples."""

    def __init__(self, model):
        self.model = model
        self.index: Dict = {}

    def vector(self, elem) -> Dict[int, Fraction]:
        if isinstance(elem, MPoly):
            return {self.index.setdefault(e, len(self.index)): c for e, c in elem.terms.items()}
        return {j: c for j, c in enumerate(elem) if c}

    def mul(self, a, b):
        if isinstance(a, MPoly):
            return self.model.curve.reduce(a * b)
        return tuple(x * y for x, y in zip(a, b))

    def image(self, P: MPoly, coords):
        return self.model.image(P, coords)

    @property
    def size(self) -> int:
        if isinstance(self.model, PointsModel):
            return len(self.model.points)
        return len(self.index)


def _rank_two_primes(rows: List[Dict[int, Fraction]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    ranks = []
    for p in PRIMES:
        M = np.zeros((len(rows), ncols), dtype=np.int64)
        for r, row in enumerate(rows):
            for c, v in row.items():
                M[r, c] = rat_mod_p(v, p)
        ranks.append(rank_mod_p(M, p))
    if ranks[0] != ranks[1]:
        raise ConsistencyError(f"ranks disagree modulo different primes: {ranks}")
    return ranks[0]


# ---------------------------------------------------------------------------
# T^1 oracle

@dataclass
class NormalVectorSpace:
    degree: int
    unknowns: int
    constraint_rank: int
    trivial_rank: int
    syzygies: int

    @property
    def solutions(self) -> int:
        return self.unknowns - self.constraint_rank

    @property
    def dim(self) -> int:
        return self.solutions - self.trivial_rank


def normal_space(pres: RollingFactorsPresentation, nu: int, syzygies: Optional[Sequence] = None,
                 extra_syzygies: Sequence = ()) -> NormalVectorSpace:
    """Assemble and rank the constraint and trivial systems in degree nu.

    ``extra_syzygies`` may hold relations with coefficients of any degree;
    they impose constraints in the corresponding higher piece.
    """
    if not NU_WINDOW[0] <= nu <= NU_WINDOW[1]:
        raise Unsupported(f"nu outside {NU_WINDOW}")
    if 2 + nu < 0:
        raise Unsupported("need 2 + nu >= 0")
    if syzygies is None:
        syzygies = syzygy_basis(pres, 3)
    gens = pres.generators
    coords = pres.coords
    N = len(gens)
    amb = _Ambient(pres.model)
    src = _piece(pres, 2 + nu).basis
    dim = len(src)

    # constraints: sum_a r_a(x) * n_a = 0 for each syzygy r
    prod_cache: Dict = {}

    def coeff_times_basis(P: MPoly, j: int):
        out: Dict[int, Fraction] = {}
        for e, c in P.terms.items():
            key = (e, j)
            if key not in prod_cache:
                mono = MPoly(coords, {e: 1})
                prod_cache[key] = amb.vector(amb.mul(amb.image(mono, coords), src[j]))
            for i, v in prod_cache[key].items():
                out[i] = out.get(i, 0) + c * v
        return out

    rows: List[Dict[int, Fraction]] = []
    for syz in list(syzygies) + list(extra_syzygies):
        # one block of constraint rows per syzygy, indexed by ambient coordinates
        block: Dict[int, Dict[int, Fraction]] = {}
        for a, P in enumerate(syz):
            if P.is_zero():
                continue
            for j in range(dim):
                for i, v in coeff_times_basis(P, j).items():
                    if v:
                        block.setdefault(i, {})[a * dim + j] = v
        rows.extend(r for r in block.values() if any(r.values()))
    crank = _rank_two_primes(rows, N * dim)

    # trivial vectors: h * d(gen_a)/dx for h in degree nu+1
    trivial: List[Dict[int, Fraction]] = []
    tamb = _Ambient(pres.model)
    hs = _piece(pres, nu + 1).basis if nu + 1 >= 0 else ()
    if hs:
        derivs = [[amb.image(f.derivative(c), coords) for f in gens] for c in coords]
        for h in hs:
            for row in derivs:
                vec: Dict[int, Fraction] = {}
                for a, img in enumerate(row):
                    prod = tamb.mul(img, h)
                    for i, v in tamb.vector(prod).items():
                        vec[(a, i)] = v
                trivial.append(vec)
    keys: Dict = {}
    trows = [{keys.setdefault(k, len(keys)): v for k, v in t.items()} for t in trivial]
    trank = _rank_two_primes(trows, len(keys))
    return NormalVectorSpace(nu, N * dim, crank, trank, len(syzygies) + len(extra_syzygies))


def t1_oracle(pres: RollingFactorsPresentation, nu: int, syzygies: Optional[Sequence] = None,
              extra_syzygies: Sequence = ()) -> int:
    """dim T^1(nu) computed from the presentation."""
    if 2 + nu < 0:
        return 0
    space = normal_space(pres, nu, syzygies, extra_syzygies)
    if space.dim < 0:
        raise ConsistencyError("trivial vectors exceed solutions")
    return space.dim


# ---------------------------------------------------------------------------
# closed forms

@dataclass
class DimTable:
    entries: Dict[int, int]
    provenance: str = "formula"
    note: str = ""

    def __getitem__(self, nu: int) -> int:
        return self.entries.get(nu, 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def to_json(self) -> list:
        return [{"nu": nu, "dim": self.entries[nu], "provenance": self.provenance}
                for nu in sorted(self.entries)]


def t1_zero_curve(g: int) -> int:
    """dim T^1(0) for a cone over a hyperelliptic curve, nonspecial L.

    chi(N_C) - dim PGL = (d(r+1) + (r-3)(1-g)) - ((r+1)^2 - 1) with r = d - g
    simplifies to 4g - 3.
    """
    return 4 * g - 3


def t1_formula(g: int, d: int, shape: str = "curve") -> DimTable:
    lo, hi = NU_WINDOW
    if g < 2:
        raise Unsupported("formulas need g >= 2")
    if shape in ("curve", "curve-cone"):
        if not d > 2 * g + 2:
            raise Unsupported("need d > 2g+2")
        out = {nu: 0 for nu in range(lo, hi + 1)}
        out[-1] = 2 * g + 2
        out[0] = t1_zero_curve(g)
        note = "" if d > 4 * g - 4 else "T1(1) not determined for d <= 4g-4"
        if note:
            out.pop(1)
        return DimTable(out, "formula", note)
    if shape in ("points", "points-cone"):
        if not (2 * g + 2 < d < 2 * (d - g - 1)):
            raise Unsupported("need 2g+2 < d < 2(d-g-1)")
        out = {nu: 0 for nu in range(lo, hi + 1)}
        out[-1] = d
        out[0] = (g - 1) * (d - g - 1)
        return DimTable(out, "formula")
    raise ValueError(f"unknown shape {shape!r}")


def t2_formula(g: int, d: int) -> DimTable:
    if not d > 2 * g + 3:
        raise Unsupported("need d > 2g+3")
    out = {nu: 0 for nu in range(-5, 2)}
    out[-2] = d - 2 * g - 3
    out[-1] = (g - 2) * (d - g - 3)
    return DimTable(out, "formula")


def t2_via_main_lemma(g: int, d: int, t1Y: int) -> int:
    """Total T^2 from total T^1 of the hyperplane section.

    The drop equals 3g + d - 2, the number of moduli of the pair (curve, L)
    plus the hyperplane choices.
    """
    value = t1Y - (3 * g + d - 2)
    if value < 0:
        raise ConsistencyError("negative T2 dimension")
    return value


def smoothing_component_dim(g: int, d: int) -> dict:
    """Dimension 7g + 4 - d, flagged outside the range where it is proven."""
    bound = max(4 * g - 4, 3 * g + 6)
    if g == 6:
        bound = max(bound, 25)
    ok = d > bound
    out = {"dim": 7 * g + 4 - d, "in_range": ok}
    if not ok:
        out["flag"] = "h0(K^2 L^-1) correction may apply"
    return out


def oracle_table(pres: RollingFactorsPresentation, nus: Sequence[int]) -> DimTable:
    syz = syzygy_basis(pres, 3)
    return DimTable({nu: t1_oracle(pres, nu, syz) for nu in nus}, "oracle")


def dumps(table: DimTable) -> str:
    return json.dumps(table.to_json(), sort_keys=True, separators=(",", ":"))
