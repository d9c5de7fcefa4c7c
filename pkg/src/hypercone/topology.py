"""Topology of smoothings: Milnor fibre and link homology, and the
quadratic function on the torsion of H_1 of the link.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence, Tuple

from .components import WSubset
from .errors import InvalidInput, Unsupported
from .exactmath import smith_normal_form


@dataclass(frozen=True)
class FinAbGroup:
    free_rank: int
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(d < 2 for d in self.torsion):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("invariant factors must form a divisibility chain")

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def cokernel(relations: Sequence[Sequence[int]], ngens: int) -> FinAbGroup:
    """Z^ngens modulo the row span of the relation matrix."""
    rows = [list(r) for r in relations if any(r)]
    if not rows:
        return FinAbGroup(ngens)
    D, _, _ = smith_normal_form(rows)
    diag = [abs(D[i][i]) for i in range(min(len(D), ngens))]
    nonzero = [d for d in diag if d]
    return FinAbGroup(ngens - len(nonzero), tuple(d for d in nonzero if d > 1))


def _transpose(M):
    return [list(r) for r in zip(*M)]


def _integer_kernel(row: Sequence[int]) -> List[List[int]]:
    """Basis of the integer kernel of a 1 x n map, from the column operations of its SNF."""
    D, _, V = smith_normal_form([list(row)])
    n = len(row)
    rank = sum(1 for i in range(min(1, n)) if D[0][i])
    return [[V[r][c] for r in range(n)] for c in range(rank, n)]


# ---------------------------------------------------------------------------
# Milnor fibre of the smoothing given by a ruled surface

def milnor_fiber_homology(g: int, e: int) -> dict:
    """Homology of S minus C for C of class 2E_0 + (g+1+e) f on F_e."""
    if g < 2 or not 0 <= e <= g + 1:
        raise Unsupported("need g >= 2 and 0 <= e <= g+1")
    # Pic(S) in the basis (E_0, f)
    form = [[-e, 1], [1, 0]]
    C = [2, g + 1 + e]
    dot = lambda u, v: sum(u[i] * form[i][j] * v[j] for i in range(2) for j in range(2))
    to_curve = [dot(b, C) for b in ([1, 0], [0, 1])]          # H_2(S) -> H^2(C) = Z
    # H_2(S) -> H^2(C) -> H_1(F) -> 0
    H1F = cokernel(_transpose([to_curve]), 1)
    # 0 -> H^1(C) = Z^2g -> H_2(F) -> ker -> 0, kernel free of rank 1
    ker = _integer_kernel(to_curve)
    H2F = FinAbGroup(2 * g + len(ker))
    # 0 -> H_2(C) = Z -> H^2(S) -> H^2(F) -> H_1(C) = Z^2g -> 0
    coker = cokernel([to_curve], 2)
    H2rel = FinAbGroup(coker.free_rank + 2 * g, coker.torsion)
    self_int = [dot(v, v) for v in ker]
    eps = (g + 1 + e) % 2
    return {
        "g": g,
        "e": e,
        "case": "even" if eps == 0 else "odd",
        "H1F": H1F,
        "H2F": H2F,
        "H2_rel": H2rel,
        "curve_degrees": {"E0": to_curve[0], "f": to_curve[1]},
        "kernel_generator": ker[0],
        "kernel_self_intersection": self_int[0],
    }


def link_homology(g: int, euler: int | None = None) -> FinAbGroup:
    """H_1 of a circle bundle over a genus-g surface (default Euler number -(4g+4))."""
    if euler is None:
        if g < 2:
            raise Unsupported("need g >= 2")
        euler = -(4 * g + 4)
    # generators a_1, b_1, ..., a_g, b_g, fibre; one relation from the 2-cell
    return cokernel([[0] * (2 * g) + [euler]], 2 * g + 1)


# ---------------------------------------------------------------------------
# quadratic function on the torsion of H_1(M), cyclic of order 4h

def torsion_order(g: int) -> int:
    return 4 * g + 4


def q_value(g: int, m: int) -> Fraction:
    v = Fraction(m * (m - 6 * g - 2), 8 * g + 8)
    return v - (v.numerator // v.denominator)


def bilinear(g: int, m: int, n: int) -> Fraction:
    v = q_value(g, m + n) - q_value(g, m) - q_value(g, n) + q_value(g, 0)
    return v - (v.numerator // v.denominator)


def _subgroup(N: int, r: int) -> List[int]:
    step = N // r
    return [j * step for j in range(r)]


def isotropic_subgroups(g: int) -> List[Tuple[int, int]]:
    """(order r, generator) for every subgroup of Z/(4g+4) on which q vanishes."""
    N = torsion_order(g)
    out = []
    for r in range(1, N + 1):
        if N % r == 0 and all(q_value(g, x) == 0 for x in _subgroup(N, r)):
            out.append((r, N // r if r > 1 else 0))
    return out


def isotropic_orders_by_criterion(g: int) -> List[int]:
    """Orders r with 4g+4 = r^2 s, 2g-2 = r u and s(1+r) = u mod 2."""
    out = []
    for r in range(1, 4 * g + 5):
        if (4 * g + 4) % (r * r) or (2 * g - 2) % r:
            continue
        s, u = (4 * g + 4) // (r * r), (2 * g - 2) // r
        if (s * (1 + r) - u) % 2 == 0:
            out.append(r)
    return out


def _perp(g: int, I: Sequence[int]) -> List[int]:
    N = torsion_order(g)
    return [x for x in range(N) if all(bilinear(g, x, i) == 0 for i in I)]


def orthogonal_multipliers(g: int, I_order: int) -> List[int]:
    """Multipliers d on the cyclic group I^perp / I that preserve the induced q."""
    N = torsion_order(g)
    if (I_order, N // I_order if I_order > 1 else 0) not in isotropic_subgroups(g):
        raise InvalidInput(f"no isotropic subgroup of order {I_order}")
    I = _subgroup(N, I_order)
    perp = _perp(g, I)
    n = len(perp) // I_order            # order of I^perp / I
    c = N // len(perp)                   # I^perp = <c>
    qI = [q_value(g, j * c) for j in range(n)]
    if any(q_value(g, j * c + i) != qI[j] for j in range(n) for i in I):
        raise InvalidInput("q does not descend to the quotient")
    return [d for d in range(1, max(n, 2)) if gcd(d, n) == 1
            and all(qI[d * j % n] == qI[j] for j in range(n))] if n > 1 else [1]


def orthogonal_group_order(g: int, I_order: int) -> int:
    return len(orthogonal_multipliers(g, I_order))


def orthogonal_group_order_classified(h: int, I_order: int) -> int:
    """Closed-form order of O(q_I) for h = g + 1, |I| in {1, 2}."""
    if I_order == 1:
        return 2 if h % 8 in (2, 6) else 1
    if I_order == 2:
        return 2 if h % 8 == 0 else 1
    raise Unsupported("classification covers |I| = 1, 2")


def smoothing_data_count(g: int) -> int:
    """Number of permissible smoothing data, for even g."""
    if g % 2:
        raise Unsupported("count is established for even g only; O(q_I) may be nontrivial")
    N = torsion_order(g)
    total = 0
    for r, _ in isotropic_subgroups(g):
        if orthogonal_group_order(g, r) != 1:
            raise Unsupported("nontrivial O(q_I)")
        index = N // len(_perp(g, _subgroup(N, r)))
        total += index ** (2 * g)
    return total


# ---------------------------------------------------------------------------
# disc systems and the J-invariant

def chain_discs(g: int) -> List[Tuple[int, int]]:
    return [(i, i + 1) for i in range(2 * g)]


def _f2_rank(vectors: Sequence[int]) -> int:
    basis: Dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in basis:
                v ^= basis[top]
            else:
                basis[top] = v
                break
    return len(basis)


def validate_discs(discs: Sequence[Tuple[int, int]], n: int) -> None:
    g2 = len(discs)
    if g2 != n - 2:
        raise InvalidInput(f"need {n - 2} discs")
    masks = []
    for D in discs:
        if len(D) != 2 or D[0] == D[1] or not all(0 <= i < n for i in D):
            raise InvalidInput(f"malformed disc {D}")
        masks.append((1 << D[0]) | (1 << D[1]))
    if _f2_rank(masks + [(1 << n) - 1]) != n - 1:
        raise InvalidInput("discs are not independent")


def j_invariant(T: WSubset, discs: Sequence[Tuple[int, int]] | None = None) -> Tuple[int, ...]:
    n = T.n
    if discs is None:
        discs = chain_discs((n - 2) // 2)
    validate_discs(discs, n)
    return tuple(sum(T.contains(i) for i in D) % 2 for D in discs)


def topology_report(g: int) -> dict:
    H1M = link_homology(g)
    iso = isotropic_subgroups(g)
    oq = {str(r): orthogonal_group_order(g, r) for r, _ in iso}
    try:
        count: object = smoothing_data_count(g)
    except Unsupported:
        count = "unsupported"
    fibres = {str(e): {k: (str(v) if isinstance(v, FinAbGroup) else v)
                       for k, v in milnor_fiber_homology(g, e).items()}
              for e in range(g + 2)}
    return {
        "g": g,
        "H1M": {"group": str(H1M), **H1M.to_json()},
        "isotropic": [{"order": r, "generator": c} for r, c in iso],
        "Oq": oq,
        "count": count,
        "milnor_fibres": fibres,
        "lattice": {"mu0": 2 * g, "mu_minus": 1, "mu_plus": 0},
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))
