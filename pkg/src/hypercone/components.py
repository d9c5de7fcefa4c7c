"""Smoothing components indexed by Weierstrass-point subsets.

A subset T of the 2g+2 branch points and its complement give the same
component.  Each class determines a hyperplane in the degree -1 deformation
space: the Vandermonde determinant in the parameters, with the signs of the
entries in T flipped.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import List, Sequence, Tuple

from .curve import HyperellipticCurve, LineBundleSpec, scroll_type
from .errors import InvalidCurve, InvalidInput, Unsupported
from .exactmath import as_rat


@dataclass(frozen=True)
class WSubset:
    mask: int
    n: int  # number of branch points

    def __post_init__(self):
        if self.n <= 0 or self.n % 2:
            raise InvalidInput("number of branch points must be positive and even")
        if not 0 <= self.mask < (1 << self.n):
            raise InvalidInput("mask out of range")

    @classmethod
    def from_indices(cls, indices: Sequence[int], n: int) -> "WSubset":
        mask = 0
        for i in indices:
            if not 0 <= i < n:
                raise InvalidInput(f"index {i} out of range")
            mask |= 1 << i
        return cls(mask, n)

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.mask >> i & 1)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    def complement(self) -> "WSubset":
        return WSubset(((1 << self.n) - 1) ^ self.mask, self.n)

    def canonical(self) -> "WSubset":
        """Smaller bitmask of T and its complement."""
        return WSubset(min(self.mask, self.complement().mask), self.n)

    def __xor__(self, other: "WSubset") -> "WSubset":
        return WSubset(self.mask ^ other.mask, self.n)

    def contains(self, i: int) -> bool:
        return bool(self.mask >> i & 1)


@dataclass(frozen=True)
class ComponentDescriptor:
    subset: WSubset
    hyperplane: Tuple[int, ...]

    @property
    def parity(self) -> str:
        return "even" if self.subset.size % 2 == 0 else "odd"

    def to_json(self) -> dict:
        return {
            "subset": self.subset.mask,
            "class": self.subset.canonical().mask,
            "hyperplane": list(self.hyperplane),
            "parity": self.parity,
        }


def _vandermonde(xs: Sequence[Fraction]) -> Fraction:
    out = Fraction(1)
    for j in range(len(xs)):
        for i in range(j):
            out *= xs[j] - xs[i]
    return out


def normalize(vec: Sequence[Fraction]) -> Tuple[int, ...]:
    """Primitive integer vector with positive first nonzero entry."""
    vec = [as_rat(v) for v in vec]
    den = reduce(lambda a, b: a * b // gcd(a, b), (v.denominator for v in vec), 1)
    ints = [int(v * den) for v in vec]
    g = reduce(gcd, ints, 0) or 1
    ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 1)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def vandermonde_hyperplane(branch_xs: Sequence, T: WSubset) -> Tuple[int, ...]:
    """Coefficients of det[1, a_i, ..., a_i^(n-2), (-1)^[i in T] s_i] in s, normalized."""
    xs = [as_rat(x) for x in branch_xs]
    n = len(xs)
    if len(set(xs)) != n:
        raise InvalidCurve("branch points must be distinct")
    if T.n != n:
        raise InvalidInput("subset size does not match branch points")
    coeffs = []
    for i in range(n):
        # cofactor of the last-column entry in row i (0-based)
        cof = (-1) ** (i + n - 1) * _vandermonde(xs[:i] + xs[i + 1:])
        if T.contains(i):
            cof = -cof
        coeffs.append(cof)
    return normalize(coeffs)


def enumerate_components(branch_xs: Sequence) -> List[ComponentDescriptor]:
    """One descriptor per class of subsets modulo complement."""
    n = len(branch_xs)
    out = []
    for mask in range(1 << n):
        T = WSubset(mask, n)
        if T.canonical().mask != mask:
            continue
        out.append(ComponentDescriptor(T, vandermonde_hyperplane(branch_xs, T)))
    return out


def count_components(g: int, L_is_4K_at_g3: bool = False) -> dict:
    if g < 2:
        raise Unsupported("need g >= 2")
    out = {"g": g, "count": 2 ** (2 * g + 1)}
    if g == 3 and L_is_4K_at_g3:
        out["annotation"] = "+1 Veronese component"
    return out


def elm_parity(e: int, T: WSubset) -> int:
    """Parity of the scroll invariant after elementary transformations at T."""
    return (e + T.size) % 2


def scroll_of_twist(curve: HyperellipticCurve, L: LineBundleSpec, T: WSubset) -> Tuple[int, int]:
    """Scroll type of L twisted by the 2-torsion bundle of an even subset T.

    With |T| = 2j the twist is (k + j) g^1_2 - sum_{i in T} P_i.
    """
    if T.size % 2:
        raise InvalidInput("T must have even cardinality")
    if curve.branch_xs is None:
        raise Unsupported("twists need rational branch points")
    if L.divisor is not None or L.vanish_at:
        raise Unsupported("twists are computed for L = k g^1_2")
    if T.n != 2 * curve.g + 2:
        raise InvalidInput("subset size does not match branch points")
    if T.size == 0:
        return scroll_type(curve, L)
    j = T.size // 2
    return scroll_type(curve, LineBundleSpec(L.k + j, vanish_at=T.indices))


def components_report(branch_xs: Sequence) -> dict:
    n = len(branch_xs)
    comps = enumerate_components(branch_xs)
    g = (n - 2) // 2
    return {
        "g": g,
        "count": len(comps),
        "distinct_hyperplanes": len({c.hyperplane for c in comps}),
        "outside_theorem_range": g < 2,
        "components": [c.to_json() for c in comps],
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))
