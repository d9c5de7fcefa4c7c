"""Negative-degree versal deformation of a cone over a hyperelliptic curve.

The first-order family perturbs the z-columns of the scroll matrix by
parameters s_1..s_{k-1} and the rolling-factor equations by phi'_m, which is
linear in the parameters and in z.  Substituting s for z yields quadratic
equations for the base space.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cone import ceil_half, floor_half
from .curve import HyperellipticCurve
from .errors import BadPrime, Unsupported
from .exactmath import MPoly, SparseEchelon, is_prime, monomials, rank_mod_p


@dataclass(frozen=True)
class FirstOrderFamily:
    curve: HyperellipticCurve
    k: int
    params: Tuple[str, ...]
    t_names: Tuple[str, ...]
    s_names: Tuple[str, ...]
    coords: Tuple[str, ...]
    relations: Tuple[MPoly, ...]     # linear forms in the parameters
    phi_prime: Tuple[MPoly, ...]     # over params + coords
    index_violations: Tuple[Tuple[int, int], ...]  # (m, z-index > k) with nonzero coefficient
    raw_terms: Tuple[Tuple[Tuple[str, int, Fraction], ...], ...] = ()  # (param, z-index, coeff) incl. out of range

    @property
    def b(self) -> int:
        return 2 * self.k - 2 * self.curve.g - 2

    @property
    def ring(self) -> Tuple[str, ...]:
        return self.params + self.coords


def _coeff(a: Sequence[Fraction], i: int) -> Fraction:
    return a[i] if 0 <= i < len(a) else Fraction(0)


def first_order_family(curve: HyperellipticCurve, k: int) -> FirstOrderFamily:
    g = curve.g
    if k <= g + 1:
        raise Unsupported("need k > g+1")
    a = curve.a
    t_names = tuple(f"t{i}" for i in range(2 * g + 3 - k)) if k <= 2 * g + 2 else ()
    s_names = tuple(f"s{i}" for i in range(1, k))
    coords = tuple(f"z{i}" for i in range(k + 1))
    params = t_names + s_names
    ring = params + coords

    def s(i):
        if i <= 0 or i >= k:
            return None
        return s_names[i - 1]

    relations = []
    for j in range(1, k - 2 * g - 2):
        terms = {}
        for i in range(2 * g + 3):
            name = s(i + j)
            if name and a[i]:
                e = tuple(1 if v == name else 0 for v in ring)
                terms[e] = terms.get(e, 0) + a[i]
        relations.append(MPoly(ring, terms))

    phis = []
    raws = []
    violations = []
    for m in range(2 * k - 2 * g - 1):
        acc: Dict[Tuple[str, int], Fraction] = {}

        def add(param, zi, c):
            if param is None or not c:
                return
            acc[(param, zi)] = acc.get((param, zi), 0) + c

        for i, tn in enumerate(t_names):
            add(tn, m + i, Fraction(1))
        for j in range(2 * g + 3):
            for i in range(m + j, 2 * g + 3):
                add(s(i - ceil_half(j)), m + ceil_half(j), -_coeff(a, i))
        for j in range(1, m):
            for i in range(0, m - j):
                add(s(i + floor_half(j)), m - floor_half(j), _coeff(a, i))
        terms = {}
        raws.append(tuple((pr, zi, c) for (pr, zi), c in sorted(acc.items()) if c))
        for (param, zi), c in acc.items():
            if not c:
                continue
            if zi > k or zi < 0:
                violations.append((m, zi))
                continue
            e = tuple(1 if v in (param, f"z{zi}") else 0 for v in ring)
            terms[e] = terms.get(e, 0) + c
        phis.append(MPoly(ring, terms))
    return FirstOrderFamily(curve, k, params, t_names, s_names, coords,
                            tuple(relations), tuple(phis), tuple(sorted(set(violations))), tuple(raws))


def first_order_residual(family: FirstOrderFamily, m: int, extra_x: bool = True) -> MPoly:
    """x phi'_m - phi'_{m+1} + (x) sum a_i s_{floor((m+i)/2)} x^{ceil((m+i)/2)}.

    Computed with z_i -> x^i, keeping any term whose index exceeds k.
    ``extra_x`` multiplies the last sum by x; without it the identity fails.
    """
    ring = family.params + ("x",)
    x = MPoly.gen(ring, "x")

    def inhomogeneous(n):
        return sum((MPoly.gen(ring, p) * x ** zi * c for p, zi, c in family.raw_terms[n]), MPoly(ring))

    phi_m, phi_n = inhomogeneous(m), inhomogeneous(m + 1)
    tail = MPoly(ring)
    for i, c in enumerate(family.curve.a):
        j = floor_half(m + i)
        if c and 0 < j < family.k:
            tail = tail + MPoly.gen(ring, f"s{j}") * x ** ceil_half(m + i) * c
    if extra_x:
        tail = tail * x
    return x * phi_m - phi_n + tail


def _in_relation_span(residual: MPoly, family: FirstOrderFamily) -> bool:
    """Every x-coefficient of the residual is a combination of the relations."""
    if residual.is_zero():
        return True
    params = family.params
    pidx = {p: i for i, p in enumerate(params)}
    ech = SparseEchelon()
    for r in family.relations:
        ech.add({pidx[v]: c for v, c in r.linear_coefficients().items()})
    xpos = len(params)
    by_power: Dict[int, Dict[int, Fraction]] = {}
    for e, c in residual.terms.items():
        var = [params[i] for i in range(len(params)) if e[i]]
        if len(var) != 1:
            return False
        by_power.setdefault(e[xpos], {})[pidx[var[0]]] = c
    return all(ech.contains(v) for v in by_power.values())


def _out_of_range(family: FirstOrderFamily) -> List[Tuple[int, int]]:
    """(m, index) pairs where z_index, index > k, has a coefficient outside the relations."""
    ring = family.params + ("x",)
    bad = []
    for m, raw in enumerate(family.raw_terms):
        for zi in sorted({zi for _, zi, _ in raw if zi > family.k}):
            form = sum((MPoly.gen(ring, p) * c for p, z, c in raw if z == zi), MPoly(ring))
            if not _in_relation_span(form, family):
                bad.append((m, zi))
    return bad


def verify_first_order(family: FirstOrderFamily, extra_x: bool = True) -> dict:
    failing = [m for m in range(family.b)
               if not _in_relation_span(first_order_residual(family, m, extra_x), family)]
    bad = _out_of_range(family)
    return {
        "passed": not failing and not bad,
        "failing_m": failing,
        "index_violations": bad,
    }


# ---------------------------------------------------------------------------
# base space

@dataclass(frozen=True)
class BaseSpaceSystem:
    vars: Tuple[str, ...]
    equations: Tuple[MPoly, ...]
    relations: Tuple[MPoly, ...] = ()

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def to_json(self) -> dict:
        return {
            "variables": list(self.vars),
            "equations": [str(e) for e in self.equations],
            "linear_relations": [str(r) for r in self.relations],
        }


def base_space_equations(family: FirstOrderFamily) -> BaseSpaceSystem:
    """phi'_m(t, s, s) - phi_m(s) for m = 1..b-1 (w-terms dropped)."""
    params = family.params
    k = family.k
    a = family.curve.a
    sv = lambda i: MPoly.gen(params, f"s{i}") if 0 < i < k else MPoly(params)
    sub = {p: MPoly.gen(params, p) for p in params}
    sub.update({f"z{i}": sv(i) for i in range(k + 1)})
    eqs = []
    for m in range(1, family.b):
        e = family.phi_prime[m].subs(sub, params)
        for i, c in enumerate(a):
            if c:
                e = e + sv(floor_half(m + i)) * sv(ceil_half(m + i)) * c
        eqs.append(e)
    rels = tuple(r.in_ring(params) for r in family.relations)
    return BaseSpaceSystem(params, tuple(eqs), rels)


def special_curve_base(g: int) -> BaseSpaceSystem:
    """Closed form for y^2 = 1 - x^(2g+2) with L = (2g+2) g^1_2."""
    if g < 2:
        raise Unsupported("need g >= 2")
    n = 2 * g + 2
    vars = ("t0",) + tuple(f"s{i}" for i in range(1, n))
    s = lambda i: MPoly.gen(vars, f"s{i}") if 0 < i < n else MPoly(vars)
    t = MPoly.gen(vars, "t0")
    eqs = []
    for m in range(1, n):
        e = t * s(m)
        for j in range(1, n - m):
            e = e + s(n - ceil_half(j)) * s(m + ceil_half(j))
        for j in range(2, m + 1):
            e = e + s(floor_half(j)) * s(m - floor_half(j))
        eqs.append(e)
    return BaseSpaceSystem(vars, tuple(eqs))


def check_solution(system: BaseSpaceSystem, point: Sequence) -> bool:
    if len(point) != system.nvars:
        raise ValueError("point has wrong length")
    vals = dict(zip(system.vars, point))
    return all(e.evaluate(vals) == 0 for e in system.equations)


# ---------------------------------------------------------------------------
# complete-intersection checks

def hilbert_function_check(system: BaseSpaceSystem, up_to_degree: int = 6) -> List[int]:
    """Hilbert function of the quotient ring in degrees 0..up_to_degree."""
    vars = system.vars
    n = len(vars)
    eqs = [e for e in system.equations if not e.is_zero()]
    out = []
    for D in range(up_to_degree + 1):
        total = comb(n + D - 1, D)
        if D < 2:
            out.append(total)
            continue
        index: dict = {}
        ech = SparseEchelon()
        for mono in monomials(vars, D - 2):
            for e in eqs:
                p = mono * e
                ech.add({index.setdefault(k, len(index)): c for k, c in p.terms.items()})
        out.append(total - ech.rank)
    return out


def ci_hilbert_series(nquadrics: int, up_to_degree: int) -> List[int]:
    """Coefficients of (1+T)^c / (1-T)."""
    return [sum(comb(nquadrics, i) for i in range(min(D, nquadrics) + 1))
            for D in range(up_to_degree + 1)]


def _int_coeffs_mod(system: BaseSpaceSystem, p: int):
    polys = []
    for e in system.equations:
        terms = []
        for exp, c in e.terms.items():
            if c.numerator % p == 0 or c.denominator % p == 0:
                raise BadPrime(f"{p} divides a coefficient")
            terms.append((exp, c.numerator * pow(c.denominator, -1, p) % p))
        polys.append(terms)
    return polys


def _eval_mod(terms, X, p):
    """Evaluate sum c * prod X[:, i]^e_i mod p over rows of X."""
    out = np.zeros(X.shape[0], dtype=np.int64)
    for exp, c in terms:
        v = np.full(X.shape[0], c, dtype=np.int64)
        for i, k in enumerate(exp):
            for _ in range(k):
                v = v * X[:, i] % p
        out = (out + v) % p
    return out


def _projective_points(nvars: int, p: int, chunk: int = 1 << 18):
    """Yield arrays of normalized projective representatives (first nonzero = 1)."""
    for lead in range(nvars):
        free = nvars - lead - 1
        total = p ** free
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            X = np.zeros((idx.size, nvars), dtype=np.int64)
            X[:, lead] = 1
            rem = idx
            for c in range(nvars - 1, lead, -1):
                X[:, c] = rem % p
                rem = rem // p
            yield X


def count_projective_solutions_ff(system: BaseSpaceSystem, p: int) -> dict:
    """Projective zeros over F_p and how many are smooth (full Jacobian rank)."""
    if p < 3 or not is_prime(p):
        raise BadPrime(f"{p} is not an admissible prime")
    polys = _int_coeffs_mod(system, p)
    n = system.nvars
    points = []
    for X in _projective_points(n, p):
        for terms in polys:
            X = X[_eval_mod(terms, X, p) == 0]
            if X.shape[0] == 0:
                break
        points.extend(X.tolist())
    jac = [[system.equations[r].derivative(v) for v in system.vars] for r in range(len(polys))]
    smooth = 0
    for pt in points:
        vals = dict(zip(system.vars, pt))
        M = [[int(d.evaluate(vals) % p) if d.terms else 0 for d in row] for row in jac]
        if rank_mod_p(M, p) == len(polys):
            smooth += 1
    return {"prime": p, "num_points": len(points), "smooth": smooth, "points": points}


def find_split_prime(system: BaseSpaceSystem, target: int, prime_bound: int = 500) -> Optional[dict]:
    """First prime <= prime_bound with exactly target smooth projective points."""
    for p in range(3, prime_bound + 1):
        if not is_prime(p):
            continue
        try:
            res = count_projective_solutions_ff(system, p)
        except BadPrime:
            continue
        if res["num_points"] == target and res["smooth"] == target:
            return res
    return None


def versal_report(curve: HyperellipticCurve, prime_bound: int = 500, hilbert_degree: int = 6) -> dict:
    g = curve.g
    fam = first_order_family(curve, 2 * g + 2)
    sysm = base_space_equations(fam)
    hf = hilbert_function_check(sysm, hilbert_degree)
    found = find_split_prime(sysm, 2 ** (2 * g + 1), prime_bound)
    return {
        "g": g,
        "curve": curve.to_json(),
        "variables": list(sysm.vars),
        "equations": [str(e) for e in sysm.equations],
        "hilbert": hf,
        "prime": found["prime"] if found else None,
        "num_points": found["num_points"] if found else None,
        "smooth": found["smooth"] if found else None,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))
