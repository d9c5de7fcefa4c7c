"""
Equations of a hyperelliptic cone and its T^1
==============================================

Build the rolling-factors presentation of the cone over y^2 = 1 - x^6
embedded by 6 g^1_2, check the parametrization, and compare the graded
T^1 computed from the equations with the closed forms.
"""

from hypercone.cone import check_parametrization, cone_equations_kg12, syzygy_basis
from hypercone.curve import HyperellipticCurve
from hypercone.tangent import t1_formula, t1_oracle

curve = HyperellipticCurve.special(2)
pres = cone_equations_kg12(curve, 6)
print(len(pres.coords), "coordinates,", len(pres.generators), "quadrics")
print("scroll matrix top row:", pres.top)
print("phi_0 =", pres.phis[0])
print("parametrization kills every generator:", check_parametrization(pres))

# linear syzygies, computed as a kernel
syz = syzygy_basis(pres)
print(len(syz), "linear syzygies")

formula = t1_formula(curve.g, pres.d)
for nu in (-2, -1, 0):
    print(f"T1({nu:2d}): oracle {t1_oracle(pres, nu, syz)}, formula {formula[nu]}")
