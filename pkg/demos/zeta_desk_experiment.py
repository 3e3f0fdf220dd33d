"""Count points on y^2 + y = x^3 over F_{2^m}, rebuild its zeta function,
and set the total degree against the closed-form bounds.

Run:  python demos/zeta_desk_experiment.py
"""
from bettibounds import bounds as B
from bettibounds.ffcount import Domain, count_points, make_field, zeta_function
from bettibounds.laurent import LaurentPolynomial

x, y = (LaurentPolynomial.variable(2, i) for i in range(2))
curve = y ** 2 + y - x ** 3
F2 = make_field(2)

counts = [count_points([curve], Domain("affine", 2), F2, m).count for m in range(1, 9)]
print("N_m for m = 1..8:", counts)

Z, total = zeta_function(counts, window=4)
print("Z(t) =", f"({Z.numerator}) / ({Z.denominator})")
print("total degree:", total)

# n = 2 variables, r = 1 equation of degree 3
for kind in ("ci_total", "order", "katz"):
    print(f"{kind:>9}: {B.scalar_bound(kind, n=2, r=1, d=3).value}")
