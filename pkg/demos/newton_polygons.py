"""Newton polygons of two one-variable exponential sums next to the Hodge bound.

x^2 over F_3 sits exactly on its bound.  x^3 over F_2 has L(t) = 1 + 2t^2,
so both slopes are 1/2: above the bound (1/3, 2/3), but not on it.
"""
from bettibounds import verify as V
from bettibounds.ffcount import Domain, make_field
from bettibounds.laurent import LaurentPolynomial

x = LaurentPolynomial.variable(1, 0)

for label, p, f in (("x^2 over F_3", 3, x ** 2), ("x^3 over F_2", 2, x ** 3)):
    sc = V.Scenario(label, make_field(p), Domain("affine", 1), f=f, m_max=8)
    check = V.verify_np_dominance(sc).checks[0]
    art = check.artifacts
    print(label)
    print("  L numerator :", [str(c) for c in art["numerator"]])
    print("  NP slopes   :", [(str(s), int(m)) for s, m in art["slopes"]])
    print("  Hodge slopes:", [(str(s), int(m)) for s, m in art["hodge_slopes"]])
    print("  verdict     :", check.verdict, "| equality:", art["equality"])
