"""Mixed volumes, Hodge polygons and the polytope bounds on a few small shapes."""
from bettibounds import bounds as B
from bettibounds.polygon import hodge_polygon
from bettibounds.polytope import box, convex_hull, mixed_volume, segment, simplex

S = simplex(2)
print("V(e1, e2) =", mixed_volume([(segment(2, 0), 1), (segment(2, 1), 1)]))
print("Bernstein count for two generic conics:", 2 * mixed_volume([(simplex(2, 2), 1), (simplex(2, 2), 1)]))

for d in (2, 3, 4):
    print(f"HP([0,{d}]) slopes:", [str(s) for s, _ in hodge_polygon(convex_hull([[0], [d]], 1)).slopes()])

print("as_improved(S, S) =", B.polytope_bound("as_improved", S, S).value)
print("power_as(S, d=4)  =", B.polytope_bound("power_as", s=S, d=4).value)
print("Khovanskii chi of [0,3]^2 =", B.khovanskii_chi([box([3, 3])]))

# Cayley polytope volumes against the two claimed bounds
for n, r, d in ((1, 1, 2), (2, 1, 3), (3, 2, 2)):
    vol, claim = B.cayley_volume_claim(n, r, d)
    vol_f, claim_f = B.cayley_volume_claim(n, r, d, with_f=True)
    print(f"n={n} r={r} d={d}: {vol} <= {claim}, with f: {vol_f} <= {claim_f}")
