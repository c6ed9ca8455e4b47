"""Root systems and the Weyl-chamber climb.

Everything downstream rests on two small mechanisms: generating the
positive roots of a simple Lie group, and pushing a weight into the
dominant chamber while counting reflections.  This script walks through
both on G2 and F4, the two groups where conventions bite hardest.
"""

from bwbforge.rootdata import (
    RootSystem,
    cartan_matrix,
    positive_roots,
    reflect,
    rho,
    simple_root_weight,
    to_dominant_chamber,
)

g2 = RootSystem("G", 2)

print("== G2 ==")
print("Cartan matrix (columns express the simple roots):")
for row in cartan_matrix(g2):
    print("   ", row)
print("alpha1 =", simple_root_weight(g2, 1), " (short)")
print("alpha2 =", simple_root_weight(g2, 2), " (long)")
print("positive roots (simple-root coordinates, by height):")
for beta in positive_roots(g2):
    print("   ", beta)

# The highest root 3*alpha1 + 2*alpha2 equals the fundamental weight w2:
# G2/P2 is the adjoint variety.

print()
print("== climbing to the dominant chamber ==")
# O(-6) on G2/P2 corresponds to lambda = -6 w2; Borel-Weil-Bott looks at
# lambda + rho and asks how many reflections make it dominant.
lam_plus_rho = (1, -5)
res = to_dominant_chamber(g2, lam_plus_rho)
print(f"(1,-5) climbs to {res.dominant} via s_{res.word}  (length {res.length})")
print("  => O(-6) on G2/P2 has exactly one cohomology group, in degree 5")

# A weight on a wall dies instead:
res = to_dominant_chamber(g2, (3, -3))
print(f"(3,-3) is {'singular' if res.singular else 'regular'}",
      "- it meets a wall, so the corresponding bundle is acyclic")

print()
print("== F4, where short and long roots interleave ==")
f4 = RootSystem("F", 4)
w = (0, 0, 0, 1)
print("reflecting w4 through s4, s3, s2, s3, s4:")
for i in (4, 3, 2, 3, 4):
    w = reflect(f4, w, i)
    print(f"   s{i} ->", w)
print("rho =", rho(f4), "and |Phi+| =", len(positive_roots(f4)))
