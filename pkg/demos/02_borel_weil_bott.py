"""Borel-Weil-Bott in action: from weights to cohomology tables.

An irreducible equivariant bundle E_lambda on G/P_k either has no
cohomology at all (lambda + rho singular) or exactly one group, whose
degree is the length of the climbing word and whose label is the dominant
representative minus rho.  Reducible bundles need a filtration and the
RegInd vanishing criterion.
"""

from bwbforge.bwbcohom import (
    FilteredBundle,
    bundle_cohomology,
    bwb,
    filtered_cohomology,
    reg_ind,
)
from bwbforge.homspace import gradation, parse_homspace
from bwbforge.repcalc import weyl_dim

X = parse_homspace("G2/P2")

print("== irreducible bundles on G2/P2 ==")
for t in range(-9, 1, 3):
    lam = X.line(t)
    table = bwb(X, lam)
    if table.is_zero():
        print(f"O({t}): acyclic")
    else:
        (q, row), = table.entries.items()
        (hw, mult), = row.items()
        print(f"O({t}): H^{q} = V{hw}^* of dimension {weyl_dim(X.group, hw)}")

print()
print("== the cotangent bundle, a genuinely filtered object ==")
om = FilteredBundle.from_decomps(gradation(X).as_filtration())
print("graded pieces (subbundle end first):", [dict(g) for g in om.gradeds])
print("RegInd(Omega) =", reg_ind(X, om))
print("H(Omega) =", filtered_cohomology(X, om).dims(), " -- the Picard rank")

for t in (-3, -6):
    tw = om.twist(X, t)
    table = filtered_cohomology(X, tw)
    print(f"H(Omega({t})) =", table.dims(), "exact" if table.exact else "bounds")

print()
print("== direct sums are exact: no certificates needed ==")
bundle = {(-8, 1): 1, (-6, 0): 1}
table = bundle_cohomology(parse_homspace("G2/P1"), bundle)
print("E_w2(-8) + O(-6) on G2/P1:", table.dims(),
      "split as", {str(k): v for k, v in table.entries[5].items()})
