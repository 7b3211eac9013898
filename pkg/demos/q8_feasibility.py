"""
Which (a,b) are possible for <i> in Q8
======================================

<i> is normal in Q8 but fails the involution condition (no h in <i> makes
(jh)^2 = 1), so it is never a perfect code.  Some other pairs still occur.
"""

from regsets import build_group, condition1_witness, feasible_ab_table, generate_subgroup

G = build_group("q8")
H = generate_subgroup(G, [G.element("i")])

g = condition1_witness(G, H)
print("condition fails at g =", G.names[g])

# exhaustive over all 16 inverse-closed connection sets
table = feasible_ab_table(G, H)
print("      b=" + "".join(str(b) for b in range(len(H) + 1)))
for a in range(len(H)):
    print(f"a={a}    " + "".join("#" if table.feasible(a, b) else "." for b in range(len(H) + 1)))

for (a, b), S in sorted(table.witnesses.items()):
    print(f"({a},{b}) via S = {S.names()}")
