"""
Sweeping the construction over small groups
===========================================

For each normal subgroup H of every family group up to order 16, compare the
involution condition with the existence of an inverse-closed transversal and
with an exhaustive search for perfect and total perfect codes.
"""

import time

from regsets import build_group, condition1_holds, inverse_closed_transversal, regular_set_connection
from regsets.groups import family_specs, normal_subgroups
from regsets.search import feasible_ab_table

start = time.perf_counter()
rows = []
for spec in family_specs(16):
    G = build_group(spec)
    for H in normal_subgroups(G):
        if len(H) in (1, G.order):
            continue
        holds = condition1_holds(G, H)
        transversal = inverse_closed_transversal(G, H) is not None
        table = feasible_ab_table(G, H)
        # every constructed set must be marked feasible by the oracle
        built = sum(regular_set_connection(G, H, a, b) is not None
                    for a in range(len(H)) for b in range(len(H) + 1))
        rows.append((spec, len(H), holds, transversal, table.feasible(0, 1),
                     table.feasible(1, 1), built))

print(f"{'group':36s} |H|  cond  transv  PC    TPC   built")
for spec, d, holds, tr, pc, tpc, built in rows:
    print(f"{spec:36s} {d:3d}  {holds!s:5s} {tr!s:6s}  {pc!s:5s} {tpc!s:5s} {built:4d}")

agree = all(r[2] == r[3] == r[4] for r in rows)
print(f"\n{len(rows)} subgroups, all three agree: {agree}, {time.perf_counter() - start:.1f} s")
