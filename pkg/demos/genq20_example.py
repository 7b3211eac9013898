"""
Building a (2,3)-regular set in the generalized quaternion group of order 20
============================================================================

The subgroup H = <x^2> of <x, y | x^10 = e, y^2 = x^5, y^-1 x y = x^-1>
satisfies the involution condition, so for every admissible (a, b) there is
a connection set S making H an (a,b)-regular set of Cay(G, S).
"""

from regsets import (build_group, cayley_graph, check_regular_set, complement_outside,
                     complement_to_full, generate_subgroup, quotient_matrix, regular_set_connection)

G = build_group("genq:20")
H = generate_subgroup(G, [G.element("x2")])
print("H =", H.names())

# run the construction with canonical orderings
trace = regular_set_connection(G, H, 2, 3)
print("S0 =", [G.names[s] for s in trace.S0.elems], " m =", trace.S0.m)
print("K  =", trace.K.names())
for i, blk in enumerate(trace.S_blocks, 1):
    print(f"S{i} =", blk.names())
for j, blk in enumerate(trace.T_blocks, 1):
    print(f"T{j} =", blk.names())
print("S  =", trace.result.elems.names(), f"({len(trace.result)} elements)")

# the certifier knows nothing about the construction
graph = cayley_graph(G, trace.result)
cert = check_regular_set(graph, H)
print("certified:", cert.pair)

# {H, G - H} is an equitable partition; its quotient matrix has eigenvalue a - b
M = quotient_matrix(graph, H)
print("quotient matrix:", M.entries)

# the two complement transforms keep a and move b
for name, f in (("full", complement_to_full), ("outside", complement_outside)):
    S2 = f(G, trace.result, H)
    print(f"{name:8s}", check_regular_set(cayley_graph(G, S2), H).pair)
