import itertools

import pytest

from regsets import build_group, generate_subgroup


def naive_counts(G, S, C):
    """|N(x) ∩ C| straight from the adjacency rule x ~ y iff y x^-1 in S."""
    S, C = set(S), set(C)
    out = []
    for x in range(G.order):
        xi = int(G.inv[x])
        out.append(sum(1 for y in C if int(G.mul[y, xi]) in S))
    return out


def naive_ab(G, S, C):
    """(a, b) from the definition, or None."""
    counts = naive_counts(G, S, C)
    ins = {counts[x] for x in C}
    outs = {counts[x] for x in range(G.order) if x not in set(C)}
    if len(ins) == 1 and len(outs) == 1:
        return ins.pop(), outs.pop()
    return None


def naive_inverse_closed_sets(G):
    """Every inverse-closed subset of G - {e}, as frozensets (brute force)."""
    elems = range(1, G.order)
    inv = [int(i) for i in G.inv]
    for r in range(G.order):
        for combo in itertools.combinations(elems, r):
            s = set(combo)
            if all(inv[x] in s for x in s):
                yield frozenset(s)


@pytest.fixture(scope="session")
def genq20():
    return build_group("genq:20")


@pytest.fixture(scope="session")
def q8():
    return build_group("q8")


@pytest.fixture(scope="session")
def genq16():
    return build_group("genq:16")


@pytest.fixture
def sub():
    def make(G, *gens):
        return generate_subgroup(G, [G.element(g) for g in gens])
    return make
