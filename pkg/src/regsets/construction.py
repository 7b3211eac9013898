"""Building connection sets that make a normal subgroup an (a,b)-regular set.

The pipeline is: find an inverse-closed left transversal ``S0 ∪ {e}`` of H
(which makes H a perfect code of Cay(G, S0)), then spread ``b`` copies of
every non-identity coset across S0 to obtain S, and finally add an
inverse-closed K ⊆ H - {e} of size a.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .cayley import ConnectionSet, make_connection_set
from .groups import (ElementSet, GroupTable, _require_subgroup, involutions, is_normal,
                     left_cosets)
from .regular import RegularSetCertificate, check_subgroup_regular

__all__ = [
    "OrderedS0",
    "CosetDecomposition",
    "ConstructionTrace",
    "inverse_closed_transversal",
    "order_s0",
    "decompose_coset",
    "canonical_h_order",
    "canonical_k",
    "construct_connection_set",
    "regular_set_connection",
    "complement_to_full",
    "complement_outside",
]


@dataclass(frozen=True)
class OrderedS0:
    """s_1..s_n with s_i^-1 = s_(2m+1-i) for i <= 2m and involutions after."""

    elems: tuple[int, ...]
    m: int

    @property
    def n(self) -> int:
        return len(self.elems)

    def as_set(self, G: GroupTable) -> ElementSet:
        return ElementSet.from_indices(G, self.elems)


@dataclass(frozen=True)
class CosetDecomposition:
    coset_rep: int
    u_pairs: tuple[tuple[int, int], ...]
    v_involutions: tuple[int, ...]

    @property
    def alpha(self) -> int:
        return len(self.u_pairs)

    @property
    def beta(self) -> int:
        return len(self.v_involutions)


@dataclass(frozen=True)
class ConstructionTrace:
    group: GroupTable
    subgroup: ElementSet
    h_order: tuple[int, ...]
    S0: OrderedS0
    b: int
    K: ElementSet
    S_blocks: tuple[ElementSet, ...]
    T_blocks: tuple[ElementSet, ...]
    decompositions: tuple[CosetDecomposition, ...]
    result: ConnectionSet

    @property
    def a(self) -> int:
        return len(self.K)

    def to_json(self) -> dict:
        G = self.group
        return {
            "H": self.subgroup.names(),
            "H_order": [G.names[h] for h in self.h_order],
            "S0": [G.names[s] for s in self.S0.elems],
            "m": self.S0.m,
            "a": self.a,
            "b": self.b,
            "K": self.K.names(),
            "S_blocks": [blk.names() for blk in self.S_blocks],
            "T_blocks": [blk.names() for blk in self.T_blocks],
            "cosets": [{"rep": G.names[d.coset_rep], "alpha": d.alpha, "beta": d.beta}
                       for d in self.decompositions],
            "S": self.result.elems.names(),
        }


def _require_target(G: GroupTable, H: ElementSet) -> None:
    _require_subgroup(G, H)
    if len(H) == 1 or len(H) == G.order:
        raise ValueError("H must be a nontrivial proper subgroup")
    if not is_normal(G, H):
        raise ValueError(f"{H} is not normal in {G.spec or 'G'}")


def _arrange(G: GroupTable, pair_reps: Sequence[int], invols: Sequence[int]) -> OrderedS0:
    inv = G.inverses
    front = list(pair_reps)
    back = [inv[x] for x in reversed(front)]
    return OrderedS0(tuple(front + back + sorted(invols)), len(front))


def inverse_closed_transversal(G: GroupTable, H: ElementSet,
                               rng: random.Random | None = None) -> OrderedS0 | None:
    """An inverse-closed left transversal of a normal H, minus e, or None.

    Mutually inverse cosets gH, g^-1 H contribute a pair (x, x^-1) with x the
    least element of the earlier coset; a self-inverse coset needs an
    involution.  With ``rng`` the element choices are randomized instead.
    """
    _require_target(G, H)
    cosets = left_cosets(G, H)
    inv, rows = G.inverses, G.rows
    done = {cosets.of(0)}
    pair_reps, invols = [], []
    for k, coset in enumerate(cosets.cosets):
        if k in done:
            continue
        mirror = cosets.of(inv[coset.least()])
        done.update((k, mirror))
        if mirror == k:
            cands = [x for x in coset if rows[x][x] == 0]
            if not cands:
                return None
            invols.append(rng.choice(cands) if rng else cands[0])
        else:
            members = list(coset)
            pair_reps.append(rng.choice(members) if rng else members[0])
    if rng:
        rng.shuffle(pair_reps)
        # a pair may be entered from either end
        pair_reps = [inv[x] if rng.random() < 0.5 else x for x in pair_reps]
    return _arrange(G, pair_reps, invols)


def order_s0(G: GroupTable, H: ElementSet, S0: ElementSet | ConnectionSet) -> OrderedS0:
    """Validate a user supplied S0 and put it in canonical order."""
    _require_target(G, H)
    S0 = make_connection_set(G, S0).elems
    cosets = left_cosets(G, H)
    hit = [cosets.of(s) for s in S0]
    if cosets.of(0) in hit or len(set(hit)) != len(hit) or len(hit) != len(cosets) - 1:
        raise ValueError(f"{S0} ∪ {{e}} is not a left transversal of {H}")
    inv, rows = G.inverses, G.rows
    reps = [s for s in S0 if rows[s][s] != 0 and s < inv[s]]
    return _arrange(G, reps, [s for s in S0 if rows[s][s] == 0])


def _check_s0(G: GroupTable, H: ElementSet, S0: OrderedS0) -> None:
    inv = G.inverses
    n, m = S0.n, S0.m
    for i in range(2 * m):
        if inv[S0.elems[i]] != S0.elems[2 * m - 1 - i]:
            raise ValueError("S0 ordering violates s_i^-1 = s_(2m+1-i)")
    for j in range(2 * m, n):
        if inv[S0.elems[j]] != S0.elems[j]:
            raise ValueError("S0 entries past 2m must be involutions")
    if len(set(S0.elems)) != n:
        raise ValueError("S0 has repeated entries")
    order_s0(G, H, S0.as_set(G))


def decompose_coset(G: GroupTable, H: ElementSet, rep: int) -> CosetDecomposition:
    """Split the coset rep*H into inverse pairs of order > 2 and involutions.

    The representative heads the involution list; remaining involutions and
    pairs follow in ascending order.
    """
    rows, inv = G.rows, G.inverses
    if rep == 0 or rows[rep][rep] != 0:
        raise ValueError(f"{G.names[rep]} is not an involution")
    if rep in H:
        raise ValueError("representative lies in H")
    coset = H.left_mul(rep)
    if coset.inverse() != coset:
        raise ValueError("coset is not inverse-closed; H is not normal")
    v = [rep] + [x for x in coset if x != rep and rows[x][x] == 0]
    used, pairs = set(v), []
    for x in coset:
        if x not in used:
            used.update((x, inv[x]))
            pairs.append((x, inv[x]))
    return CosetDecomposition(rep, tuple(pairs), tuple(v))


def canonical_h_order(H: ElementSet) -> tuple[int, ...]:
    """Identity first, then ascending."""
    return tuple(H)


def canonical_k(G: GroupTable, H: ElementSet, a: int) -> ElementSet | None:
    """An inverse-closed K ⊆ H - {e} with |K| = a, or None if impossible.

    For odd a the least involution goes in first; then pairs of
    non-involutions ascending; then further involutions if pairs run out.
    """
    rows, inv = G.rows, G.inverses
    invs = involutions(G, H)
    pairs = [(x, inv[x]) for x in H if x != 0 and rows[x][x] != 0 and x < inv[x]]
    chosen: list[int] = []
    need = a
    if need % 2:
        if not invs:
            return None
        chosen.append(invs.pop(0))
        need -= 1
    for x, y in pairs:
        if need < 2:
            break
        chosen += [x, y]
        need -= 2
    while need and invs:
        chosen.append(invs.pop(0))
        need -= 1
    if need:
        return None
    return ElementSet.from_indices(G, chosen)


def construct_connection_set(G: GroupTable, H: ElementSet, K: ElementSet, b: int,
                             S0: OrderedS0,
                             h_order: Sequence[int] | None = None) -> ConstructionTrace:
    """Build S with H a (|K|, b)-regular set of Cay(G, S).

    For i = 1..b the block S_i holds s_r h_i and its inverse for r <= m; for
    every involution s_j of S0 the block T_j takes b elements of s_j H made
    of whole inverse pairs plus involutions (s_j itself first).
    """
    _require_target(G, H)
    if K.group is not G or not K <= H - G.trivial or K.inverse() != K:
        raise ValueError("K must be an inverse-closed subset of H - {e}")
    d = len(H)
    if not 0 <= b <= d:
        raise ValueError(f"b must lie in [0, {d}]")
    _check_s0(G, H, S0)
    if h_order is None:
        h_order = canonical_h_order(H)
    h_order = tuple(h_order)
    if sorted(h_order) != list(H):
        raise ValueError("h_order must list each element of H once")

    rows, inv = G.rows, G.inverses
    m = S0.m
    S_blocks = []
    for h in h_order[:b]:
        front = [rows[S0.elems[r]][h] for r in range(m)]
        S_blocks.append(ElementSet.from_indices(G, front + [inv[x] for x in front]))

    T_blocks, decomps = [], []
    for s in S0.elems[2 * m:]:
        dec = decompose_coset(G, H, s)
        decomps.append(dec)
        us = [x for pair in dec.u_pairs for x in pair]
        if b > 2 * dec.alpha:
            T = us + list(dec.v_involutions[:b - 2 * dec.alpha])
        elif b % 2:
            T = us[:b - 1] + [dec.v_involutions[0]]
        else:
            T = us[:b]
        T_blocks.append(ElementSet.from_indices(G, T))

    S = K
    for blk in S_blocks + T_blocks:
        S = S | blk
    return ConstructionTrace(G, H, h_order, S0, b, K, tuple(S_blocks), tuple(T_blocks),
                             tuple(decomps), make_connection_set(G, S))


def regular_set_connection(G: GroupTable, H: ElementSet, a: int, b: int) -> ConstructionTrace | None:
    """Canonical S making H an (a,b)-regular set, or None when infeasible.

    Infeasible means H has no inverse-closed transversal (H is not a perfect
    code of G) or |H| is odd while a is odd.
    """
    _require_target(G, H)
    d = len(H)
    if not (0 <= a <= d - 1 and 0 <= b <= d):
        raise ValueError(f"need 0 <= a <= {d - 1} and 0 <= b <= {d}")
    K = canonical_k(G, H, a)
    if K is None:
        return None
    S0 = inverse_closed_transversal(G, H)
    if S0 is None:
        return None
    return construct_connection_set(G, H, K, b, S0)


def _certified(G: GroupTable, S, H: ElementSet) -> tuple[ConnectionSet, RegularSetCertificate]:
    S = make_connection_set(G, S)
    cert = check_subgroup_regular(G, S, H)
    if not cert:
        raise ValueError(f"H is not a regular set of Cay(G, {S.elems})")
    return S, cert


def complement_to_full(G: GroupTable, S: ConnectionSet | ElementSet, H: ElementSet) -> ConnectionSet:
    """(S ∩ H) ∪ (G - H): keeps a and raises b to |H|."""
    S, _ = _certified(G, S, H)
    return make_connection_set(G, (S.elems & H) | H.complement())


def complement_outside(G: GroupTable, S: ConnectionSet | ElementSet, H: ElementSet) -> ConnectionSet:
    """(S ∩ H) ∪ (G - (S ∪ H)): keeps a and sends b to |H| - b."""
    S, _ = _certified(G, S, H)
    return make_connection_set(G, (S.elems & H) | (S.elems | H).complement())

