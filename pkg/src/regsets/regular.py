"""Certifying (a,b)-regular sets in Cayley graphs.

Two independent routes are provided.  :func:`check_regular_set` counts
neighbours vertex by vertex; :func:`check_regular_set_ring` works in the
integer group ring, where the product of the indicator of S with the
indicator of C has coefficient ``|Sx ∩ C|`` at x.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cayley import CayleyGraph, ConnectionSet, make_connection_set
from .groups import ElementSet, GroupTable, _require_subgroup

__all__ = [
    "ElementMultiset",
    "RegularSetCertificate",
    "NotRegular",
    "ring_multiply",
    "check_regular_set",
    "check_regular_set_ring",
    "ring_parameters",
    "is_perfect_code",
    "is_total_perfect_code",
    "check_subgroup_regular",
    "condition1_witness",
    "condition1_holds",
]


@dataclass(frozen=True, eq=False)
class ElementMultiset:
    """An element of Z[G]: one integer coefficient per group element."""

    group: GroupTable = field(repr=False)
    coeff: np.ndarray

    def __post_init__(self):
        if self.coeff.shape != (self.group.order,):
            raise ValueError("coefficient vector length must equal the group order")

    @classmethod
    def of(cls, A: ElementSet) -> ElementMultiset:
        c = np.zeros(A.group.order, dtype=np.int64)
        c[list(A)] = 1
        return cls(A.group, c)

    def _same(self, other: ElementMultiset) -> None:
        if self.group is not other.group:
            raise ValueError("group ring elements over different groups")

    def __add__(self, other: ElementMultiset) -> ElementMultiset:
        self._same(other)
        return ElementMultiset(self.group, self.coeff + other.coeff)

    def __sub__(self, other: ElementMultiset) -> ElementMultiset:
        self._same(other)
        return ElementMultiset(self.group, self.coeff - other.coeff)

    def __rmul__(self, k: int) -> ElementMultiset:
        return ElementMultiset(self.group, int(k) * self.coeff)

    def __mul__(self, other):
        if isinstance(other, ElementMultiset):
            return ring_multiply(self, other)
        return ElementMultiset(self.group, int(other) * self.coeff)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementMultiset):
            return NotImplemented
        return self.group is other.group and bool(np.array_equal(self.coeff, other.coeff))

    def __getitem__(self, g: int) -> int:
        return int(self.coeff[g])

    def support(self) -> ElementSet:
        return ElementSet.from_indices(self.group, np.flatnonzero(self.coeff).tolist())


def ring_multiply(A: ElementMultiset, B: ElementMultiset) -> ElementMultiset:
    """Convolution over the table: out[x] = sum of A[g]*B[h] over gh = x."""
    A._same(B)
    out = np.zeros(A.group.order, dtype=np.int64)
    np.add.at(out, A.group.mul, np.outer(A.coeff, B.coeff))
    return ElementMultiset(A.group, out)


@dataclass(frozen=True)
class RegularSetCertificate:
    a: int
    b: int
    inside_counts: dict[int, int] = field(repr=False)
    outside_counts: dict[int, int] = field(repr=False)
    set_size: int
    degree: int

    @property
    def pair(self) -> tuple[int, int]:
        return self.a, self.b

    def __bool__(self) -> bool:
        return True

    def to_json(self, G: GroupTable | None = None) -> dict:
        return {"a": self.a, "b": self.b, "set_size": self.set_size,
                "degree": self.degree, "witness": None}


@dataclass(frozen=True)
class NotRegular:
    """Two vertices on the same side of the partition with different counts."""

    u: int
    v: int
    count_u: int
    count_v: int
    inside: bool
    set_size: int
    degree: int

    pair = None

    def __bool__(self) -> bool:
        return False

    def to_json(self, G: GroupTable) -> dict:
        return {"a": None, "b": None, "set_size": self.set_size, "degree": self.degree,
                "witness": {"u": G.names[self.u], "v": G.names[self.v]}}


def _require_proper(G: GroupTable, C: ElementSet) -> None:
    if C.group is not G:
        raise ValueError("subset belongs to a different group")
    if not C or len(C) == G.order:
        raise ValueError("a regular set must be a nonempty proper subset")


def _certify(counts: list[int], C: ElementSet, degree: int):
    inside = {x: counts[x] for x in C}
    outside = {x: c for x, c in enumerate(counts) if x not in C}
    for side, flag in ((inside, True), (outside, False)):
        items = iter(side.items())
        u, cu = next(items)
        for v, cv in items:
            if cv != cu:
                return NotRegular(u, v, cu, cv, flag, len(C), degree)
    a, b = next(iter(inside.values())), next(iter(outside.values()))
    return RegularSetCertificate(a, b, inside, outside, len(C), degree)


def check_regular_set(graph: CayleyGraph, C: ElementSet) -> RegularSetCertificate | NotRegular:
    """Count |Sx ∩ C| at every vertex x and read off (a, b) if it exists.

    Returns a falsy :class:`NotRegular` carrying a witness pair otherwise.
    """
    _require_proper(graph.group, C)
    c = C.mask
    counts = [(m & c).bit_count() for m in graph.neighbor_masks]
    return _certify(counts, C, graph.degree)


def _ring_product(graph: CayleyGraph, C: ElementSet) -> ElementMultiset:
    return ring_multiply(ElementMultiset.of(graph.connection.elems), ElementMultiset.of(C))


def check_regular_set_ring(graph: CayleyGraph, C: ElementSet, a: int, b: int) -> bool:
    """Decide (a,b)-regularity of C purely in the group ring.

    Both ``S*C == a*C + b*(G-C)`` and ``S*C + (b-a)*C == b*G`` are evaluated;
    they must agree.
    """
    G = graph.group
    _require_proper(G, C)
    SC = _ring_product(graph, C)
    Cbar = ElementMultiset.of(C)
    Gbar = ElementMultiset.of(G.full)
    first = SC == a * Cbar + b * ElementMultiset.of(C.complement())
    second = SC + (b - a) * Cbar == b * Gbar
    if first != second:
        raise AssertionError("group ring identities disagree")
    return first


def ring_parameters(graph: CayleyGraph, C: ElementSet) -> tuple[int, int] | None:
    """The unique (a, b) read off from S*C, or None when none exists."""
    _require_proper(graph.group, C)
    coeff = _ring_product(graph, C).coeff
    inside = np.zeros(graph.order, dtype=bool)
    inside[list(C)] = True
    ins, outs = np.unique(coeff[inside]), np.unique(coeff[~inside])
    if len(ins) != 1 or len(outs) != 1:
        return None
    return int(ins[0]), int(outs[0])


def is_perfect_code(graph: CayleyGraph, C: ElementSet) -> bool:
    """(S ∪ {e}) * C == G in the group ring."""
    G = graph.group
    if not C:
        raise ValueError("a perfect code must be nonempty")
    closed = ElementMultiset.of(graph.connection.elems | G.trivial)
    return ring_multiply(closed, ElementMultiset.of(C)) == ElementMultiset.of(G.full)


def is_total_perfect_code(graph: CayleyGraph, C: ElementSet) -> bool:
    """Every vertex has exactly one neighbour in C."""
    if not C:
        raise ValueError("a total perfect code must be nonempty")
    c = C.mask
    ok = all((m & c).bit_count() == 1 for m in graph.neighbor_masks)
    if ok:
        # C induces a perfect matching on itself
        assert len(C) % 2 == 0
    return ok


def check_subgroup_regular(G: GroupTable, S: ConnectionSet | ElementSet,
                           H: ElementSet) -> RegularSetCertificate | NotRegular:
    """Subgroup criterion: a = |S ∩ H| and (S - H) * H must equal b*(G - H).

    Agrees with :func:`check_regular_set` on every subgroup input but never
    looks at neighbourhoods.
    """
    _require_subgroup(G, H)
    _require_proper(G, H)
    S = make_connection_set(G, S)
    a = len(S.elems & H)
    prod = ring_multiply(ElementMultiset.of(S.elems - H), ElementMultiset.of(H)).coeff
    if prod[list(H)].any():
        raise AssertionError("(S - H) * H meets H")
    counts = (prod + a * ElementMultiset.of(H).coeff).tolist()
    return _certify(counts, H, len(S))


def condition1_witness(G: GroupTable, H: ElementSet) -> int | None:
    """Some g with g^2 in H such that (gh)^2 != e for every h in H, or None."""
    _require_subgroup(G, H)
    rows = G.rows
    members = list(H)
    for g in range(G.order):
        if rows[g][g] not in H:
            continue
        if not any(rows[x][x] == 0 for x in (rows[g][h] for h in members)):
            return g
    return None


def condition1_holds(G: GroupTable, H: ElementSet) -> bool:
    """For every g with g^2 in H there is h in H with (gh)^2 = e."""
    return condition1_witness(G, H) is None
