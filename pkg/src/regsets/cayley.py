"""Cayley graphs Cay(G, S): x ~ y iff y x^-1 lies in S."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .groups import ElementSet, GroupTable

__all__ = [
    "ConnectionSet",
    "CayleyGraph",
    "ConnectionSetError",
    "make_connection_set",
    "cayley_graph",
    "neighbors",
]


class ConnectionSetError(ValueError):
    """The proposed connection set contains e or is not inverse-closed."""

    def __init__(self, message: str, element: int | None = None):
        super().__init__(message)
        self.element = element


@dataclass(frozen=True)
class ConnectionSet:
    elems: ElementSet

    @property
    def group(self) -> GroupTable:
        return self.elems.group

    def __iter__(self):
        return iter(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __contains__(self, g: int) -> bool:
        return g in self.elems


def make_connection_set(G: GroupTable, A: ElementSet | ConnectionSet) -> ConnectionSet:
    """Validate that ``A`` is an inverse-closed subset of G minus the identity."""
    if isinstance(A, ConnectionSet):
        A = A.elems
    if A.group is not G:
        raise ConnectionSetError("connection set belongs to a different group")
    if 0 in A:
        raise ConnectionSetError("connection set contains the identity", 0)
    inv = G.inverses
    for g in A:
        if inv[g] not in A:
            raise ConnectionSetError(
                f"not inverse-closed: {G.names[g]} is present but its inverse "
                f"{G.names[inv[g]]} is not", g)
    return ConnectionSet(A)


@dataclass(frozen=True, eq=False)
class CayleyGraph:
    connection: ConnectionSet

    @property
    def group(self) -> GroupTable:
        return self.connection.group

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def degree(self) -> int:
        return len(self.connection)

    @cached_property
    def neighbor_masks(self) -> list[int]:
        """Bitmask of S*v for every vertex v."""
        rows = self.group.rows
        S = list(self.connection)
        out = []
        for v in range(self.order):
            m = 0
            for s in S:
                m |= 1 << rows[s][v]
            out.append(m)
        return out

    def adjacency_matrix(self) -> np.ndarray:
        n = self.order
        A = np.zeros((n, n), dtype=np.int64)
        S = np.fromiter(self.connection, dtype=np.int64, count=len(self.connection))
        if len(S):
            # row v, columns s*v
            A[np.repeat(np.arange(n), len(S)), self.group.mul[S].T.ravel()] = 1
        return A

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges (u, v) with u < v."""
        return [(u, v) for u, m in enumerate(self.neighbor_masks)
                for v in ElementSet(self.group, m) if u < v]


def cayley_graph(G: GroupTable, S: ElementSet | ConnectionSet) -> CayleyGraph:
    return CayleyGraph(make_connection_set(G, S))


def neighbors(graph: CayleyGraph, v: int) -> ElementSet:
    """The neighbourhood S*v of vertex v."""
    if not 0 <= v < graph.order:
        raise ValueError(f"vertex {v} out of range")
    return ElementSet(graph.group, graph.neighbor_masks[v])
