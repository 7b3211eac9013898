"""Two-part equitable partitions and exact eigenvalue tests.

A nonempty proper C of a k-regular graph is (a,b)-regular exactly when
{C, V - C} is equitable with quotient matrix [[a, k-a], [b, k-b]]; the
eigenvalue other than k is then a - b.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cayley import CayleyGraph
from .groups import ElementSet
from .regular import check_regular_set

__all__ = [
    "QuotientMatrix",
    "quotient_matrix",
    "ab_from_mu",
    "mu_from_quotient",
    "integer_determinant",
    "eigenvalue_membership",
]


@dataclass(frozen=True)
class QuotientMatrix:
    entries: tuple[tuple[int, int], tuple[int, int]]
    degree: int

    def __post_init__(self):
        if any(sum(row) != self.degree for row in self.entries):
            raise ValueError("quotient matrix rows must sum to the degree")

    @property
    def trace(self) -> int:
        return self.entries[0][0] + self.entries[1][1]

    def to_json(self) -> dict:
        return {"entries": [list(r) for r in self.entries], "degree": self.degree,
                "mu": mu_from_quotient(self)}


def quotient_matrix(graph: CayleyGraph, C: ElementSet) -> QuotientMatrix | None:
    """Quotient matrix of {C, V - C}, or None when the partition is not equitable."""
    cert = check_regular_set(graph, C)
    if not cert:
        return None
    k = graph.degree
    return QuotientMatrix(((cert.a, k - cert.a), (cert.b, k - cert.b)), k)


def mu_from_quotient(M: QuotientMatrix) -> int:
    """The eigenvalue other than k: trace minus k."""
    return M.trace - M.degree


def ab_from_mu(k: int, mu: int | Fraction, size_c: int, size_v: int) -> tuple[int, int] | None:
    """Recover (a, b) from the degree, mu and the part sizes.

    a = ((k - mu)|C| + mu|V|) / |V| and b = (k - mu)|C| / |V|, evaluated
    exactly; returns None if either is not an integer.
    """
    if not 0 < size_c < size_v:
        raise ValueError("need 0 < |C| < |V|")
    mu = Fraction(mu)
    a = ((k - mu) * size_c + mu * size_v) / size_v
    b = (k - mu) * size_c / Fraction(size_v)
    if a.denominator != 1 or b.denominator != 1:
        return None
    return int(a), int(b)


def integer_determinant(M) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    rows = [[int(x) for x in r] for r in M]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot, rk = rows[k][k], rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            f = ri[k]
            # exact division is guaranteed by Sylvester's identity
            rows[i] = ri[:k + 1] + [(pivot * ri[j] - f * rk[j]) // prev for j in range(k + 1, n)]
        prev = pivot
    return sign * rows[-1][-1]


def eigenvalue_membership(graph: CayleyGraph, lam: int) -> bool:
    """Exact test of det(A - lam*I) == 0 for the adjacency matrix A."""
    A = graph.adjacency_matrix() - int(lam) * np.eye(graph.order, dtype=np.int64)
    return integer_determinant(A.tolist()) == 0
