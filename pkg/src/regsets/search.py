"""Exhaustive searches used as ground truth for the construction and certifiers.

Inverse-closed connection sets are enumerated as unions of *atoms*: single
involutions and pairs ``{x, x^-1}``.  A subset of atoms is a bitmask; the
neighbour count ``|Sx ∩ C|`` is additive over atoms, so a whole block of
masks is scored with one integer matrix product.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .cayley import CayleyGraph
from .groups import (ElementSet, GroupSpecError, GroupTable, _require_subgroup, build_group,
                     is_normal, left_cosets, subgroups)
from .regular import RegularSetCertificate, check_regular_set, condition1_holds

__all__ = [
    "BudgetExceeded",
    "FeasibilityTable",
    "Q1Entry",
    "Q1Report",
    "DEFAULT_BUDGET",
    "ENUMERATION_CAP",
    "inverse_closed_atoms",
    "enumerate_regular_sets",
    "connection_sets_for",
    "feasible_ab_table",
    "perfect_code_connection_exists",
    "inverse_closed_left_transversal",
    "question1_probe",
]

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 1 << 24
ENUMERATION_CAP = 20
CHUNK = 1 << 15


class BudgetExceeded(RuntimeError):
    pass


def inverse_closed_atoms(G: GroupTable, within: ElementSet | None = None) -> list[ElementSet]:
    """Involutions and inverse pairs of ``within - {e}``, sorted by least element."""
    inv = G.inverses
    pool = within if within is not None else G.full
    atoms, seen = [], set()
    for x in pool:
        if x == 0 or x in seen:
            continue
        seen.update((x, inv[x]))
        atoms.append(ElementSet.from_indices(G, {x, inv[x]}))
    return atoms


def _atoms_mask(atoms: Sequence[ElementSet], code: int) -> int:
    out, t = 0, 0
    while code:
        if code & 1:
            out |= atoms[t].mask
        code >>= 1
        t += 1
    return out


def _order_keys(codes: np.ndarray, width: int) -> np.ndarray:
    """Sort key: fewer atoms first, then lexicographic on atom indices."""
    rev = np.zeros_like(codes)
    for t in range(width):
        rev |= ((codes >> t) & 1) << (width - 1 - t)
    return (np.bitwise_count(codes).astype(np.int64) << width) | ((1 << width) - 1 - rev)


def _contributions(G: GroupTable, atoms: Sequence[ElementSet], C: ElementSet) -> np.ndarray:
    # M[t, x] = |atom_t * x ∩ C|
    in_c = np.zeros(G.order, dtype=np.int32)
    in_c[list(C)] = 1
    M = np.zeros((len(atoms), G.order), dtype=np.int32)
    for t, atom in enumerate(atoms):
        for s in atom:
            M[t] += in_c[G.mul[s]]
    return M


def _scan_block(args) -> dict[tuple[int, int], int]:
    M, inside, start, stop = args
    width = M.shape[0]
    codes = np.arange(start, stop, dtype=np.int64)
    bits = ((codes[:, None] >> np.arange(width)) & 1).astype(np.int32)
    counts = bits @ M
    ins, outs = counts[:, inside], counts[:, ~inside]
    a, b = ins[:, 0], outs[:, 0]
    ok = (ins == a[:, None]).all(axis=1) & (outs == b[:, None]).all(axis=1)
    if not ok.any():
        return {}
    codes, a, b = codes[ok], a[ok], b[ok]
    keys = _order_keys(codes, width)
    out: dict[tuple[int, int], int] = {}
    order = np.lexsort((keys, b, a))
    a, b, codes = a[order], b[order], codes[order]
    first = np.ones(len(a), dtype=bool)
    first[1:] = (a[1:] != a[:-1]) | (b[1:] != b[:-1])
    for ai, bi, c in zip(a[first].tolist(), b[first].tolist(), codes[first].tolist()):
        out[ai, bi] = c
    return out


def _search(G: GroupTable, C: ElementSet, budget: int, workers: int):
    """Best atom code per (a, b) over all inverse-closed S, and whether exhaustive."""
    atoms = inverse_closed_atoms(G)
    width = len(atoms)
    total = 1 << width
    limit = min(total, budget)
    M = _contributions(G, atoms, C)
    inside = np.zeros(G.order, dtype=bool)
    inside[list(C)] = True
    jobs = [(M, inside, s, min(s + CHUNK, limit)) for s in range(0, limit, CHUNK)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_scan_block, jobs))
    else:
        parts = [_scan_block(j) for j in jobs]
    best: dict[tuple[int, int], int] = {}
    for part in parts:
        for cell, code in part.items():
            if cell not in best or _key(code, width) < _key(best[cell], width):
                best[cell] = code
    return atoms, best, limit == total


def _key(code: int, width: int) -> int:
    return int(_order_keys(np.array([code], dtype=np.int64), width)[0])


def connection_sets_for(G: GroupTable, C: ElementSet, budget: int = DEFAULT_BUDGET,
                        workers: int = 1) -> dict[tuple[int, int], ElementSet]:
    """Every (a, b) for which some inverse-closed S makes C (a,b)-regular,
    with the first such S in (size, lexicographic) atom order."""
    if not C or len(C) == G.order:
        raise ValueError("C must be nonempty and proper")
    atoms, best, exhaustive = _search(G, C, budget, workers)
    if not exhaustive:
        raise BudgetExceeded(f"2^{len(atoms)} connection sets exceed budget {budget}")
    return {cell: ElementSet(G, _atoms_mask(atoms, code)) for cell, code in sorted(best.items())}


@dataclass
class FeasibilityTable:
    subgroup: ElementSet
    normal: bool
    cells: dict[tuple[int, int], bool | None]
    witnesses: dict[tuple[int, int], ElementSet] = field(default_factory=dict)
    complete: bool = True

    def feasible(self, a: int, b: int) -> bool | None:
        return self.cells[a, b]

    def to_json(self) -> dict:
        G = self.subgroup.group
        cells = []
        for (a, b), ok in sorted(self.cells.items()):
            w = self.witnesses.get((a, b))
            cells.append({"a": a, "b": b, "feasible": "unknown" if ok is None else ok,
                          "witness": w.names() if w is not None else None})
        return {"H": self.subgroup.names(), "normal": self.normal, "cells": cells}


def feasible_ab_table(G: GroupTable, H: ElementSet, budget: int = DEFAULT_BUDGET,
                      workers: int = 1) -> FeasibilityTable:
    """Which (a, b) with 0 <= a < |H|, 0 <= b <= |H| make H an (a,b)-regular set.

    Normality is not required.  Cells with odd a are false without search
    when |H| is odd.  If the space exceeds ``budget`` the table is partial
    and unresolved cells are ``None``.
    """
    _require_subgroup(G, H)
    d = len(H)
    if d == 1 or d == G.order:
        raise ValueError("H must be a nontrivial proper subgroup")
    atoms, best, exhaustive = _search(G, H, budget, workers)
    cells: dict[tuple[int, int], bool | None] = {}
    witnesses = {}
    for a in range(d):
        for b in range(d + 1):
            if d % 2 and a % 2:
                cells[a, b] = False
            elif (a, b) in best:
                cells[a, b] = True
                witnesses[a, b] = ElementSet(G, _atoms_mask(atoms, best[a, b]))
            else:
                cells[a, b] = False if exhaustive else None
    return FeasibilityTable(H, is_normal(G, H), cells, witnesses, exhaustive)


def perfect_code_connection_exists(G: GroupTable, H: ElementSet, budget: int = DEFAULT_BUDGET,
                                   workers: int = 1) -> tuple[bool, ElementSet | None]:
    """Direct search for an inverse-closed S with H a perfect code of Cay(G, S)."""
    _require_subgroup(G, H)
    if len(H) == G.order:
        raise ValueError("H must be proper")
    atoms, best, exhaustive = _search(G, H, budget, workers)
    if (0, 1) in best:
        return True, ElementSet(G, _atoms_mask(atoms, best[0, 1]))
    if not exhaustive:
        raise BudgetExceeded(f"2^{len(atoms)} connection sets exceed budget {budget}")
    return False, None


def inverse_closed_left_transversal(G: GroupTable, H: ElementSet) -> ElementSet | None:
    """Backtracking search for S with S ∪ {e} an inverse-closed left transversal.

    Works for any subgroup.  Picking x in one coset forces x^-1 into the
    coset containing it, so the search runs over cosets, not subsets.
    """
    cosets = left_cosets(G, H)
    inv = G.inverses
    taken = [False] * len(cosets)
    taken[cosets.of(0)] = True
    chosen: list[int] = []

    def place(k: int) -> bool:
        while k < len(cosets) and taken[k]:
            k += 1
        if k == len(cosets):
            return True
        for x in cosets.cosets[k]:
            y = inv[x]
            ky = cosets.of(y)
            if x == y:
                taken[k] = True
                chosen.append(x)
                if place(k + 1):
                    return True
                chosen.pop()
                taken[k] = False
            elif ky != k and not taken[ky]:
                taken[k] = taken[ky] = True
                chosen.extend((x, y))
                if place(k + 1):
                    return True
                del chosen[-2:]
                taken[k] = taken[ky] = False
        return False

    return ElementSet.from_indices(G, chosen) if place(0) else None


def enumerate_regular_sets(graph: CayleyGraph, ab: tuple[int, int] | None = None,
                           cap: int = ENUMERATION_CAP) -> list[tuple[ElementSet, RegularSetCertificate]]:
    """All nonempty proper regular sets of the graph in ascending bitmask order."""
    n = graph.order
    if n > cap:
        raise ValueError(f"all-subsets enumeration is capped at order {cap}; "
                         "use feasible_ab_table for subgroup-only searches")
    nbr = np.array(graph.neighbor_masks, dtype=np.int64)
    verts = np.arange(n)
    found = []
    for start in range(1, (1 << n) - 1, CHUNK):
        codes = np.arange(start, min(start + CHUNK, (1 << n) - 1), dtype=np.int64)
        counts = np.bitwise_count(codes[:, None] & nbr[None, :]).astype(np.int32)
        inside = ((codes[:, None] >> verts) & 1).astype(bool)
        a_lo = np.where(inside, counts, n + 1).min(axis=1)
        a_hi = np.where(inside, counts, -1).max(axis=1)
        b_lo = np.where(inside, n + 1, counts).min(axis=1)
        b_hi = np.where(inside, -1, counts).max(axis=1)
        ok = (a_lo == a_hi) & (b_lo == b_hi)
        if ab is not None:
            ok &= (a_lo == ab[0]) & (b_lo == ab[1])
        for code in codes[ok].tolist():
            C = ElementSet(graph.group, code)
            found.append((C, check_regular_set(graph, C)))
    return found


@dataclass
class Q1Entry:
    group: str
    subgroup: list[str]
    condition1: bool
    perfect_code: bool
    witness: list[str] | None

    @property
    def agrees(self) -> bool:
        return self.condition1 == self.perfect_code


@dataclass
class Q1Report:
    entries: list[Q1Entry] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def disagreements(self) -> list[Q1Entry]:
        return [e for e in self.entries if not e.agrees]

    def to_json(self) -> dict:
        return {
            "entries": [{"group": e.group, "H": e.subgroup, "condition1": e.condition1,
                         "perfect_code": e.perfect_code, "witness": e.witness}
                        for e in self.entries],
            "disagreements": [{"group": e.group, "H": e.subgroup} for e in self.disagreements],
            "skipped": self.skipped,
        }


def question1_probe(family: Iterable[str | GroupTable], budget: int = DEFAULT_BUDGET,
                    workers: int = 1) -> Q1Report:
    """Compare the condition-(1) test with direct perfect-code search on every
    non-normal subgroup of the listed groups.  Reports; asserts nothing."""
    report = Q1Report()
    for item in family:
        G = build_group(item) if isinstance(item, str) else item
        try:
            found = []
            for H in subgroups(G):
                if is_normal(G, H):
                    continue
                ok, wit = perfect_code_connection_exists(G, H, budget, workers)
                found.append(Q1Entry(G.spec, H.names(), condition1_holds(G, H), ok,
                                     wit.names() if wit is not None else None))
        except (BudgetExceeded, ValueError, GroupSpecError) as exc:
            log.warning("skipping %s: %s", G.spec, exc)
            report.skipped.append(f"{G.spec}: {exc}")
            continue
        report.entries.extend(found)
    return report

