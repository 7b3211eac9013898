"""Finite groups as multiplication tables, with subsets stored as bitmasks.

Every group built here has its identity at index 0.  Elements are plain
``int`` indices; ``GroupTable.names`` maps them to printable labels.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "GroupTable",
    "ElementSet",
    "CosetPartition",
    "GroupSpecError",
    "build_group",
    "cyclic_group",
    "dihedral_group",
    "generalized_quaternion_group",
    "quaternion_group",
    "direct_product",
    "permutation_group",
    "group_from_table",
    "load_group_table",
    "element_order",
    "generate_subgroup",
    "is_subgroup",
    "is_normal",
    "left_cosets",
    "right_cosets",
    "inverse_closed",
    "subgroups",
    "normal_subgroups",
    "split_top_level",
    "involutions",
    "all_triples_associative",
    "family_specs",
]

ASSOCIATIVITY_CAP = 256
SUBGROUP_CAP = 128
PERM_GROUP_CAP = 10_000


class GroupSpecError(ValueError):
    """Raised for malformed group specs, bad tables and unknown element names."""


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group given by its full Cayley table.

    ``mul[g, h]`` is the index of ``g*h``.  ``generators`` optionally maps
    single-letter symbols to elements so that words such as ``x8y`` can be
    parsed back into elements.
    """

    names: tuple[str, ...]
    mul: np.ndarray
    inv: np.ndarray
    spec: str = ""
    generators: dict[str, int] = field(default_factory=dict)

    identity = 0

    @property
    def order(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"GroupTable({self.spec or '?'}, order={self.order})"

    @cached_property
    def rows(self) -> list[list[int]]:
        # python lists are much faster than numpy for scalar lookups
        return self.mul.tolist()

    @cached_property
    def inverses(self) -> list[int]:
        return self.inv.tolist()

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def mult(self, *elems: int) -> int:
        out = 0
        rows = self.rows
        for g in elems:
            out = rows[out][g]
        return out

    def power(self, g: int, n: int) -> int:
        if n < 0:
            g, n = self.inverses[g], -n
        out = 0
        for _ in range(n):
            out = self.rows[out][g]
        return out

    def element(self, label: str | int) -> int:
        """Resolve a label (canonical name, ``e``, or a generator word) to an index."""
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.order:
                raise GroupSpecError(f"element index {label} out of range")
            return int(label)
        label = label.strip()
        if label in self._index:
            return self._index[label]
        if label in ("e", "1", "id"):
            return 0
        if self.generators:
            word = _parse_word(label, self.generators)
            if word is not None:
                return self.mult(*(self.power(g, k) for g, k in word))
        raise GroupSpecError(f"unknown element {label!r} in {self.spec or 'group'}")

    def name(self, g: int) -> str:
        return self.names[g]

    def subset(self, elems: Iterable[str | int]) -> ElementSet:
        return ElementSet.from_indices(self, (self.element(x) for x in elems))

    def parse_set(self, text: str) -> ElementSet:
        """Parse a comma-separated list of element labels."""
        text = text.strip()
        if text.startswith("{") and text.endswith("}"):
            text = text[1:-1]
        parts = [p for p in split_top_level(text) if p.strip()]
        return self.subset(parts)

    @property
    def full(self) -> ElementSet:
        return ElementSet(self, (1 << self.order) - 1)

    @property
    def empty(self) -> ElementSet:
        return ElementSet(self, 0)

    @property
    def trivial(self) -> ElementSet:
        return ElementSet(self, 1)


_WORD_TOKEN = re.compile(r"([A-Za-z])(?:\^?(-?\d+))?")


def _parse_word(text: str, generators: dict[str, int]) -> list[tuple[int, int]] | None:
    pos, out = 0, []
    text = text.replace("*", "").replace(" ", "")
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if m is None or m.group(1) not in generators:
            return None
        out.append((generators[m.group(1)], int(m.group(2)) if m.group(2) else 1))
        pos = m.end()
    return out or None


@dataclass(frozen=True)
class ElementSet:
    """A subset of a group, stored as a bitmask over element indices."""

    group: GroupTable = field(repr=False, compare=False)
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.group.order:
            raise ValueError("mask has bits outside the group")

    @classmethod
    def from_indices(cls, group: GroupTable, elems: Iterable[int]) -> ElementSet:
        mask = 0
        for g in elems:
            if not 0 <= g < group.order:
                raise ValueError(f"element index {g} out of range")
            mask |= 1 << g
        return cls(group, mask)

    def __contains__(self, g: int) -> bool:
        return bool(self.mask >> g & 1)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.group is other.group and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((id(self.group), self.mask))

    def _check(self, other: ElementSet) -> None:
        if self.group is not other.group:
            raise ValueError("element sets belong to different groups")

    def __or__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet(self.group, self.mask | other.mask)

    def __and__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet(self.group, self.mask & other.mask)

    def __sub__(self, other: ElementSet) -> ElementSet:
        self._check(other)
        return ElementSet(self.group, self.mask & ~other.mask)

    def __le__(self, other: ElementSet) -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: ElementSet) -> bool:
        self._check(other)
        return self.mask & other.mask == 0

    def complement(self) -> ElementSet:
        return self.group.full - self

    def inverse(self) -> ElementSet:
        inv = self.group.inverses
        return ElementSet.from_indices(self.group, (inv[g] for g in self))

    def left_mul(self, g: int) -> ElementSet:
        """The set ``g*A``."""
        row = self.group.rows[g]
        return ElementSet.from_indices(self.group, (row[a] for a in self))

    def right_mul(self, g: int) -> ElementSet:
        """The set ``A*g``."""
        rows = self.group.rows
        return ElementSet.from_indices(self.group, (rows[a][g] for a in self))

    def least(self) -> int:
        if not self.mask:
            raise ValueError("empty set has no least element")
        return (self.mask & -self.mask).bit_length() - 1

    def names(self) -> list[str]:
        return [self.group.names[g] for g in self]

    def __str__(self) -> str:
        return "{" + ", ".join(self.names()) + "}"


@dataclass(frozen=True)
class CosetPartition:
    """Left cosets ``gH`` ordered by least member."""

    subgroup: ElementSet
    cosets: tuple[ElementSet, ...]
    representative: tuple[int, ...]
    coset_index: tuple[int, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.cosets)

    def of(self, g: int) -> int:
        """Index of the coset containing ``g``."""
        return self.coset_index[g]


# ----------------------------------------------------------------------------
# builders

def _from_product(names: Sequence[str], product, spec: str, generators=None) -> GroupTable:
    n = len(names)
    mul = np.array([[product(i, j) for j in range(n)] for i in range(n)], dtype=np.int64)
    return _finish(list(names), mul, spec, generators or {})


def _finish(names: list[str], mul: np.ndarray, spec: str, generators: dict[str, int]) -> GroupTable:
    n = len(names)
    inv = np.argmax(mul == 0, axis=1).astype(np.int64)
    mul.setflags(write=False)
    inv.setflags(write=False)
    return GroupTable(tuple(names), mul, inv, spec, dict(generators))


def _power_name(sym: str, k: int) -> str:
    return "" if k == 0 else sym if k == 1 else f"{sym}{k}"


def cyclic_group(n: int) -> GroupTable:
    """Integers mod n; element k is named ``str(k)``."""
    if n < 1:
        raise GroupSpecError("cyclic order must be >= 1")
    return _from_product([str(k) for k in range(n)], lambda i, j: (i + j) % n, f"cyclic:{n}")


def dihedral_group(n: int) -> GroupTable:
    """Dihedral group of order 2n: ``r^k`` (k < n) then ``r^k f``."""
    if n < 2:
        raise GroupSpecError("dihedral parameter must be >= 2 (order 2n)")
    names = [_power_name("r", k) or "e" for k in range(n)]
    names += [_power_name("r", k) + "f" for k in range(n)]

    def product(i, j):
        (a, s), (b, t) = divmod(i, n)[::-1], divmod(j, n)[::-1]
        return (a + (-b if s else b)) % n + n * ((s + t) % 2)

    return _from_product(names, product, f"dihedral:{n}", {"r": 1, "f": n})


def generalized_quaternion_group(order: int) -> GroupTable:
    """``<x, y | x^(2m) = e, y^2 = x^m, y^-1 x y = x^-1>`` of order 4m.

    Elements are ``x^k`` for k < 2m followed by ``x^k y``.
    """
    if order % 4 or order < 8:
        raise GroupSpecError("generalized quaternion order must be a multiple of 4, >= 8")
    m = order // 4
    n = 2 * m
    names = [_power_name("x", k) or "e" for k in range(n)]
    names += [_power_name("x", k) + "y" for k in range(n)]

    def product(i, j):
        (a, s), (b, t) = divmod(i, n)[::-1], divmod(j, n)[::-1]
        # y x^b = x^-b y and y y = x^m
        k = a + (-b if s else b)
        if s and t:
            return (k + m) % n
        return k % n + n * (s + t)

    return _from_product(names, product, f"genq:{order}", {"x": 1, "y": n})


_Q8_UNITS = {  # (u, v) -> (sign, unit) for u*v, units 0=1, 1=i, 2=j, 3=k
    (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
    (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
    (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
}


def quaternion_group() -> GroupTable:
    """Q8 with element order 1, -1, i, -i, j, -j, k, -k."""
    labels = ["1", "i", "j", "k"]
    names = [s + u for u in labels for s in ("", "-")]

    def product(p, q):
        (u, sp), (v, sq) = divmod(p, 2), divmod(q, 2)
        if u == 0 or v == 0:
            sign, w = 1, u or v
        else:
            sign, w = _Q8_UNITS[u, v]
        neg = (sp + sq + (sign < 0)) % 2
        return 2 * w + neg

    return _from_product(names, product, "q8", {"i": 2, "j": 4, "k": 6})


def direct_product(A: GroupTable, B: GroupTable) -> GroupTable:
    """Pairs ``(a, b)`` at index ``a*|B| + b``."""
    nb = B.order
    names = [f"({a},{b})" for a in A.names for b in B.names]
    mul = (A.mul[:, None, :, None] * nb + B.mul[None, :, None, :]).reshape(A.order * nb, A.order * nb)
    return _finish(names, np.ascontiguousarray(mul), f"product({A.spec},{B.spec})", {})


_CYCLE = re.compile(r"\(([^()]*)\)")


def _parse_permutation(text: str) -> list[tuple[int, ...]]:
    text = text.strip()
    if not text or _CYCLE.sub("", text).strip():
        raise GroupSpecError(f"malformed cycle notation {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        pts = [p for p in re.split(r"[,\s]+", body.strip()) if p]
        try:
            cycle = tuple(int(p) for p in pts)
        except ValueError:
            raise GroupSpecError(f"non-integer point in cycle {body!r}") from None
        if len(set(cycle)) != len(cycle) or min(cycle, default=0) < 0:
            raise GroupSpecError(f"bad cycle {body!r}")
        cycles.append(cycle)
    return cycles


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, p = [], start
        while p not in seen:
            seen.add(p)
            cyc.append(p)
            p = perm[p]
        parts.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(parts) or "e"


def permutation_group(generators: Sequence[str], spec: str = "") -> GroupTable:
    """Closure of permutations written in cycle notation, e.g. ``(1,2,3)(4,5)``.

    Elements are sorted by their image tuples, so the identity comes first.
    """
    parsed = [_parse_permutation(g) for g in generators]
    degree = 1 + max((p for cycles in parsed for c in cycles for p in c), default=0)
    gens = []
    for cycles in parsed:
        img = list(range(degree))
        # cycles are composed left to right, each applied after the previous
        for c in cycles:
            step = list(range(degree))
            for k, p in enumerate(c):
                step[p] = c[(k + 1) % len(c)]
            img = [step[img[i]] for i in range(degree)]
        gens.append(tuple(img))
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(degree))
                if q not in elems:
                    elems.add(q)
                    nxt.append(q)
                    if len(elems) > PERM_GROUP_CAP:
                        raise GroupSpecError("permutation group too large")
        frontier = nxt
    perms = sorted(elems)
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = q(p(i)): apply p first, matching left-to-right cycle products
    mul = np.array([[index[tuple(q[p[i]] for i in range(degree))] for q in perms] for p in perms],
                   dtype=np.int64)
    return _finish([_cycle_name(p) for p in perms], mul, spec or "perm:" + ";".join(generators), {})


def group_from_table(names: Sequence[str], table, spec: str = "table",
                     check_associativity: int | None = ASSOCIATIVITY_CAP) -> GroupTable:
    """Validate a raw Cayley table and wrap it.

    The table must be a Latin square with identity at index 0 and unique
    names.  Associativity is checked by a full triple scan when the order is
    at most ``check_associativity``.
    """
    mul = np.asarray(table, dtype=np.int64)
    n = len(names)
    if n < 1 or mul.shape != (n, n):
        raise GroupSpecError(f"table must be {n}x{n}")
    if len(set(names)) != n:
        raise GroupSpecError("element names must be distinct")
    if mul.min() < 0 or mul.max() >= n:
        raise GroupSpecError("table entries out of range")
    ref = np.arange(n)
    if not (np.sort(mul, axis=1) == ref).all() or not (np.sort(mul, axis=0) == ref[:, None]).all():
        raise GroupSpecError("table is not a Latin square")
    if not ((mul[0] == ref).all() and (mul[:, 0] == ref).all()):
        raise GroupSpecError("identity must be element 0")
    if check_associativity is not None and n <= check_associativity:
        left = mul[mul, :]  # left[a, b, c] = (a*b)*c
        right = mul[:, mul]  # right[a, b, c] = a*(b*c)
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            raise GroupSpecError(f"table is not associative at {tuple(int(x) for x in bad)}")
    return _finish(list(names), mul.copy(), spec, {})


def load_group_table(path: str | Path) -> GroupTable:
    """Load ``{"order": n, "names": [...], "table": [[...]]}`` from JSON."""
    try:
        data = json.loads(Path(path).read_text())
        order, names, table = data["order"], data["names"], data["table"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise GroupSpecError(f"cannot read group table {path}: {exc}") from exc
    if order != len(names):
        raise GroupSpecError("'order' does not match the number of names")
    return group_from_table([str(x) for x in names], table, spec=f"table:{path}")


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on ``sep`` outside of parentheses/brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _int_param(text: str, spec: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise GroupSpecError(f"bad integer parameter in {spec!r}") from None


def build_group(spec: str) -> GroupTable:
    """Build a group from a spec string.

    Accepted forms: ``cyclic:n``, ``dihedral:n`` (order 2n), ``genq:n``
    (order n), ``q8``, ``product(A,B)``, ``perm:<gen>;<gen>...`` and
    ``table:<path>``.
    """
    spec = spec.strip()
    if spec == "q8":
        return quaternion_group()
    if spec.startswith("product(") and spec.endswith(")"):
        args = split_top_level(spec[len("product("):-1])
        if len(args) < 2 or not all(args):
            raise GroupSpecError(f"product needs at least two factors: {spec!r}")
        factors = [build_group(arg) for arg in args]
        out = factors[0]
        for f in factors[1:]:
            out = direct_product(out, f)
        names = ["(" + ",".join(parts) + ")"
                 for parts in itertools.product(*(f.names for f in factors))]
        return GroupTable(tuple(names), out.mul, out.inv, spec, {})
    family, sep, arg = spec.partition(":")
    if not sep:
        raise GroupSpecError(f"malformed group spec {spec!r}")
    if family == "cyclic":
        return cyclic_group(_int_param(arg, spec))
    if family == "dihedral":
        return dihedral_group(_int_param(arg, spec))
    if family == "genq":
        return generalized_quaternion_group(_int_param(arg, spec))
    if family == "perm":
        gens = [g for g in arg.split(";") if g.strip()]
        if not gens:
            raise GroupSpecError("perm spec needs at least one generator")
        return permutation_group(gens, spec)
    if family == "table":
        return load_group_table(arg)
    raise GroupSpecError(f"unknown group family {family!r}")


# ----------------------------------------------------------------------------
# element and subgroup arithmetic

def element_order(G: GroupTable, g: int) -> int:
    """Least n >= 1 with g^n = e."""
    n, x = 1, g
    while x != 0:
        x = G.rows[x][g]
        n += 1
    return n


def generate_subgroup(G: GroupTable, gens: ElementSet | Iterable[int]) -> ElementSet:
    """Smallest subgroup containing ``gens``."""
    gens = list(gens)
    rows = G.rows
    mask, frontier = 1, [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = rows[x][g]
                if not mask >> y & 1:
                    mask |= 1 << y
                    nxt.append(y)
        frontier = nxt
    # finite group: closure under multiplication already contains inverses
    return ElementSet(G, mask)


def is_subgroup(G: GroupTable, H: ElementSet) -> bool:
    if 0 not in H:
        return False
    rows = G.rows
    members = list(H)
    return all(rows[a][b] in H for a in members for b in members)


def _require_subgroup(G: GroupTable, H: ElementSet) -> None:
    if H.group is not G:
        raise ValueError("subset belongs to a different group")
    if not is_subgroup(G, H):
        raise ValueError(f"{H} is not a subgroup")


def is_normal(G: GroupTable, H: ElementSet) -> bool:
    """True iff gHg^-1 = H for every g."""
    _require_subgroup(G, H)
    rows, inv = G.rows, G.inverses
    members = list(H)
    for g in range(G.order):
        gi = inv[g]
        for h in members:
            if rows[rows[g][h]][gi] not in H:
                return False
    return True


def _cosets(G: GroupTable, H: ElementSet, left: bool) -> CosetPartition:
    _require_subgroup(G, H)
    index = [-1] * G.order
    cosets, reps = [], []
    for g in range(G.order):
        if index[g] >= 0:
            continue
        c = H.left_mul(g) if left else H.right_mul(g)
        for x in c:
            index[x] = len(cosets)
        cosets.append(c)
        reps.append(g)
    return CosetPartition(H, tuple(cosets), tuple(reps), tuple(index))


def left_cosets(G: GroupTable, H: ElementSet) -> CosetPartition:
    """Left cosets gH in ascending order of least member."""
    return _cosets(G, H, left=True)


def right_cosets(G: GroupTable, H: ElementSet) -> CosetPartition:
    return _cosets(G, H, left=False)


def inverse_closed(G: GroupTable, A: ElementSet) -> bool:
    inv = G.inverses
    return all(inv[g] in A for g in A)


def subgroups(G: GroupTable, cap: int = SUBGROUP_CAP) -> list[ElementSet]:
    """All subgroups of G, sorted by (size, mask).

    Built by repeatedly joining known subgroups with cyclic ones.
    """
    if G.order > cap:
        raise ValueError(f"subgroup enumeration capped at order {cap}")
    cyclic = {}
    for g in range(G.order):
        c = generate_subgroup(G, [g])
        cyclic.setdefault(c.mask, g)
    found = set(cyclic)
    frontier = list(found)
    while frontier:
        nxt = []
        for m in frontier:
            gens = list(ElementSet(G, m))
            for cm, g in cyclic.items():
                if cm & ~m == 0:
                    continue
                j = generate_subgroup(G, gens + [g]).mask
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return [ElementSet(G, m) for m in sorted(found, key=lambda m: (m.bit_count(), m))]


def normal_subgroups(G: GroupTable, cap: int = SUBGROUP_CAP) -> list[ElementSet]:
    return [H for H in subgroups(G, cap) if is_normal(G, H)]


def all_triples_associative(G: GroupTable) -> bool:
    m = G.mul
    return bool(np.array_equal(m[m, :], m[:, m]))


def involutions(G: GroupTable, within: ElementSet | None = None) -> list[int]:
    rows = G.rows
    pool = within if within is not None else range(G.order)
    return [g for g in pool if g != 0 and rows[g][g] == 0]


def family_specs(max_order: int, products: bool = True) -> list[str]:
    """Specs for every builder-family group of order <= max_order.

    Cyclic, dihedral, generalized quaternion, Q8, and direct products of two
    or three cyclic groups of order >= 2 (isomorphic duplicates included).
    """
    specs = [f"cyclic:{n}" for n in range(1, max_order + 1)]
    specs += [f"dihedral:{n}" for n in range(2, max_order // 2 + 1)]
    specs += [f"genq:{n}" for n in range(8, max_order + 1, 4)]
    if max_order >= 8:
        specs.append("q8")
    if products:
        for p in range(2, max_order + 1):
            for q in range(p, max_order // p + 1):
                specs.append(f"product(cyclic:{p},cyclic:{q})")
                for r in range(q, max_order // (p * q) + 1):
                    specs.append(f"product(cyclic:{p},cyclic:{q},cyclic:{r})")
    return specs
