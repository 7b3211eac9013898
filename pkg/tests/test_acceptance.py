"""Acceptance gate.  Each criterion prints one PASS/FAIL line; run with -s
to see them alongside the pytest summary (they are printed uncaptured)."""

import functools
import itertools
import random
import time
from dataclasses import dataclass

import pytest

from regsets import (ab_from_mu, build_group, cayley_graph, check_regular_set, check_regular_set_ring,
                     complement_outside, complement_to_full, condition1_holds, condition1_witness,
                     construct_connection_set, eigenvalue_membership, inverse_closed_transversal,
                     is_total_perfect_code, mu_from_quotient, quotient_matrix, regular_set_connection)
from regsets.construction import OrderedS0
from regsets.groups import ElementSet, family_specs, left_cosets, normal_subgroups, subgroups
from regsets.regular import ring_parameters
from regsets.search import (connection_sets_for, feasible_ab_table, inverse_closed_atoms,
                            perfect_code_connection_exists)

EXAMPLE_S = "x2, x18, y, y3, x8y, x3y, x6y, xy, x, x9, x5"


@dataclass(frozen=True)
class Witness:
    spec: str
    H: ElementSet
    S: ElementSet
    a: int
    b: int


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def certified(G, S, C):
    cert = check_regular_set(cayley_graph(G, S), C)
    return cert.pair if cert else None


# ---------------------------------------------------------------- criterion 1

def valid_orderings(G, H):
    """Every OrderedS0 over every inverse-closed transversal of H (brute force)."""
    cos = left_cosets(G, H)
    atoms = [a for a in inverse_closed_atoms(G) if not (a.mask & H.mask)]
    for r in range(len(atoms) + 1):
        for pick in itertools.combinations(atoms, r):
            elems = [x for a in pick for x in a]
            if sorted(cos.of(x) for x in (0, *elems)) != list(range(len(cos))):
                continue
            pairs = [tuple(a) for a in pick if len(a) == 2]
            invols = [a.least() for a in pick if len(a) == 1]
            for pp in itertools.permutations(pairs):
                for flips in itertools.product((0, 1), repeat=len(pp)):
                    front = [p[f] for p, f in zip(pp, flips)]
                    back = [G.inverses[x] for x in reversed(front)]
                    for iv in itertools.permutations(invols):
                        yield OrderedS0(tuple(front + back + list(iv)), len(pp))


@functools.cache
def criterion1():
    G = build_group("genq:20")
    H = G.parse_set("e, x2, x4, x6, x8")
    start = time.perf_counter()
    trace = regular_set_connection(G, H, 2, 3)
    exact = trace.result.elems == G.parse_set(EXAMPLE_S)
    pair = certified(G, trace.result, H)
    elapsed = time.perf_counter() - start
    witnesses = [Witness("genq:20", H, trace.result.elems, 2, 3)]
    ks = [K for K in (ElementSet.from_indices(G, c) for c in itertools.combinations(list(H)[1:], 2))
          if K.inverse() == K]
    bad = total = 0
    for S0 in valid_orderings(G, H):
        for h_order in itertools.permutations(H):
            for K in ks:
                S = construct_connection_set(G, H, K, 3, S0, list(h_order)).result
                total += 1
                if certified(G, S, H) != (2, 3):
                    bad += 1
                if total % 97 == 0:
                    witnesses.append(Witness("genq:20", H, S.elems, 2, 3))
    return exact, pair, elapsed, bad, total, witnesses


def test_criterion1_example_reproduction(report):
    exact, pair, elapsed, bad, total, _ = criterion1()
    ok = exact and pair == (2, 3) and elapsed < 1 and bad == 0 and total > 0
    report(1, ok, f"exact={exact} cert={pair} {elapsed * 1000:.1f} ms; "
                  f"{total - bad}/{total} orderings certified (2,3)")


# ---------------------------------------------------------------- criterion 2

@functools.cache
def criterion2():
    G = build_group("q8")
    H = G.parse_set("1, -1, i, -i")
    start = time.perf_counter()
    c1 = certified(G, G.parse_set("-1, j, -j"), H)
    c2 = certified(G, G.parse_set("i, -i, j, -j"), H)
    g = condition1_witness(G, H)
    exists, _ = perfect_code_connection_exists(G, H)
    atoms = inverse_closed_atoms(G)
    scanned = 0
    hits = 0
    for r in range(len(atoms) + 1):
        for pick in itertools.combinations(atoms, r):
            scanned += 1
            S = ElementSet(G, sum(a.mask for a in pick))
            hits += certified(G, S, H) == (0, 1)
    elapsed = time.perf_counter() - start
    witnesses = [Witness("q8", H, G.parse_set("-1, j, -j"), 1, 2),
                 Witness("q8", H, G.parse_set("i, -i, j, -j"), 2, 2)]
    return c1, c2, g, exists, scanned, hits, elapsed, witnesses


def test_criterion2_q8(report):
    c1, c2, g, exists, scanned, hits, elapsed, _ = criterion2()
    ok = (c1 == (1, 2) and c2 == (2, 2) and g is not None and not exists
          and scanned == 16 and hits == 0 and elapsed < 1)
    report(2, ok, f"(1,2)={c1} (2,2)={c2} condition1 witness={'j' if g == 4 else g} "
                  f"perfect code exists={exists} ({scanned} sets scanned) {elapsed * 1000:.1f} ms")


# ---------------------------------------------------------------- criterion 3

@functools.cache
def criterion3():
    G = build_group("genq:16")
    H = G.parse_set("e, x2, x4, x6")
    xy = G.element("xy")
    S = G.parse_set("x2, x^-2, x, x^-1, y, y^-1, xy") | G.subset([G.names[G.inverses[xy]]])
    start = time.perf_counter()
    pair = certified(G, S, H)
    tpc = is_total_perfect_code(cayley_graph(G, S), H)
    elapsed = time.perf_counter() - start
    return len(S), pair, tpc, elapsed, [Witness("genq:16", H, S, 2, 2)]


def test_criterion3_genq16(report):
    size, pair, tpc, elapsed, _ = criterion3()
    ok = size == 8 and pair == (2, 2) and tpc is False and elapsed < 1
    report(3, ok, f"|S|={size} cert={pair} total perfect code={tpc} {elapsed * 1000:.1f} ms")


# ---------------------------------------------------------------- criterion 4

@functools.cache
def criterion4():
    violations = []
    witnesses = []
    pairs_checked = groups = 0
    start = time.perf_counter()
    for spec in family_specs(24):
        G = build_group(spec)
        groups += 1
        for H in normal_subgroups(G):
            d = len(H)
            if d in (1, G.order):
                continue
            tag = f"{spec} H={H.names()}"
            a1 = condition1_holds(G, H)
            has_t = inverse_closed_transversal(G, H) is not None
            if a1 != has_t:
                violations.append(f"{tag}: condition1={a1} transversal={has_t}")
            for a in range(d):
                for b in range(d + 1):
                    legal = d % 2 == 0 or a % 2 == 0
                    trace = regular_set_connection(G, H, a, b)
                    if not legal:
                        if trace is not None:
                            violations.append(f"{tag}: built illegal ({a},{b})")
                        continue
                    if (trace is not None) != a1:
                        violations.append(f"{tag}: construction({a},{b}) success={trace is not None}")
                        continue
                    if trace is None:
                        continue
                    pairs_checked += 1
                    got = certified(G, trace.result, H)
                    if got != (a, b):
                        violations.append(f"{tag}: ({a},{b}) certified as {got}")
                    witnesses.append(Witness(spec, H, trace.result.elems, a, b))
            if d % 2 == 0 and a1:
                tpc = regular_set_connection(G, H, 1, 1)
                if not is_total_perfect_code(cayley_graph(G, tpc.result), H):
                    violations.append(f"{tag}: (1,1) trace is not a total perfect code")
            if not a1:
                # the converse direction, checked by exhaustive search
                cells = connection_sets_for(G, H)
                if (0, 1) in cells or (1, 1) in cells:
                    violations.append(f"{tag}: condition1 fails yet search finds {sorted(cells)}")
            if d % 2 and (1, 1) in connection_sets_for(G, H):
                violations.append(f"{tag}: odd |H| admits a total perfect code")
    elapsed = time.perf_counter() - start
    return violations, witnesses, pairs_checked, groups, elapsed


def test_criterion4_construction_sweep(report):
    violations, witnesses, pairs_checked, groups, elapsed = criterion4()
    report(4, not violations and elapsed < 300,
           f"{groups} groups, {pairs_checked} (G,H,a,b) constructions certified, "
           f"{len(violations)} violations, {elapsed:.1f} s on 1 worker"
           + (f"; first: {violations[0]}" if violations else ""))


# ---------------------------------------------------------------- criterion 5

def random_pair(G, rng, subs, atoms):
    S = ElementSet(G, sum(a.mask for a in atoms if rng.random() < rng.random()))
    kind = rng.randrange(3)
    proper = [H for H in subs if len(H) < G.order]
    if kind == 0:
        C = ElementSet(G, rng.randrange(1, (1 << G.order) - 1))
    elif kind == 1:
        C = rng.choice(proper)
    else:
        H = rng.choice(proper)
        cos = left_cosets(G, H).cosets
        pick = rng.sample(cos, rng.randrange(1, len(cos)))
        C = ElementSet(G, sum(c.mask for c in pick))
    return S, C


@functools.cache
def criterion5():
    disagreements = []
    witnesses = []
    total = accepted = 0
    start = time.perf_counter()
    for spec in family_specs(16):
        G = build_group(spec)
        if G.order < 2:
            continue
        rng = random.Random(f"pairs:{spec}")
        subs, atoms = subgroups(G), inverse_closed_atoms(G)
        for _ in range(1000):
            S, C = random_pair(G, rng, subs, atoms)
            g = cayley_graph(G, S)
            cert = check_regular_set(g, C)
            ring = ring_parameters(g, C)
            total += 1
            if (cert.pair if cert else None) != ring:
                disagreements.append(f"{spec} S={S.names()} C={C.names()}")
            elif cert:
                accepted += 1
                if not check_regular_set_ring(g, C, cert.a, cert.b):
                    disagreements.append(f"{spec} ring identity rejects {cert.pair}")
                witnesses.append(Witness(spec, C, S, cert.a, cert.b))
    return disagreements, total, accepted, time.perf_counter() - start, witnesses


def test_criterion5_certifier_equivalence(report):
    disagreements, total, accepted, elapsed, _ = criterion5()
    report(5, not disagreements and elapsed < 60 and accepted > 0,
           f"{total} pairs, {accepted} regular, {len(disagreements)} disagreements, {elapsed:.1f} s")


# ---------------------------------------------------------------- criterion 6

def test_criterion6_equitable_consistency(report):
    pool = (criterion1()[-1] + criterion2()[-1] + criterion3()[-1]
            + criterion4()[1] + criterion5()[-1])
    violations = []
    for w in pool:
        G = w.H.group
        g = cayley_graph(G, w.S)
        M = quotient_matrix(g, w.H)
        if M is None:
            violations.append(f"{w.spec}: certified set not equitable")
            continue
        mu = mu_from_quotient(M)
        checks = [
            all(sum(row) == len(w.S) for row in M.entries),
            M.trace == g.degree + (w.a - w.b),
            ab_from_mu(g.degree, mu, len(w.H), G.order) == (w.a, w.b),
            eigenvalue_membership(g, w.a - w.b),
            (w.a, w.b) != (0, 1) or eigenvalue_membership(g, -1),
        ]
        if not all(checks):
            violations.append(f"{w.spec} S={w.S.names()} C={w.H.names()} checks={checks}")
    report(6, not violations, f"{len(pool)} certificates, {len(violations)} violations")


# ---------------------------------------------------------------- criterion 7

def test_criterion7_complement_transforms(report):
    violations = []
    witnesses = criterion4()[1]
    for w in witnesses:
        G = w.H.group
        d = len(w.H)
        full = complement_to_full(G, w.S, w.H)
        out = complement_outside(G, w.S, w.H)
        if certified(G, full, w.H) != (w.a, d):
            violations.append(f"{w.spec} full ({w.a},{w.b})")
        if certified(G, out, w.H) != (w.a, d - w.b):
            violations.append(f"{w.spec} outside ({w.a},{w.b})")
        if complement_outside(G, out, w.H).elems != w.S:
            violations.append(f"{w.spec} outside not an involution")
    report(7, not violations, f"{len(witnesses)} witnesses transformed, {len(violations)} violations")


# ---------------------------------------------------------------- criterion 8

def test_criterion8_oracle_cross_check(report):
    violations = []
    tables = 0
    start = time.perf_counter()
    for spec in family_specs(16):
        G = build_group(spec)
        for H in normal_subgroups(G):
            d = len(H)
            if d in (1, G.order):
                continue
            t = feasible_ab_table(G, H)
            tables += 1
            if not t.complete:
                violations.append(f"{spec}: table incomplete")
            if t.feasible(0, 1) != condition1_holds(G, H):
                violations.append(f"{spec} H={H.names()}: (0,1) column disagrees with condition1")
            for a in range(d):
                for b in range(d + 1):
                    if regular_set_connection(G, H, a, b) is not None and not t.feasible(a, b):
                        violations.append(f"{spec} H={H.names()}: constructed ({a},{b}) not feasible")
    elapsed = time.perf_counter() - start
    report(8, not violations and elapsed < 600,
           f"{tables} normal subgroups, {len(violations)} violations, {elapsed:.1f} s on 1 worker")
