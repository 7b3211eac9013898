import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from regsets.groups import (ElementSet, GroupSpecError, all_triples_associative, build_group,
                            element_order, family_specs, generate_subgroup, group_from_table,
                            inverse_closed, is_normal, left_cosets, load_group_table,
                            normal_subgroups, right_cosets, subgroups)

SMALL = family_specs(24)
TINY = family_specs(16)


def test_genq20_presentation(genq20):
    G = genq20
    x, y = G.element("x"), G.element("y")
    assert G.order == 20
    assert G.power(x, 10) == 0 and G.power(x, 5) != 0
    assert G.power(y, 2) == G.power(x, 5)
    assert G.mult(G.inverses[y], x, y) == G.inverses[x]
    assert len(generate_subgroup(G, [x, y])) == 20
    # canonical order: x^0..x^9 then x^0 y..x^9 y
    assert G.names[:3] == ("e", "x", "x2") and G.names[10:12] == ("y", "xy")
    assert G.element("x8y") == G.mult(G.power(x, 8), y)


def test_q8_against_matrix_model(q8):
    # unit quaternions as 2x2 complex matrices
    one = np.eye(2, dtype=complex)
    i = np.array([[1j, 0], [0, -1j]])
    j = np.array([[0, 1], [-1, 0]], dtype=complex)
    k = i @ j
    mats = [one, -one, i, -i, j, -j, k, -k]
    assert q8.names == ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    for a in range(8):
        for b in range(8):
            prod = mats[a] @ mats[b]
            c = next(n for n, m in enumerate(mats) if np.allclose(m, prod))
            assert q8.rows[a][b] == c
    assert q8.mult(q8.element("i"), q8.element("j")) == q8.element("k")
    assert q8.mult(q8.element("j"), q8.element("i")) == q8.element("-k")


def test_trivial_group():
    G = build_group("cyclic:1")
    assert G.order == 1 and G.names == ("0",) and int(G.mul[0, 0]) == 0


@pytest.mark.parametrize("spec", SMALL)
def test_table_invariants(spec):
    G = build_group(spec)
    n = G.order
    ref = np.arange(n)
    assert (np.sort(G.mul, axis=1) == ref).all() and (np.sort(G.mul, axis=0) == ref[:, None]).all()
    assert (G.mul[0] == ref).all() and (G.mul[:, 0] == ref).all()
    assert (G.mul[ref, G.inv] == 0).all()
    assert all_triples_associative(G)


@pytest.mark.parametrize("spec", TINY)
def test_orders_are_conjugacy_stable(spec):
    G = build_group(spec)
    orders = [element_order(G, g) for g in range(G.order)]
    for g in range(G.order):
        for h in range(G.order):
            assert orders[G.rows[g][h]] == orders[G.rows[h][g]]


def test_element_order_examples(genq20):
    assert element_order(genq20, genq20.element("x5")) == 2
    assert element_order(genq20, 0) == 1
    assert element_order(genq20, genq20.element("y")) == 4


def test_generate_subgroup_examples(genq20, q8):
    H = generate_subgroup(genq20, [genq20.element("x2")])
    assert H.names() == ["e", "x2", "x4", "x6", "x8"]
    assert generate_subgroup(genq20, []) == genq20.trivial
    assert generate_subgroup(q8, [q8.element("i")]).names() == ["1", "-1", "i", "-i"]


@pytest.mark.parametrize("spec", TINY)
def test_subgroup_closure_idempotent(spec):
    G = build_group(spec)
    for H in subgroups(G):
        assert generate_subgroup(G, H) == H


def test_is_normal_examples(genq20, sub):
    assert is_normal(genq20, sub(genq20, "x2"))
    assert is_normal(genq20, genq20.trivial)
    Y = sub(genq20, "y")
    assert Y.names() == ["e", "x5", "y", "x5y"]
    assert not is_normal(genq20, Y)
    x, y = genq20.element("x"), genq20.element("y")
    assert genq20.mult(x, y, genq20.inverses[x]) == genq20.element("x2y")


def test_is_normal_rejects_non_subgroup(genq20):
    with pytest.raises(ValueError):
        is_normal(genq20, genq20.subset(["x"]))


def test_left_cosets_examples(genq20, sub):
    H = sub(genq20, "x2")
    P = left_cosets(genq20, H)
    assert len(P) == 4
    assert [genq20.names[r] for r in P.representative] == ["e", "x", "y", "xy"]
    assert P.cosets[1].names() == ["x", "x3", "x5", "x7", "x9"]
    assert P.of(genq20.element("x7y")) == 3
    C6 = build_group("cyclic:6")
    P = left_cosets(C6, C6.subset(["0", "3"]))
    assert [c.names() for c in P.cosets] == [["0", "3"], ["1", "4"], ["2", "5"]]
    assert len(left_cosets(genq20, genq20.full)) == 1


@pytest.mark.parametrize("spec", SMALL)
def test_lagrange_and_normal_cosets(spec):
    G = build_group(spec)
    for H in subgroups(G):
        L = left_cosets(G, H)
        assert len(L) * len(H) == G.order
        union = 0
        for c in L.cosets:
            assert len(c) == len(H) and union & c.mask == 0
            union |= c.mask
        assert union == G.full.mask
        if is_normal(G, H):
            R = right_cosets(G, H)
            assert {c.mask for c in L.cosets} == {c.mask for c in R.cosets}


def test_inverse_closed_examples(genq20):
    assert inverse_closed(genq20, genq20.parse_set("y, y3, x5"))
    assert inverse_closed(genq20, genq20.empty)
    C6 = build_group("cyclic:6")
    assert not inverse_closed(C6, C6.subset(["1"]))


def test_subgroups_of_q8_all_normal(q8):
    subs = subgroups(q8)
    assert [len(H) for H in subs] == [1, 2, 4, 4, 4, 8]
    assert len(normal_subgroups(q8)) == 6


def test_subgroup_counts_dihedral():
    # D4 (order 8): 10 subgroups, 6 normal
    G = build_group("dihedral:4")
    assert len(subgroups(G)) == 10
    assert len(normal_subgroups(G)) == 6


def test_dihedral_relations():
    G = build_group("dihedral:5")
    r, f = G.element("r"), G.element("f")
    assert G.order == 10 and element_order(G, r) == 5 and element_order(G, f) == 2
    assert G.mult(f, r, f) == G.inverses[r]
    assert all(element_order(G, g) == 2 for g in range(5, 10))


def test_product_and_perm_builders():
    G = build_group("product(cyclic:2,cyclic:3)")
    assert G.order == 6 and G.names[0] == "(0,0)"
    assert element_order(G, G.element("(1,1)")) == 6
    S3 = build_group("perm:(0,1,2);(0,1)")
    assert S3.order == 6 and S3.names[0] == "e"
    assert len(normal_subgroups(S3)) == 3
    assert len(subgroups(S3)) == 6
    nested = build_group("product(cyclic:2,product(cyclic:2,cyclic:2))")
    assert nested.order == 8 and all(element_order(nested, g) <= 2 for g in range(8))


@pytest.mark.parametrize("bad", ["", "cyclic", "cyclic:x", "cyclic:0", "dihedral:1", "genq:10",
                                 "genq:4", "foo:3", "product(cyclic:2)", "perm:(0,0)", "perm:"])
def test_malformed_specs(bad):
    with pytest.raises(GroupSpecError):
        build_group(bad)


def test_table_file_roundtrip(tmp_path):
    G = build_group("dihedral:3")
    path = tmp_path / "d3.json"
    path.write_text(json.dumps({"order": 6, "names": list(G.names), "table": G.mul.tolist()}))
    H = load_group_table(path)
    assert np.array_equal(H.mul, G.mul) and H.names == G.names
    assert build_group(f"table:{path}").order == 6


def test_table_file_rejections(tmp_path):
    # identity not at index 0
    with pytest.raises(GroupSpecError, match="identity"):
        group_from_table(["a", "e"], [[1, 0], [0, 1]])
    with pytest.raises(GroupSpecError, match="Latin"):
        group_from_table(["e", "a"], [[0, 1], [1, 1]])
    # a Latin square loop with identity 0 that is not associative
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupSpecError, match="associative"):
        group_from_table(list("eabcd"), loop)
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(GroupSpecError):
        load_group_table(path)


def test_element_parsing(genq20, q8):
    assert genq20.element("x18") == genq20.element("x8")
    assert genq20.element("y3") == genq20.inverses[genq20.element("y")]
    assert genq20.element("x^-2") == genq20.element("x8")
    assert q8.element("e") == 0 and q8.element("ij") == q8.element("k")
    with pytest.raises(GroupSpecError):
        genq20.element("z")
    assert genq20.parse_set("{x, x9}").names() == ["x", "x9"]


masks = st.integers(min_value=0, max_value=(1 << 20) - 1)


@settings(max_examples=200, deadline=None)
@given(masks, masks)
def test_element_set_algebra(genq20, m1, m2):
    A, B = ElementSet(genq20, m1), ElementSet(genq20, m2)
    sa, sb = set(A), set(B)
    assert set(A | B) == sa | sb and set(A & B) == sa & sb and set(A - B) == sa - sb
    assert len(A) == len(sa) and list(A) == sorted(sa)
    assert A.inverse().inverse() == A
    assert (A <= B) == (sa <= sb)
    assert A.complement().complement() == A
