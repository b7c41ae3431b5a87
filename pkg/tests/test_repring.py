"""Tests for quaternion groups, character tables, and graded folding.

Published values checked here:

* Restrictions of the defining SU(2) rep to the six named groups:
  2r''_-1; r'_i + r'_-i; r_-w + r_-w2; t; t'; y.
* All twenty-nine rows of the seven induction tables between named
  subgroup pairs (A1 into A3 and A5, A3 into D4 and E6, D4 into E6,
  A5 into D5 and E6).
* Folded McKay graphs: A3 -> A1, D4 -> A3 (each of its three gradings),
  D5 -> A5, E7 -> E6; no grading exists for E6, E8, or odd cyclic groups.
* Dirac induction of weights into SU(2) and of D4 virtual reps into the
  graded O(2) ring.

Hand derivations frozen as expectations:

* sigma_3 on O(2): the circle sees a^2 + 1 + a^-2, a reflection has
  trace -1, so the decomposition is kappa_2 + delta.
* sigma_5: a^4 + a^2 + 1 + a^-2 + a^-4 with reflection trace +1, giving
  kappa_4 + kappa_2 + 1.
* t of D4 restricted to <i> = C4 splits into the i- and (-i)-characters,
  so its graded type is 1_2.
"""

import pytest
from hypothesis import given, settings, strategies as st

from verlkit.repring import (
    GroupMismatch,
    InvalidEmbedding,
    NoGradingExists,
    NotASubgroup,
    character_table,
    classify_graded,
    dirac_induce_T_to_SU2,
    dirac_induce_finite_to_O2,
    embedding,
    graded_fold,
    gradings,
    induce,
    ind_T_to_O2,
    irrep_vr,
    mckay_graph,
    quaternion_group,
    recognize_affine_ade,
    res_O2_to_T,
    res_su2_to_O2,
    res_su2_to_T,
    res_su2_to_finite,
    restrict,
    tensor_decompose,
)

NAMED = ["A1", "A3", "A5", "D4", "D5", "E6", "E7"]

EMBED_PAIRS = [
    ("A1", "A3"),
    ("A1", "A5"),
    ("A1", "D4"),
    ("A1", "D5"),
    ("A1", "E6"),
    ("A1", "E7"),
    ("A3", "D4"),
    ("A3", "D5"),
    ("A3", "E6"),
    ("A3", "E7"),
    ("A5", "D5"),
    ("A5", "E6"),
    ("A5", "E7"),
    ("D4", "E6"),
    ("D4", "E7"),
    ("D5", "E7"),
    ("E6", "E7"),
]


def test_group_orders_and_negative_one():
    orders = {"A1": 2, "A3": 4, "A5": 6, "D4": 8, "D5": 12, "E6": 24, "E7": 48}
    for name, n in orders.items():
        G = quaternion_group(name)
        assert G.order == n
        minus_one = -G.elements[0]
        assert minus_one in G.index
    assert quaternion_group("E8").order == 120
    G3 = quaternion_group("C3")
    assert -G3.elements[0] not in G3.index


def test_character_table_shapes():
    ct = character_table(quaternion_group("D4"))
    assert sorted(ct.dims) == [1, 1, 1, 1, 2]
    assert ct.labels == ["s0", "s1", "s2", "s3", "t"]

    ct1 = character_table(quaternion_group("A1"))
    assert ct1.labels == ["r''_1", "r''_-1"]

    ct6 = character_table(quaternion_group("E6"))
    assert ct6.labels == ["x", "x'", "x''", "y", "y'", "y''", "z"]
    assert sorted(ct6.dims) == [1, 1, 1, 2, 2, 2, 3]

    with pytest.raises(NotImplementedError):
        character_table(quaternion_group("E8"))


def test_tensor_with_trivial_is_identity():
    for name in NAMED:
        G = quaternion_group(name)
        ct = character_table(G)
        triv = irrep_vr(G, ct.labels[0])
        for lab in ct.labels:
            rho = irrep_vr(G, lab)
            assert tensor_decompose(triv, rho) == rho


def test_tensor_examples():
    G = quaternion_group("D4")
    t = irrep_vr(G, "t")
    tt = tensor_decompose(t, t)
    assert tt.coeffs == {"s0": 1, "s1": 1, "s2": 1, "s3": 1}

    G6 = quaternion_group("E6")
    y = irrep_vr(G6, "y")
    yy = tensor_decompose(y, y)
    A, labels = mckay_graph(G6)
    iy = labels.index("y")
    row = {labels[j]: A[(iy, j)] for j in range(len(labels)) if A[(iy, j)]}
    assert yy.coeffs == row


def test_tensor_group_mismatch():
    a = irrep_vr(quaternion_group("A1"), "r''_1")
    b = irrep_vr(quaternion_group("A3"), "r'_1")
    with pytest.raises(GroupMismatch):
        tensor_decompose(a, b)


def test_defining_restrictions():
    expected = {
        "A1": {"r''_-1": 2},
        "A3": {"r'_i": 1, "r'_-i": 1},
        "A5": {"r_-w": 1, "r_-w2": 1},
        "D4": {"t": 1},
        "D5": {"t'": 1},
        "E6": {"y": 1},
    }
    for name, want in expected.items():
        assert res_su2_to_finite(quaternion_group(name), 2).coeffs == want


def test_induction_tables():
    rows = [
        ("A1", "A3", "r''_1", {"r'_1": 1, "r'_-1": 1}),
        ("A1", "A3", "r''_-1", {"r'_i": 1, "r'_-i": 1}),
        ("A1", "A5", "r''_1", {"r_1": 1, "r_w": 1, "r_w2": 1}),
        ("A1", "A5", "r''_-1", {"r_-1": 1, "r_-w": 1, "r_-w2": 1}),
        ("A3", "D4", "r'_1", {"s0": 1, "s2": 1}),
        ("A3", "D4", "r'_-1", {"s1": 1, "s3": 1}),
        ("A3", "D4", "r'_i", {"t": 1}),
        ("A3", "D4", "r'_-i", {"t": 1}),
        ("A3", "E6", "r'_1", {"x": 1, "x'": 1, "x''": 1, "z": 1}),
        ("A3", "E6", "r'_-1", {"z": 2}),
        ("A3", "E6", "r'_i", {"y": 1, "y'": 1, "y''": 1}),
        ("A3", "E6", "r'_-i", {"y": 1, "y'": 1, "y''": 1}),
        ("D4", "E6", "s0", {"x": 1, "x'": 1, "x''": 1}),
        ("D4", "E6", "s1", {"z": 1}),
        ("D4", "E6", "s2", {"z": 1}),
        ("D4", "E6", "s3", {"z": 1}),
        ("D4", "E6", "t", {"y": 1, "y'": 1, "y''": 1}),
        ("A5", "D5", "r_1", {"s'0": 1, "s'1": 1}),
        ("A5", "D5", "r_-1", {"s'2": 1, "s'3": 1}),
        ("A5", "D5", "r_w", {"t''": 1}),
        ("A5", "D5", "r_w2", {"t''": 1}),
        ("A5", "D5", "r_-w", {"t'": 1}),
        ("A5", "D5", "r_-w2", {"t'": 1}),
        ("A5", "E6", "r_1", {"x": 1, "z": 1}),
        ("A5", "E6", "r_-1", {"y'": 1, "y''": 1}),
        ("A5", "E6", "r_w", {"x''": 1, "z": 1}),
        ("A5", "E6", "r_w2", {"x'": 1, "z": 1}),
        ("A5", "E6", "r_-w", {"y": 1, "y'": 1}),
        ("A5", "E6", "r_-w2", {"y": 1, "y''": 1}),
    ]
    for sub, sup, lab, want in rows:
        got = induce(irrep_vr(quaternion_group(sub), lab), embedding(sub, sup))
        assert got.coeffs == want, (sub, sup, lab, got.coeffs)


def test_frobenius_reciprocity_exhaustive():
    for sub_name, sup_name in EMBED_PAIRS:
        emb = embedding(sub_name, sup_name)
        ct_sub = character_table(emb.sub)
        ct_sup = character_table(emb.sup)
        inds = {
            lab: induce(irrep_vr(emb.sub, lab), emb) for lab in ct_sub.labels
        }
        ress = {
            lab: restrict(irrep_vr(emb.sup, lab), emb) for lab in ct_sup.labels
        }
        for rho in ct_sub.labels:
            for tau in ct_sup.labels:
                lhs = inds[rho].coeffs.get(tau, 0)
                rhs = ress[tau].coeffs.get(rho, 0)
                assert lhs == rhs, (sub_name, sup_name, rho, tau)


def test_embedding_rejects_non_subgroups():
    with pytest.raises(NotASubgroup):
        embedding("D4", "D5")
    with pytest.raises(NotASubgroup):
        embedding("E7", "E6")


def test_mckay_graphs_are_affine_diagrams():
    want = {
        "A1": ("A1", 2),
        "A3": ("A3", 4),
        "A5": ("A5", 6),
        "D4": ("D4", 5),
        "D5": ("D5", 6),
        "E6": ("E6", 7),
        "E7": ("E7", 8),
    }
    for name, (graph, nodes) in want.items():
        A, labels = mckay_graph(quaternion_group(name))
        assert len(labels) == nodes
        assert recognize_affine_ade(A) == graph
        for i in range(A.rows):
            for j in range(A.cols):
                assert A[(i, j)] == A[(j, i)]


def test_mckay_affine_cartan_property():
    for name in NAMED:
        G = quaternion_group(name)
        ct = character_table(G)
        A, labels = mckay_graph(G)
        dims = [ct.dim_of(lab) for lab in labels]
        for i in range(len(dims)):
            acc = sum(A[(i, j)] * dims[j] for j in range(len(dims)))
            assert acc == 2 * dims[i]


def test_gradings_census():
    counts = {"A1": 1, "A3": 1, "A5": 1, "D4": 3, "D5": 1, "E6": 0, "E7": 1}
    for name, n in counts.items():
        assert len(gradings(quaternion_group(name))) == n
    assert gradings(quaternion_group("E8")) == []
    assert gradings(quaternion_group("C3")) == []
    assert gradings(quaternion_group("C5")) == []


def test_classify_graded_examples():
    G = quaternion_group("D4")
    gr = next(g for g in gradings(G) if g.psi_label == "s2")
    assert len(gr.kernel) == 4
    assert classify_graded(irrep_vr(G, "s0"), gr) == "2_1"
    assert classify_graded(irrep_vr(G, "t"), gr) == "1_2"

    for name in NAMED:
        Gn = quaternion_group(name)
        for grading in gradings(Gn):
            triv = irrep_vr(Gn, character_table(Gn).labels[0])
            assert classify_graded(triv, grading) == "2_1"

    assert classify_graded("delta") == "2_1"
    assert classify_graded("1") == "2_1"
    assert classify_graded("kappa_7") == "1_2"


def test_graded_folds():
    want = {
        "A1": ("A0", 1),
        "A3": ("A1", 2),
        "A5": ("A2", 3),
        "D5": ("A5", 6),
        "E7": ("E6", 7),
    }
    for name, (graph, nodes) in want.items():
        r = graded_fold(quaternion_group(name))
        assert r["folded_graph"] == graph
        assert r["folded_nodes"] == nodes
        # each 1_2 node splits in two, each 2_1 pair collapses to one
        assert 2 * r["dim_graded_ring"] + r["dim_graded_ring_1"] == nodes

    G = quaternion_group("D4")
    for gr in gradings(G):
        r = graded_fold(G, gr)
        assert r["folded_graph"] == "A3"
        assert r["types"]["t"] == "1_2"
        assert r["dim_graded_ring"] == 1
        assert r["dim_graded_ring_1"] == 2


def test_fold_refused_without_grading():
    for name in ("E6", "E8", "C3"):
        with pytest.raises(NoGradingExists):
            graded_fold(quaternion_group(name))


def test_e7_fold_types():
    r = graded_fold(quaternion_group("E7"))
    assert r["psi"] == "1'"
    assert r["types"] == {
        "1": "2_1",
        "1'": "2_1",
        "2": "2_1",
        "2'": "2_1",
        "2''": "1_2",
        "3": "2_1",
        "3'": "2_1",
        "4": "1_2",
    }


def test_dirac_induction_T_to_SU2():
    assert dirac_induce_T_to_SU2(0) == {}
    assert dirac_induce_T_to_SU2(2) == {2: 1}
    assert dirac_induce_T_to_SU2(-3) == {3: -1}


def test_dirac_induction_finite_to_O2():
    G = quaternion_group("D4")
    s = irrep_vr(G, "s0") + irrep_vr(G, "s1") + irrep_vr(G, "s2") + irrep_vr(G, "s3")
    assert dirac_induce_finite_to_O2(s, "s1") == 0
    for d in ("s1", "s2", "s3"):
        assert dirac_induce_finite_to_O2(irrep_vr(G, "t"), d) == 0
    assert dirac_induce_finite_to_O2(irrep_vr(G, "s0"), "s1") == 1
    with pytest.raises(InvalidEmbedding):
        dirac_induce_finite_to_O2(irrep_vr(G, "s0"), "t")
    with pytest.raises(InvalidEmbedding):
        dirac_induce_finite_to_O2(irrep_vr(G, "s0"), "nope")


def test_symbolic_su2_on_O2_and_T():
    assert res_su2_to_O2(3) == {"kappa_2": 1, "delta": 1}
    assert res_su2_to_O2(5) == {"kappa_4": 1, "kappa_2": 1, "1": 1}
    assert res_su2_to_O2(4) == {"kappa_3": 1, "kappa_1": 1}
    assert res_su2_to_T(3) == {2: 1, 0: 1, -2: 1}
    assert res_su2_to_T(1) == {0: 1}
    assert ind_T_to_O2({0: 1}) == {"1": 1, "delta": 1}
    assert ind_T_to_O2({3: 1, -3: 1}) == {"kappa_3": 2}
    assert res_O2_to_T({"kappa_2": 1, "delta": 1}) == {2: 1, -2: 1, 0: 1}


@given(st.integers(min_value=1, max_value=12))
def test_su2_branching_consistency(m):
    # restricting to O(2) then to T agrees with restricting straight to T
    assert res_O2_to_T(res_su2_to_O2(m)) == res_su2_to_T(m)


@settings(deadline=None, max_examples=20)
@given(
    st.sampled_from(["A1", "A3", "A5", "D4", "D5", "E6"]),
    st.integers(min_value=2, max_value=7),
)
def test_clebsch_gordan_on_subgroups(name, m):
    # sigma_2 (x) sigma_m = sigma_(m+1) + sigma_(m-1), restricted to any G
    G = quaternion_group(name)
    lhs = tensor_decompose(res_su2_to_finite(G, 2), res_su2_to_finite(G, m))
    rhs = res_su2_to_finite(G, m + 1) + res_su2_to_finite(G, m - 1)
    assert lhs == rhs


def test_restriction_examples_from_supergroups():
    e = embedding("D4", "E6")
    E6 = quaternion_group("E6")
    assert restrict(irrep_vr(E6, "y"), e).coeffs == {"t": 1}
    assert restrict(irrep_vr(E6, "z"), e).coeffs == {"s1": 1, "s2": 1, "s3": 1}
