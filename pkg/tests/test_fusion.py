"""Tests for exact modular data and fusion rings.

Published anchors:
- SU(2)_1 has S = [[1,1],[1,-1]]/sqrt(2).
- SU(2)_4 and SU(2)_10 eigenvalue ratios: S_{1l}/S_{0l} = 2cos(pi(l+1)/6)
  and 2cos(pi(l+1)/12) respectively.
- SU(3)_1 obeys Z_3 fusion rules; Sp(4)_1 obeys the Ising rules.
- Twisted doubles of Z_n: (n,sigma) = (2,1) gives Z_4, (2,2) gives
  Z_2 x Z_2 (trivial class, the untwisted answer), (3,1) gives Z_9.

Derived oracle: _oracle_twisted_orders builds the omega_sigma-twisted
double of Z_n over complex floats, reading each flux block's characters
off eigenvectors of the block's left-regular representation, fusing
characters pointwise, and following powers through the resulting Cayley
table.  It shares no code with the exact construction.  The closed form
d = gcd(2n, sigma) for the fusion group Z_d x Z_{n^2/d} agrees with the
oracle at every valid twist with v_2(sigma) <= v_2(n); the lone
exception for n <= 6 is (n, sigma) = (6, 4), where construction and
oracle both give Z_2 x Z_18.  That point is frozen here as constructed;
the acceptance suite reports the closed-form comparison.
"""

from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verlkit.cyclo import cos_frac, rational, sqrt_int, zeta
from verlkit.fusion import (
    FusionRing,
    InvalidTwist,
    ModularCheckFailure,
    ModularData,
    NonAbelian,
    NonIntegralFusion,
    SingularLevel,
    double_abelian,
    double_cyclic_twisted,
    level1_data,
    su2_fusion_truncated,
    su2_modular_data,
    torus_fusion,
    verlinde_matrices,
)
from verlkit.repring import quaternion_group

MAX_LEVEL = 16


@pytest.fixture(scope="module")
def su2():
    data = {}
    for k in range(1, MAX_LEVEL + 1):
        md = su2_modular_data(k)
        data[k] = (md, verlinde_matrices(md))
    return data


def _oracle_twisted_orders(n: int, sigma: int):
    """Element-order multiset of the twisted double's fusion group.

    Numeric throughout: the flux-g block is the twisted group algebra
    with e_x e_y = theta_g(x,y) e_{x+y}, theta_g(x,y) =
    zeta_n^(sigma*g*carry(x,y)).  Characters are eigenvector ratios of
    the block's regular representation; fusion is pointwise character
    multiplication matched against the target block's character list.
    """

    def theta(g, x, y):
        return np.exp(2j * np.pi * sigma * g * ((x % n + y % n) // n) / n)

    chars = []
    for g in range(n):
        L1 = np.zeros((n, n), dtype=complex)
        for x in range(n):
            L1[(x + 1) % n, x] = theta(g, 1, x)
        _, vecs = np.linalg.eig(L1)
        for i in range(n):
            v = vecs[:, i]
            pivot = int(np.argmax(np.abs(v)))
            chi = np.zeros(n, dtype=complex)
            for x in range(n):
                Lx = np.zeros((n, n), dtype=complex)
                for y in range(n):
                    Lx[(x + y) % n, y] = theta(g, x, y)
                chi[x] = (Lx @ v)[pivot] / v[pivot]
            chars.append((g, chi))
    uniq = []
    for g, chi in chars:
        if not any(g2 == g and np.allclose(chi, c2, atol=1e-8) for g2, c2 in uniq):
            uniq.append((g, chi))
    assert len(uniq) == n * n

    def find(g, chi):
        for idx, (g2, c2) in enumerate(uniq):
            if g2 == g and np.allclose(chi, c2, atol=1e-7):
                return idx
        raise AssertionError("fused character missing from target block")

    table = [
        [find((g1 + g2) % n, c1 * c2) for (g2, c2) in uniq] for (g1, c1) in uniq
    ]
    e = find(0, np.ones(n))
    orders = []
    for i in range(n * n):
        x, o = i, 1
        while x != e:
            x = table[x][i]
            o += 1
        orders.append(o)
    return sorted(orders)


def _ring_orders(ring: FusionRing):
    m = len(ring.labels)
    table = [[ring.N[a][b].index(1) for b in range(m)] for a in range(m)]
    orders = []
    for i in range(m):
        x, o = i, 1
        while x != ring.unit:
            x = table[x][i]
            o += 1
        orders.append(o)
    return sorted(orders)


def _valid_twists(n: int):
    return [s for s in range(1, n + 1) if (n * n) % gcd(2 * n, s) == 0]


def _group_order(G):
    total = 1
    for d in G.torsion:
        total *= d
    return total


def test_su2_level1_matrix(su2):
    md, ring = su2[1]
    h = sqrt_int(2) / 2
    assert md.S[0][0] == h and md.S[0][1] == h
    assert md.S[1][0] == h and md.S[1][1] == -h
    assert ring.product(1, 1) == {0: 1}


def test_su2_charge_conjugation_trivial(su2):
    # every SU(2) primary is self-conjugate
    for k in range(1, MAX_LEVEL + 1):
        md, _ = su2[k]
        assert md.charge_conjugation == tuple(range(k + 1))


def test_su2_eigenvalue_ratios(su2):
    # S_{1l}/S_{0l} = 2cos(pi(l+1)/(k+2)), quoted at k=4 and k=10
    for k in (4, 10):
        md, _ = su2[k]
        for lam in range(k + 1):
            ratio = md.S[1][lam] / md.S[0][lam]
            assert ratio == 2 * cos_frac(lam + 1, 2 * (k + 2))


def test_su2_verlinde_equals_truncated(su2):
    for k in range(1, MAX_LEVEL + 1):
        assert su2[k][1] == su2_fusion_truncated(k)


def test_su2_verlinde_associative(su2):
    for k in range(1, MAX_LEVEL + 1):
        su2[k][1].check_associativity()


def test_su2_level2_products(su2):
    _, ring = su2[2]
    assert ring.product(1, 1) == {0: 1, 2: 1}
    assert ring.N[1][1][1] == 0


def test_verlinde_rejects_zero_in_vacuum_row():
    # relabeling that puts a vanishing S entry into the vacuum row
    md = su2_modular_data(2)
    perm = (1, 0, 2)
    S = [[md.S[perm[i]][perm[j]] for j in range(3)] for i in range(3)]
    T = [md.T[perm[i]] for i in range(3)]
    bad = ModularData((0, 1, 2), S, T)
    with pytest.raises(NonIntegralFusion):
        verlinde_matrices(bad)


def test_modular_data_validation():
    md = su2_modular_data(1)
    with pytest.raises(ModularCheckFailure):
        ModularData(md.labels, md.S, [md.T[0] * 2, md.T[1]])
    with pytest.raises(ModularCheckFailure):
        S = [[md.S[0][0], md.S[0][1] * 3], [md.S[1][0], md.S[1][1]]]
        ModularData(md.labels, S, md.T)
    with pytest.raises(ModularCheckFailure):
        # unimodular but wrong phase breaks (ST)^3 = S^2
        ModularData(md.labels, md.S, [md.T[0] * zeta(3, 1), md.T[1]])


def test_fusion_ring_validation():
    good = su2_fusion_truncated(1)
    N = [list(list(row) for row in plane) for plane in good.N]
    N[1][1][0] = -1
    with pytest.raises(ValueError):
        FusionRing(good.labels, N)
    N = [list(list(row) for row in plane) for plane in good.N]
    N[0][1][1] = 2
    with pytest.raises(ValueError):
        FusionRing(good.labels, N)
    N = [list(list(row) for row in plane) for plane in good.N]
    N[1][0][1] = 1
    N[1][0][0] = 1
    with pytest.raises(ValueError):
        FusionRing(good.labels, N)


def test_torus_fusion_examples():
    assert torus_fusion([[2]]).torsion == (2,)
    triv = torus_fusion([[1, 0], [0, 1]])
    assert triv.free_rank == 0 and triv.torsion == ()
    assert torus_fusion([[2, 0], [0, 2]]).torsion == (2, 2)
    assert torus_fusion([[2, 1], [1, 1]]).torsion == ()
    assert torus_fusion([[3, 1], [0, 2]]).torsion == (6,)
    with pytest.raises(SingularLevel):
        torus_fusion([[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        torus_fusion([[1, 2, 3], [4, 5, 6]])


@given(st.lists(st.integers(min_value=-5, max_value=5), min_size=4, max_size=4))
@settings(max_examples=60, deadline=None)
def test_torus_fusion_order_is_det(entries):
    a, b, c, d = entries
    det = a * d - b * c
    if det == 0:
        with pytest.raises(SingularLevel):
            torus_fusion([[a, b], [c, d]])
    else:
        G = torus_fusion([[a, b], [c, d]])
        assert _group_order(G) == abs(det)


def test_double_abelian_small_groups():
    for m in (2, 3, 4):
        md, ring = double_abelian(m)
        assert len(md.labels) == m * m
        assert ring.fusion_group().torsion == (m, m)
        assert verlinde_matrices(md) == ring
    md, ring = double_abelian((2, 2))
    assert len(md.labels) == 16
    assert ring.fusion_group().torsion == (2, 2, 2, 2)


def test_double_abelian_duck_typed_group():
    md, ring = double_abelian(quaternion_group("C3"))
    assert ring.fusion_group().torsion == (3, 3)
    with pytest.raises(NonAbelian):
        double_abelian(quaternion_group("D4"))


def test_twisted_double_examples():
    assert double_cyclic_twisted(2, 1).fusion_group().torsion == (4,)
    assert double_cyclic_twisted(2, 2).fusion_group().torsion == (2, 2)
    assert double_cyclic_twisted(3, 1).fusion_group().torsion == (9,)
    # sigma = n is the trivial class: untwisted answer Z_n x Z_n
    for n in range(2, 7):
        assert double_cyclic_twisted(n, n).fusion_group().torsion == (n, n)


def test_twisted_double_invalid_twists():
    for n, s in ((3, 2), (5, 2), (5, 4)):
        with pytest.raises(InvalidTwist):
            double_cyclic_twisted(n, s)
    with pytest.raises(InvalidTwist):
        double_cyclic_twisted(4, 0)
    with pytest.raises(InvalidTwist):
        double_cyclic_twisted(4, 5)
    with pytest.raises(ValueError):
        double_cyclic_twisted(0, 1)


def test_twisted_double_against_numeric_oracle():
    for n in range(1, 7):
        for s in _valid_twists(n):
            ring = double_cyclic_twisted(n, s)
            assert _ring_orders(ring) == _oracle_twisted_orders(n, s), (n, s)


def test_twisted_double_group_form():
    # d = gcd(2n, sigma) matches the construction whenever v_2(s) <= v_2(n)
    for n in range(1, 7):
        for s in _valid_twists(n):
            if (n, s) == (6, 4):
                continue
            d = gcd(2 * n, s)
            want = tuple(
                f for f in (gcd(d, n * n // d), (n * n) // gcd(d, n * n // d)) if f > 1
            )
            assert double_cyclic_twisted(n, s).fusion_group().torsion == want, (n, s)
    # the exception: the closed form claims Z_4 x Z_9 but the twisted
    # block algebra's characters fuse to Z_2 x Z_18
    assert double_cyclic_twisted(6, 4).fusion_group().torsion == (2, 18)


def test_twisted_double_order_property():
    for n in range(1, 13):
        for s in _valid_twists(n):
            G = double_cyclic_twisted(n, s).fusion_group()
            assert _group_order(G) == n * n


def test_level1_su3():
    md, ring = level1_data("SU3")
    assert md.labels == ("(00)", "(10)", "(01)")
    assert ring.product(1, 1) == {2: 1}
    assert ring.product(1, 2) == {0: 1}
    assert ring.fusion_group().torsion == (3,)
    assert verlinde_matrices(md) == ring
    assert md.T[1] == md.T[0] * zeta(3, 1)


def test_level1_sp4():
    md, ring = level1_data("Sp4")
    assert md.labels == ("(00)", "(01)", "(10)")
    assert ring.product(2, 2) == {0: 1, 1: 1}
    assert ring.product(1, 1) == {0: 1}
    assert ring.product(1, 2) == {2: 1}
    assert not ring.is_group_like()
    assert verlinde_matrices(md) == ring
    assert md.T[1] == md.T[0] * zeta(2, 1)
    assert md.T[2] == md.T[0] * zeta(16, 5)


def test_level1_unknown_name():
    with pytest.raises(ValueError):
        level1_data("G2")
