from fractions import Fraction

import numpy as np
import pytest

from autorbit import catalog, permcore as pc, wreath as wr
from autorbit.autgrp import automorphism_group
from autorbit.permcore import Permutation, parse_cycles


@pytest.fixture(scope="module")
def s3():
    return catalog.sym(3)


@pytest.fixture(scope="module")
def w32(s3):
    return wr.WreathGroup(s3, 2)


@pytest.fixture(scope="module")
def w33(s3):
    return wr.WreathGroup(s3, 3)


def test_group_laws(w32):
    rng = np.random.default_rng(7)
    e = w32.identity()
    for _ in range(60):
        a, b, c = (w32.random_element(rng) for _ in range(3))
        assert wr.w_mul(w32, e, b) == b
        assert wr.w_mul(w32, a, w32.inv(a)) == e
        assert wr.w_inv(w32, wr.w_inv(w32, a)) == a
        assert w32.mul(w32.mul(a, b), c) == w32.mul(a, w32.mul(b, c))


def test_conjugation_entry_formula(s3, w32):
    # conj(((g1,g2),(0 1)) by ((k1,k2),id)) = ((k1 g1 k2^-1, k2 g2 k1^-1), (0 1))
    T, inv = s3.cayley(), s3.inverse_ids()
    swap = Permutation([1, 0])
    rng = np.random.default_rng(3)
    for _ in range(40):
        g1, g2, k1, k2 = (int(x) for x in rng.integers(6, size=4))
        got = wr.w_conj(w32, w32.element((g1, g2), swap),
                        w32.element((k1, k2), Permutation.identity(2)))
        assert got.top == swap
        assert got.base == (int(T[T[k1, g1], inv[k2]]), int(T[T[k2, g2], inv[k1]]))


def test_shape_mismatch(s3, w32):
    with pytest.raises(wr.ShapeMismatch):
        wr.WreathElement((0, 0, 0), Permutation.identity(2))
    with pytest.raises(pc.GroupError):
        w32.element((0, 0, 0), Permutation.identity(3))


def test_bcpc_examples(s3, w33):
    table = pc.conjugacy_classes(s3)
    cls_3cycle = int(table.class_of[s3.id_of(parse_cycles("(1 2 3)", 3))])
    g12 = s3.id_of(parse_cycles("(1 2)", 3))
    g13 = s3.id_of(parse_cycles("(1 3)", 3))
    top = Permutation([1, 2, 0])

    w = w33.element((g12, 0, g13), top)
    assert wr.bcpc(w33, w, (0, 1, 2)) == cls_3cycle  # (1 3) * e * (1 2) = (1 2 3)

    ident = w33.element((0, 0, 0), top)
    assert wr.bcpc(w33, ident, (0, 1, 2)) == 0

    w1 = w33.element((g12, g13, 0), Permutation.identity(3))
    assert wr.bcpc(w33, w1, (0,)) == int(table.class_of[g12])  # 1-cycle: class of g_i


def test_bcpc_rejects_non_cycles(w33):
    w = w33.element((0, 0, 0), Permutation([1, 2, 0]))
    with pytest.raises(wr.NotACycleOfTop):
        wr.bcpc(w33, w, (0, 2, 1))
    with pytest.raises(wr.NotACycleOfTop):
        wr.bcpc(w33, w, (0, 1))


def test_bcpc_rotation_invariance(w33):
    rng = np.random.default_rng(11)
    for _ in range(120):
        w = w33.random_element(rng)
        for zeta in pc.cycle_decompose(w.top).cycles:
            vals = {wr.bcpc(w33, w, zeta[r:] + zeta[:r]) for r in range(len(zeta))}
            assert len(vals) == 1


def test_profile_shapes(s3, w33):
    table = pc.conjugacy_classes(s3)
    g12 = s3.id_of(parse_cycles("(1 2)", 3))
    # identity top: M_1 holds the classes of all entries
    w = w33.element((g12, 0, g12), Permutation.identity(3))
    prof = wr.profile(w33, w)
    c12 = int(table.class_of[g12])
    assert prof.by_length == {1: tuple(sorted((c12, 0, c12)))}
    # single 3-cycle top: exactly one entry in M_3
    w = w33.element((g12, 0, 0), Permutation([1, 2, 0]))
    prof = wr.profile(w33, w)
    assert set(prof.by_length) == {3} and len(prof.by_length[3]) == 1
    # sum over l of l * |M_l| = n
    rng = np.random.default_rng(2)
    for _ in range(50):
        w = w33.random_element(rng)
        prof = wr.profile(w33, w)
        assert sum(l * len(m) for l, m in prof.by_length.items()) == 3


def test_profile_invariant_under_top_conjugation(w33):
    # M_l(w) = M_l(w^psi) for psi in the top group
    rng = np.random.default_rng(4)
    for _ in range(60):
        w = w33.random_element(rng)
        psi = w33.top.perm(int(rng.integers(w33.top.order)))
        conj = w33.conj(w, w33.element((0, 0, 0), psi))
        assert wr.profile(w33, w).by_length == wr.profile(w33, conj).by_length


def test_conj_test_trivial_cases(s3):
    w1 = wr.WreathGroup(s3, 1)
    table = pc.conjugacy_classes(s3)
    for g in range(6):
        for h in range(6):
            v = w1.element((g,), Permutation.identity(1))
            w = w1.element((h,), Permutation.identity(1))
            assert wr.conj_test(w1, v, w) == (table.class_of[g] == table.class_of[h])


def test_conj_test_reflexive_symmetric(w32):
    rng = np.random.default_rng(9)
    for _ in range(40):
        v, w = w32.random_element(rng), w32.random_element(rng)
        assert wr.conj_test(w32, v, v)
        assert wr.conj_test(w32, v, w) == wr.conj_test(w32, w, v)


def test_conj_test_transitive_on_chained_triples(w32):
    # build chained triples (v, v^a, v^b): v ~ v^a and v^a ~ v^b must chain
    rng = np.random.default_rng(10)
    for _ in range(40):
        v = w32.random_element(rng)
        a, b = w32.random_element(rng), w32.random_element(rng)
        va, vb = w32.conj(v, a), w32.conj(v, b)
        assert wr.conj_test(w32, v, va) and wr.conj_test(w32, va, vb)
        assert wr.conj_test(w32, v, vb)


def test_brute_force_c2_wr_s2():
    c2 = catalog.cyclic(2)
    w = wr.WreathGroup(c2, 2)
    assert w.order == 8
    codes = w.class_codes()
    assert sorted(np.bincount(codes).tolist()) == [1, 1, 2, 2, 2]


@pytest.mark.parametrize("base_name,n", [("cyclic2", 2), ("cyclic3", 2),
                                         ("sym3", 2), ("sym3", 3)])
def test_conj_test_equals_brute_force_exhaustive(base_name, n):
    base = catalog.resolve(base_name)
    wg = wr.WreathGroup(base, n)
    codes = wg.class_codes()
    keys = {}
    for code in range(wg.order):
        el = wg.unpack(code)
        k = (pc.cycle_type(el.top),
             tuple(sorted(wr.profile(wg, el).by_length.items())))
        keys.setdefault(k, []).append(code)
    brute = {}
    for code in range(wg.order):
        brute.setdefault(int(codes[code]), []).append(code)
    assert sorted(map(tuple, brute.values())) == sorted(map(tuple, keys.values()))


def test_conj_test_equals_brute_force_sampled_s3_wr_s4():
    wg = wr.WreathGroup(catalog.sym(3), 4)
    assert wg.order == 31104
    rng = np.random.default_rng(123)
    disagreements = 0
    for _ in range(2000):
        v, w = wg.random_element(rng), wg.random_element(rng)
        if wr.conj_test(wg, v, w) != wr.brute_force_conj(wg, v, w):
            disagreements += 1
    assert disagreements == 0


def test_brute_force_cycle_type_mismatch(w32):
    v = w32.element((0, 0), Permutation.identity(2))
    w = w32.element((0, 0), Permutation([1, 0]))
    assert not wr.brute_force_conj(w32, v, w)
    assert not wr.conj_test(w32, v, w)


def test_too_large_guard():
    s5 = catalog.sym(5)
    wg = wr.WreathGroup(s5, 3, top=[Permutation([1, 2, 0])])
    with pytest.raises(wr.TooLarge):
        wg.class_codes(limit=1000)


def test_conj_test_vs_oracle_on_aut_alt5_base(alt5_aut):
    # richer base: Aut(Alt_5) wr Sym_2, sampled pairs plus conjugate pairs
    wg = wr.WreathGroup(alt5_aut.group, 2)
    rng = np.random.default_rng(55)
    for _ in range(300):
        v, w = wg.random_element(rng), wg.random_element(rng)
        assert wr.conj_test(wg, v, w) == wr.brute_force_conj(wg, v, w)
        k = wg.random_element(rng)
        assert wr.conj_test(wg, v, wg.conj(v, k))


def test_build_hp_p2(alt5, alt5_aut):
    hp = wr.build_hp(alt5, alt5_aut, 2)
    assert hp.order == 28800
    assert hp.predicted_orbit == 3600
    assert hp.measured_orbit == 3600
    assert hp.maol_lower_bound == Fraction(1, 8)
    assert Fraction(hp.measured_orbit, hp.order) == Fraction(1, 2) * Fraction(30, 120)


@pytest.mark.slow
def test_build_hp_p3(alt5, alt5_aut):
    hp = wr.build_hp(alt5, alt5_aut, 3)
    assert hp.order == 5_184_000
    assert hp.predicted_orbit == 864_000
    assert hp.measured_orbit == 864_000
