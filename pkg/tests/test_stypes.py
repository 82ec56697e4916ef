from fractions import Fraction

import numpy as np
import pytest

from autorbit import catalog, permcore as pc, stypes as st, wreath as wr
from autorbit.autgrp import automorphism_group, inner_automorphism_ids
from autorbit.permcore import Permutation


def test_out_quotient_alt5(alt5_aut):
    A = alt5_aut.group
    socle = inner_automorphism_ids(alt5_aut)
    out = st.out_quotient(A, socle)
    assert out.order == 2
    assert out.pi[0] == 0


def test_out_quotient_trivial():
    s5 = catalog.sym(5)
    out = st.out_quotient(s5, np.arange(s5.order))
    assert out.order == 1


def test_out_quotient_alt6(alt6_aut):
    A = alt6_aut.group
    socle = inner_automorphism_ids(alt6_aut)
    out = st.out_quotient(A, socle)
    assert out.order == 4
    assert all(s == 1 for s in out.classes.sizes)  # abelian


def test_out_quotient_rejects_non_normal():
    s4 = catalog.sym(4)
    stab = s4.subgroup_closure([i for i in range(24) if s4.perm(i)(0) == 0])
    with pytest.raises(pc.NotNormal):
        st.out_quotient(s4, stab)


def test_class_type_table_alt5(alt5_typing):
    tab = alt5_typing
    # the 4-cycle class: size 30, singleton type, rho = 30/(60*1) = 1/2
    assert Fraction(1, 2) in tab.rho
    sizes = [int(tab.classes.sizes[c]) for c in range(tab.n_classes)]
    i4 = sizes.index(30)
    assert tab.rho[i4] == Fraction(1, 2)
    # identity class: rho = 1/60
    assert tab.rho[0] == Fraction(1, 60)
    assert tab.h() == Fraction(1, 2)


def rho_sum_by_type(tab):
    sums = {}
    for c in range(tab.n_classes):
        tau = int(tab.type_of_class[c])
        sums[tau] = sums.get(tau, Fraction(0)) + tab.rho[c]
    return sums


def test_rho_sums_and_h_alt5(alt5_typing):
    assert all(s == 1 for s in rho_sum_by_type(alt5_typing).values())
    assert all(r <= alt5_typing.h() for r in alt5_typing.rho)


def test_rho_sums_alt6_and_psl28(alt6_aut, psl28_aut):
    for aut in (alt6_aut, psl28_aut):
        tab = st.class_type_table(aut.group, inner_automorphism_ids(aut))
        assert all(s == 1 for s in rho_sum_by_type(tab).values())
        assert all(r <= tab.h() for r in tab.rho)


def test_h_oracle_cross_check(alt5_aut, alt6_aut, psl28_aut):
    for aut, expected in ((alt5_aut, Fraction(1, 2)),
                          (alt6_aut, Fraction(2, 3)),
                          (psl28_aut, Fraction(1, 2))):
        A = aut.group
        socle = inner_automorphism_ids(aut)
        assert st.h_value(A, socle) == st.h_value_direct(A, socle) == expected


def test_h_single_coset_case():
    # |Out| = 1: h = max class size / |S|
    s5 = catalog.sym(5)
    A = automorphism_group(s5)
    socle = inner_automorphism_ids(A)
    assert socle.size == 120
    h = st.h_value(A.group, socle)
    assert h == Fraction(max(pc.conjugacy_classes(A.group).sizes), 120)


# -- coarse types -------------------------------------------------------------

@pytest.fixture(scope="module")
def alt5_coarse(alt5_aut):
    A = alt5_aut.group
    socle = inner_automorphism_ids(alt5_aut)
    return A, socle, st.coarse_quotient(A, socle, socle_ids=socle)


def test_coarse_quotient_validation(alt5_aut):
    A = alt5_aut.group
    socle = inner_automorphism_ids(alt5_aut)
    with pytest.raises(pc.GroupError):
        st.coarse_quotient(A, np.array([0]), socle_ids=socle)  # misses the socle
    s4 = catalog.sym(4)
    v4 = pc.derived_series(s4)[2]
    assert v4.size == 4
    with pytest.raises(st.NonAbelianQuotient):
        st.coarse_quotient(s4, v4)  # S4/V4 = S3 is not abelian


def test_ct_set_examples(alt5_coarse):
    A, socle, coarse = alt5_coarse
    wg = wr.WreathGroup(A, 2)
    swap = Permutation([1, 0])
    socle_set = set(socle.tolist())

    # all base entries inside the socle -> {identity coarse type}
    rng = np.random.default_rng(8)
    members = socle.tolist()
    for _ in range(20):
        b = (members[int(rng.integers(len(members)))],
             members[int(rng.integers(len(members)))])
        t = wg.top.perm(int(rng.integers(2)))
        assert st.ct_set(wg, wg.element(b, t), coarse) == frozenset({0})

    # n=1: singleton {coset of the entry}
    wg1 = wr.WreathGroup(A, 1)
    outer = next(x for x in range(A.order) if x not in socle_set)
    w = wg1.element((outer,), Permutation.identity(1))
    assert st.ct_set(wg1, w, coarse) == frozenset({int(coarse.pi[outer])})

    # two 1-cycles landing in distinct cosets -> 2-element set
    w = wg.element((0, outer), Permutation.identity(2))
    assert len(st.ct_set(wg, w, coarse)) == 2


def test_ct_constant_on_orbits(alt5_coarse):
    # conjugate pairs inside Aut(Alt_5) wr Sym_2 have equal CT
    A, socle, coarse = alt5_coarse
    wg = wr.WreathGroup(A, 2)
    rng = np.random.default_rng(21)
    for _ in range(60):
        w = wg.random_element(rng)
        k = wg.random_element(rng)
        assert st.ct_set(wg, w, coarse) == st.ct_set(wg, wg.conj(w, k), coarse)


def test_ct_power_check(alt5_coarse):
    A, socle, coarse = alt5_coarse
    wg = wr.WreathGroup(A, 3)
    rng = np.random.default_rng(33)
    checked = 0
    for _ in range(300):
        w = wg.random_element(rng)
        k = int(rng.integers(1, 12))
        from math import gcd
        if gcd(k, w.top.order()) != 1:
            with pytest.raises(st.GcdViolation):
                st.ct_power_check(wg, w, k, coarse)
            continue
        assert st.ct_power_check(wg, w, k, coarse)
        checked += 1
    assert checked > 100

    w = wg.random_element(rng)
    assert st.ct_power_check(wg, w, 1, coarse)  # k = 1 is always coprime


def test_ct_on_alt6_base(alt6_aut):
    # the per-base power-rule sweep on the Aut(Alt_6) base (|Out| = 4), plus
    # an explicit 2-element CT set from distinct cosets
    A = alt6_aut.group
    socle = inner_automorphism_ids(alt6_aut)
    coarse = st.coarse_quotient(A, socle, socle_ids=socle)
    assert coarse.quotient.order == 4
    wg = wr.WreathGroup(A, 2)

    socle_set = set(socle.tolist())
    outer = next(x for x in range(A.order) if x not in socle_set)
    w = wg.element((0, outer), Permutation.identity(2))
    assert len(st.ct_set(wg, w, coarse)) == 2

    rng = np.random.default_rng(77)
    from math import gcd
    checked = 0
    while checked < 200:
        w = wg.random_element(rng)
        k = int(rng.integers(1, 20))
        if gcd(k, w.top.order()) != 1:
            continue
        assert st.ct_power_check(wg, w, k, coarse)
        checked += 1


def test_ct_power_rule_on_psl28_base(psl28_aut):
    A = psl28_aut.group
    socle = inner_automorphism_ids(psl28_aut)
    coarse = st.coarse_quotient(A, socle, socle_ids=socle)
    assert coarse.quotient.order == 3
    wg = wr.WreathGroup(A, 2)
    rng = np.random.default_rng(78)
    from math import gcd
    checked = 0
    while checked < 150:
        w = wg.random_element(rng)
        k = int(rng.integers(1, 20))
        if gcd(k, w.top.order()) != 1:
            continue
        assert st.ct_power_check(wg, w, k, coarse)
        checked += 1
