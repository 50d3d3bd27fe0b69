import random
from fractions import Fraction

import pytest

from rotref.cyclo import CycNum, zeta_power
from rotref.linalg import MatrixF, Subspace, subspace_intersect
from rotref.groups import (
    catalog_group,
    closure,
    direct_sum,
    realified_gmpn_group,
)
from rotref.arrangements import (
    PhaseValue,
    PlanePreconditionError,
    arrangement_contains,
    complex_coords,
    coordinate_plane_x0,
    coordinate_plane_y0,
    fixed_space_of_subset,
    isotropy_arrangement,
    phase_ratio,
    plane_meet_count,
    pointwise_stabilizer,
    reflection_arrangement,
    sample_rational_plane,
    structural_dichotomy_check,
    wreath_plane_list,
    zeta_plane,
)


# -- fixed spaces of subsets ---------------------------------------------------

def test_fixed_space_of_identity_subset():
    g = realified_gmpn_group(3)
    assert fixed_space_of_subset(g, [0]) == Subspace.full(4, 12)


def test_fixed_space_of_two_rotations_is_zero():
    g = realified_gmpn_group(3)
    # indices of the realified diag(zeta,1) and diag(1,zeta)
    by_key = {e.key: i for i, e in enumerate(g.elements)}
    from rotref.groups import gmpn_generators, realify

    d1 = realify(gmpn_generators(3, 1, 2)[0])
    swap = realify(gmpn_generators(3, 1, 2)[1])
    d2 = swap @ d1 @ swap
    sub = fixed_space_of_subset(g, [by_key[d1.key], by_key[d2.key]])
    assert sub.is_zero()


def test_fixed_space_of_whole_group_is_zero():
    g = realified_gmpn_group(3)
    assert fixed_space_of_subset(g, range(g.order)).is_zero()


def test_pointwise_stabilizer_extremes():
    g = realified_gmpn_group(3)
    assert pointwise_stabilizer(g, Subspace.zero_space(4, 12)) == list(range(18))
    assert pointwise_stabilizer(g, Subspace.full(4, 12)) == [0]


def test_pointwise_stabilizer_of_diagonal_plane():
    g = realified_gmpn_group(3)
    diag = Subspace.from_rows(
        4,
        [
            [CycNum.one(12), CycNum.zero(12), CycNum.one(12), CycNum.zero(12)],
            [CycNum.zero(12), CycNum.one(12), CycNum.zero(12), CycNum.one(12)],
        ],
    )
    stab = pointwise_stabilizer(g, diag)
    assert len(stab) == 2 and stab[0] == 0
    # the returned index set is a subgroup
    elems = g.elements
    keys = {elems[i].key for i in stab}
    for i in stab:
        for j in stab:
            assert (elems[i] @ elems[j]).key in keys


# -- isotropy arrangement -------------------------------------------------------

def test_wreath_arrangement_m3():
    arr = isotropy_arrangement(realified_gmpn_group(3))
    assert arr.dim_counts() == {0: 1, 2: 5}
    assert {s.key for s in arr.members_of_dim(2)} == {
        p.key for p in wreath_plane_list(12, 3)
    }


def test_wreath_arrangement_m2():
    arr = isotropy_arrangement(realified_gmpn_group(2))
    assert arr.dim_counts() == {0: 1, 2: 4}


def test_wreath_arrangement_m1_degenerate():
    # G(1,1,2) is the symmetric group on two complex coordinates: the only
    # nontrivial fixed space is the diagonal plane, so the m+2 count fails
    arr = isotropy_arrangement(realified_gmpn_group(1))
    assert arr.dim_counts() == {2: 1}
    assert arr.subspaces[0] == zeta_plane(4, 1, 0)


def test_pairwise_trivial_intersections_m5():
    arr = isotropy_arrangement(realified_gmpn_group(5))
    planes = arr.members_of_dim(2)
    assert len(planes) == 7
    for i, p in enumerate(planes):
        for q in planes[i + 1 :]:
            assert subspace_intersect(p, q).is_zero()


def test_trivial_group_has_empty_arrangement():
    triv = closure([MatrixF.identity(4, 4)])
    arr = isotropy_arrangement(triv)
    assert arr.size == 0


def test_a1_arrangement_is_origin():
    a1 = catalog_group("A1")
    a1.ensure_elements()
    arr = isotropy_arrangement(a1)
    assert arr.dim_counts() == {0: 1}


def test_isotropy_provenance_witnesses():
    g = realified_gmpn_group(3)
    arr = isotropy_arrangement(g)
    for s, prov in zip(arr.subspaces, arr.provenance):
        assert fixed_space_of_subset(g, prov["fixing_elements"]) == s


# -- reflection arrangement -------------------------------------------------------

def test_i2_3_reflection_arrangement():
    g = catalog_group("I2(3)")
    g.ensure_elements()
    arr = reflection_arrangement(g)
    assert arr.dim_counts() == {0: 1, 1: 3}


def test_i2_2_squared_reflection_arrangement():
    w = direct_sum(catalog_group("I2(2)"), catalog_group("I2(2)"))
    w.ensure_elements()
    arr = reflection_arrangement(w)
    assert arr.dim_counts() == {0: 1, 1: 4, 2: 6, 3: 4}


def test_reflection_rejects_rotation_group():
    with pytest.raises(ValueError):
        reflection_arrangement(realified_gmpn_group(3))


def test_padded_arrangement_has_no_origin():
    w = catalog_group("A3x1")
    w.ensure_elements()
    arr = reflection_arrangement(w)
    assert arr.dim_counts() == {1: 1, 2: 7, 3: 6}


@pytest.mark.parametrize("label", ["I2(2)", "I2(3)", "I2(4)", "I2(6)", "A3", "B3", "A2"])
def test_oracle_equivalence_small(label):
    g = catalog_group(label)
    g.ensure_elements()
    assert reflection_arrangement(g).key_set() == isotropy_arrangement(g).key_set()


def test_reflection_provenance_hyperplanes():
    g = catalog_group("B3")
    g.ensure_elements()
    arr = reflection_arrangement(g)
    hyperplanes = arr.members_of_dim(2)
    assert len(hyperplanes) == 9
    for s, prov in zip(arr.subspaces, arr.provenance):
        assert len(prov["hyperplanes"]) >= 1


# -- containment -------------------------------------------------------------------

def test_containment_reflexive_and_empty():
    arr = isotropy_arrangement(realified_gmpn_group(3))
    assert arrangement_contains(arr, arr) == (True, None)
    triv = isotropy_arrangement(closure([MatrixF.identity(4, 4)]))
    assert arrangement_contains(arr, triv)[0]


def test_dihedral_sum_does_not_contain_wreath_m4():
    w = direct_sum(catalog_group("I2(4)"), catalog_group("I2(4)"))
    w.ensure_elements()
    aw = reflection_arrangement(w)
    ag = isotropy_arrangement(realified_gmpn_group(4))
    ok, witness = arrangement_contains(aw, ag)
    assert not ok
    assert witness.dim == 2  # a plane witness, reported before lines/origin


def test_b4_contains_wreath_m2_and_m4():
    # the realified wreath groups for m in {2, 4} are signed-permutation
    # groups, and their arrangements do sit inside the B4 arrangement
    b4 = catalog_group("B4")
    b4.ensure_elements()
    ab4 = reflection_arrangement(b4)
    for m in (2, 4):
        ag = isotropy_arrangement(realified_gmpn_group(m))
        assert arrangement_contains(ab4, ag) == (True, None)
    ag3 = isotropy_arrangement(realified_gmpn_group(3))
    ok, witness = arrangement_contains(ab4, ag3)
    assert not ok and witness.dim == 2


# -- phase values --------------------------------------------------------------------

def test_phase_of_unit_vector():
    L = 12
    re, im = (zeta_power(L, 4) + zeta_power(L, 8)) * CycNum.rational(L, Fraction(1, 2)), None
    u = [CycNum.one(L), CycNum.zero(L)] + list(
        __import__("rotref.cyclo", fromlist=["real_imag_parts"]).real_imag_parts(
            zeta_power(L, 4)
        )
    )
    pv = phase_ratio(u, 3)
    assert pv.defined and pv.is_unit()
    assert pv.unit_value() == zeta_power(L, 4)


def test_phase_undefined_on_coordinate_planes():
    L = 4
    u = [CycNum.zero(L), CycNum.zero(L), CycNum.one(L), CycNum.rational(L, 2)]
    assert not phase_ratio(u).defined


def test_phase_scaling_invariance():
    L = 20
    rng = random.Random(5)
    u = [CycNum.rational(L, Fraction(rng.randint(-9, 9), rng.randint(1, 9))) for _ in range(4)]
    pv = phase_ratio(u)
    for _ in range(20):
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice([1, -1])
        scaled = [CycNum.rational(L, lam) * e for e in u]
        assert phase_ratio(scaled).ratio == pv.ratio


def test_phase_same_for_positive_span_coefficients():
    L = 20
    v = [CycNum.rational(L, 3), CycNum.rational(L, 1), CycNum.zero(L), CycNum.zero(L)]
    w = [CycNum.zero(L), CycNum.zero(L), CycNum.rational(L, 2), CycNum.rational(L, -5)]
    base = None
    for a, b in [(1, 1), (2, 3), (Fraction(1, 2), 7), (5, Fraction(2, 3))]:
        u = [
            CycNum.rational(L, a) * x + CycNum.rational(L, b) * y
            for x, y in zip(v, w)
        ]
        pv = phase_ratio(u)
        if base is None:
            base = pv
        else:
            assert pv.same_phase(base)


def test_phase_flips_for_opposite_sign_coefficients():
    # the direction of y(u)/x(u) depends on sign(b/a): opposite signs give
    # the antipodal phase, so only the squared phase is constant on a plane
    L = 4
    v = [CycNum.one(L), CycNum.zero(L), CycNum.zero(L), CycNum.zero(L)]
    w = [CycNum.zero(L), CycNum.zero(L), CycNum.one(L), CycNum.zero(L)]
    plus = phase_ratio([a + b for a, b in zip(v, w)])
    minus = phase_ratio([a - b for a, b in zip(v, w)])
    assert not plus.same_phase(minus)
    sq_plus = PhaseValue(plus.ratio * plus.ratio)
    sq_minus = PhaseValue(minus.ratio * minus.ratio)
    assert sq_plus.same_phase(sq_minus)


def test_phase_constant_on_zeta_plane():
    L, m, j = 20, 5, 2
    p = zeta_plane(L, m, j)
    rng = random.Random(1)
    target = PhaseValue(zeta_power(L, (L // m) * j))
    for _ in range(10):
        a = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        b = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        u = [
            CycNum.rational(L, a) * x + CycNum.rational(L, b) * y
            for x, y in zip(p.basis[0], p.basis[1])
        ]
        x, y = complex_coords(u)
        if x.is_zero() or y.is_zero():
            continue
        pv = phase_ratio(u, m)
        assert pv.is_unit() and pv.unit_value() == target.ratio


# -- plane meet counts ------------------------------------------------------------

def test_meet_count_single_zeta_plane():
    L, m = 20, 5
    re, im = __import__("rotref.cyclo", fromlist=["real_imag_parts"]).real_imag_parts(
        zeta_power(L, 8)  # zeta_5^2
    )
    v = [CycNum.one(L), CycNum.zero(L), CycNum.zero(L), CycNum.zero(L)]
    w = [CycNum.zero(L), CycNum.zero(L), re, im]
    p = Subspace.from_rows(4, [v, w])
    assert plane_meet_count(p, m) == 1


def test_meet_count_precondition_violation():
    p = zeta_plane(20, 5, 3)  # does not meet {x=0} nontrivially
    with pytest.raises(PlanePreconditionError):
        plane_meet_count(p, 5)
    with pytest.raises(PlanePreconditionError):
        plane_meet_count(Subspace.full(4, 20), 5)


@pytest.mark.parametrize("m,L", [(3, 12), (5, 20)])
def test_meet_count_at_most_one_for_odd_m(m, L):
    rng = random.Random(0)
    for _ in range(150):
        p = sample_rational_plane(rng, L)
        assert plane_meet_count(p, m) <= 1


def test_meet_count_two_for_antipodal_pair_even_m():
    # span(e1, e3) meets both {y=x} and {y=-x}: for even m the true bound is
    # an antipodal pair, not a single plane
    L = 4
    zero, one = CycNum.zero(L), CycNum.one(L)
    p = Subspace.from_rows(4, [[one, zero, zero, zero], [zero, zero, one, zero]])
    assert plane_meet_count(p, 2) == 2
    assert plane_meet_count(p, 4) == 2
    assert plane_meet_count(p.embed(12), 3) == 1


def test_meet_count_even_m_bound_two_with_antipodal_structure():
    m, L = 8, 8
    rng = random.Random(2)
    for _ in range(150):
        p = sample_rational_plane(rng, L)
        met = [j for j in range(m) if __meets(p, L, m, j)]
        assert len(met) <= 2
        if len(met) == 2:
            assert (met[1] - met[0]) % m == m // 2


def __meets(p, L, m, j):
    from rotref.linalg import meets_nontrivially

    return meets_nontrivially(p, zeta_plane(L, m, j))


def test_no_sampled_plane_meets_all_members():
    # for m >= 3 no plane meets every member of the wreath arrangement
    for m, L in [(3, 12), (5, 20), (8, 8)]:
        rng = random.Random(7)
        planes = wreath_plane_list(L, m)
        for _ in range(60):
            p = sample_rational_plane(rng, L)
            met = sum(
                1 for q in planes if __meets_sub(p, q)
            )
            assert met < m + 2


def __meets_sub(p, q):
    from rotref.linalg import meets_nontrivially

    return meets_nontrivially(p, q)


# -- structural dichotomy -----------------------------------------------------------

@pytest.mark.parametrize("p,q", [(2, 2), (3, 5), (4, 6), (5, 5)])
def test_dichotomy_for_dihedral_sums(p, q):
    w = direct_sum(catalog_group(f"I2({p})"), catalog_group(f"I2({q})"))
    ok, report, arr = structural_dichotomy_check(w)
    assert ok
    assert report.count("V1") == 1 and report.count("V2") == 1
    assert len(report) == len(arr.members_of_dim(2))


def test_dichotomy_with_a1_blocks():
    block = direct_sum(catalog_group("A1"), catalog_group("A1"))
    w = direct_sum(block, catalog_group("I2(5)"))
    ok, report, _ = structural_dichotomy_check(w)
    assert ok


def test_dichotomy_rejects_rotation_group():
    with pytest.raises(ValueError):
        structural_dichotomy_check(realified_gmpn_group(3))


def test_dichotomy_rejects_cross_block_generators():
    with pytest.raises(ValueError):
        structural_dichotomy_check(catalog_group("B4"))
