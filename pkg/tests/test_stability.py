from fractions import Fraction

import pytest

from adhm.errors import NeedsS2Certificate, NotSemistable, PreconditionViolated, ZeroRepresentation
from adhm.exactla import GF, QQ
from adhm.quiverrep import (BlowupRep, NewQuiverRep, are_isomorphic, cm_data, direct_sum, enumerate_reps,
                            is_flat, pair_violation)
from adhm.stability import (ChernData, StabilityParam, check_condition, criteria_semistable, hn_filtration,
                            is_theta_semistable, jh_filtration, slope_theta, verify_witness, wall_parameter,
                            wall_witness, zeta_semistable)

from conftest import example_111, o_minus_c, random_invertible

F2 = GF(2)
Z = StabilityParam.parse


# --- named conditions ------------------------------------------------------------

@pytest.mark.parametrize("m", [0, 1, 2, 3])
@pytest.mark.parametrize("q", [2, 3])
def test_cm_satisfies_s2(m, q):
    assert check_condition(cm_data(m, GF(q)), "S2").holds


def test_o_minus_c_satisfies_s2():
    assert check_condition(o_minus_c(), "S2").holds


def test_s2_failure_witness():
    X = BlowupRep.build(F2, 1, 0, 1)
    v = check_condition(X, "S2")
    assert v.status == "Unstable"
    assert v.witness.S0.is_zero() and v.witness.S1.is_zero() and v.witness.s_inf == 1


def test_s0_examples():
    good = BlowupRep.build(GF(5), 1, 1, 0, [[1]], [[0]], [[3]])
    assert check_condition(good, "S0").holds
    bad = BlowupRep.build(GF(5), 1, 1, 0, [[0]], [[0]], [[1]])
    v = check_condition(bad, "S0")
    assert v.status == "Unstable"
    assert v.witness.S0.is_zero() and v.witness.S1.is_full()


def test_condition_preconditions():
    with pytest.raises(PreconditionViolated):
        check_condition(cm_data(1, F2), "S0")
    with pytest.raises(PreconditionViolated):
        check_condition(cm_data(1, F2), "S1")
    with pytest.raises(PreconditionViolated):
        check_condition(example_111(), "S7")


def test_s1_and_s1prime():
    # Ker j = 0 and d injective leave only (0, 0)
    assert check_condition(BlowupRep.build(F2, 1, 1, 1, d=[[1]], i=[[1]], j=[[1]]), "S1").holds
    # j = 0, B = 0: (0, V1) is a valid pair with dim S0 < dim S1
    Y = BlowupRep.build(F2, 1, 1, 1, d=[[1]], i=[[1]])
    assert check_condition(Y, "S1").status == "Unstable"
    assert check_condition(Y, "S1prime").status == "Unstable"
    # B1 = 1 kills (0, V1); (V0, V1) then separates the strict and weak forms
    Y2 = BlowupRep.build(F2, 1, 1, 1, B1=[[1]], d=[[1]], i=[[1]])
    assert check_condition(Y2, "S1").status == "Unstable"
    assert check_condition(Y2, "S1prime").holds


def test_conditions_over_rationals_refute_only():
    assert check_condition(BlowupRep.build(QQ, 1, 0, 1), "S2").status == "Unstable"
    assert check_condition(example_111(QQ), "S2").status == "Unknown"


# --- zeta-stability --------------------------------------------------------------

def test_c1_stable_on_its_wall():
    v = zeta_semistable(cm_data(1, F2), Z("-2,1"))
    assert v.status == "Stable"


def test_example_111_zero_chamber():
    assert zeta_semistable(example_111(), Z("-1,-1")).status == "Stable"
    v = zeta_semistable(example_111(d=0), Z("-1,-1"))
    assert v.status == "Unstable"
    assert v.witness.S0.is_full() and v.witness.S1.is_zero() and v.witness.s_inf == 1


def test_double_c1_strictly_semistable():
    X = direct_sum(cm_data(1, F2), cm_data(1, F2))
    v = zeta_semistable(X, Z("-2,1"))
    assert v.status == "StrictlySemistable"
    assert v.witness.dims == (1, 2)
    assert verify_witness(X, Z("-2,1"), v)


def test_w0_balance_required():
    with pytest.raises(PreconditionViolated):
        zeta_semistable(cm_data(1, F2), Z("-1,1"))
    # the literal framed reading has no balance requirement
    assert zeta_semistable(cm_data(1, F2), Z("-1,1"), strict=False).status in ("Stable", "Unstable",
                                                                              "StrictlySemistable")


def test_rational_paths():
    assert zeta_semistable(example_111(QQ), Z("-1,-1")).status == "Stable"
    assert zeta_semistable(o_minus_c(QQ), Z("-3,1")).status == "Unknown"
    v = zeta_semistable(o_minus_c(QQ), Z("-3,1"), s2_certificate=True)
    assert v.status == "Stable" and v.probabilistic
    assert zeta_semistable(o_minus_c(), Z("-3,1")).status == "Stable"
    # C_0 sits inside Ker j = V1 here
    assert zeta_semistable(example_111(QQ), Z("-3,1"), s2_certificate=True).status == "Unstable"
    assert zeta_semistable(cm_data(2, QQ), Z("-3,2")).method == "TheoremBacked"
    assert zeta_semistable(cm_data(2, QQ), Z("-3,2")).status == "Stable"


@pytest.mark.parametrize("dims", [(1, 1, 1), (2, 1, 1), (1, 2, 1)])
@pytest.mark.parametrize("zeta", ["-3,1", "-1,-1", "-5,2", "-1,0", "-2,1"])
def test_witnesses_verify(dims, zeta):
    z = Z(zeta)
    for X in enumerate_reps(dims, F2, flat_only=True):
        v = zeta_semistable(X, z)
        assert verify_witness(X, z, v)
        if v.witness is not None:
            P = v.witness
            assert pair_violation(X, P.S0, P.S1, P.s_inf) is None


@pytest.mark.parametrize("dims", [(1, 1, 1), (2, 1, 1), (1, 2, 1)])
@pytest.mark.parametrize("zeta", ["-3,1", "-1,-1", "-5,2", "-2,1"])
def test_semistable_implies_s2(dims, zeta):
    z = Z(zeta)
    assert z.in_region()
    for X in enumerate_reps(dims, F2, flat_only=True):
        if zeta_semistable(X, z).semistable:
            assert check_condition(X, "S2").holds


# --- Hom criteria ----------------------------------------------------------------

def test_criteria_example_111():
    X = example_111()
    assert criteria_semistable(X, Z("-1,-1")).status == "Stable"
    from adhm.quiverrep import hom_dim
    assert all(hom_dim(X, cm_data(m, F2)) == 0 for m in range(4))


def test_criteria_rejects_c0_summand():
    X = direct_sum(example_111(), cm_data(0, F2))
    assert X.dims == (1, 2, 1) and is_flat(X)
    from adhm.quiverrep import hom_dim
    assert hom_dim(X, cm_data(0, F2)) > 0
    v = criteria_semistable(X, Z("-3,1"))
    assert v.status == "Unstable" and verify_witness(X, Z("-3,1"), v)
    assert zeta_semistable(X, Z("-3,1")).status == "Unstable"


def test_criteria_matches_definition_small():
    for zeta in ("-3,1", "-1,-1", "-5,2"):
        z = Z(zeta)
        for X in enumerate_reps((1, 1, 1), F2, flat_only=True):
            assert zeta_semistable(X, z).status == criteria_semistable(X, z).status


def test_criteria_preconditions():
    with pytest.raises(PreconditionViolated):
        criteria_semistable(cm_data(1, F2), Z("-2,1"))
    with pytest.raises(PreconditionViolated):
        criteria_semistable(example_111(), Z("1,-3"))
    with pytest.raises(NeedsS2Certificate):
        criteria_semistable(o_minus_c(QQ), Z("-3,1"))


@pytest.mark.parametrize("zeta", ["-3,1", "-5,2", "-1,-1"])
def test_hom_range_bound_suffices(zeta):
    """Maps to or from C_m past m = n0 + n1 never destabilize a tuple the
    bounded criteria call semistable."""
    from adhm.quiverrep import SubrepPair, hom_space
    from adhm.stability import s_value, t_value
    z = Z(zeta)
    for dims in [(1, 1, 1), (2, 1, 1), (1, 2, 1)]:
        top = sum(dims[:2])
        for X in enumerate_reps(dims, F2, flat_only=True):
            if not criteria_semistable(X, z).semistable:
                continue
            for m in range(top + 1, top + 4):
                C = cm_data(m, F2)
                w = z.wall_form(m)
                if w > 0:
                    for xi0, xi1, _ in hom_space(C, X).basis:
                        assert s_value(z, SubrepPair(xi0.image(), xi1.image(), 0)) <= 0
                if w < 0:
                    for xi0, xi1, _ in hom_space(X, C).basis:
                        assert t_value(z, SubrepPair(xi0.kernel(), xi1.kernel(), 1)) >= 0


# --- slopes and filtrations ------------------------------------------------------

def test_slope_examples():
    z = Z("-3,2")
    X = example_111()
    Y = NewQuiverRep.of(X)
    assert slope_theta(Y, z, z.zeta_inf(1, 1)) == 0
    assert slope_theta(NewQuiverRep.of(cm_data(0, F2)), z, 0) == 2
    assert slope_theta(NewQuiverRep.of(cm_data(1, F2)), z, 0) == Fraction(1, 3)
    with pytest.raises(ZeroRepresentation):
        slope_theta(NewQuiverRep.of(BlowupRep.zero(F2, 0, 0)), z, 0)


def test_slope_homogeneity():
    z = Z("-3,2")
    a = NewQuiverRep.of(cm_data(0, F2))
    b = NewQuiverRep.of(cm_data(2, F2))
    for lam in (Fraction(1, 3), 2, 7):
        zl = z.scaled(lam)
        assert slope_theta(a, zl, 0) == lam * slope_theta(a, z, 0)
        assert (slope_theta(a, zl, 0) < slope_theta(b, zl, 0)) == (slope_theta(a, z, 0) < slope_theta(b, z, 0))


def test_hn_of_semistable_is_trivial():
    F = hn_filtration(NewQuiverRep.of(cm_data(1, F2)), Z("-2,1"))
    assert len(F) == 1 and len(F.steps) == 2


def test_hn_of_c0_plus_c1():
    X = NewQuiverRep.of(direct_sum(cm_data(0, F2), cm_data(1, F2)))
    F = hn_filtration(X, Z("-3,2"))
    assert F.slopes == (Fraction(1, 3), Fraction(2))
    assert F.dimension_profile() == ((1, 3, 0), (0, 1, 0), (0, 0, 0))
    assert hn_filtration(X, Z("-5,4")).dimension_profile() == F.dimension_profile()
    # with zeta0 > zeta1 the pure V0 part (slope -1) destabilizes first
    G = hn_filtration(X, Z("-1,-2"))
    assert G.dimension_profile() == ((1, 3, 0), (1, 0, 0), (0, 0, 0))
    assert G.slopes == (Fraction(-2), Fraction(-1))


def test_jh_of_double_c1():
    X = direct_sum(cm_data(1, F2), cm_data(1, F2))
    F = jh_filtration(NewQuiverRep.of(X), Z("-2,1"))
    assert len(F) == 2 and set(F.slopes) == {0}
    for Y, dinf in F.pieces:
        assert dinf == 0 and are_isomorphic(Y, cm_data(1, F2))


def test_jh_of_stable_is_single_piece():
    F = jh_filtration(NewQuiverRep.of(example_111()), Z("-1,-1"))
    assert len(F) == 1


def test_jh_needs_semistable():
    X = NewQuiverRep.of(direct_sum(cm_data(0, F2), cm_data(1, F2)))
    with pytest.raises(NotSemistable):
        jh_filtration(X, Z("-3,2"))


def test_jh_on_a_wall_splits_off_cm():
    c = ChernData.from_dims(1, 2, 1)
    found = wall_witness(c, 0)
    assert found is not None
    X, v = found
    F = jh_filtration(NewQuiverRep.of(X), wall_parameter(0))
    assert len(F) >= 2
    assert any(dinf == 0 and are_isomorphic(Y, cm_data(0, F2)) for Y, dinf in F.pieces)
    assert sum(dinf for _, dinf in F.pieces) == 1


def test_hn_invariant_under_basis_change(rng):
    zetas = [Z("-3,1"), Z("-1,-1"), Z("-5,2"), Z("-1,0")]
    done = 0
    for X in enumerate_reps((2, 2, 1), F2, flat_only=True, max_tuples=None):
        if done >= 12:
            break
        if rng.random() > 0.002:
            continue
        g0, g1 = random_invertible(F2, 2, rng), random_invertible(F2, 2, rng)
        Y = X.conjugate(g0, g1)
        for z in zetas:
            a = hn_filtration(NewQuiverRep.of(X), z)
            b = hn_filtration(NewQuiverRep.of(Y), z)
            assert a.slopes == b.slopes and a.dimension_profile() == b.dimension_profile()
            assert list(map(lambda s: s.S0.image_under(g0), a.steps)) == [s.S0 for s in b.steps]
        done += 1
    assert done > 0


def test_jh_multiset_invariant_under_basis_change(rng):
    X = direct_sum(direct_sum(cm_data(1, F2), cm_data(1, F2)), cm_data(1, F2))
    g0, g1 = random_invertible(F2, 3, rng), random_invertible(F2, 6, rng)
    for Y in (X, X.conjugate(g0, g1)):
        F = jh_filtration(NewQuiverRep.of(Y), Z("-2,1"))
        assert len(F.pieces) == 3
        assert all(are_isomorphic(P, cm_data(1, F2)) for P, _ in F.pieces)


@pytest.mark.parametrize("dims", [(1, 1, 1), (2, 1, 1), (1, 2, 1)])
def test_hn_slopes_increase_and_pieces_semistable(dims):
    z = Z("-3,1")
    for t, X in enumerate(enumerate_reps(dims, F2, flat_only=True)):
        if t % 5:
            continue
        F = hn_filtration(NewQuiverRep.of(X), z)
        assert all(a < b for a, b in zip(F.slopes, F.slopes[1:]))
        for (Y, dinf), s in zip(F.pieces, F.slopes):
            P = NewQuiverRep(Y, dinf) if dinf or Y.r == 0 else NewQuiverRep(Y, 1)
            zinf = z.zeta_inf(X.n0, X.n1)
            assert slope_theta(P, z, zinf) == s
            assert is_theta_semistable(P, z, zinf)
