import pytest

from adhm.errors import BoundExceeded, FieldMismatch, InvalidPoint, NotS2, UnsupportedField
from adhm.exactla import GF, QQ, Mat
from adhm.monad import (SurfacePoint, alpha_beta_at, enumerate_points, extension, fiber_profile, framing_check,
                        monad_coefficients, perverse_hom_profile, perverse_test, scan_alpha, scan_beta)
from adhm.quiverrep import BlowupRep, cm_data, enumerate_reps, is_flat
from adhm.stability import check_condition

from conftest import example_111, o_minus_c, random_mat

F2, F3 = GF(2), GF(3)


# --- points ----------------------------------------------------------------------

@pytest.mark.parametrize("q,count", [(2, 9), (3, 16), (4, 25), (5, 36)])
def test_point_counts(q, count):
    f = GF(*{4: (2, 2)}.get(q, (q,)))
    pts = enumerate_points(f)
    assert len(pts) == count == q * q + q + q + 1
    assert len(set(pts)) == count
    assert sum(p.at_infinity for p in pts) == q + 1
    assert sum(p.on_exceptional for p in pts) == q + 1


@pytest.mark.parametrize("q", [2, 3])
def test_points_lie_on_the_surface(q):
    for e in (1, 2):
        for p in enumerate_points(GF(q), e):
            z0, z1, z2, z, w = p.coords
            F = p.field
            assert F.mul(z1, w) == F.mul(z2, z)
            assert SurfacePoint.make(F, p.p2, p.p1) == p


def test_point_order_and_json():
    pts = enumerate_points(F2)
    assert pts[0].to_json() == {"p2": ["1", "0", "0"], "p1": ["1", "0"]}
    assert pts[-1].at_infinity
    assert SurfacePoint.from_json(F2, pts[4].to_json()) == pts[4]


def test_point_validation():
    with pytest.raises(InvalidPoint):
        SurfacePoint.make(F3, [1, 1, 0], [0, 1])
    with pytest.raises(InvalidPoint):
        SurfacePoint.make(F3, [0, 0, 0], [1, 0])
    p = SurfacePoint.make(F3, [2, 2, 0], [2, 0])
    assert p.p2 == (1, 1, 0) and p.p1 == (1, 0)


def test_point_bounds():
    with pytest.raises(BoundExceeded):
        enumerate_points(F2, 9)
    with pytest.raises(UnsupportedField):
        enumerate_points(QQ)
    assert extension(GF(2, 2), 3) == GF(2, 6)


# --- the monad matrices ----------------------------------------------------------

def test_o_minus_c_matrices():
    X = o_minus_c(F3)
    for p in enumerate_points(F3):
        z0, z1, z2, z, w = p.coords
        ev = alpha_beta_at(X, p)
        assert ev.beta == Mat(F3, [[z2, F3.neg(z1), z0]])
        assert ev.alpha == Mat(F3, [[z], [w], [0]])


def test_b_blocks_vanish_at_infinity():
    X = BlowupRep.build(F3, 1, 1, 1, B1=[[1]], B2=[[2]], d=[[1]], i=[[1]], j=[[2]])
    A, _ = monad_coefficients(X)
    for p in enumerate_points(F3):
        if p.at_infinity:
            ev = alpha_beta_at(X, p)
            # no B entries survive: only identity blocks appear
            assert ev.alpha == sum((A[t].scale(c) for t, c in zip(("z1", "z2", "z", "w"), p.coords[1:])),
                                   Mat.zeros(F3, *ev.alpha.shape))


def _random_flat(field, dims, rng):
    n0, n1, r = dims
    while True:
        shapes = [(n0, n1), (n0, n1), (n1, n0), (n0, r), (r, n1)]
        X = BlowupRep(field, n0, n1, r, *(random_mat(field, a, b, rng, density=0.6) for a, b in shapes))
        if is_flat(X):
            return X


def test_beta_alpha_vanishes_on_flat_data(rng):
    X = example_111(F3)
    pts = enumerate_points(F3, 2)
    for p in rng.sample(pts, 10):
        ev = alpha_beta_at(X, p)
        assert (ev.beta @ ev.alpha).is_zero()
    for dims in [(1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 2, 1), (2, 2, 2)]:
        for _ in range(3):
            X = _random_flat(F3, dims, rng)
            for p in rng.sample(pts, 15):
                ev = alpha_beta_at(X, p)
                assert (ev.beta @ ev.alpha).is_zero()


def test_beta_alpha_is_mu_symbolically(rng):
    """sum over monomials of B_s A_t vanishes exactly when mu does (up to the relation z1 w = z2 z)."""
    for _ in range(20):
        dims = rng.choice([(1, 1, 1), (2, 1, 1), (2, 2, 1)])
        n0, n1, r = dims
        shapes = [(n0, n1), (n0, n1), (n1, n0), (n0, r), (r, n1)]
        X = BlowupRep(F3, n0, n1, r, *(random_mat(F3, a, b, rng) for a, b in shapes))
        flat = is_flat(X)
        vanish = all((alpha_beta_at(X, p).beta @ alpha_beta_at(X, p).alpha).is_zero()
                     for p in enumerate_points(F3))
        assert flat == vanish


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        alpha_beta_at(example_111(F3), enumerate_points(F2)[0])
    with pytest.raises(FieldMismatch):
        alpha_beta_at(example_111(GF(2, 2)), enumerate_points(GF(2, 3))[0])
    # a point over an extension is fine
    alpha_beta_at(example_111(F2), enumerate_points(F2, 2)[5])


# --- scans -----------------------------------------------------------------------

@pytest.mark.parametrize("m", [0, 1, 2, 3])
@pytest.mark.parametrize("q", [2, 3])
def test_cm_beta_surjective(m, q):
    assert scan_beta(cm_data(m, GF(q)), 2).result == "surjective_everywhere"


def test_beta_fails_without_framing_map():
    X = BlowupRep.build(F2, 1, 0, 1)
    rep = scan_beta(X)
    assert rep.result == "fails_at"
    assert rep.to_json()["point"] == {"p2": ["1", "0", "0"], "p1": ["1", "0"]}
    assert rep.points[0].on_exceptional


def test_o_minus_c_scans():
    X = o_minus_c()
    assert scan_beta(X, 3).result == "surjective_everywhere"
    assert scan_alpha(X, 3).result == "injective_everywhere"


@pytest.mark.parametrize("m", [1, 2])
def test_cm_alpha_fails_along_the_curve(m):
    rep = scan_alpha(cm_data(m, F2), 2)
    assert rep.result == "curve_failure"
    assert all(p.on_exceptional for p in rep.points)


def test_example_111_alpha():
    # alpha drops rank on every point of the curve here, not at finitely many points
    rep = scan_alpha(example_111(), 2)
    assert rep.result == "curve_failure"
    assert all(p.on_exceptional for p in rep.points)


def test_finite_alpha_failures_exist():
    X = BlowupRep.build(F3, 1, 1, 1, B1=[[1]], d=[[1]], i=[[1]])
    assert is_flat(X)
    rep = scan_alpha(X, 1)
    assert rep.result == "finite_failures"
    assert 0 < len(rep.points) < len(enumerate_points(F3))


def test_scan_json_shape():
    rep = scan_beta(o_minus_c(), 1).to_json()
    assert rep == {"result": "surjective_everywhere", "max_ext_degree": 1}
    assert set(scan_alpha(cm_data(1, F2), 1).to_json()) == {"result", "max_ext_degree", "points"}


def test_scan_needs_finite_field():
    with pytest.raises(UnsupportedField):
        scan_beta(example_111(QQ))


@pytest.mark.slow
@pytest.mark.parametrize("dims", [(1, 1, 1), (2, 1, 1), (1, 2, 1), (2, 0, 1), (0, 2, 1), (1, 0, 1), (2, 2, 1)])
def test_s2_matches_beta_surjectivity(dims):
    for X in enumerate_reps(dims, F2, flat_only=True):
        assert check_condition(X, "S2").holds == (scan_beta(X).result == "surjective_everywhere")


# --- fibres ----------------------------------------------------------------------

@pytest.mark.parametrize("m", [0, 1, 2, 3])
@pytest.mark.parametrize("q", [2, 3])
def test_cm_fibres(m, q):
    fp = fiber_profile(cm_data(m, GF(q)), enumerate_points(GF(q)))
    for p, h in fp.entries:
        assert h == ((1, 1, 0) if p.on_exceptional else (0, 0, 0))


def test_line_bundle_fibres():
    fp = fiber_profile(o_minus_c(F3), enumerate_points(F3, 2))
    assert {h for _, h in fp.entries} == {(0, 1, 0)}


def test_zero_rep_fibres():
    fp = fiber_profile(BlowupRep.zero(F2, 0, 0), enumerate_points(F2))
    assert {h for _, h in fp.entries} == {(0, 0, 0)}


def test_euler_characteristic_is_constant(rng):
    pts = enumerate_points(F3) + enumerate_points(F3, 2)[:30]
    for dims in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (1, 2, 2), (2, 3, 0)]:
        X = _random_flat(F3, dims, rng)
        assert fiber_profile(X, pts).euler() == {-dims[2]}


# --- framing ---------------------------------------------------------------------

def test_framing_example_111():
    X = example_111()
    assert framing_check(X, 2)
    for p in enumerate_points(F2):
        if p.at_infinity:
            assert alpha_beta_at(X, p).profile() == (0, 1, 0)


def test_framing_cm_is_vacuous():
    assert framing_check(cm_data(2, F2))


def test_framing_fails_without_s2():
    X = BlowupRep.build(F2, 1, 0, 1)
    assert framing_check(X) is False
    with pytest.raises(NotS2):
        framing_check(X, strict=True)


@pytest.mark.parametrize("dims", [(1, 1, 1), (2, 1, 1), (1, 2, 1)])
def test_framing_holds_under_s2(dims):
    seen = 0
    for X in enumerate_reps(dims, F2, flat_only=True):
        if check_condition(X, "S2").holds:
            seen += 1
            assert framing_check(X, 2)
    assert seen > 0


# --- Hom against C_n -------------------------------------------------------------

def test_perverse_example_111():
    table = perverse_hom_profile(example_111(), 3)
    assert [a for _, a, _ in table] == [0, 0, 0, 0]
    assert table[0][2] == 1
    assert perverse_test(table, 0)
    assert not perverse_test(table, 1)


def test_perverse_c1_fails_everywhere():
    table = perverse_hom_profile(cm_data(1, F2), 3)
    assert not any(perverse_test(table, m) for m in range(5))


def test_perverse_zero_framing():
    table = perverse_hom_profile(BlowupRep.zero(F2, 0, 0, 1), 2)
    assert all(a == 0 and b == 0 for _, a, b in table)
