import random
from fractions import Fraction

import pytest

from adhm.errors import (DimensionMismatch, InvalidChernData, InvalidPoint, NotS0Stable,
                         PreconditionViolated)
from adhm.exactla import GF, QQ, Mat
from adhm.quiverrep import BlowupRep, are_isomorphic, cm_data, enumerate_reps
from adhm.stability import (ChernData, KroneckerBlock, StabilityParam, assemble, blowup_point_maps,
                            blowup_points, block_multiset, candidate_walls, chamber_rep, check_condition,
                            classify_W0, count_stable_w0, kronecker_decompose, point_to_triple,
                            s0_stable_classes, triple_to_point, wall_parameter, wall_signs, wall_witness,
                            zeta_semistable)

from conftest import random_invertible

Z = StabilityParam.parse
F2, F3 = GF(2), GF(3)


# --- Kronecker pencils -----------------------------------------------------------

def _kinds(blocks, field):
    return [b.to_json(field) for b in block_multiset(blocks, field)]


@pytest.mark.parametrize("m", range(5))
def test_cm_is_one_b_block(m):
    C = cm_data(m, QQ)
    blocks, P, Q = kronecker_decompose(C.B1, C.B2)
    assert _kinds(blocks, QQ) == [{"kind": "b", "m": m}]


def test_scalar_pencil_is_c_block():
    blocks, _, _ = kronecker_decompose(Mat(QQ, [[1]]), Mat(QQ, [[0]]))
    assert _kinds(blocks, QQ) == [{"kind": "c", "m": 1}]


def test_empty_rows_give_b0_blocks():
    blocks, _, _ = kronecker_decompose(Mat.zeros(QQ, 0, 2), Mat.zeros(QQ, 0, 2))
    assert _kinds(blocks, QQ) == [{"kind": "b", "m": 0}] * 2


def test_pencil_shape_errors():
    with pytest.raises(DimensionMismatch):
        kronecker_decompose(Mat.zeros(QQ, 1, 2), Mat.zeros(QQ, 2, 1))


def _random_blocks(rng, field, budget=7):
    blocks = []
    size = 0
    eigen_pool = [field.from_int(k) for k in (-2, 0, 1, 3)]
    while size < budget and (not blocks or rng.random() < 0.8):
        kind = rng.choice("abcd")
        m = rng.randint(0 if kind in "ab" else 1, 3)
        if kind == "d":
            blocks.append(KroneckerBlock("d", m, rng.choice(eigen_pool)))
        else:
            blocks.append(KroneckerBlock(kind, m))
        size += m + 1
    return blocks


def _scramble(field, blocks, rng):
    A1, A2 = assemble(field, blocks)
    P = random_invertible(field, A1.nrows, rng)
    Q = random_invertible(field, A1.ncols, rng)
    return P @ A1 @ Q, P @ A2 @ Q


def test_random_pencils_recover_their_blocks():
    rng = random.Random(7)
    for _ in range(100):
        blocks = _random_blocks(rng, QQ)
        B1, B2 = _scramble(QQ, blocks, rng)
        got, P, Q = kronecker_decompose(B1, B2)
        assert P.is_invertible() and Q.is_invertible()
        A1, A2 = assemble(QQ, got)
        assert P @ B1 @ Q == A1 and P @ B2 @ Q == A2
        assert _kinds(got, QQ) == _kinds(blocks, QQ)


@pytest.mark.parametrize("field", [GF(3), GF(5), GF(2, 2)], ids=repr)
def test_random_pencils_over_finite_fields(field):
    rng = random.Random(11)
    for _ in range(30):
        blocks = [b if b.kind != "d" else KroneckerBlock("d", b.m, rng.randrange(field.order))
                  for b in _random_blocks(rng, field, budget=5)]
        B1, B2 = _scramble(field, blocks, rng)
        got, P, Q = kronecker_decompose(B1, B2)
        assert _kinds(got, field) == _kinds(blocks, field)


def test_irreducible_regular_part_uses_companion():
    # x^2 + 1 has no root in F_3
    A = Mat(F3, [[0, 2], [1, 0]])
    blocks, P, Q = kronecker_decompose(A, Mat.identity(F3, 2))
    assert [b.kind for b in blocks] == ["dgen"]
    assert blocks[0].poly == (1, 0, 1)


def test_block_multiset_is_an_invariant():
    rng = random.Random(3)
    for _ in range(20):
        blocks = _random_blocks(rng, QQ, budget=5)
        B1, B2 = _scramble(QQ, blocks, rng)
        C1, C2 = _scramble(QQ, blocks, rng)
        assert _kinds(kronecker_decompose(B1, B2)[0], QQ) == _kinds(kronecker_decompose(C1, C2)[0], QQ)


# --- W = 0 classification --------------------------------------------------------

def test_classify_examples():
    assert classify_W0((1, 2), Z("-2,1")).to_json() == {"kind": "UniqueCm", "m": 1}
    assert classify_W0((1, 1), Z("-1,1")).kind == "PlaneOrBlowup"
    assert classify_W0((2, 2), Z("-1,1")).kind == "Empty"
    assert classify_W0((0, 1), Z("1,0")).kind == "SinglePoint"
    assert classify_W0((2, 3), Z("-3,2")).to_json() == {"kind": "UniqueCm", "m": 2}
    assert classify_W0((1, 3), Z("-3,1")).kind == "Empty"
    with pytest.raises(PreconditionViolated):
        classify_W0((1, 2), Z("-1,1"))


@pytest.mark.parametrize("dims,zeta", [
    ((0, 1), "-1,0"), ((1, 2), "-2,1"), ((1, 3), "-3,1"), ((0, 2), "-1,0"),
    ((1, 1), "-1,1"), ((1, 0), "0,-1"), ((1, 0), "0,1"), ((0, 1), "1,0"), ((1, 1), "1,-1"),
    ((2, 1), "1,-2"), ((1, 1), "0,0"), ((2, 1), "-1,2"),
])
@pytest.mark.parametrize("q", [2, 3])
def test_classification_matches_enumeration(dims, zeta, q):
    z = Z(zeta)
    expected = classify_W0(dims, z)
    stable, classes, reps = count_stable_w0(dims, z, GF(q))
    assert classes == expected.expected_classes(q)
    if expected.kind == "UniqueCm":
        assert are_isomorphic(reps[0], cm_data(expected.m, GF(q)))


@pytest.mark.parametrize("q", [2, pytest.param(3, marks=pytest.mark.slow)])
def test_boundary_dims_22_over_finite_fields(q):
    """Off the region F_q carries stable (2, 2) classes that the closed-field
    answer (Empty) does not; each stops being stable over F_(q^2)."""
    z = Z("-1,1")
    assert classify_W0((2, 2), z).kind == "Empty"
    _, classes, reps = count_stable_w0((2, 2), z, GF(q))
    assert classes > 0
    big = GF(q, 2)
    for X in reps:
        assert zeta_semistable(X.map_field(big), z).status != "Stable"


@pytest.mark.parametrize("dims", [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
def test_stable_w0_tuples_have_zero_d(dims):
    n0, n1 = dims
    z = StabilityParam(-n1, n0) if n0 else StabilityParam(-1, 0)
    assert z.in_region() and z.pairing(n0, n1) == 0
    if dims == (2, 3):
        from adhm import kernels
        for sl in kernels.w0_sweep(2, 3, z.zeta0, z.zeta1)["slices"].values():
            assert all(not any(d) for _, _, d in sl["stable"])
        return
    for X in enumerate_reps((n0, n1, 0), F2, flat_only=True):
        if zeta_semistable(X, z).status == "Stable":
            assert X.d.is_zero()


def test_expected_class_counts():
    assert classify_W0((1, 1), Z("-1,1")).expected_classes(3) == 12
    assert classify_W0((1, 1), Z("0,0")).expected_classes(2) == 3


# --- the blown-up plane ----------------------------------------------------------

def test_triple_to_point_examples():
    assert triple_to_point(GF(5), 1, 0, 3) == ((3, 0), (1, 0))
    assert triple_to_point(GF(5), 0, 1, 0) == ((0, 0), (0, 1))
    with pytest.raises(NotS0Stable):
        triple_to_point(GF(5), 0, 0, 1)


def test_point_to_triple():
    assert point_to_triple(F3, (2, 0), (1, 0)) == (1, 0, 2)
    assert point_to_triple(F3, (0, 1), (0, 1)) == (0, 1, 1)
    with pytest.raises(InvalidPoint):
        point_to_triple(F3, (1, 0), (0, 1))
    with pytest.raises(InvalidPoint):
        point_to_triple(F3, (0, 0), (0, 0))


def test_blowup_point_maps_dispatch():
    X = BlowupRep.build(F3, 1, 1, 0, [[1]], [[2]], [[1]])
    assert blowup_point_maps(F3, X) == ((1, 2), (1, 2))
    assert blowup_point_maps(F3, (1, 2, 1)) == ((1, 2), (1, 2))
    assert blowup_point_maps(F3, ((1, 2), (1, 2))) == (1, 2, 1)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_blowup_bijection(q):
    f = GF(q)
    classes = s0_stable_classes(f)
    points = blowup_points(f)
    assert len(classes) == len(points) == q * q + q
    for t in classes:
        p = triple_to_point(f, *t)
        assert point_to_triple(f, *p) == t
    assert sorted(triple_to_point(f, *t) for t in classes) == sorted(points)
    for p in points:
        assert triple_to_point(f, *point_to_triple(f, *p)) == p


def test_s0_stable_count_before_quotient():
    # (q^2 - 1) choices of [B1 : B2] lifts times q choices of d
    stable = sum(1 for X in enumerate_reps((1, 1, 0), F3) if check_condition(X, "S0").holds)
    assert stable == (9 - 1) * 3


# --- walls and chambers ----------------------------------------------------------

def test_chern_dims():
    assert ChernData(1, 0, 2).dims == (2, 2)
    assert ChernData(2, 0, 1).dims == (1, 1)
    assert ChernData.from_dims(1, 2, 1).dims == (1, 2)
    with pytest.raises(InvalidChernData):
        ChernData(2, 1, 0)
    with pytest.raises(InvalidChernData):
        ChernData(0, 0, 1)


def test_candidate_walls_examples():
    assert candidate_walls(ChernData(1, 0, 2)) == [0, 1]
    assert candidate_walls(ChernData(1, 0, 4)) == [0, 1, 2, 3]
    assert candidate_walls(ChernData(2, 0, 1)) == [0]


def test_chamber_examples():
    walls = [0, 1, 2, 3]
    assert chamber_rep(0, walls) == StabilityParam(-1, Fraction(-1, 2))
    assert all(s < 0 for s in wall_signs(chamber_rep(0, walls), walls).values())
    assert chamber_rep(1, walls) == StabilityParam(-1, Fraction(1, 4))
    assert wall_signs(chamber_rep(1, walls), walls) == {0: 1, 1: -1, 2: -1, 3: -1}
    assert chamber_rep(2, walls) == StabilityParam(-1, Fraction(7, 12))
    top = chamber_rep(4, walls)
    assert set(wall_signs(top, walls).values()) == {1} and top.zeta1 < 1
    with pytest.raises(PreconditionViolated):
        chamber_rep(6, walls)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_every_chamber_is_certified(n):
    walls = candidate_walls(ChernData(1, 0, n))
    for m in walls + [walls[-1] + 1]:
        zeta = chamber_rep(m, walls)
        assert zeta.in_region()
        assert wall_signs(zeta, walls) == {w: (1 if w < m else -1) for w in walls}


def test_wall_parameters_sit_on_walls():
    for m in range(5):
        assert wall_parameter(m).wall_form(m) == 0 and wall_parameter(m).in_region()


def test_wall_witness_small():
    c = ChernData.from_dims(1, 1, 1)
    found = wall_witness(c, 0)
    assert found is not None
    X, v = found
    assert v.status == "StrictlySemistable"
