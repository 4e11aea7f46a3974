"""Tensor layer tests: flattenings, concision, pairing, group action."""

import itertools
import random
from fractions import Fraction

import pytest

from tensorloci.errors import (
    AxisOutOfRange,
    ShapeMismatch,
    SingularMatrix,
    ZeroTensor,
)
from tensorloci.exactnum import UniPoly
from tensorloci.linalg import Mat, mat_det, mat_rank
from tensorloci.orbits import CONCISE_SHAPES, normal_form
from tensorloci.tensorcore import (
    ConciseReduction,
    ParametricTensor,
    RankOneTensor,
    Tensor,
    apply_gl,
    apply_gl_rank_one,
    concise_reduce,
    dual_pairing,
    flattening,
    subtract_scaled,
)


def rand_invertible(rng, n):
    while True:
        M = Mat([[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)])
        if mat_det(M):
            return M


def rand_rank_one(rng, shape, span=3):
    while True:
        try:
            return RankOneTensor(
                [[Fraction(rng.randint(-span, span)) for _ in range(d)] for d in shape]
            )
        except ZeroTensor:
            continue


def test_flattening_of_t5():
    t5 = normal_form(5)
    M = flattening(t5, 1)
    assert M.entries == [
        [1, 0, 0, 1],
        [0, 1, 0, 0],
    ]
    with pytest.raises(AxisOutOfRange):
        flattening(t5, 4)
    with pytest.raises(AxisOutOfRange):
        flattening(t5, 0)


def test_t9_family_determinant_is_the_pairing():
    """det of the long-axis flattening of T9 - λ(a⊗b⊗c) is linear in λ."""
    rng = random.Random(23)
    t9 = normal_form(9)
    for _ in range(20):
        a = [Fraction(rng.randint(-4, 4)) for _ in range(2)]
        b = [Fraction(rng.randint(-4, 4)) for _ in range(2)]
        c = [Fraction(rng.randint(-4, 4)) for _ in range(4)]
        if not any(a) or not any(b) or not any(c):
            continue
        P = RankOneTensor([a, b, c])
        fam = ParametricTensor(t9, P)
        pm = fam.polynomial_member()
        det = mat_det(flattening(pm, 3))
        pairing = (
            a[0] * b[0] * c[0]
            + a[1] * b[0] * c[1]
            + a[0] * b[1] * c[2]
            + a[1] * b[1] * c[3]
        )
        # normalize the sign so the constant term is -1
        if det.constant_term() == 1:
            det = -det
        assert det == UniPoly([-1, pairing])


def test_concise_reduce_examples():
    r2 = concise_reduce(normal_form(2))
    assert r2.concise_shape == (2, 2, 1)
    r10 = concise_reduce(normal_form(10))
    assert r10.concise_shape == (1, 3, 3)
    r4 = concise_reduce(normal_form(4))
    assert r4.concise_shape == (2, 1, 2)
    with pytest.raises(ZeroTensor):
        concise_reduce(Tensor.zeros((2, 2, 2)))


def test_concise_shapes_of_all_normal_forms():
    for n in range(1, 27):
        red = concise_reduce(normal_form(n))
        assert red.concise_shape == CONCISE_SHAPES[n], "row %d" % n


def test_concise_expand_roundtrip():
    rng = random.Random(24)
    for n in range(1, 27):
        T = normal_form(n)
        red = concise_reduce(T)
        assert red.expand() == T
    for _ in range(30):
        shape = tuple(rng.randint(1, 3) for _ in range(rng.randint(2, 4)))
        T = Tensor(
            shape,
            [Fraction(rng.randint(-2, 2)) for _ in range(len(Tensor.zeros(shape).entries))],
        )
        if T.is_zero():
            continue
        red = concise_reduce(T)
        assert red.expand() == T
        for a0 in range(T.order):
            M = flattening(red.tensor, a0 + 1)
            assert mat_rank(M) == red.concise_shape[a0]


def test_dual_pairing_against_naive_loop():
    rng = random.Random(25)
    for _ in range(50):
        shape = tuple(rng.randint(1, 3) for _ in range(3))
        tstar = Tensor(
            shape, [Fraction(rng.randint(-3, 3)) for _ in Tensor.zeros(shape).entries]
        )
        P = rand_rank_one(rng, shape)
        expected = Fraction(0)
        for idx in itertools.product(*[range(d) for d in shape]):
            val = tstar[idx]
            for a, i in enumerate(idx):
                val *= P.factors[a][i]
            expected += val
        assert dual_pairing(tstar, P) == expected
    with pytest.raises(ShapeMismatch):
        dual_pairing(Tensor.zeros((2, 2)), RankOneTensor([[1, 0], [1, 0], [1]]))


def test_pairing_adjoint_to_group_action():
    """⟨(A,B,C)ᵀ·T*, P⟩ = ⟨T*, (A,B,C)·P⟩ for random data."""
    rng = random.Random(26)
    for _ in range(30):
        shape = (2, rng.randint(2, 3), rng.randint(2, 3))
        tstar = Tensor(
            shape, [Fraction(rng.randint(-3, 3)) for _ in Tensor.zeros(shape).entries]
        )
        P = rand_rank_one(rng, shape)
        mats = [rand_invertible(rng, d) for d in shape]
        lhs = dual_pairing(apply_gl(tstar, [M.transpose() for M in mats]), P)
        rhs = dual_pairing(tstar, apply_gl_rank_one(P, mats))
        assert lhs == rhs


def test_flattening_ranks_gl_invariant():
    rng = random.Random(27)
    for n in (5, 9, 13, 17, 21, 26):
        T = normal_form(n)
        base_ranks = [mat_rank(flattening(T, a + 1)) for a in range(3)]
        for _ in range(10):
            mats = [rand_invertible(rng, d) for d in T.shape]
            moved = apply_gl(T, mats)
            assert [
                mat_rank(flattening(moved, a + 1)) for a in range(3)
            ] == base_ranks


def test_apply_gl_rejects_singular():
    T = normal_form(5)
    mats = [Mat([[1, 1], [1, 1]]), Mat([[1, 0], [0, 1]]), Mat([[1, 0], [0, 1]])]
    with pytest.raises(SingularMatrix):
        apply_gl(T, mats)


def test_subtract_scaled():
    T = normal_form(6)
    P = RankOneTensor([[1, 0], [1, 0], [1, 0]])
    S = subtract_scaled(T, Fraction(1), P)
    assert S[(0, 0, 0)] == 0
    with pytest.raises(ShapeMismatch):
        subtract_scaled(T, Fraction(1), RankOneTensor([[1], [1, 0], [1, 0]]))


def test_rank_one_rejects_zero_factor():
    with pytest.raises(ZeroTensor):
        RankOneTensor([[0, 0], [1, 0], [1, 0]])


def test_transpose_axes_roundtrip():
    rng = random.Random(28)
    T = Tensor((2, 3, 4), [Fraction(rng.randint(-5, 5)) for _ in range(24)])
    perm = [2, 0, 1]
    U = T.transpose_axes(perm)
    assert U.shape == (4, 2, 3)
    inv = [perm.index(i) for i in range(3)]
    assert U.transpose_axes(inv) == T


def test_parametric_specializations_agree():
    T = normal_form(9)
    P = RankOneTensor([[1, 2], [3, 1], [1, 0, 2, 1]])
    fam = ParametricTensor(T, P)
    lam0 = Fraction(5, 3)
    direct = fam.specialize(lam0)
    via_poly = fam.polynomial_member()
    assert all(
        p(lam0) == x for p, x in zip(via_poly.entries, direct.entries)
    )
    gen = fam.generic_member()
    assert all(
        g.evaluate(lam0) == x for g, x in zip(gen.entries, direct.entries)
    )
