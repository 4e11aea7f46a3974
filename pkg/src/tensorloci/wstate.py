"""Tensors tangent to the rank ones: recognition and explicit decompositions.

A curve of rank-one tensors through q = q1 x ... x qk has, at q, derivatives
of the shape s*q + sum_i q1 x ... x t_i x ... x qk. When the t_i add a new
direction on at least three axes, the resulting tensor has border rank two
but rank equal to the number of such axes, and it determines q uniquely.
``find_tangency`` recovers q from the tensor alone. ``decompose_tangential``
writes the tensor as a sum of exactly rank many rank-one terms, one of which
is proportional to a prescribed rank-one direction; every direction inside
the per-axis spans works except the point q itself. ``verify_decomposition``
checks any claimed weighted rank-one decomposition exactly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .binforms import (
    BinaryForm,
    bform_gcd,
    bform_is_pure_power,
    bform_root_profile,
    linear_form_root,
)
from .errors import (
    InternalError,
    NotInLocus,
    NotTangential,
    ShapeMismatch,
    TangencyPointRequested,
    ZeroTensor,
)
from .linalg import Mat, mat_inverse, mat_solve, mat_vec
from .tensorcore import (
    RankOneTensor,
    Tensor,
    apply_gl,
    concise_reduce,
    factors_in_spans,
    flattening,
    rank_one_factors,
)


class TangencyPoint:
    """The rank-one point a tangent tensor is attached to.

    Factors are unit-normalized (first nonzero coordinate one), so two
    projectively equal points compare equal.
    """

    __slots__ = ("factors",)

    def __init__(self, factors):
        norm = []
        for f in factors:
            f = list(f)
            lead = None
            for x in f:
                if x:
                    lead = x
                    break
            if lead is None:
                raise ZeroTensor("zero factor vector in a tangency point")
            norm.append([x / lead for x in f])
        self.factors = norm

    @property
    def shape(self):
        return tuple(len(f) for f in self.factors)

    def tensor(self):
        return RankOneTensor([list(f) for f in self.factors])

    def __eq__(self, other):
        if not isinstance(other, TangencyPoint):
            return NotImplemented
        return self.factors == other.factors

    def __repr__(self):
        return "TangencyPoint(%r)" % (self.factors,)


class Decomposition:
    """A weighted sum of rank-one tensors, kept term by term."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape, terms):
        self.shape = tuple(shape)
        terms = list(terms)
        for _, t in terms:
            if t.shape != self.shape:
                raise ShapeMismatch(
                    "term shape %r does not match %r" % (t.shape, self.shape)
                )
        self.terms = terms

    def expand(self):
        total = Tensor.zeros(self.shape)
        for c, t in self.terms:
            total = total.add(t.expand().scale(c))
        return total

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return "Decomposition(%d terms, shape=%r)" % (len(self.terms), self.shape)


def verify_decomposition(T, dec):
    """True when the terms are honest rank-one summands adding up to T.

    Every coefficient must be nonzero and the weighted sum must reproduce T
    exactly; the zero tensor together with the empty decomposition passes.
    """
    if tuple(T.shape) != dec.shape:
        return False
    for c, _ in dec.terms:
        if not c:
            return False
    return dec.expand() == T


def _e(i):
    return [Fraction(int(i == 0)), Fraction(int(i == 1))]


def _free_root(i):
    v = Fraction(i // 2 + 1)
    return v if i % 2 == 0 else -v


def _tangent_core(k):
    """Sum of the k coordinate tensors with a single raised axis."""
    t = Tensor.zeros((2,) * k)
    for j in range(k):
        t.entries[1 << (k - 1 - j)] = Fraction(1)
    return t


def _pencil_minor(tl, tr, bl, br):
    """The 2x2 minor of a matrix of linear forms, as a quadratic form.

    Each argument is a coefficient pair (x, y) standing for x*u + y*v.
    Returns None when the minor vanishes identically.
    """
    c0 = tl[0] * br[0] - tr[0] * bl[0]
    c1 = tl[0] * br[1] + tl[1] * br[0] - tr[0] * bl[1] - tr[1] * bl[0]
    c2 = tl[1] * br[1] - tr[1] * bl[1]
    if not (c0 or c1 or c2):
        return None
    return BinaryForm([c0, c1, c2], 2)


def _axis_point(W, axis0):
    """Factors of the unique decomposable contraction along one axis.

    W is a concise tensor with every axis two dimensional. Contracting the
    chosen axis with a covector gives a pencil of tensors one order down;
    for a tangent tensor exactly one member, counted with multiplicity, has
    all flattening minors zero, and that member is the product of the
    tangency factors on the remaining axes.
    """
    k = W.order
    perm = [axis0] + [a for a in range(k) if a != axis0]
    moved = W.transpose_axes(perm)
    half = len(moved.entries) // 2
    xs = moved.entries[:half]
    ys = moved.entries[half:]
    rest = (2,) * (k - 1)
    X = Tensor(rest, xs)
    Y = Tensor(rest, ys)
    quads = []
    for b in range(1, k):
        FX = flattening(X, b)
        FY = flattening(Y, b)
        for c1 in range(FX.cols):
            for c2 in range(c1 + 1, FX.cols):
                q = _pencil_minor(
                    (FX.entries[0][c1], FY.entries[0][c1]),
                    (FX.entries[0][c2], FY.entries[0][c2]),
                    (FX.entries[1][c1], FY.entries[1][c1]),
                    (FX.entries[1][c2], FY.entries[1][c2]),
                )
                if q is not None:
                    quads.append(q)
    if not quads:
        raise NotTangential(
            "every contraction along axis %d factors" % (axis0 + 1,)
        )
    g = bform_gcd(quads)
    if g.degree == 1:
        ell = g
    elif g.degree == 2:
        ok, ell = bform_is_pure_power(g, 2)
        if not ok:
            raise NotTangential(
                "axis %d has two independent factoring contractions" % (axis0 + 1,)
            )
    else:
        raise NotTangential(
            "axis %d has no factoring contraction" % (axis0 + 1,)
        )
    u0, v0 = linear_form_root(ell)
    Z = Tensor(rest, [u0 * x + v0 * y for x, y in zip(xs, ys)])
    got = rank_one_factors(Z)
    if got is None:
        raise InternalError("a contraction with vanishing minors failed to factor")
    return got[1]


class _NormalForm:
    """Concise data plus per-axis bases that shape a tangent tensor into the
    model: zero coefficient on the pure point, one on every raised axis."""

    __slots__ = ("reduction", "active", "slot", "gs", "qhat")

    def __init__(self, reduction, active, slot, gs, qhat):
        self.reduction = reduction
        self.active = active
        self.slot = slot
        self.gs = gs
        self.qhat = qhat


def _tangency_data(T):
    try:
        red = concise_reduce(T)
    except ZeroTensor:
        raise NotTangential("the zero tensor is not tangent to the rank ones")
    dims = red.concise_shape
    if any(d > 2 for d in dims):
        raise NotTangential("some axis uses more than two independent slices")
    active = [a for a, d in enumerate(dims) if d == 2]
    if len(active) < 3:
        raise NotTangential("fewer than three axes carry a tangent direction")
    k = len(active)
    W = Tensor((2,) * k, list(red.tensor.entries))
    behind = _axis_point(W, 0)
    front = _axis_point(W, 1)
    qhat = [front[0]] + behind
    gs0 = []
    for q in qhat:
        u = _e(0) if q[1] else _e(1)
        gs0.append(Mat([[q[0], u[0]], [q[1], u[1]]]))
    model0 = apply_gl(W, [mat_inverse(g) for g in gs0])
    point_coeff = None
    sing = [None] * k
    for flat, idx in enumerate(itertools.product((0, 1), repeat=k)):
        val = model0.entries[flat]
        weight = sum(idx)
        if weight == 0:
            point_coeff = val
        elif weight == 1:
            if not val:
                raise NotTangential(
                    "axis %d carries no tangent direction" % (active[idx.index(1)] + 1,)
                )
            sing[idx.index(1)] = val
        elif val:
            raise NotTangential("the tensor is not a tangent vector")
    gs = []
    for j, (q, g0) in enumerate(zip(qhat, gs0)):
        w = [sing[j] * g0.entries[0][1], sing[j] * g0.entries[1][1]]
        if j == 0:
            # fold the pure point component into the first tangent vector
            w = [w[0] + point_coeff * q[0], w[1] + point_coeff * q[1]]
        gs.append(Mat([[q[0], w[0]], [q[1], w[1]]]))
    if apply_gl(W, [mat_inverse(g) for g in gs]) != _tangent_core(k):
        raise InternalError("normalization did not reach the model tensor")
    slot = [None] * len(dims)
    for j, a in enumerate(active):
        slot[a] = j
    return _NormalForm(red, active, slot, gs, qhat)


def find_tangency(T):
    """Recover the point of tangency of a tangent tensor.

    Raises NotTangential when T is not a tangent vector with at least three
    active axes.
    """
    nf = _tangency_data(T)
    factors = []
    for a in range(T.order):
        B = nf.reduction.bases[a]
        j = nf.slot[a]
        if j is None:
            factors.append(B.col(0))
        else:
            factors.append(mat_vec(B, nf.qhat[j]))
    return TangencyPoint(factors)


def _solve_terms(points, target):
    cols = [RankOneTensor(f).expand().entries for f in points]
    A = Mat([[c[t] for c in cols] for t in range(len(target.entries))])
    sol = mat_solve(A, list(target.entries))
    if sol is None or any(not c for c in sol):
        raise InternalError("the decomposition system is inconsistent")
    return sol


def _alldiff_terms(ps):
    """Terms for the model tensor when no axis of the direction coincides.

    ps lists the first coordinate of the direction on each axis, the second
    being one. The terms are the direction itself plus curve points at
    finite parameters whose sum is forced; the direction term comes first.
    """
    k = len(ps)
    want = -sum(ps)
    roots = None
    for start in range(60):
        free = [_free_root(start + i) for i in range(k - 2)]
        last = want - sum(free)
        cand = free + [last]
        if last and len(set(cand)) == k - 1:
            roots = cand
            break
    if roots is None:
        raise InternalError("no admissible parameter pattern was found")
    points = [[[p, Fraction(1)] for p in ps]]
    for r in roots:
        points.append([[r + p, Fraction(1)] for p in ps])
    coeffs = _solve_terms(points, _tangent_core(k))
    return list(zip(coeffs, points))


def _matrix_rank_one(M):
    pr = pc = None
    for i in (0, 1):
        for j in (0, 1):
            if M[i][j]:
                pr, pc = i, j
                break
        if pr is not None:
            break
    if pr is None:
        return None
    x = [M[0][pc], M[1][pc]]
    y = [M[pr][0] / M[pr][pc], M[pr][1] / M[pr][pc]]
    for i in (0, 1):
        for j in (0, 1):
            if M[i][j] != x[i] * y[j]:
                return None
    return x, y


def _rank2_split(S):
    """Two rank-one terms summing to a 2x2x2 tensor of rank two.

    Slices along the first axis; the determinant of the slice pencil must
    have two distinct rational roots. Returns [(coeff, factors), ...] or
    None when that fails.
    """
    A = [[S[(0, i, j)] for j in (0, 1)] for i in (0, 1)]
    B = [[S[(1, i, j)] for j in (0, 1)] for i in (0, 1)]
    c0 = A[0][0] * A[1][1] - A[0][1] * A[1][0]
    c2 = B[0][0] * B[1][1] - B[0][1] * B[1][0]
    c1 = (
        A[0][0] * B[1][1]
        + B[0][0] * A[1][1]
        - A[0][1] * B[1][0]
        - B[0][1] * A[1][0]
    )
    form = BinaryForm([c0, c1, c2], 2)
    if form.is_zero():
        return None
    profile = bform_root_profile(form)
    if len(profile) != 2 or any(m != 1 or f.degree != 1 for f, m in profile):
        return None
    roots = [linear_form_root(f) for f, _ in profile]
    factors = []
    for kill, own in ((roots[0], roots[1]), (roots[1], roots[0])):
        u0, v0 = kill
        M = [[u0 * A[i][j] + v0 * B[i][j] for j in (0, 1)] for i in (0, 1)]
        got = _matrix_rank_one(M)
        if got is None:
            return None
        x, y = got
        factors.append([[own[1], -own[0]], x, y])
    cols = [RankOneTensor(f).expand().entries for f in factors]
    A8 = Mat([[c[t] for c in cols] for t in range(8)])
    sol = mat_solve(A8, list(S.entries))
    if sol is None or any(not c for c in sol):
        return None
    return list(zip(sol, factors))


def _tail_two_coincident(p):
    """Three terms for the order-three model when two axes coincide.

    Local axis order: the two coinciding axes first, then the free one with
    direction (p, 1).
    """
    return [
        (Fraction(1), [_e(0), _e(0), [p, Fraction(1)]]),
        (Fraction(1), [_e(1), _e(0), _e(0)]),
        (Fraction(1), [_e(0), [-p, Fraction(1)], _e(0)]),
    ]


def _tail_one_coincident(p1, p2):
    """Three terms for the order-three model when one axis coincides.

    Local axis order: the coinciding axis first. Subtracting the direction
    itself leaves a tensor of rank two whose slice pencil along the first
    axis always has distinct rational roots, so it splits exactly.
    """
    direction = [_e(0), [p1, Fraction(1)], [p2, Fraction(1)]]
    S = _tangent_core(3).sub(RankOneTensor(direction).expand())
    split = _rank2_split(S)
    if split is None:
        raise InternalError("the rank-two remainder did not split rationally")
    return [(Fraction(1), direction)] + [(c, f) for c, f in split]


def decompose_tangential(T, P):
    """Write a tangent tensor as rank many rank-one terms, one of them along P.

    P must be a rank-one tensor of the same shape whose factors stay inside
    the per-axis spans of T and which is not the tangency point itself. The
    direction term always comes first.
    """
    if T.shape != P.shape:
        raise ShapeMismatch(
            "tensor and direction shapes differ: %r vs %r" % (T.shape, P.shape)
        )
    nf = _tangency_data(T)
    k = len(nf.active)
    coords = factors_in_spans(P, nf.reduction)
    if coords is None:
        raise NotInLocus("the direction leaves the span of the tensor")
    ginv = [mat_inverse(g) for g in nf.gs]
    phat = [mat_vec(ginv[j], coords[a]) for j, a in enumerate(nf.active)]
    coincident = [j for j in range(k) if not phat[j][1]]
    different = [j for j in range(k) if phat[j][1]]
    if not different:
        raise TangencyPointRequested("the direction is the tangency point itself")
    shift = {j: phat[j][0] / phat[j][1] for j in different}
    m = len(coincident)
    if m == 0:
        core_terms = _alldiff_terms([shift[j] for j in range(k)])
    else:
        if k - m >= 3:
            peeled = coincident
            tail_axes = different
            local = _alldiff_terms([shift[j] for j in different])
        else:
            peeled = coincident[: k - 3]
            tail_axes = coincident[k - 3 :] + different
            if len(different) == 1:
                local = _tail_two_coincident(shift[different[0]])
            else:
                local = _tail_one_coincident(
                    shift[different[0]], shift[different[1]]
                )
        spread = []
        for coeff, facs in local:
            full = [None] * k
            for j in peeled:
                full[j] = _e(0)
            for pos, j in enumerate(tail_axes):
                full[j] = facs[pos]
            spread.append((coeff, full))
        sing = []
        for j in peeled:
            full = [_e(0) for _ in range(k)]
            full[j] = _e(1)
            sing.append((Fraction(1), full))
        core_terms = [spread[0]] + sing + spread[1:]
    out = []
    for coeff, facs in core_terms:
        scale = coeff
        ambient = []
        for a in range(T.order):
            B = nf.reduction.bases[a]
            j = nf.slot[a]
            if j is None:
                v = B.col(0)
            else:
                v = mat_vec(B, mat_vec(nf.gs[j], facs[j]))
            lead = next(x for x in v if x)
            ambient.append([x / lead for x in v])
            scale = scale * lead
        out.append((scale, RankOneTensor(ambient)))
    dec = Decomposition(T.shape, out)
    if dec.expand() != T:
        raise InternalError("the reconstructed decomposition does not sum back")
    return dec
