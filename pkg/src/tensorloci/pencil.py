"""Pencil-level invariants of 2 x b x c tensors.

A tensor with first dimension 2 is the pencil of matrices u*A + v*B, where A
and B are its two slices. Everything downstream of the shape-(2,3,n)
classification reads off this pencil: determinant forms, minor gcds, the two
hyperdeterminants, and jet profiles of the rank-deficient points on the line.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .binforms import (
    BinaryForm,
    bform_discriminant,
    bform_gcd,
    bform_is_pure_power,
    bform_root_profile,
)
from .errors import DegreeTooLarge, WrongShape
from .exactnum import AlgebraicElement, UniPoly, suppress_candidate_recording
from .linalg import Mat, mat_det, mat_inverse, mat_rank
from .tensorcore import ParametricTensor, Tensor


class WholeLine:
    """Distinguished jet_profile result: the whole pencil line is singular."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "WholeLine"


WHOLE_LINE = WholeLine()


class Pencil:
    __slots__ = ("rows", "cols", "a", "b")

    def __init__(self, a, b):
        if a.rows != b.rows or a.cols != b.cols:
            raise WrongShape("pencil slices must share a shape")
        self.rows = a.rows
        self.cols = a.cols
        self.a = a
        self.b = b

    def member(self, u0, v0):
        """The matrix u0*A + v0*B."""
        ents = [
            [
                u0 * self.a.entries[i][j] + v0 * self.b.entries[i][j]
                for j in range(self.cols)
            ]
            for i in range(self.rows)
        ]
        return Mat(ents)

    def __repr__(self):
        return "Pencil(%dx%d)" % (self.rows, self.cols)


def pencil_of(t):
    """The pencil of a tensor (or parametric tensor) of shape (2, b, c)."""
    if isinstance(t, ParametricTensor):
        t = t.generic_member()
    if not isinstance(t, Tensor) or t.order != 3 or t.shape[0] != 2:
        raise WrongShape("pencils come from tensors of shape (2, b, c)")
    _, b, c = t.shape
    a_rows = [[t[(0, i, j)] for j in range(c)] for i in range(b)]
    b_rows = [[t[(1, i, j)] for j in range(c)] for i in range(b)]
    return Pencil(Mat(a_rows), Mat(b_rows))


@lru_cache(maxsize=None)
def _vandermonde_inverse(npts):
    pts = _sample_points(npts)
    rows = [[Fraction(p) ** k for k in range(npts)] for p in pts]
    inv = mat_inverse(Mat(rows))
    return tuple(tuple(row) for row in inv.entries)


def _sample_points(npts):
    pts = [0]
    k = 1
    while len(pts) < npts:
        pts.append(k)
        if len(pts) < npts:
            pts.append(-k)
        k += 1
    return pts


def _minor_form(p, row_idx, col_idx):
    """det of the selected square subpencil as a BinaryForm of that size."""
    r = len(row_idx)
    pts = _sample_points(r + 1)
    inv = _vandermonde_inverse(r + 1)
    dets = []
    for t in pts:
        sub = [
            [
                Fraction(t) * p.a.entries[i][j] + p.b.entries[i][j]
                for j in col_idx
            ]
            for i in row_idx
        ]
        dets.append(mat_det(Mat(sub)))
    # w[k] = coefficient of t^k in det(tA + B); the form is v^r * p(u/v)
    coeffs = []
    for i in range(r + 1):
        k = r - i
        acc = None
        for j in range(r + 1):
            term = inv[k][j] * dets[j]
            acc = term if acc is None else acc + term
        coeffs.append(acc)
    return BinaryForm(coeffs, r)


def pencil_det_form(p):
    """Determinant of a square pencil as a binary form of degree = size."""
    if p.rows != p.cols:
        raise WrongShape("determinant form needs a square pencil")
    return _minor_form(p, tuple(range(p.rows)), tuple(range(p.cols)))


def pencil_minor_gcd(p, r):
    """gcd of all r x r minors of the pencil as a binary form.

    Returns the zero form of degree r when every minor vanishes identically,
    and the constant form 1 when the minors share no projective root.
    """
    if r < 1 or r > min(p.rows, p.cols):
        raise WrongShape("minor size %d out of range" % r)
    forms = []
    found = False
    # Which minors are identically zero is a polynomial identity, not a
    # branch on the parameter; a minor that only vanishes at special
    # parameter values is caught by the gcd bookkeeping below.
    with suppress_candidate_recording():
        for row_idx in itertools.combinations(range(p.rows), r):
            for col_idx in itertools.combinations(range(p.cols), r):
                f = _minor_form(p, row_idx, col_idx)
                if not f.is_zero():
                    found = True
                    forms.append(f)
    if not found:
        zero = p.a.entries[0][0] - p.a.entries[0][0]
        return BinaryForm([zero] * (r + 1), r)
    return bform_gcd(forms)


def hyperdet222(t):
    """Cayley hyperdeterminant of a 2x2x2 tensor.

    Computed as the discriminant b^2 - 4ac of the quadratic determinant form
    of the pencil, which is a closed-form degree-4 polynomial in the entries.
    """
    if not isinstance(t, Tensor) or t.shape != (2, 2, 2):
        raise WrongShape("hyperdet222 needs shape (2, 2, 2)")
    p = pencil_of(t)
    alpha = mat_det(p.a)
    gamma = mat_det(p.b)
    summed = Mat(
        [
            [p.a.entries[i][j] + p.b.entries[i][j] for j in range(2)]
            for i in range(2)
        ]
    )
    beta = mat_det(summed) - alpha - gamma
    return beta * beta - 4 * alpha * gamma


def hyperdet233(t):
    """Schlafli hyperdeterminant of a 2x3x3 tensor.

    The discriminant of the cubic determinant form of the pencil; it vanishes
    exactly when the pencil line meets the singular members non-generically.
    The sign flip relative to bform_discriminant makes the known symbolic
    evaluations at normal forms minus lambda times a rank-one point come out
    coefficient for coefficient.
    """
    if not isinstance(t, Tensor) or t.shape != (2, 3, 3):
        raise WrongShape("hyperdet233 needs shape (2, 3, 3)")
    return -bform_discriminant(pencil_det_form(pencil_of(t)))


def member_rank_at(p, factor):
    """Rank of the pencil member at the root of an irreducible factor.

    Linear factors are evaluated directly; a factor of higher degree is
    handled by adjoining one of its roots and working over that extension.
    """
    if factor.degree == 1:
        alpha, beta = factor.coeffs
        return mat_rank(p.member(-beta, alpha))
    for row in itertools.chain(p.a.entries, p.b.entries):
        for x in row:
            if not isinstance(x, (int, Fraction)):
                raise DegreeTooLarge(
                    "irrational roots need a pencil over the rationals"
                )
    univ = list(reversed([Fraction(c) for c in factor.coeffs]))
    lead = univ[-1]
    modulus = UniPoly([c / lead for c in univ], var="t")
    t0 = AlgebraicElement.generator(modulus)
    ents = [
        [
            t0 * Fraction(p.a.entries[i][j]) + Fraction(p.b.entries[i][j])
            for j in range(p.cols)
        ]
        for i in range(p.rows)
    ]
    return mat_rank(Mat(ents))


def jet_profile(p, r):
    """Factor the r-minor gcd and report the member rank at each root.

    Returns WHOLE_LINE when every r-minor vanishes identically; otherwise a
    list of (irreducible factor, multiplicity, member rank) triples. For a
    constant gcd the list is empty.
    """
    g = pencil_minor_gcd(p, r)
    if g.is_zero():
        return WHOLE_LINE
    if g.degree == 0:
        return []
    rational = _rational_coeffs(g)
    if rational is not None:
        out = []
        for factor, mult in bform_root_profile(BinaryForm(rational, g.degree)):
            out.append((factor, mult, member_rank_at(p, factor)))
        return out
    # coefficients live in an extension: only the factorization-free shapes
    if g.degree == 1:
        lead = next(c for c in g.coeffs if c)
        ell = BinaryForm([c / lead for c in g.coeffs], 1)
        return [(ell, 1, member_rank_at(p, ell))]
    ok, ell = bform_is_pure_power(g, g.degree)
    if ok:
        return [(ell, g.degree, member_rank_at(p, ell))]
    raise DegreeTooLarge(
        "cannot factor a degree-%d form over an extension" % g.degree
    )


def _rational_coeffs(form):
    out = []
    for c in form.coeffs:
        if isinstance(c, (int, Fraction)):
            out.append(Fraction(c))
        elif isinstance(c, AlgebraicElement) and c.rep.degree <= 0:
            out.append(c.rep.constant_term())
        else:
            return None
    return out
