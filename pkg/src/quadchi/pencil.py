"""Quadratic forms, the symbolic characteristic polynomial of a linear
matrix pencil, and sign-variation index counting.

A family of quadratic forms P_1..P_s in variables x_0..x_k is packaged as
symmetric matrices M_1..M_s.  The pencil M(Z) = Z_1 M_1 + ... + Z_s M_s has

    det(M(Z) + T I) = T^(k+1) + C_k T^k + ... + C_0,

with each C_i a polynomial in Z_1..Z_s, homogeneous of degree k+1-i.  For a
point z where all eigenvalues of M(z) are real (always, by symmetry), the
number of negative eigenvalues equals the number of sign variations of
(C_0(z), ..., C_k(z), +1) by Descartes' rule applied to det(M(z) + T I).
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .arith import EpsRational
from .errors import DimensionMismatch, LengthMismatch, NotHomogeneousQuadratic
from .poly import MultiPoly, Scalar, sign_variations

Matrix = Tuple[Tuple[Scalar, ...], ...]


class QuadraticForm:
    """Symmetric matrix of a homogeneous quadratic polynomial."""

    __slots__ = ("dim", "mat")

    def __init__(self, mat: Sequence[Sequence]):
        rows = tuple(tuple(_scalar(c) for c in row) for row in mat)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise DimensionMismatch("quadratic form matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise DimensionMismatch(f"matrix is not symmetric at ({i},{j})")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "mat", rows)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticForm is immutable")

    def polynomial(self, variables: Sequence[str]) -> MultiPoly:
        """The quadratic <Mx, x> as a polynomial over the given variables."""
        vs = tuple(variables)
        if len(vs) != self.dim:
            raise DimensionMismatch("variable list does not match the form dimension")
        terms = {}
        for i in range(self.dim):
            for j in range(i, self.dim):
                c = self.mat[i][j] if i == j else self.mat[i][j] + self.mat[j][i]
                if not c:
                    continue
                e = [0] * self.dim
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = c
        return MultiPoly(vs, terms)

    def apply(self, xs: Sequence) -> Scalar:
        """<Mx, x> at a concrete point."""
        if len(xs) != self.dim:
            raise DimensionMismatch("point arity does not match the form dimension")
        total: Scalar = Fraction(0)
        for i in range(self.dim):
            for j in range(self.dim):
                total = total + self.mat[i][j] * _scalar(xs[i]) * _scalar(xs[j])
        return total

    def negate(self) -> "QuadraticForm":
        return QuadraticForm(tuple(tuple(-c for c in row) for row in self.mat))

    def key(self) -> tuple:
        return self.mat

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadraticForm) and self.mat == other.mat

    def __hash__(self) -> int:
        return hash(self.mat)

    def __repr__(self) -> str:
        return f"QuadraticForm({[list(r) for r in self.mat]})"


def _scalar(c) -> Scalar:
    if isinstance(c, (Fraction, EpsRational)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported scalar {type(c).__name__}")


def form_from_poly(p: MultiPoly) -> QuadraticForm:
    """Symmetric matrix M with <Mx, x> = p for a homogeneous quadratic p.

    Diagonal entries are the square coefficients; off-diagonal entries are
    half the mixed coefficients.  The zero polynomial gives the zero form.
    """
    if not p.is_homogeneous():
        raise NotHomogeneousQuadratic(f"{p} is not homogeneous")
    if not p.is_zero and p.total_degree() != 2:
        raise NotHomogeneousQuadratic(f"{p} has degree {p.total_degree()}, expected 2")
    n = len(p.vars)
    half = Fraction(1, 2)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for e, c in p.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx[0], idx[1]
        if i == j:
            mat[i][i] = c
        else:
            mat[i][j] = c * half
            mat[j][i] = c * half
    return QuadraticForm(mat)


class PencilCharPoly:
    """Coefficients C_0..C_k of det(M(Z) + T I) for a pencil of s forms."""

    __slots__ = ("s", "k", "coeffs", "zvars")

    def __init__(self, s: int, k: int, coeffs: Sequence[MultiPoly], zvars: Tuple[str, ...]):
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "zvars", zvars)

    def __setattr__(self, name, value):
        raise AttributeError("PencilCharPoly is immutable")

    def charpoly_at(self, z: Sequence) -> List[Scalar]:
        """Coefficients (c_0, ..., c_k, 1) of det(M(z) + T I) at a point."""
        vals = [c.evaluate(z) for c in self.coeffs]
        return vals + [Fraction(1)]


def _mat_mul(a, b, n, zero):
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for t in range(n):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def pencil_charpoly(forms: Sequence[QuadraticForm], zvars: Sequence[str] = ()) -> PencilCharPoly:
    """Characteristic-polynomial coefficients of M(Z) + T I, exactly.

    Uses the Faddeev-LeVerrier recurrence over the polynomial ring; the
    divisions by 1..k+1 are exact in characteristic zero.
    """
    if not forms:
        raise DimensionMismatch("pencil_charpoly needs at least one form")
    n = forms[0].dim
    for f in forms:
        if f.dim != n:
            raise DimensionMismatch("all forms must share one dimension")
    s = len(forms)
    zv = tuple(zvars) if zvars else tuple(f"Z{i + 1}" for i in range(s))
    if len(zv) != s:
        raise DimensionMismatch("need one pencil variable per form")
    zero = MultiPoly.zero(zv)
    one = MultiPoly.constant(zv, 1)

    # entries of -M(Z): det(M(Z) + T I) = det(T I - (-M(Z)))
    m = [[zero for _ in range(n)] for _ in range(n)]
    for t, f in enumerate(forms):
        zpoly = MultiPoly.variable(zv, zv[t])
        for i in range(n):
            for j in range(n):
                c = f.mat[i][j]
                if c:
                    m[i][j] = m[i][j] - zpoly.scale(c)

    coeffs: List[MultiPoly] = [zero] * (n + 1)  # c_0..c_n with c_n = 1
    coeffs[n] = one
    a = [row[:] for row in m]
    for step in range(1, n + 1):
        tr = zero
        for i in range(n):
            tr = tr + a[i][i]
        c = tr.scale(Fraction(-1, step))
        coeffs[n - step] = c
        if step == n:
            break
        for i in range(n):
            a[i][i] = a[i][i] + c
        a = _mat_mul(m, a, n, zero)

    return PencilCharPoly(s=s, k=n - 1, coeffs=coeffs[:n], zvars=zv)


def descartes_index(sigma: Sequence[int], k: int) -> int:
    """Sign-variation count of (sigma(C_0), ..., sigma(C_k), +1).

    Equals the number of negative eigenvalues of z.P for any z realizing
    the sign condition, since the pencil matrix is symmetric.
    """
    sigma = tuple(sigma)
    if len(sigma) != k + 1:
        raise LengthMismatch(f"sign condition has {len(sigma)} entries, expected {k + 1}")
    return sign_variations(sigma + (1,))
