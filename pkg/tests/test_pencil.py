"""Pencil characteristic polynomials against brute-force determinants."""

import itertools
import random
from fractions import Fraction

import pytest

from quadchi.arith import EPS, EpsRational, eps_sign
from quadchi.errors import DimensionMismatch, LengthMismatch, NotHomogeneousQuadratic
from quadchi.pencil import QuadraticForm, descartes_index, form_from_poly, pencil_charpoly
from quadchi.poly import MultiPoly, parse_poly

XV = ("X0", "X1", "X2")


def _brute_charpoly(forms, zvars):
    """det(M(Z) + T I) by permutation expansion; independent of the
    Faddeev-LeVerrier path."""
    n = forms[0].dim
    vs = tuple(zvars) + ("T",)
    zero = MultiPoly.zero(vs)
    tpoly = MultiPoly.variable(vs, "T")
    entries = [[zero for _ in range(n)] for _ in range(n)]
    for t, f in enumerate(forms):
        zp = MultiPoly.variable(vs, zvars[t])
        for i in range(n):
            for j in range(n):
                if f.mat[i][j]:
                    entries[i][j] = entries[i][j] + zp.scale(f.mat[i][j])
    for i in range(n):
        entries[i][i] = entries[i][i] + tpoly
    det = zero
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = MultiPoly.constant(vs, sign)
        for i in range(n):
            term = term * entries[i][perm[i]]
        det = det + term
    return det


def test_form_from_poly_paper_p1():
    p = parse_poly("X0^2 + X1^2 - X2^2", XV)
    f = form_from_poly(p)
    assert f.mat == ((1, 0, 0), (0, 1, 0), (0, 0, -1))


def test_form_from_poly_off_diagonal():
    p = parse_poly("X0*X1", XV)
    f = form_from_poly(p)
    assert f.mat[0][1] == Fraction(1, 2) and f.mat[1][0] == Fraction(1, 2)
    assert all(f.mat[i][j] == 0 for i in range(3) for j in range(3) if {i, j} != {0, 1})
    assert f.polynomial(XV) == p


def test_form_from_zero_poly():
    f = form_from_poly(MultiPoly.zero(XV))
    assert all(c == 0 for row in f.mat for c in row)


def test_form_rejects_inhomogeneous():
    with pytest.raises(NotHomogeneousQuadratic):
        form_from_poly(parse_poly("X0^2 + X1", XV))


def test_pencil_charpoly_paper_example():
    p1 = form_from_poly(parse_poly("X0^2 + X1^2 - X2^2", XV))
    p2 = form_from_poly(parse_poly("X0^2 - X1^2 - X2^2", XV))
    pencil = pencil_charpoly([p1, p2])
    zv = ("Z1", "Z2")
    c0 = parse_poly("Z1 + Z2", zv) ** 2 * parse_poly("Z2 - Z1", zv)
    c1 = -(parse_poly("Z1 + Z2", zv) ** 2)
    c2 = parse_poly("Z1 - Z2", zv)
    assert pencil.coeffs[0] == c0
    assert pencil.coeffs[1] == c1
    assert pencil.coeffs[2] == c2


def test_pencil_charpoly_identity_form():
    for k in range(1, 5):
        n = k + 1
        f = QuadraticForm([[1 if i == j else 0 for j in range(n)] for i in range(n)])
        pencil = pencil_charpoly([f])
        import math

        for i in range(n):
            expected = MultiPoly(
                ("Z1",), {(n - i,): Fraction(math.comb(n, i))}
            )
            assert pencil.coeffs[i] == expected


def test_pencil_charpoly_matches_brute_force():
    rng = random.Random(42)
    for _ in range(12):
        n = rng.choice([2, 3])
        forms = []
        for _ in range(rng.choice([1, 2])):
            m = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    v = rng.randint(-4, 4)
                    m[i][j] = v
                    m[j][i] = v
            forms.append(QuadraticForm(m))
        pencil = pencil_charpoly(forms)
        brute = _brute_charpoly(forms, pencil.zvars)
        vs = brute.vars
        recomposed = MultiPoly.zero(vs)
        tvar = MultiPoly.variable(vs, "T")
        for i, c in enumerate(pencil.coeffs):
            recomposed = recomposed + c.extend(vs) * tvar ** i
        recomposed = recomposed + tvar ** n
        assert recomposed == brute


def test_pencil_charpoly_numeric_specialization():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.choice([2, 3, 4])
        s = rng.choice([1, 2, 3])
        forms = []
        for _ in range(s):
            m = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    v = rng.randint(-3, 3)
                    m[i][j] = v
                    m[j][i] = v
            forms.append(QuadraticForm(m))
        pencil = pencil_charpoly(forms)
        z = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(s)]
        # numeric characteristic polynomial by Bareiss over Q[T]
        num = [[sum(f.mat[i][j] * z[t] for t, f in enumerate(forms)) for j in range(n)] for i in range(n)]
        got = pencil.charpoly_at(z)
        expect = _numeric_charpoly(num)
        assert got == expect


def _numeric_charpoly(m):
    """det(M + T I) coefficients via exact expansion over Q[T] (Leibniz)."""
    n = len(m)
    vs = ("T",)
    tpoly = MultiPoly.variable(vs, "T")
    entries = [
        [MultiPoly.constant(vs, m[i][j]) + (tpoly if i == j else MultiPoly.zero(vs)) for j in range(n)]
        for i in range(n)
    ]
    det = MultiPoly.zero(vs)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = MultiPoly.constant(vs, sign)
        for i in range(n):
            term = term * entries[i][perm[i]]
        det = det + term
    out = [det.coefficient((i,)) for i in range(n + 1)]
    assert out[n] == 1
    return out[:n] + [Fraction(1)]


def test_homogeneity_of_coefficients():
    rng = random.Random(3)
    p1 = form_from_poly(parse_poly("X0^2 + X1^2 - X2^2", XV))
    p2 = form_from_poly(parse_poly("X0*X1 - X2^2", XV))
    pencil = pencil_charpoly([p1, p2])
    k = pencil.k
    for i, c in enumerate(pencil.coeffs):
        assert c.is_homogeneous(k + 1 - i) or c.is_zero
    lam = Fraction(3, 2)
    z = (Fraction(2), Fraction(-1, 3))
    for i, c in enumerate(pencil.coeffs):
        assert c.evaluate((lam * z[0], lam * z[1])) == lam ** (k + 1 - i) * c.evaluate(z)


def test_descartes_index_counts_negative_eigenvalues():
    rng = random.Random(11)
    for _ in range(40):
        diag = [rng.randint(-5, 5) for _ in range(rng.choice([2, 3, 4]))]
        n = len(diag)
        f = QuadraticForm([[diag[i] if i == j else 0 for j in range(n)] for i in range(n)])
        pencil = pencil_charpoly([f])
        sigma = tuple(_sign(c.evaluate((Fraction(1),))) for c in pencil.coeffs)
        idx = descartes_index(sigma, pencil.k)
        assert idx == sum(1 for d in diag if d < 0)


def _sign(x):
    return (x > 0) - (x < 0)


def test_descartes_index_paper_rows():
    assert descartes_index((-1, -1, 1), 2) == 1
    assert descartes_index((0, -1, 0), 2) == 1
    assert descartes_index((1, -1, -1), 2) == 2


def test_descartes_index_edge_cases():
    assert descartes_index((1, 1, 1, 1), 3) == 0
    assert descartes_index((0, 0, 0), 2) == 0
    with pytest.raises(LengthMismatch):
        descartes_index((1, 1), 2)


def test_pencil_with_eps_coefficients():
    # the exact Q(eps) path: a pencil containing the eps-ball form
    ball = QuadraticForm(
        [
            [EpsRational(-1), EpsRational(0), EpsRational(0)],
            [EpsRational(0), EPS, EpsRational(0)],
            [EpsRational(0), EpsRational(0), EPS],
        ]
    )
    p1 = form_from_poly(parse_poly("X0^2 + X1^2 - X2^2", XV))
    pencil = pencil_charpoly([p1, ball])
    # specialize at z = (-1, -1) and check signs against substituted arithmetic
    vals = [c.evaluate((Fraction(-1), Fraction(-1))) for c in pencil.coeffs]
    signs = [eps_sign(v) for v in vals]
    from quadchi.arith import eps_substitute

    for e0 in (Fraction(1, 64), Fraction(1, 1024)):
        sub = [
            v if isinstance(v, Fraction) else eps_substitute(v, e0)
            for v in vals
        ]
        assert [(x > 0) - (x < 0) for x in sub] == signs


def test_dimension_mismatch():
    f2 = QuadraticForm([[1, 0], [0, 1]])
    f3 = QuadraticForm([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(DimensionMismatch):
        pencil_charpoly([f2, f3])
