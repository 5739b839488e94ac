"""CAD: projection, decomposition, sign-condition Euler characteristics."""

import random
from fractions import Fraction

import pytest

from quadchi.cad import (
    AlgebraicNumber,
    CadCell,
    ChiTable,
    cad_decompose,
    cad_project,
    cells_dump,
    euler_sign_conditions,
)
from quadchi.errors import ResourceLimit
from quadchi.poly import MultiPoly, parse_poly

V1 = ("Z1",)
V2 = ("Z1", "Z2")


def P(text, vs=V2):
    return parse_poly(text, vs)


# -- projection -----------------------------------------------------------


def test_project_circle_has_plus_minus_one():
    levels = cad_project([P("Z1^2 + Z2^2 - 1")])
    base = levels[0]
    assert base, "projection must produce a base family"
    # some base polynomial has root set {-1, +1}
    found = False
    for q in base:
        roots = set()
        for p in base:
            pass
        if q.degree_in("Z1") == 2:
            vals = [q.evaluate((Fraction(x), Fraction(0))) for x in (-1, 0, 1, 2)]
            if vals[0] == 0 and vals[2] == 0 and vals[1] != 0 and vals[3] != 0:
                found = True
    assert found


def test_project_single_variable_identity():
    levels = cad_project([parse_poly("Z1", V1)])
    assert len(levels) == 1
    assert levels[0] == [parse_poly("Z1", V1)]


def test_project_crossing_lines():
    levels = cad_project([P("Z2 - Z1"), P("Z2 + Z1")])
    base = levels[0]
    # the resultant contributes a polynomial vanishing exactly at 0
    assert any(
        q.evaluate((Fraction(0), Fraction(0))) == 0
        and q.evaluate((Fraction(1), Fraction(0))) != 0
        and q.evaluate((Fraction(-1), Fraction(0))) != 0
        for q in base
    )


def test_project_rejects_zero():
    with pytest.raises(ValueError):
        cad_project([MultiPoly.zero(V2)])


# -- decomposition ---------------------------------------------------------


def test_decompose_line():
    cells = cad_decompose([parse_poly("Z1", V1)])
    assert len(cells) == 3
    assert [c.dim for c in cells] == [1, 0, 1]
    assert [c.signs for c in cells] == [(-1,), (0,), (1,)]
    assert cells[1].sample[0] == 0


def test_decompose_circle_13_cells():
    circle = P("Z1^2 + Z2^2 - 1")
    cells = cad_decompose([circle])
    assert len(cells) == 13
    on = [c for c in cells if c.signs[0] == 0]
    assert len(on) == 4
    assert sorted(c.dim for c in on) == [0, 0, 1, 1]
    assert sum((-1) ** c.dim for c in on) == 0  # chi of the circle
    inside = [c for c in cells if c.signs[0] == -1 and c.dim == 2]
    assert len(inside) == 1


def test_decompose_constant_family():
    cells = cad_decompose([MultiPoly.constant(V2, 1)])
    assert len(cells) == 1
    assert cells[0].dim == 2 and cells[0].signs == (1,)


def test_decompose_zero_poly_gets_zero_sign():
    cells = cad_decompose([MultiPoly.zero(V1)])
    assert len(cells) == 1 and cells[0].signs == (0,)


def test_decompose_signs_match_direct_evaluation():
    rng = random.Random(5)
    fam = [P("Z1^2 + Z2^2 - 2"), P("Z1*Z2 - 1"), P("Z2 - Z1^2")]
    cells = cad_decompose(fam)
    for c in cells:
        # verify recorded signs by re-evaluating on rationalized samples
        pt = []
        for coord in c.sample:
            if isinstance(coord, AlgebraicNumber):
                pt.append(None)
            else:
                pt.append(coord)
        if any(x is None for x in pt):
            continue
        for p, s in zip(fam, c.signs):
            v = p.evaluate(pt)
            assert ((v > 0) - (v < 0)) == s


def test_decompose_partition_probes():
    # every probe point's sign vector is realized by a cell, and the sample
    # stack brackets the probe
    rng = random.Random(7)
    fam = [P("Z1^2 + Z2^2 - 1"), P("Z1 - Z2")]
    cells = cad_decompose(fam)
    realizable = {c.signs for c in cells}
    for _ in range(60):
        x = Fraction(rng.randint(-40, 40), rng.randint(1, 13))
        y = Fraction(rng.randint(-40, 40), rng.randint(1, 13))
        sig = tuple(
            (v > 0) - (v < 0) for v in (p.evaluate((x, y)) for p in fam)
        )
        assert sig in realizable


def test_refinement_never_changes_signs():
    fam = [P("Z1^2 + Z2^2 - 1"), P("Z2 - Z1")]
    cells = cad_decompose(fam)
    before = [c.signs for c in cells]
    for c in cells:
        for coord in c.sample:
            if isinstance(coord, AlgebraicNumber):
                for _ in range(12):
                    coord.refine()
    # signs are stored, but re-derive from scratch to ensure stability
    cells2 = cad_decompose(fam)
    assert [c.signs for c in cells2] == before


def test_algebraic_number_invariants():
    fam = [P("Z1^2 + Z2^2 - 1"), P("Z2 - Z1")]
    cells = cad_decompose(fam)
    algs = [
        coord
        for c in cells
        for coord in c.sample
        if isinstance(coord, AlgebraicNumber) and coord.exact_rational is None
    ]
    assert algs, "expected at least one algebraic sample coordinate"
    from quadchi import intpoly as ip

    for a in algs:
        chain = ip.SturmChain(a._zdef)
        assert chain.count_open(a.lo, a.hi) == 1
        w = a.hi - a.lo
        a.refine()
        assert a.exact_rational is not None or (a.hi - a.lo) == w / 2


def test_resource_limit():
    with pytest.raises(ResourceLimit):
        cad_decompose([P("Z1^2 + Z2^2 - 1")], max_cells=5)


def test_cells_dump_format():
    cells = cad_decompose([parse_poly("Z1", V1)])
    dump = cells_dump(cells)
    assert dump == "1;1;-1\n2;0;0\n3;1;1\n"


# -- euler_sign_conditions ---------------------------------------------------


def test_chi_table_halfline_on_circle():
    table = euler_sign_conditions([P("Z1")], P("Z1^2 + Z2^2 - 1"))
    assert table.entries == {(-1,): -1, (0,): 2, (1,): -1}


def test_chi_table_two_points():
    table = euler_sign_conditions([parse_poly("Z1", V1)], parse_poly("Z1^2 - 1", V1))
    assert table.entries == {(-1,): 1, (1,): 1}


def test_chi_table_sums_to_sphere_chi():
    # sum over all sign conditions = chi of the sphere Z(Q)
    for s in (1, 2, 3):
        vs = tuple(f"Z{i + 1}" for i in range(s))
        q = MultiPoly(vs, {tuple(2 if i == j else 0 for j in range(s)): Fraction(1) for i in range(s)})
        q = q + MultiPoly.constant(vs, -1)
        fam = [MultiPoly.variable(vs, vs[0])]
        table = euler_sign_conditions(fam, q)
        assert table.total() == 1 + (-1) ** (s - 1)


def test_chi_table_random_families_on_circle():
    rng = random.Random(13)
    vs = V2
    q = P("Z1^2 + Z2^2 - 1")
    for _ in range(6):
        fam = []
        for _ in range(rng.randint(1, 2)):
            terms = {}
            for _ in range(rng.randint(1, 4)):
                e = (rng.randint(0, 2), rng.randint(0, 2))
                if sum(e) > 2:
                    continue
                terms[e] = Fraction(rng.randint(-3, 3))
            fam.append(MultiPoly(vs, terms))
        table = euler_sign_conditions(fam, q)
        assert table.total() == 0  # chi of the circle


def test_paper_example_aggregate():
    zv = V2
    c0 = P("Z1 + Z2") ** 2 * P("Z2 - Z1")
    c1 = -(P("Z1 + Z2") ** 2)
    c2 = P("Z1 - Z2")
    z1 = MultiPoly.variable(zv, "Z1")
    z2 = MultiPoly.variable(zv, "Z2")
    q = P("Z1^2 + Z2^2 - 1")
    table = euler_sign_conditions([c0, c1, c2, z1, z2], q)
    # restrict to sigma'(Z_j) in {0, -1} and aggregate over the C-signs
    agg = {}
    for sigma, chi in table.items():
        if sigma[3] in (0, -1) and sigma[4] in (0, -1):
            agg[sigma[:3]] = agg.get(sigma[:3], 0) + chi
    assert agg == {
        (-1, -1, 1): 0,
        (0, -1, 0): 1,
        (1, -1, -1): 0,
    }
