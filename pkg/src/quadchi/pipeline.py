"""Euler characteristics of quadratic semi-algebraic sets.

Three nested computations:

``chi_union``
    chi of { x on the unit sphere S^k : P_1 <= 0 or ... or P_s <= 0 } for
    quadratic forms P_i.  The pencil M(Z) = Z_1 M_1 + ... + Z_s M_s is
    summarized by the coefficients C_0..C_k of det(M(Z) + T I); the sign
    conditions of the C_i on the negative-orthant part of the unit sphere
    in Z-space classify the index (negative-eigenvalue count) of z.P, and

        chi = sum over sigma of chiBM(sigma) * (1 + (-1)^(k - n(sigma)))

    with n(sigma) the Descartes variation count of (sigma(C_0..C_k), +1).

``chi_homogeneous``
    chi of the intersection { P_1 <= 0 and ... and P_l <= 0 } on S^k by
    Mayer-Vietoris inclusion-exclusion over unions of nonempty subsets.

``chi_general``
    chi of { x in R^k : P_1(x) <= 0, ..., P_l(x) <= 0 } for arbitrary
    degree-<=2 constraints.  Homogenize, append the bounding constraint
    eps*(X_1^2+...+X_k^2) - 1 with eps infinitesimal, compute chi of the
    homogenized family on S^k (always even: the set is two antipodal
    copies), and halve.  The infinitesimal is realized by substituting a
    concrete rational and shrinking it until the complete sign-condition
    report (not just chi) is identical for two consecutive values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .cad import DEFAULT_MAX_CELLS, DEFAULT_MAX_PROJ_WEIGHT, ChiTable, euler_sign_conditions
from .errors import DegreeTooHigh, DimensionMismatch, NoStabilization, OddHomogeneousChi
from .pencil import PencilCharPoly, QuadraticForm, descartes_index, form_from_poly, pencil_charpoly
from .poly import MultiPoly, homogenize_deg2

FormLike = Union[QuadraticForm, MultiPoly]


@dataclass(frozen=True)
class OmegaRow:
    chi_bm: int
    n: int
    contribution: int


class OmegaChiReport:
    """Per-sign-condition breakdown of one union computation on Omega."""

    __slots__ = ("k", "rows")

    def __init__(self, k: int, rows: Dict[Tuple[int, ...], OmegaRow]):
        self.k = k
        self.rows = dict(rows)

    @property
    def chi(self) -> int:
        return sum(r.contribution for r in self.rows.values())

    def items(self):
        return sorted(self.rows.items())

    def __eq__(self, other):
        return isinstance(other, OmegaChiReport) and self.k == other.k and self.rows == other.rows

    def __repr__(self):
        return f"OmegaChiReport(k={self.k}, rows={self.rows})"


@dataclass(frozen=True)
class GeneralCaseConfig:
    """Knobs for the general (inhomogeneous) driver.

    ``eps_mode`` is ``"substitute_stabilize"`` (shrink a concrete rational
    eps until two consecutive full reports agree) or ``"fixed"`` (single run
    at ``fixed_eps``).
    """

    eps_mode: str = "substitute_stabilize"
    fixed_eps: Optional[Fraction] = None
    initial_eps: Fraction = Fraction(1, 64)
    oracle_check: bool = False
    max_halvings: int = 12
    max_cells: int = DEFAULT_MAX_CELLS
    max_proj_weight: Optional[int] = DEFAULT_MAX_PROJ_WEIGHT
    oracle_r0: Fraction = Fraction(1)

    def __post_init__(self):
        if self.eps_mode not in ("substitute_stabilize", "fixed"):
            raise ValueError(f"unknown eps_mode {self.eps_mode!r}")
        if self.initial_eps <= 0:
            raise ValueError("initial_eps must be positive")
        if self.eps_mode == "fixed" and (self.fixed_eps is None or self.fixed_eps <= 0):
            raise ValueError("fixed mode needs a positive fixed_eps")


@dataclass
class GeneralReport:
    """Everything the CLI wants to print about one chi_general run."""

    chi: int
    k: int
    ell: int
    shortcut: Optional[str] = None
    eps_trail: List[Tuple[Fraction, int]] = field(default_factory=list)
    union_tables: Dict[Tuple[int, ...], Tuple[int, OmegaChiReport]] = field(default_factory=dict)
    cells: int = 0
    oracle: Optional[object] = None
    oracle_agrees: Optional[bool] = None


def _as_form(f: FormLike) -> QuadraticForm:
    if isinstance(f, QuadraticForm):
        return f
    return form_from_poly(f)


def restrict_to_omega(table: ChiTable, s: int) -> Dict[Tuple[int, ...], int]:
    """Collapse a sign-condition table over (C_0..C_k, Z_1..Z_s) onto Omega.

    Omega is the part of the unit sphere in Z-space with every coordinate
    <= 0, so only extensions whose Z-signs lie in {0, -1} contribute; their
    Euler characteristics add up by disjoint additivity.  Conditions with no
    surviving extension are dropped.
    """
    out: Dict[Tuple[int, ...], int] = {}
    for sigma, chi in table.items():
        head, tail = sigma[:-s], sigma[-s:]
        if any(t not in (0, -1) for t in tail):
            continue
        out[head] = out.get(head, 0) + chi
    return out


def chi_union_report(
    forms: Sequence[FormLike],
    max_cells: int = DEFAULT_MAX_CELLS,
    max_proj_weight: Optional[int] = DEFAULT_MAX_PROJ_WEIGHT,
    cache: Optional[dict] = None,
    stats: Optional[dict] = None,
) -> Tuple[int, OmegaChiReport]:
    """chi of the union { some P_i <= 0 } on S^k, with the per-sigma table."""
    qforms = [_as_form(f) for f in forms]
    if not qforms:
        raise DimensionMismatch("chi_union needs at least one form")
    key = tuple(f.mat for f in qforms)
    if cache is not None and key in cache:
        chi, report, cells = cache[key]
        if stats is not None:
            stats["cells"] = stats.get("cells", 0) + cells
        return chi, report
    pencil = pencil_charpoly(qforms)
    s, k = pencil.s, pencil.k
    zv = pencil.zvars
    zpolys = [MultiPoly.variable(zv, name) for name in zv]
    sphere = MultiPoly.zero(zv)
    for zp in zpolys:
        sphere = sphere + zp * zp
    sphere = sphere + MultiPoly.constant(zv, -1)
    family = list(pencil.coeffs) + zpolys
    local_stats: dict = {}
    table = euler_sign_conditions(family, sphere, max_cells, max_proj_weight, stats=local_stats)
    omega = restrict_to_omega(table, s)
    rows = {}
    for sigma in sorted(omega):
        n = descartes_index(sigma, k)
        chi_bm = omega[sigma]
        contribution = chi_bm * (1 + (-1) ** ((k - n) % 2))
        rows[sigma] = OmegaRow(chi_bm=chi_bm, n=n, contribution=contribution)
    report = OmegaChiReport(k, rows)
    chi = report.chi
    cells = local_stats.get("cells", 0)
    if stats is not None:
        stats["cells"] = stats.get("cells", 0) + cells
    if cache is not None:
        cache[key] = (chi, report, cells)
    return chi, report


def chi_union(forms: Sequence[FormLike], max_cells: int = DEFAULT_MAX_CELLS,
              max_proj_weight: Optional[int] = DEFAULT_MAX_PROJ_WEIGHT) -> int:
    """Euler characteristic of { x in S^k : P_1 <= 0 or ... or P_s <= 0 }."""
    return chi_union_report(forms, max_cells, max_proj_weight)[0]


def chi_homogeneous_report(
    forms: Sequence[FormLike],
    max_cells: int = DEFAULT_MAX_CELLS,
    max_proj_weight: Optional[int] = DEFAULT_MAX_PROJ_WEIGHT,
    cache: Optional[dict] = None,
    stats: Optional[dict] = None,
) -> Tuple[int, Dict[Tuple[int, ...], Tuple[int, OmegaChiReport]]]:
    """Mayer-Vietoris assembly of chi of the intersection on the sphere.

    chi(S) = sum over nonempty J of (-1)^(|J|+1) chi(union over J); the
    empty-set term of the inclusion-exclusion identity vanishes.
    """
    qforms = [_as_form(f) for f in forms]
    if not qforms:
        raise DimensionMismatch("chi_homogeneous needs at least one form")
    dims = {f.dim for f in qforms}
    if len(dims) != 1:
        raise DimensionMismatch("forms of mixed dimensions")
    ell = len(qforms)
    total = 0
    tables: Dict[Tuple[int, ...], Tuple[int, OmegaChiReport]] = {}
    for r in range(1, ell + 1):
        for subset in itertools.combinations(range(ell), r):
            chi_j, report = chi_union_report(
                [qforms[i] for i in subset], max_cells, max_proj_weight, cache, stats
            )
            tables[subset] = (chi_j, report)
            total += ((-1) ** (r + 1)) * chi_j
    return total, tables


def chi_homogeneous(forms: Sequence[FormLike], max_cells: int = DEFAULT_MAX_CELLS,
                    max_proj_weight: Optional[int] = DEFAULT_MAX_PROJ_WEIGHT) -> int:
    """Euler characteristic of { x in S^k : all P_i <= 0 }."""
    return chi_homogeneous_report(forms, max_cells, max_proj_weight)[0]


def _ball_form(k: int, eps: Fraction) -> QuadraticForm:
    """Homogenization of eps*(X_1^2+...+X_k^2) - 1: diag(-1, eps, ..., eps)."""
    n = k + 1
    mat = [[Fraction(0)] * n for _ in range(n)]
    mat[0][0] = Fraction(-1)
    for i in range(1, n):
        mat[i][i] = Fraction(eps)
    return QuadraticForm(mat)


def _dedupe(polys: Sequence[MultiPoly]) -> List[MultiPoly]:
    seen = set()
    out = []
    for p in polys:
        key = (p.vars, tuple(sorted(p.terms.items())))
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def chi_general_report(polys: Sequence[MultiPoly], cfg: GeneralCaseConfig = GeneralCaseConfig()) -> GeneralReport:
    """chi of the basic closed set { P_1 <= 0, ..., P_l <= 0 } in R^k.

    For unbounded sets this is chi of the intersection with a large closed
    ball, which the bounding constraint realizes.
    """
    if not polys:
        raise ValueError("chi_general needs the ambient variables; pass at least one polynomial")
    vs = polys[0].vars
    k = len(vs)
    for p in polys:
        if p.vars != vs:
            raise DimensionMismatch("constraints live in different rings")
        if p.total_degree() > 2:
            raise DegreeTooHigh(f"{p} has degree {p.total_degree()}")

    work: List[MultiPoly] = []
    for p in _dedupe(polys):
        if p.is_constant():
            c = p.constant_value()
            if c > 0:
                return GeneralReport(chi=0, k=k, ell=0, shortcut="positive constant constraint")
            continue  # c <= 0: satisfied everywhere
        work.append(p)
    ell = len(work)
    if ell == 0:
        return GeneralReport(chi=1, k=k, ell=0, shortcut="no effective constraints")

    forms = [form_from_poly(homogenize_deg2(p)) for p in work]
    cache: dict = {}

    def run(eps: Fraction):
        stats: dict = {}
        chi_h, tables = chi_homogeneous_report(
            forms + [_ball_form(k, eps)], cfg.max_cells, cfg.max_proj_weight, cache, stats
        )
        if chi_h % 2 != 0:
            raise OddHomogeneousChi(
                f"homogenized family gave odd chi {chi_h} at eps={eps}"
            )
        return chi_h // 2, tables, stats.get("cells", 0)

    report = GeneralReport(chi=0, k=k, ell=ell)
    if cfg.eps_mode == "fixed":
        chi, tables, cells = run(cfg.fixed_eps)
        report.chi = chi
        report.eps_trail = [(cfg.fixed_eps, chi)]
        report.union_tables = tables
        report.cells = cells
    else:
        eps = cfg.initial_eps
        prev = None
        stabilized = False
        for _ in range(cfg.max_halvings + 1):
            chi, tables, cells = run(eps)
            report.eps_trail.append((eps, chi))
            report.cells += cells
            if prev is not None and prev[0] == chi and prev[1] == tables:
                report.chi = chi
                report.union_tables = tables
                stabilized = True
                break
            prev = (chi, tables)
            eps = eps / 2
        if not stabilized:
            raise NoStabilization(
                f"no two consecutive eps values agreed after {cfg.max_halvings} halvings"
            )

    if cfg.oracle_check:
        from .oracle import chi_direct

        result = chi_direct(work, cfg.oracle_r0, max_cells=cfg.max_cells,
                            max_proj_weight=cfg.max_proj_weight)
        report.oracle = result
        report.oracle_agrees = (result.chi == report.chi)
    return report


def chi_general(polys: Sequence[MultiPoly], cfg: GeneralCaseConfig = GeneralCaseConfig()) -> int:
    """Euler characteristic of the basic closed semi-algebraic set in R^k."""
    return chi_general_report(polys, cfg).chi
