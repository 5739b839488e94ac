"""Cylindrical algebraic decomposition with exact sample points.

Given a family of rational polynomials in s variables, :func:`cad_decompose`
partitions R^s into finitely many cells, each sign-invariant for every input
polynomial, carrying its dimension, an exact sample point, and the sign
vector at that sample.  Since every cell is semi-algebraically homeomorphic
to an open cube, its Borel-Moore Euler characteristic is (-1)^dim, and
:func:`euler_sign_conditions` turns the cell list into the table

    sign condition on P  ->  Euler characteristic of its realization on Z(Q)

by summing (-1)^dim over the cells lying on Q = 0.

Implementation notes
--------------------
* Projection is Collins' operator (coefficients plus principal subresultant
  coefficient chains of reducta pairs), applied to a gcd-free squarefree
  basis at every level.  Working with a pairwise-coprime basis keeps the
  projection sets small and lets input signs be reassembled as products of
  basis signs.
* Sample coordinates are rationals (sectors) or :class:`AlgebraicNumber`
  values (sections) with squarefree integer defining polynomials over Q and
  refinable isolating intervals.
* Signs at samples are decided by exact interval arithmetic with on-demand
  refinement; ties are broken by a resultant-based certificate: the value
  v = g(sample) is a root of an explicitly computed nonzero univariate
  polynomial, and Sturm counts on that polynomial decide whether v is zero.
  Eliminations prefer the low-degree defining polynomial of the section's
  own level ("tower witness"); if such a chain collapses, a fallback chain
  over the univariate defining polynomials is used, which provably cannot
  collapse.

Lifting over distinct base cells is independent; the implementation runs
them sequentially in canonical order, so the output is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple, Union

from . import intpoly as ip
from .errors import ResourceLimit, VariableMismatch
from .poly import MultiPoly

_serial = itertools.count(1)

Coordinate = Union[Fraction, "AlgebraicNumber"]


class AlgebraicNumber:
    """A real algebraic number: squarefree defining polynomial over Q plus a
    rational isolating interval containing exactly one of its roots.

    The value is immutable; ``refine`` only shrinks the interval (and may
    discover that the number is in fact rational).
    """

    __slots__ = ("_zdef", "lo", "hi", "exact_rational", "_sign_lo", "serial",
                 "_witness", "_sturm")

    def __init__(self, zdef: Sequence[int], lo: Fraction, hi: Fraction,
                 exact: Optional[Fraction] = None):
        self._zdef = list(zdef)
        self.lo = lo
        self.hi = hi
        self.exact_rational = exact
        self._sign_lo = ip.u_sign_at(self._zdef, lo) if exact is None else 0
        self.serial = next(_serial)
        self._witness: Optional[Tuple[ip.Zp, int]] = None  # (poly, main var)
        self._sturm: Optional[ip.SturmChain] = None

    # -- interface ----------------------------------------------------------

    @property
    def defpoly(self):
        from .poly import UniPoly

        return UniPoly([Fraction(c) for c in self._zdef])

    @property
    def interval(self) -> Tuple[Fraction, Fraction]:
        return (self.lo, self.hi)

    def refine(self) -> None:
        """Halve the isolating interval, preserving the root."""
        if self.exact_rational is not None:
            return
        lo, hi, slo, exact = ip.u_refine(self._zdef, self.lo, self.hi, self._sign_lo)
        self.lo, self.hi, self._sign_lo = lo, hi, slo
        if exact is not None:
            self.exact_rational = exact

    def refine_below(self, width: Fraction) -> None:
        while self.exact_rational is None and self.hi - self.lo >= width:
            self.refine()

    def box(self) -> Tuple[Fraction, Fraction]:
        if self.exact_rational is not None:
            return (self.exact_rational, self.exact_rational)
        return (self.lo, self.hi)

    def _chain(self) -> ip.SturmChain:
        if self._sturm is None:
            self._sturm = ip.SturmChain(self._zdef)
        return self._sturm

    def compare(self, other: Coordinate) -> int:
        """Exact three-way comparison against a Fraction or another
        AlgebraicNumber."""
        if self.exact_rational is not None:
            me = self.exact_rational
            if isinstance(other, AlgebraicNumber):
                return -other.compare(me)
            return (me > other) - (me < other)
        if isinstance(other, Fraction):
            q = other
            while True:
                if q <= self.lo:
                    return 1
                if q >= self.hi:
                    return -1
                if ip.u_sign_at(self._zdef, q) == 0:
                    self.exact_rational = q
                    self.lo = self.hi = q
                    return 0
                self.refine()
        if other.exact_rational is not None:
            return self.compare(other.exact_rational)
        g = None
        gchain = None
        while True:
            if self.hi <= other.lo:
                return -1
            if other.hi <= self.lo:
                return 1
            if self.exact_rational is not None or other.exact_rational is not None:
                return self.compare(other)
            if g is None:
                g = ip.u_gcd(self._zdef, other._zdef)
                if ip.u_deg(g) >= 1:
                    gchain = ip.SturmChain(g)
            if gchain is not None:
                a_root = gchain.count_open(self.lo, self.hi) == 1
                b_root = gchain.count_open(other.lo, other.hi) == 1
                if a_root and b_root:
                    lo = min(self.lo, other.lo)
                    hi = max(self.hi, other.hi)
                    if gchain.count_open(lo, hi) == 1:
                        return 0
            self.refine()
            other.refine()

    def __float__(self) -> float:
        if self.exact_rational is not None:
            return float(self.exact_rational)
        return float((self.lo + self.hi) / 2)

    def __repr__(self) -> str:
        if self.exact_rational is not None:
            return f"AlgebraicNumber({self.exact_rational})"
        return f"AlgebraicNumber(~{float(self):.6g} in ({self.lo}, {self.hi}))"


def coordinate_key(c: Coordinate):
    if isinstance(c, Fraction):
        return ("q", c)
    if c.exact_rational is not None:
        return ("q", c.exact_rational)
    return ("a", c.serial)


def _coord_fraction(c: Coordinate) -> Optional[Fraction]:
    if isinstance(c, Fraction):
        return c
    return c.exact_rational


@dataclass(frozen=True)
class CadCell:
    """A sign-invariant cell: stack indices, dimension, sample, signs.

    ``level_indices`` locate the cell in the cylindrical structure (odd
    entries are sectors, even entries sections); ``dim`` counts the sector
    levels; ``signs`` is the sign vector of the input family at ``sample``.
    """

    level_indices: Tuple[int, ...]
    dim: int
    sample: Tuple[Coordinate, ...]
    signs: Tuple[int, ...]


class _PartialCell:
    __slots__ = ("indices", "coords", "dim", "zero_at")

    def __init__(self, indices, coords, dim, zero_at):
        self.indices = indices
        self.coords = coords
        self.dim = dim
        self.zero_at = zero_at  # frozenset of (level, family index)


class ChiTable:
    """Map from realizable sign conditions to Borel-Moore Euler numbers."""

    __slots__ = ("entries",)

    def __init__(self, entries: Dict[Tuple[int, ...], int]):
        self.entries = dict(entries)

    def __getitem__(self, sigma):
        return self.entries[tuple(sigma)]

    def __contains__(self, sigma):
        return tuple(sigma) in self.entries

    def __iter__(self):
        return iter(sorted(self.entries))

    def __len__(self):
        return len(self.entries)

    def items(self):
        return sorted(self.entries.items())

    def total(self) -> int:
        return sum(self.entries.values())

    def __eq__(self, other):
        return isinstance(other, ChiTable) and self.entries == other.entries

    def __repr__(self):
        return f"ChiTable({self.entries})"


# ---------------------------------------------------------------------------
# the decomposition engine
# ---------------------------------------------------------------------------


class _Context:
    """State for one decomposition run: bases, memoized signs, cell budget."""

    def __init__(self, nvars: int, max_cells: int, max_proj_weight: Optional[int]):
        self.n = nvars
        self.max_cells = max_cells
        self.max_proj_weight = max_proj_weight
        self.basis: Dict[int, List[ip.Zp]] = {}
        self.sign_memo: Dict[tuple, int] = {}
        self.poly_ids: Dict[tuple, int] = {}
        self.cells_created = 0

    # -- poly interning for memo keys ---------------------------------------

    def intern(self, p: ip.Zp) -> int:
        key = tuple(sorted(p.items()))
        uid = self.poly_ids.get(key)
        if uid is None:
            uid = len(self.poly_ids) + 1
            self.poly_ids[key] = uid
        return uid

    # -- signs at sample points ---------------------------------------------

    def sign_at(self, p: ip.Zp, coords: Sequence[Coordinate]) -> int:
        """Exact sign of an integer polynomial at a sample point."""
        if not p:
            return 0
        rational: Dict[int, Fraction] = {}
        algs: List[Tuple[int, AlgebraicNumber]] = []
        toks = []
        for v in ip.zp_vars_present(p):
            c = coords[v]
            f = _coord_fraction(c)
            if f is not None:
                rational[v] = f
                toks.append((v, ("q", f)))
            else:
                algs.append((v, c))
                toks.append((v, ("a", c.serial)))
        key = (self.intern(p), tuple(toks))
        hit = self.sign_memo.get(key)
        if hit is not None:
            return hit
        g = ip.zp_subst_fractions(p, rational) if rational else p
        s = self._sign_of_substituted(g, coords)
        self.sign_memo[key] = s
        return s

    def _sign_of_substituted(self, g: ip.Zp, coords) -> int:
        if not g:
            return 0
        if ip.zp_is_const(g):
            v = ip.zp_const_value(g)
            return (v > 0) - (v < 0)
        algs = [(v, coords[v]) for v in ip.zp_vars_present(g)]
        # fast path: exact interval arithmetic with refinement
        for _ in range(8):
            box = {v: a.box() for v, a in algs}
            lo, hi = ip.zp_eval_box(g, box)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            for _, a in algs:
                a.refine()
                a.refine()
            narrowed = ip.zp_subst_fractions(
                g, {v: a.exact_rational for v, a in algs if a.exact_rational is not None}
            )
            if narrowed != g:
                return self._sign_of_substituted(narrowed, coords)
        # certificate: v = g(sample) is a root of a computable polynomial
        dpoly = self._value_certificate(g, coords)
        dsq = ip.u_squarefree(dpoly)
        st = ip.SturmChain(dsq)
        zero_is_root = (not dsq) or dsq[0] == 0
        while True:
            box = {v: a.box() for v, a in algs}
            vlo, vhi = ip.zp_eval_box(g, box)
            nroots = st.variations(vlo) - st.variations(vhi)
            if ip.u_sign_at(dsq, vlo) == 0:
                nroots += 1
            assert nroots >= 1, "certificate lost the value it was built for"
            if nroots <= 1:
                if zero_is_root and vlo <= 0 <= vhi:
                    return 0
                if vhi < 0:
                    return -1
                if vlo > 0:
                    return 1
            for _, a in algs:
                a.refine()

    # -- certificates ---------------------------------------------------------

    def _modulus_for(self, a: AlgebraicNumber, v: int, coords) -> ip.Zp:
        """An elimination modulus vanishing at coords[v]: the low-degree tower
        witness when available (preconditioned so its leading coefficient does
        not vanish at the base), else the univariate defining polynomial."""
        if a._witness is not None:
            w, wv = a._witness
            if wv == v:
                coeffs = ip.zp_univar(w, v)
                top = len(coeffs) - 1
                while top >= 1 and self.sign_at(coeffs[top], coords) == 0:
                    top -= 1
                if top >= 1:
                    trimmed = ip.zp_from_univar(coeffs[: top + 1], v)
                    if ip.u_deg(a._zdef) > ip.zp_degree_in(trimmed, v):
                        return trimmed
        return ip.zp_from_univar_int(a._zdef, v, self.n + 1)

    def _pad(self, p: ip.Zp) -> ip.Zp:
        out = {}
        for e, c in p.items():
            if len(e) == self.n + 1:
                out[e] = c
            else:
                out[e + (0,) * (self.n + 1 - len(e))] = c
        return out

    def _value_certificate(self, g: ip.Zp, coords) -> List[int]:
        """Nonzero univariate integer D with D(g(sample)) = 0."""
        w = self.n  # index of the fresh variable
        f0 = {e + (0,): -c for e, c in g.items()}
        f0[(0,) * self.n + (1,)] = 1  # w - g
        out = self._eliminate(f0, coords, prefer_witness=True)
        if out is None:
            out = self._eliminate(f0, coords, prefer_witness=False)
            if out is None:
                raise AssertionError("defining-polynomial elimination collapsed")
        return ip.zp_to_univar_int(out, w)

    def _eliminate(self, f: ip.Zp, coords, prefer_witness: bool) -> Optional[ip.Zp]:
        """Eliminate every algebraic coordinate variable from f by resultants
        against moduli that vanish at the sample.  Returns None on collapse
        (identically-zero resultant), which can only happen on the witness
        path."""
        f = self._pad(f)
        m = len(coords)
        while True:
            pending = [v for v in ip.zp_vars_present(f)
                       if v < m and _coord_fraction(coords[v]) is None]
            if not pending:
                return f
            v = max(pending)
            a = coords[v]
            if prefer_witness:
                mod = self._modulus_for(a, v, coords)
            else:
                mod = ip.zp_from_univar_int(a._zdef, v, self.n + 1)
            g = ip.zp_resultant(self._pad(mod), f, v)
            if not g:
                return None
            f = g
            # exact shortcuts discovered during refinement
            subst = {u: coords[u].exact_rational
                     for u in ip.zp_vars_present(f)
                     if u < m and not isinstance(coords[u], Fraction)
                     and coords[u].exact_rational is not None}
            if subst:
                f = ip.zp_subst_fractions(f, subst)
                if not f:
                    return None

    def _root_candidates(self, g: ip.Zp, coords, v: int) -> List[int]:
        """A nonzero univariate integer polynomial (in x_v) whose roots
        include every root of g(sample, x_v).  Requires g(sample, .) != 0."""
        out = self._eliminate_keep(g, coords, v, prefer_witness=True)
        if out is not None:
            return out
        # bulletproof: eliminate (g - w) over defining polynomials only and
        # take the lowest nonzero w-order coefficient
        w = self.n
        f0 = {e + (0,): c for e, c in g.items()}
        f0[(0,) * self.n + (1,)] = f0.get((0,) * self.n + (1,), 0) - 1
        f0 = {e: c for e, c in f0.items() if c}
        res = self._eliminate(f0, coords, prefer_witness=False)
        if res is None:
            raise AssertionError("defining-polynomial elimination collapsed")
        coeffs = ip.zp_univar(res, w)
        for c in coeffs:
            if c:
                return ip.zp_to_univar_int(c, v)
        raise AssertionError("candidate resolvent vanished entirely")

    def _eliminate_keep(self, f: ip.Zp, coords, keep: int, prefer_witness: bool) -> Optional[List[int]]:
        f = self._pad(f)
        m = len(coords)
        while True:
            pending = [v for v in ip.zp_vars_present(f)
                       if v != keep and v < m and _coord_fraction(coords[v]) is None]
            if not pending:
                if not f:
                    return None
                return ip.zp_to_univar_int(f, keep)
            v = max(pending)
            a = coords[v]
            if prefer_witness:
                mod = self._modulus_for(a, v, coords)
            else:
                mod = ip.zp_from_univar_int(a._zdef, v, self.n + 1)
            g = ip.zp_resultant(self._pad(mod), f, v)
            if not g:
                return None
            f = g
            subst = {u: coords[u].exact_rational
                     for u in ip.zp_vars_present(f)
                     if u != keep and u < m and not isinstance(coords[u], Fraction)
                     and coords[u].exact_rational is not None}
            if subst:
                f = ip.zp_subst_fractions(f, subst)
                if not f:
                    return None


# ---------------------------------------------------------------------------
# projection
# ---------------------------------------------------------------------------


def _reducta(f: ip.Zp, v: int) -> List[ip.Zp]:
    """Reducta of f in x_v with positive degree; stops early once the leading
    coefficient is a nonzero constant (it can never vanish below)."""
    out = []
    coeffs = ip.zp_univar(f, v)
    while len(coeffs) - 1 >= 1:
        out.append(ip.zp_from_univar(coeffs, v))
        if ip.zp_is_const(coeffs[-1]):
            break
        coeffs = coeffs[:-1]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
    return out


def _collins_project(fam: Sequence[ip.Zp], v: int) -> List[ip.Zp]:
    """Collins' projection of a level family with main variable x_v."""
    out: List[ip.Zp] = []
    red_cache = [_reducta(f, v) for f in fam]
    for f, reds in zip(fam, red_cache):
        out.extend(c for c in ip.zp_univar(f, v) if c)
        for g in reds:
            if ip.zp_degree_in(g, v) >= 2:
                out.extend(ip.zp_psc_chain(g, ip.zp_derivative(g, v), v))
    for (i, reds_f), (j, reds_h) in itertools.combinations(enumerate(red_cache), 2):
        for g in reds_f:
            for e in reds_h:
                out.extend(ip.zp_psc_chain(g, e, v))
    return out


def _top_var(p: ip.Zp) -> int:
    vs = ip.zp_vars_present(p)
    return vs[-1] if vs else -1


def _basis_refine(polys: Sequence[ip.Zp]) -> List[ip.Zp]:
    """Gcd-free basis: pairwise coprime squarefree primitive polynomials such
    that every input is a constant times a product of distinct basis
    elements."""
    queue: List[ip.Zp] = []
    seen = set()
    for p in polys:
        q = ip.zp_squarefree(p)
        if not q or ip.zp_is_const(q):
            continue
        key = ip.zp_canonical(q)
        if key not in seen:
            seen.add(key)
            queue.append({e: c for e, c in key})
    basis: List[ip.Zp] = []
    while queue:
        p = queue.pop()
        if not p or ip.zp_is_const(p):
            continue
        i = 0
        absorbed = False
        while i < len(basis):
            b = basis[i]
            if ip.zp_canonical(p) == ip.zp_canonical(b):
                absorbed = True
                break
            g = ip.zp_gcd(p, b)
            if ip.zp_is_const(g):
                i += 1
                continue
            basis.pop(i)
            bq = ip.zp_primitive(ip.zp_divexact(b, g))
            if not ip.zp_is_const(bq):
                queue.append(ip.zp_normalize_sign(bq))
            queue.append(g)
            p = ip.zp_primitive(ip.zp_divexact(p, g))
            if ip.zp_is_const(p):
                absorbed = True
                break
            p = ip.zp_normalize_sign(p)
            i = 0  # start over against the modified basis
        if not absorbed and p and not ip.zp_is_const(p):
            basis.append(ip.zp_normalize_sign(ip.zp_primitive(p)))
    return basis


def _prepare_levels(inputs_z: Sequence[ip.Zp], nvars: int, ctx: _Context
                    ) -> Tuple[Dict[int, List[ip.Zp]], List[Tuple[int, List[Tuple[int, int]]]]]:
    """Build per-level gcd-free bases plus factorization plans.

    Returns (basis, plans) where plans[i] = (const_sign, [(level, index)...])
    expresses input i as const * product of basis elements (with repetition
    for multiplicity).
    """
    layer_lists: List[List[ip.Zp]] = []
    const_signs: List[int] = []
    raw: Dict[int, List[ip.Zp]] = {v: [] for v in range(nvars)}

    def add_raw(p: ip.Zp) -> None:
        # split into main-variable-primitive parts; the content descends a
        # level, which keeps basis elements of different levels coprime
        while p and not ip.zp_is_const(p):
            v = _top_var(p)
            cont = ip.zp_content_wrt(p, v)
            raw[v].append(ip.zp_divexact(p, cont))
            p = cont

    for p in inputs_z:
        if not p:
            const_signs.append(0)
            layer_lists.append([])
            continue
        if ip.zp_is_const(p):
            c = ip.zp_const_value(p)
            const_signs.append((c > 0) - (c < 0))
            layer_lists.append([])
            continue
        layers = ip.zp_squarefree_tower(p)
        prod = ip.zp_const(nvars, 1)
        for a in layers:
            prod = ip.zp_mul(prod, a)
        ratio = ip.zp_try_div(p, prod)
        assert ratio is not None and ip.zp_is_const(ratio)
        c = ip.zp_const_value(ratio)
        const_signs.append((c > 0) - (c < 0))
        layer_lists.append(layers)
        for a in layers:
            add_raw(a)

    basis: Dict[int, List[ip.Zp]] = {}
    weight = 0
    for v in range(nvars - 1, -1, -1):
        refined = _basis_refine(raw[v])
        level = []
        for b in refined:
            tv = _top_var(b)
            if tv == v:
                level.append(b)
            else:
                add_raw(b)
        basis[v] = level
        weight += sum(1 + max(ip.zp_total_degree(b), 0) for b in level)
        if ctx.max_proj_weight is not None and weight > ctx.max_proj_weight:
            raise ResourceLimit(
                f"projection family weight {weight} exceeds cap {ctx.max_proj_weight}"
            )
        if v == 0:
            break
        for q in _collins_project(level, v):
            q = ip.zp_squarefree(q)
            if not q or ip.zp_is_const(q):
                continue
            add_raw(q)

    # factor the layers into the final basis
    all_basis = [(lvl, idx, b) for lvl in range(nvars) for idx, b in enumerate(basis[lvl])]
    plans: List[Tuple[int, List[Tuple[int, int]]]] = []
    for csign, layers in zip(const_signs, layer_lists):
        factors: List[Tuple[int, int]] = []
        for a in layers:
            cur = ip.zp_normalize_sign(ip.zp_primitive(a))
            for lvl, idx, b in all_basis:
                if ip.zp_is_const(cur):
                    break
                q = ip.zp_try_div(cur, b)
                if q is not None:
                    factors.append((lvl, idx))
                    cur = ip.zp_normalize_sign(ip.zp_primitive(q))
            assert ip.zp_is_const(cur), "layer did not factor over the basis"
        plans.append((csign, factors))
    return basis, plans


# ---------------------------------------------------------------------------
# lifting
# ---------------------------------------------------------------------------


class _RootsResult:
    __slots__ = ("kind", "coords")

    def __init__(self, kind: str, coords=None):
        self.kind = kind  # "vanishes" | "exact" | "cands" | "none"
        self.coords = coords or []


def _roots_over(ctx: _Context, f: ip.Zp, base: Tuple[Coordinate, ...], v: int) -> _RootsResult:
    rational = {}
    for u in ip.zp_vars_present(f):
        if u == v:
            continue
        fr = _coord_fraction(base[u])
        if fr is not None:
            rational[u] = fr
    g = ip.zp_subst_fractions(f, rational) if rational else f
    if not g:
        return _RootsResult("vanishes")
    alg_vars = [u for u in ip.zp_vars_present(g) if u != v]
    if not alg_vars:
        cs = ip.zp_to_univar_int(g, v)
        if ip.u_deg(cs) <= 0:
            return _RootsResult("none")
        roots = ip.u_isolate(ip.u_squarefree(cs))
        coords = []
        for r in roots:
            if r.exact is not None:
                coords.append(r.exact)
            else:
                a = AlgebraicNumber(r.poly, r.lo, r.hi)
                a._witness = (ip.zp_from_univar_int(r.poly, v, ctx.n), v)
                coords.append(a)
        return _RootsResult("exact", coords)
    # algebraic base: test identical vanishing, then build a resolvent
    coeffs = ip.zp_univar(g, v)
    top = len(coeffs) - 1
    while top >= 0 and ctx.sign_at(coeffs[top], base) == 0:
        top -= 1
    if top < 0:
        return _RootsResult("vanishes")
    if top == 0:
        return _RootsResult("none")
    resolvent = ctx._root_candidates(g, base, v)
    sf = ip.u_squarefree(resolvent)
    roots = ip.u_isolate(sf)
    coords = []
    for r in roots:
        if r.exact is not None:
            coords.append(r.exact)
        else:
            coords.append(AlgebraicNumber(r.poly, r.lo, r.hi))
    return _RootsResult("cands", (coords, g))


class _StackRoot:
    __slots__ = ("coord", "claims")

    def __init__(self, coord: Coordinate):
        self.coord = coord
        self.claims: Set[int] = set()


def _merge_coords(items: List[Tuple[Coordinate, Optional[int]]]) -> List[_StackRoot]:
    """Sort and deduplicate coordinates; ``claims`` collects the family
    indices whose exact root lists contained the coordinate."""
    roots: List[_StackRoot] = []
    for coord, claim in items:
        placed = False
        lo, hi = 0, len(roots)
        while lo < hi:
            mid = (lo + hi) // 2
            c = _cmp_coord(coord, roots[mid].coord)
            if c == 0:
                if claim is not None:
                    roots[mid].claims.add(claim)
                # prefer an exact-rational representative
                if isinstance(coord, Fraction) and not isinstance(roots[mid].coord, Fraction):
                    roots[mid].coord = coord
                placed = True
                break
            if c < 0:
                hi = mid
            else:
                lo = mid + 1
        if not placed:
            r = _StackRoot(coord)
            if claim is not None:
                r.claims.add(claim)
            roots.insert(lo, r)
    return roots


def _cmp_coord(a: Coordinate, b: Coordinate) -> int:
    if isinstance(a, Fraction):
        if isinstance(b, Fraction):
            return (a > b) - (a < b)
        return -b.compare(a)
    return a.compare(b)


def _upper(c: Coordinate) -> Fraction:
    f = _coord_fraction(c)
    return f if f is not None else c.hi


def _lower(c: Coordinate) -> Fraction:
    f = _coord_fraction(c)
    return f if f is not None else c.lo


def _separate_neighbors(roots: List[_StackRoot]) -> None:
    # strict gaps so that midpoints of gap endpoints lie strictly between roots
    for r1, r2 in zip(roots, roots[1:]):
        while _upper(r1.coord) >= _lower(r2.coord):
            for r in (r1, r2):
                if isinstance(r.coord, AlgebraicNumber):
                    r.coord.refine()


def _stack(ctx: _Context, base: _PartialCell, v: int, out: List[_PartialCell]) -> None:
    fam = ctx.basis.get(v, [])
    results: List[Tuple[int, _RootsResult]] = []
    vanished: Set[int] = set()
    for fidx, f in enumerate(fam):
        res = _roots_over(ctx, f, base.coords, v)
        if res.kind == "vanishes":
            vanished.add(fidx)
        results.append((fidx, res))

    items: List[Tuple[Coordinate, Optional[int]]] = []
    cand_tests: List[Tuple[int, ip.Zp]] = []
    for fidx, res in results:
        if res.kind == "exact":
            for c in res.coords:
                items.append((c, fidx))
        elif res.kind == "cands":
            coords, g = res.coords
            for c in coords:
                items.append((c, None))
            cand_tests.append((fidx, g))
    roots = _merge_coords(items)

    # confirm candidates against the polynomials that need a sign test
    for fidx, g in cand_tests:
        for r in roots:
            coords = base.coords + (r.coord,)
            if ctx.sign_at(g, coords) == 0:
                r.claims.add(fidx)
                if (isinstance(r.coord, AlgebraicNumber)
                        and r.coord._witness is None
                        and r.coord.exact_rational is None):
                    r.coord._witness = (g, v)

    sections = [r for r in roots if r.claims]
    _separate_neighbors(sections)

    base_zero = set(base.zero_at)
    base_zero.update((v, fidx) for fidx in vanished)

    def emit(index: int, coord: Coordinate, is_sector: bool, claims: Set[int]):
        zero_at = frozenset(base_zero | {(v, f) for f in claims})
        cell = _PartialCell(
            base.indices + (index,),
            base.coords + (coord,),
            base.dim + (1 if is_sector else 0),
            zero_at,
        )
        ctx.cells_created += 1
        if ctx.cells_created > ctx.max_cells:
            raise ResourceLimit(f"cell count exceeds cap {ctx.max_cells}")
        out.append(cell)

    if not sections:
        emit(1, Fraction(0), True, set())
        return
    first = sections[0].coord
    emit(1, _lower(first) - 1, True, set())
    for i, sec in enumerate(sections):
        emit(2 * i + 2, sec.coord, False, sec.claims)
        if i + 1 < len(sections):
            sample = (_upper(sec.coord) + _lower(sections[i + 1].coord)) / 2
            emit(2 * i + 3, sample, True, set())
    emit(2 * len(sections) + 1, _upper(sections[-1].coord) + 1, True, set())


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

DEFAULT_MAX_CELLS = 2_000_000
DEFAULT_MAX_PROJ_WEIGHT = 2_000_000


def _validate_family(family: Sequence[MultiPoly]) -> Tuple[Tuple[str, ...], int]:
    if not family:
        raise ValueError("empty polynomial family")
    vs = family[0].vars
    for p in family:
        if p.vars != vs:
            raise VariableMismatch("family members live in different rings")
    if len(vs) < 1:
        raise ValueError("need at least one variable")
    return vs, len(vs)


def cad_project(family: Sequence[MultiPoly]) -> List[List[MultiPoly]]:
    """Collins projection cascade of a family, level by level.

    Entry j of the result is the (gcd-free squarefree basis of the)
    polynomial family at level j+1, i.e. in the first j+1 variables; the
    last entry is the normalized input family itself.  Together the levels
    carry enough information for delineable lifting over sign-invariant
    cells.
    """
    vs, n = _validate_family(family)
    for p in family:
        if p.is_zero:
            raise ValueError("cad_project requires nonzero polynomials")
    ctx = _Context(n, DEFAULT_MAX_CELLS, DEFAULT_MAX_PROJ_WEIGHT)
    inputs_z = [p.zp() for p in family]
    basis, _ = _prepare_levels(inputs_z, n, ctx)
    out = []
    for v in range(n):
        out.append([MultiPoly.from_zp(vs, b) for b in basis.get(v, [])])
    return out


def cad_decompose(
    family: Sequence[MultiPoly],
    max_cells: int = DEFAULT_MAX_CELLS,
    max_proj_weight: Optional[int] = DEFAULT_MAX_PROJ_WEIGHT,
) -> List[CadCell]:
    """Sign-invariant cylindrical decomposition of R^s for the family.

    Cells partition R^s; every input polynomial has constant sign on each
    cell; the recorded signs are exact evaluations at the sample point.
    Raises :class:`ResourceLimit` when the configured caps are exceeded.
    """
    vs, n = _validate_family(family)
    ctx = _Context(n, max_cells, max_proj_weight)
    inputs_z = [p.zp() for p in family]
    basis, plans = _prepare_levels(inputs_z, n, ctx)
    ctx.basis = basis

    cells = [_PartialCell((), (), 0, frozenset())]
    for v in range(n):
        nxt: List[_PartialCell] = []
        for cell in cells:
            _stack(ctx, cell, v, nxt)
        cells = nxt

    out: List[CadCell] = []
    for cell in cells:
        signs = []
        for csign, factors in plans:
            s = csign
            for lvl, idx in factors:
                if s == 0:
                    break
                if (lvl, idx) in cell.zero_at:
                    s = 0
                    break
                fs = ctx.sign_at(basis[lvl][idx], cell.coords)
                s *= fs
            signs.append(s)
        out.append(CadCell(cell.indices, cell.dim, cell.coords, tuple(signs)))
    out.sort(key=lambda c: c.level_indices)
    return out


def euler_sign_conditions(
    family: Sequence[MultiPoly],
    constraint: MultiPoly,
    max_cells: int = DEFAULT_MAX_CELLS,
    max_proj_weight: Optional[int] = DEFAULT_MAX_PROJ_WEIGHT,
    stats: Optional[dict] = None,
) -> ChiTable:
    """Borel-Moore Euler characteristics of all realizable sign conditions
    of ``family`` on the algebraic set {constraint = 0}.

    Every CAD cell is homeomorphic to an open cube, so a cell of dimension d
    contributes (-1)^d; summing over the cells on the constraint surface
    with a fixed sign vector gives the Euler characteristic of that sign
    condition's realization.
    """
    vs, _ = _validate_family(list(family) + [constraint])
    cells = cad_decompose(list(family) + [constraint], max_cells, max_proj_weight)
    if stats is not None:
        stats["cells"] = stats.get("cells", 0) + len(cells)
    table: Dict[Tuple[int, ...], int] = {}
    for cell in cells:
        if cell.signs[-1] != 0:
            continue
        key = cell.signs[:-1]
        table[key] = table.get(key, 0) + (-1) ** cell.dim
    return ChiTable(table)


def cells_dump(cells: Sequence[CadCell]) -> str:
    """One line per cell: ``level_indices; dim; signs`` in canonical order."""
    lines = []
    for c in cells:
        idx = ",".join(str(i) for i in c.level_indices)
        sg = ",".join(str(s) for s in c.signs)
        lines.append(f"{idx};{c.dim};{sg}")
    return "\n".join(lines) + ("\n" if lines else "")
