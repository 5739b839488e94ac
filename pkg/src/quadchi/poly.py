"""Sparse multivariate and dense univariate polynomials over an ordered field.

``MultiPoly`` works over either exact rationals (:class:`fractions.Fraction`)
or the infinitesimal extension (:class:`quadchi.arith.EpsRational`); all ring
operations are exact.  The heavier real-root machinery (Sturm chains, root
isolation, subresultants) is only offered over the rationals, where it
delegates to the integer kernel in :mod:`quadchi.intpoly`.

The text grammar used by the CLI is implemented here::

    poly  := [sign] term ((+|-) term)*
    term  := coeff | coeff '*' mono | mono
    mono  := VAR('^'INT)? ('*' VAR('^'INT)?)*
    coeff := INT | INT '/' INT

e.g. ``X1^2 + X2^2 - 1`` or ``-2/3*X1*X2``.  Whitespace is ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd as _gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import intpoly as ip
from .arith import EpsRational, sign_of
from .errors import DegreeTooHigh, ParseError, UnknownVariable, VariableMismatch

Scalar = Union[Fraction, EpsRational]
Exponents = Tuple[int, ...]


def _coerce_scalar(c) -> Scalar:
    if isinstance(c, (Fraction, EpsRational)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class MultiPoly:
    """Immutable sparse multivariate polynomial over Q or Q(eps).

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    coefficients; the zero polynomial has no terms.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponents, Scalar]):
        vs = tuple(variables)
        clean: Dict[Exponents, Scalar] = {}
        for e, c in terms.items():
            if len(e) != len(vs):
                raise VariableMismatch(f"exponent tuple {e} does not match variables {vs}")
            c = _coerce_scalar(c)
            if c:
                clean[tuple(int(x) for x in e)] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "MultiPoly":
        return cls(variables, {(0,) * len(tuple(variables)): _coerce_scalar(c)})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        vs = tuple(variables)
        if name not in vs:
            raise UnknownVariable(f"unknown variable {name!r}", token=name)
        e = [0] * len(vs)
        e[vs.index(name)] = 1
        return cls(vs, {tuple(e): Fraction(1)})

    # -- basic structure ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self._var_index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Scalar:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def coefficient(self, exponents: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(exponents), Fraction(0))

    def _var_index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariable(f"unknown variable {name!r}", token=name) from None

    def _check_same_ring(self, other: "MultiPoly") -> None:
        if self.vars != other.vars:
            raise VariableMismatch(f"variable lists differ: {self.vars} vs {other.vars}")

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_same_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, Fraction(0)) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly(self.vars, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_same_ring(other)
        out: Dict[Exponents, Scalar] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e, Fraction(0)) + ca * cb
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MultiPoly(self.vars, out)

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = MultiPoly.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c) -> "MultiPoly":
        c = _coerce_scalar(c)
        if not c:
            return MultiPoly.zero(self.vars)
        return MultiPoly(self.vars, {e: v * c for e, v in self.terms.items()})

    def map_coefficients(self, fn) -> "MultiPoly":
        return MultiPoly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    def diff(self, name: str) -> "MultiPoly":
        i = self._var_index(name)
        out: Dict[Exponents, Scalar] = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return MultiPoly(self.vars, out)

    # -- evaluation and substitution -----------------------------------------

    def evaluate(self, point: Sequence) -> Scalar:
        """Exact value at a full point (one scalar per variable)."""
        if len(point) != len(self.vars):
            raise VariableMismatch("point arity does not match the variable list")
        vals = [_coerce_scalar(x) for x in point]
        total: Scalar = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(vals, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    def substitute(self, name: str, value) -> "MultiPoly":
        """Substitute a scalar or a polynomial (same ring) for one variable."""
        i = self._var_index(name)
        if isinstance(value, MultiPoly):
            self._check_same_ring(value)
            out = MultiPoly.zero(self.vars)
            for e, c in self.terms.items():
                e2 = list(e)
                k = e2[i]
                e2[i] = 0
                term = MultiPoly(self.vars, {tuple(e2): c})
                out = out + term * value ** k
            return out
        value = _coerce_scalar(value)
        out_terms: Dict[Exponents, Scalar] = {}
        for e, c in self.terms.items():
            v = c
            for _ in range(e[i]):
                v = v * value
            e2 = list(e)
            e2[i] = 0
            key = tuple(e2)
            acc = out_terms.get(key, Fraction(0)) + v
            if acc:
                out_terms[key] = acc
            else:
                out_terms.pop(key, None)
        return MultiPoly(self.vars, out_terms)

    def rename(self, variables: Sequence[str]) -> "MultiPoly":
        """Same terms over a renamed (same-length) variable list."""
        vs = tuple(variables)
        if len(vs) != len(self.vars):
            raise VariableMismatch("renaming must preserve the number of variables")
        return MultiPoly(vs, self.terms)

    def extend(self, variables: Sequence[str]) -> "MultiPoly":
        """View this polynomial in a superset ring (new variables unused)."""
        vs = tuple(variables)
        pos = []
        for v in self.vars:
            if v not in vs:
                raise VariableMismatch(f"target ring is missing {v!r}")
            pos.append(vs.index(v))
        out: Dict[Exponents, Scalar] = {}
        for e, c in self.terms.items():
            e2 = [0] * len(vs)
            for p, k in zip(pos, e):
                e2[p] = k
            out[tuple(e2)] = c
        return MultiPoly(vs, out)

    # -- integer kernel bridge ------------------------------------------------

    def zp(self) -> ip.Zp:
        """Integer form scaled by a positive rational (signs preserved).

        Only valid over plain rational coefficients.
        """
        den = 1
        for c in self.terms.values():
            if not isinstance(c, Fraction):
                raise TypeError("integer kernel requires rational coefficients")
            den = den * c.denominator // _gcd(den, c.denominator)
        out = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for c in out.values():
            g = _gcd(g, c)
            if g == 1:
                break
        if g > 1:
            out = {e: c // g for e, c in out.items()}
        return out

    @classmethod
    def from_zp(cls, variables: Sequence[str], zp: ip.Zp) -> "MultiPoly":
        return cls(variables, {e: Fraction(c) for e, c in zp.items()})

    # -- comparisons / hashing -------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.vars, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    # -- printing ---------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))
        parts: List[str] = []
        for idx, (e, c) in enumerate(items):
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k
            )
            if isinstance(c, EpsRational):
                body = f"({c!r})*{mono}" if mono else f"({c!r})"
                parts.append(f"+ {body}" if idx else body)
                continue
            negative = c < 0
            a = -c if negative else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            if idx == 0:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self.vars!r}, {self})"


def homogenize_deg2(p: MultiPoly, new_var: str = "X0") -> MultiPoly:
    """Lift a degree-<=2 polynomial to a quadratic form in one more variable.

    Returns ``x0^2 * p(x1/x0, ..., xk/x0)`` with the fresh variable first;
    substituting ``new_var = 1`` recovers ``p``.
    """
    if p.total_degree() > 2:
        raise DegreeTooHigh(f"degree {p.total_degree()} exceeds 2")
    if new_var in p.vars:
        raise VariableMismatch(f"homogenization variable {new_var!r} already in use")
    vs = (new_var,) + p.vars
    out: Dict[Exponents, Scalar] = {}
    for e, c in p.terms.items():
        d = sum(e)
        out[(2 - d,) + e] = c
    return MultiPoly(vs, out)


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial over Q (coefficients ascending)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Union[int, Fraction]]):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def from_multipoly(cls, p: MultiPoly, name: Optional[str] = None) -> "UniPoly":
        if name is None:
            if len(p.vars) != 1:
                raise VariableMismatch("a main variable is required for multivariate input")
            name = p.vars[0]
        i = p._var_index(name)
        if any(k for e in p.terms for j, k in enumerate(e) if j != i and k):
            raise VariableMismatch(f"{p} is not univariate in {name!r}")
        cs = [Fraction(0)] * (p.degree_in(name) + 1)
        for e, c in p.terms.items():
            if not isinstance(c, Fraction):
                raise TypeError("UniPoly requires rational coefficients")
            cs[e[i]] = c
        return cls(cs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return UniPoly(out)

    def scale(self, c) -> "UniPoly":
        c = Fraction(c)
        return UniPoly(tuple(x * c for x in self.coeffs))

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree()
        dq = len(rem) - 1 - db
        if dq < 0:
            return UniPoly(()), self
        quo = [Fraction(0)] * (dq + 1)
        lb = other.lc()
        for i in range(dq, -1, -1):
            c = rem[i + db] / lb
            quo[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return UniPoly(quo), UniPoly(rem[:db])

    def rem(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a.rem(b)
        if a.is_zero:
            return a
        return a.scale(1 / a.lc())

    def squarefree_part(self) -> "UniPoly":
        if self.degree() <= 0:
            return self
        g = self.gcd(self.derivative())
        if g.degree() <= 0:
            return self
        return self.divmod(g)[0]

    def zint(self) -> List[int]:
        """Primitive integer version (positive rational scaling)."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        return ip.u_primitive([int(c * den) for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero:
            return "UniPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*T")
            else:
                parts.append(f"{c}*T^{i}")
        return "UniPoly(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# Sturm chains, root counting, isolation
# ---------------------------------------------------------------------------


def sturm_chain(p: UniPoly, q: UniPoly) -> List[UniPoly]:
    """Signed remainder sequence of (p, q): p, q, -rem(p, q), ...

    With ``q = p'`` this is the classical Sturm chain.
    """
    if p.is_zero:
        raise ValueError("sturm_chain requires a nonzero first polynomial")
    chain = [p]
    if not q.is_zero:
        chain.append(q)
        while True:
            r = chain[-2].rem(chain[-1])
            if r.is_zero:
                break
            chain.append(-r)
    return chain


def _variations(values: Iterable[Fraction]) -> int:
    signs = [v > 0 for v in values if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_root_count(p: UniPoly, lo, hi) -> int:
    """Distinct real roots of p in the half-open interval (lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        return 0
    st = ip.SturmChain(p.zint())
    n = st.variations(lo) - st.variations(hi)
    return n


def isolate_real_roots(p: UniPoly) -> List[Tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, each containing exactly one real root.

    Requires a nonzero squarefree input (take ``p.squarefree_part()``
    first).  Degenerate intervals (lo == hi) mark exact rational roots.
    """
    if p.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.gcd(p.derivative()).degree() > 0:
        raise ValueError("isolate_real_roots requires a squarefree polynomial")
    return [(r.lo, r.hi) for r in ip.u_isolate(p.zint())]


def refine_root_interval(p: UniPoly, interval: Tuple[Fraction, Fraction]) -> Tuple[Fraction, Fraction]:
    """Halve an isolating interval produced by :func:`isolate_real_roots`."""
    lo, hi = interval
    if lo == hi:
        return interval
    z = p.zint()
    lo2, hi2, _, exact = ip.u_refine(z, lo, hi, ip.u_sign_at(z, lo))
    if exact is not None:
        return exact, exact
    return lo2, hi2


# ---------------------------------------------------------------------------
# subresultants over a parameter ring
# ---------------------------------------------------------------------------


def subresultant_psc(p: MultiPoly, q: MultiPoly, name: str) -> List[MultiPoly]:
    """Principal subresultant coefficients of (p, q) in the main variable.

    Entry j is psc_j, a polynomial in the remaining variables; entry 0 is
    the resultant.  Exact values (the scaling used to clear denominators is
    divided back out).
    """
    p._check_same_ring(q)
    i = p._var_index(name)
    zp_p, sp = _zp_with_scale(p)
    zp_q, sq = _zp_with_scale(q)
    dp = ip.zp_degree_in(zp_p, i)
    dq = ip.zp_degree_in(zp_q, i)
    if dp < 0 or dq < 0:
        raise ValueError("subresultants of the zero polynomial are undefined")
    chain = ip.zp_psc_chain(zp_p, zp_q, i)
    out = []
    for j, z in enumerate(chain):
        corr = sp ** (dq - j) * sq ** (dp - j)
        out.append(MultiPoly.from_zp(p.vars, z).scale(1 / corr) if z else MultiPoly.zero(p.vars))
    return out


def resultant(p: MultiPoly, q: MultiPoly, name: str) -> MultiPoly:
    """Resultant of p and q with respect to one variable (exact)."""
    p._check_same_ring(q)
    i = p._var_index(name)
    zp_p, sp = _zp_with_scale(p)
    zp_q, sq = _zp_with_scale(q)
    dp = ip.zp_degree_in(zp_p, i)
    dq = ip.zp_degree_in(zp_q, i)
    if dp < 0 or dq < 0:
        raise ValueError("resultant of the zero polynomial is undefined")
    z = ip.zp_resultant(zp_p, zp_q, i)
    corr = sp ** dq * sq ** dp
    return MultiPoly.from_zp(p.vars, z).scale(1 / corr)


def discriminant(p: MultiPoly, name: str) -> MultiPoly:
    """Discriminant of p in the given variable: (-1)^(d(d-1)/2) Res(p, p')/lc."""
    d = p.degree_in(name)
    if d < 1:
        raise ValueError("discriminant requires degree >= 1 in the main variable")
    res = resultant(p, p.diff(name), name)
    i = p._var_index(name)
    # leading coefficient as a polynomial in the same ring (main var zeroed)
    lc_poly = MultiPoly(p.vars, {
        tuple(0 if j == i else x for j, x in enumerate(e)): c
        for e, c in p.terms.items()
        if e[i] == d
    })
    quot = _exact_poly_div(res, lc_poly)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return quot.scale(sign)


def _exact_poly_div(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    za, sa = _zp_with_scale(a)
    zb, sb = _zp_with_scale(b)
    q = ip.zp_try_div(za, zb)
    if q is None:
        raise ArithmeticError("inexact polynomial division")
    return MultiPoly.from_zp(a.vars, q).scale(sb / sa)


def _zp_with_scale(p: MultiPoly) -> Tuple[ip.Zp, Fraction]:
    """Integer form plus the exact positive scale s with zp == s * p."""
    den = 1
    for c in p.terms.values():
        if not isinstance(c, Fraction):
            raise TypeError("kernel operations need rational coefficients")
        den = den * c.denominator // _gcd(den, c.denominator)
    out = {e: int(c * den) for e, c in p.terms.items()}
    return out, Fraction(den)


# ---------------------------------------------------------------------------
# sign sequences
# ---------------------------------------------------------------------------

SignSequence = Tuple[int, ...]


def sign_variations(signs: Sequence[int]) -> int:
    """Adjacent sign changes after deleting all zeros (Descartes convention)."""
    cleaned = []
    for s in signs:
        if s not in (-1, 0, 1):
            raise ValueError(f"sign sequence entries must be -1, 0 or +1, got {s!r}")
        if s:
            cleaned.append(s)
    return sum(1 for a, b in zip(cleaned, cleaned[1:]) if a != b)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stray = text[pos:].lstrip()
            if not stray:
                break
            at = pos + (len(text) - pos - len(stray))
            raise ParseError(
                f"unexpected character {stray[0]!r} at position {at}",
                position=at,
                token=stray[0],
            )
        if m.group("int") is not None:
            out.append(("int", m.group("int"), m.start("int")))
        elif m.group("var") is not None:
            out.append(("var", m.group("var"), m.start("var")))
        else:
            out.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return out


def parse_poly(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse the shared polynomial grammar over the given variables."""
    vs = tuple(variables)
    toks = _tokenize(text)
    n = len(toks)
    idx = 0

    def peek():
        return toks[idx] if idx < n else (None, None, len(text))

    def error(msg):
        kind, val, pos = peek()
        raise ParseError(f"{msg} at position {pos}", position=pos, token=val)

    def parse_int() -> int:
        nonlocal idx
        kind, val, _ = peek()
        if kind != "int":
            error("expected an integer")
        idx += 1
        return int(val)

    def parse_varpow() -> Tuple[str, int]:
        nonlocal idx
        kind, val, _ = peek()
        if kind != "var":
            error("expected a variable")
        name = val
        if name not in vs:
            _, _, pos = peek()
            raise UnknownVariable(
                f"unknown variable {name!r} at position {pos}", position=pos, token=name
            )
        idx += 1
        k = 1
        kind, val, _ = peek()
        if kind == "op" and val == "^":
            idx += 1
            k = parse_int()
        return name, k

    def parse_term() -> MultiPoly:
        nonlocal idx
        coeff = Fraction(1)
        have_coeff = False
        kind, val, _ = peek()
        if kind == "int":
            num = parse_int()
            coeff = Fraction(num)
            have_coeff = True
            kind, val, _ = peek()
            if kind == "op" and val == "/":
                idx += 1
                den = parse_int()
                if den == 0:
                    error("zero denominator")
                coeff = Fraction(num, den)
                kind, val, _ = peek()
        exps = [0] * len(vs)
        if have_coeff:
            if kind == "op" and val == "*":
                idx += 1
            else:
                return MultiPoly(vs, {tuple(exps): coeff})
        while True:
            name, k = parse_varpow()
            exps[vs.index(name)] += k
            kind, val, _ = peek()
            if kind == "op" and val == "*":
                idx += 1
                continue
            break
        return MultiPoly(vs, {tuple(exps): coeff})

    result = MultiPoly.zero(vs)
    sign = 1
    kind, val, _ = peek()
    if kind == "op" and val in "+-":
        sign = -1 if val == "-" else 1
        idx += 1
    if idx >= n:
        error("empty polynomial")
    while True:
        term = parse_term()
        result = result + (term.scale(sign))
        if idx >= n:
            break
        kind, val, _ = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            idx += 1
        else:
            error("expected '+' or '-' between terms")
    return result
