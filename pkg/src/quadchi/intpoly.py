"""Exact integer polynomial kernel.

Univariate polynomials are dense coefficient lists over Python ints
(ascending powers, trailing zeros trimmed, ``[]`` is the zero polynomial).
Multivariate polynomials ("zp") are sparse dicts mapping exponent tuples to
nonzero ints; all keys of one polynomial have the same length.

Everything in this module is exact.  Rationals appear only as evaluation
points and interval endpoints; polynomial coefficients are cleared to
integers up front, which keeps the hot paths (Sturm chains, pseudo-remainder
sequences, Bareiss determinants) on machine bignums.

Conventions that matter downstream:

* Sturm chains are stored as positive scalar multiples of the textbook
  signed-remainder sequence, so variation counts are unchanged.
* ``u_isolate`` returns isolating intervals whose endpoints are not roots,
  so refinement can bisect on endpoint signs alone.
* Resultants and principal subresultant coefficients are validated against
  Sylvester/Bareiss minors in the tests.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _gcd
from typing import Dict, List, Optional, Sequence, Tuple

Zp = Dict[Tuple[int, ...], int]

# ---------------------------------------------------------------------------
# univariate over Z
# ---------------------------------------------------------------------------


def u_trim(cs: List[int]) -> List[int]:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    del cs[n:]
    return cs


def u_deg(cs: Sequence[int]) -> int:
    return len(cs) - 1


def u_lc(cs: Sequence[int]) -> int:
    return cs[-1] if cs else 0


def u_neg(cs: Sequence[int]) -> List[int]:
    return [-c for c in cs]


def u_add(a: Sequence[int], b: Sequence[int]) -> List[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return u_trim(out)


def u_sub(a: Sequence[int], b: Sequence[int]) -> List[int]:
    return u_add(a, u_neg(b))


def u_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return u_trim(out)


def u_scale(a: Sequence[int], k: int) -> List[int]:
    if k == 0:
        return []
    return [c * k for c in a]


def u_derivative(a: Sequence[int]) -> List[int]:
    return u_trim([i * c for i, c in enumerate(a)][1:])


def u_content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = _gcd(g, c)
        if g == 1:
            break
    return g


def u_primitive(a: Sequence[int]) -> List[int]:
    """Divide out the integer content, keeping the sign pattern."""
    if not a:
        return []
    g = u_content(a)
    if g == 1:
        return list(a)
    return [c // g for c in a]


def u_divexact(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Exact quotient a/b; raises ArithmeticError if the division fails."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return []
    rem = list(a)
    db, lb = u_deg(b), u_lc(b)
    dq = u_deg(a) - db
    if dq < 0:
        raise ArithmeticError("inexact polynomial division")
    quo = [0] * (dq + 1)
    for i in range(dq, -1, -1):
        c = rem[i + db]
        if c % lb:
            raise ArithmeticError("inexact polynomial division")
        c //= lb
        quo[i] = c
        if c:
            for j, bc in enumerate(b):
                rem[i + j] -= c * bc
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return u_trim(quo)


def u_prem(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b."""
    da, db = u_deg(a), u_deg(b)
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if da < db:
        return list(a)
    lb = u_lc(b)
    rem = list(a)
    for i in range(da - db, -1, -1):
        top = rem[i + db]
        rem = [c * lb for c in rem]
        if top:
            for j, bc in enumerate(b):
                rem[i + j] -= top * bc
        rem[i + db] = 0
    return u_trim(rem)


def u_gcd(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Primitive gcd over Z with positive leading coefficient."""
    a = u_primitive(a)
    b = u_primitive(b)
    if not a:
        g = b
    elif not b:
        g = a
    else:
        if u_deg(a) < u_deg(b):
            a, b = b, a
        while b:
            r = u_primitive(u_prem(a, b))
            a, b = b, r
        g = a
    if g and g[-1] < 0:
        g = u_neg(g)
    return list(g)


def u_squarefree(a: Sequence[int]) -> List[int]:
    """Squarefree part (primitive, same lc sign as the input)."""
    if u_deg(a) <= 0:
        return u_primitive(a)
    g = u_gcd(a, u_derivative(a))
    if u_deg(g) == 0:
        return u_primitive(a)
    return u_primitive(u_divexact(a, g))


def u_eval_num(cs: Sequence[int], num: int, den: int) -> int:
    """den^deg(cs) * cs(num/den); exact and sign-faithful for den > 0."""
    if not cs:
        return 0
    acc = cs[-1]
    dp = 1
    for i in range(len(cs) - 2, -1, -1):
        dp *= den
        acc = acc * num + cs[i] * dp
    return acc


def u_sign_at(cs: Sequence[int], x: Fraction) -> int:
    v = u_eval_num(cs, x.numerator, x.denominator)
    return (v > 0) - (v < 0)


def u_sign_at_inf(cs: Sequence[int], positive: bool) -> int:
    if not cs:
        return 0
    s = 1 if cs[-1] > 0 else -1
    if not positive and (u_deg(cs) & 1):
        s = -s
    return s


def u_root_bound(cs: Sequence[int]) -> int:
    """Integer B with all real roots strictly inside (-B, B) (Cauchy bound)."""
    lc = abs(u_lc(cs))
    m = max((abs(c) for c in cs[:-1]), default=0)
    return 2 + m // lc


def _divisors(n: int, cap: int) -> Optional[List[int]]:
    """Positive divisors of |n|, or None when |n| is large or has many
    divisors.  Deliberately cheap: the rational-root peel is opportunistic."""
    n = abs(n)
    if n == 0 or n > 10 ** 9:
        return None
    out = [1]
    d = 2
    while d * d <= n:
        if d > 1000:
            return None  # give up instead of factoring hard numbers
        if n % d == 0:
            powers = []
            p = 1
            while n % d == 0:
                n //= d
                p *= d
                powers.append(p)
            out = [a * b for a in out for b in [1] + powers]
            if len(out) > cap:
                return None
        d += 1 if d == 2 else 2
    if n > 1:
        out = [a * b for a in out for b in (1, n)]
    if len(out) > cap:
        return None
    return out


def u_rational_roots(cs: Sequence[int], max_tests: int = 64) -> Tuple[List[Fraction], List[int]]:
    """Peel off rational roots found by a bounded rational-root test.

    Returns (roots, deflated polynomial).  Best effort: when the candidate
    set would be large the search is skipped, and any remaining rational
    roots are simply handled as general algebraic numbers downstream.
    """
    cs = list(cs)
    roots: List[Fraction] = []
    if u_deg(cs) <= 0:
        return roots, cs
    while cs and cs[0] == 0:
        cs.pop(0)
        if not roots:
            roots.append(Fraction(0))
    while u_deg(cs) >= 1:
        ps = _divisors(cs[0], max_tests)
        qs = _divisors(cs[-1], max_tests)
        if ps is None or qs is None or len(ps) * len(qs) * 2 > max_tests:
            break
        found = None
        for q in qs:
            for p in ps:
                if _gcd(p, q) != 1:
                    continue
                for num in (p, -p):
                    if u_eval_num(cs, num, q) == 0:
                        found = Fraction(num, q)
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        cs = u_divexact(cs, [-found.numerator, found.denominator])
    return sorted(set(roots)), cs


class SturmChain:
    """Scaled Sturm chain of a univariate integer polynomial.

    Each element is a positive integer multiple of the textbook signed
    remainder, so sign-variation counts agree with the exact chain.
    """

    __slots__ = ("p", "chain")

    def __init__(self, p: Sequence[int]):
        p = list(p)
        self.p = p
        chain = [p]
        if u_deg(p) >= 1:
            chain.append(u_derivative(p))
            while chain[-1]:
                a, b = chain[-2], chain[-1]
                r = u_prem(a, b)
                if not r:
                    break
                # prem = lc(b)^d * (a mod b); store a positive multiple of
                # -(a mod b) so variation counts match the signed chain.
                d = u_deg(a) - u_deg(b) + 1
                if u_lc(b) > 0 or d % 2 == 0:
                    r = u_neg(r)
                chain.append(u_primitive(r))
        self.chain = chain

    def variations(self, x: Fraction) -> int:
        num, den = x.numerator, x.denominator
        signs = []
        for cs in self.chain:
            v = u_eval_num(cs, num, den)
            if v:
                signs.append(v > 0)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def variations_inf(self, positive: bool) -> int:
        signs = []
        for cs in self.chain:
            s = u_sign_at_inf(cs, positive)
            if s:
                signs.append(s > 0)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count_open(self, a: Fraction, b: Fraction) -> int:
        """Number of distinct roots in the open interval (a, b).

        ``a`` may itself be a root (V(a) equals the limit from the right);
        a root at ``b`` is subtracted explicitly.
        """
        if not (a < b):
            return 0
        n = self.variations(a) - self.variations(b)
        if u_sign_at(self.p, b) == 0:
            n -= 1
        return n

    def count_all(self) -> int:
        return self.variations_inf(False) - self.variations_inf(True)


class RootInterval:
    """One isolated real root: either exact rational, or an open interval
    (with non-root endpoints) of the squarefree polynomial ``poly``."""

    __slots__ = ("lo", "hi", "exact", "poly")

    def __init__(self, lo: Fraction, hi: Fraction, exact: Optional[Fraction], poly: Optional[List[int]] = None):
        self.lo = lo
        self.hi = hi
        self.exact = exact
        self.poly = poly

    def key(self) -> Fraction:
        return self.exact if self.exact is not None else (self.lo + self.hi) / 2


def u_isolate(p: Sequence[int]) -> List[RootInterval]:
    """Isolate the real roots of a squarefree integer polynomial.

    Returns ascending ``RootInterval``s.  Rational roots found by the
    rational-root test come back exact; the remaining roots come back as
    open intervals around exactly one root of the deflated polynomial
    (stored in ``RootInterval.poly``), disjoint from each other and from
    the exact roots.
    """
    p = list(p)
    if u_deg(p) <= 0:
        return []
    rational, rest = u_rational_roots(p)
    out: List[RootInterval] = [RootInterval(r, r, r) for r in rational]
    if u_deg(rest) >= 1:
        st = SturmChain(rest)
        b = Fraction(u_root_bound(rest))
        boxes: List[RootInterval] = []
        _isolate_rec(rest, st, -b, b, None, boxes)
        for ri in boxes:
            if ri.exact is None:
                ri.poly = rest
                _separate_from_points(rest, ri, rational)
        out.extend(boxes)
    out.sort(key=RootInterval.key)
    return out


def _separate_from_points(p: Sequence[int], ri: RootInterval, points: Sequence[Fraction]) -> None:
    """Shrink an isolating interval of p until no listed point lies in it."""
    if not points:
        return
    slo = u_sign_at(p, ri.lo)
    while any(ri.lo <= r <= ri.hi for r in points):
        lo, hi, slo, exact = u_refine(p, ri.lo, ri.hi, slo)
        ri.lo, ri.hi = lo, hi
        if exact is not None:
            ri.exact = exact
            return


def _nonroot_between(p: Sequence[int], st: SturmChain, a: Fraction, b: Fraction, near_b: bool) -> Fraction:
    """A non-root point t in (a, b) with no root strictly between t and the
    near end (b if near_b else a)."""
    lo, hi = a, b
    while True:
        t = (lo + hi) / 2
        if u_sign_at(p, t) != 0:
            if near_b:
                if st.count_open(t, b) == 0:
                    return t
                lo = t
            else:
                if st.count_open(a, t) == 0:
                    return t
                hi = t
        else:
            if near_b:
                lo = t
            else:
                hi = t


def _isolate_rec(p, st: SturmChain, lo: Fraction, hi: Fraction, n: Optional[int], out: List[RootInterval]):
    # invariant: lo and hi are not roots of p
    if n is None:
        n = st.count_open(lo, hi)
    if n == 0:
        return
    if n == 1:
        out.append(RootInterval(lo, hi, None))
        return
    mid = (lo + hi) / 2
    if u_sign_at(p, mid) == 0:
        l2 = _nonroot_between(p, st, lo, mid, near_b=True)
        r2 = _nonroot_between(p, st, mid, hi, near_b=False)
        _isolate_rec(p, st, lo, l2, None, out)
        out.append(RootInterval(mid, mid, mid))
        _isolate_rec(p, st, r2, hi, None, out)
    else:
        nl = st.count_open(lo, mid)
        _isolate_rec(p, st, lo, mid, nl, out)
        _isolate_rec(p, st, mid, hi, n - nl, out)


def u_refine(p: Sequence[int], lo: Fraction, hi: Fraction, sign_lo: int) -> Tuple[Fraction, Fraction, int, Optional[Fraction]]:
    """One bisection step on an isolating interval of a squarefree poly.

    Returns (lo, hi, sign_lo, exact); ``exact`` is set when the midpoint
    turns out to be the root itself.
    """
    mid = (lo + hi) / 2
    s = u_sign_at(p, mid)
    if s == 0:
        return mid, mid, 0, mid
    if s == sign_lo:
        return mid, hi, s, None
    return lo, mid, sign_lo, None


# ---------------------------------------------------------------------------
# coefficient domains for dense-list algorithms
# ---------------------------------------------------------------------------


class _IntDomain:
    one = 1

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def zero(self=None):
        return 0

    @staticmethod
    def divexact(a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division")
        return q


class _ZpDomain:
    """Multivariate integer polynomials as a coefficient domain."""

    def __init__(self, nvars: int):
        self.one = {(0,) * nvars: 1}

    @staticmethod
    def add(a, b):
        return zp_add(a, b)

    @staticmethod
    def sub(a, b):
        return zp_sub(a, b)

    @staticmethod
    def mul(a, b):
        return zp_mul(a, b)

    @staticmethod
    def neg(a):
        return zp_neg(a)

    @staticmethod
    def is_zero(a):
        return not a

    @staticmethod
    def zero():
        return {}

    @staticmethod
    def divexact(a, b):
        return zp_divexact(a, b)


DOM_INT = _IntDomain()


def dl_trim(cs: list, dom) -> list:
    while cs and dom.is_zero(cs[-1]):
        cs.pop()
    return cs


def dl_prem(a: list, b: list, dom) -> list:
    """Pseudo-remainder of dense lists over a domain (multiplier lc(b)^(da-db+1))."""
    da, db = len(a) - 1, len(b) - 1
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if da < db:
        return list(a)
    lb = b[-1]
    rem = list(a)
    for i in range(da - db, -1, -1):
        top = rem[i + db]
        rem = [dom.mul(c, lb) for c in rem]
        if not dom.is_zero(top):
            for j, bc in enumerate(b):
                rem[i + j] = dom.sub(rem[i + j], dom.mul(top, bc))
        rem[i + db] = dom.zero()
    return dl_trim(rem, dom)


def _dom_pow(dom, x, n: int):
    out = dom.one
    for _ in range(n):
        out = dom.mul(out, x)
    return out


def _apply_sign(x, sign: int, dom):
    return x if sign >= 0 else dom.neg(x)


def dl_resultant(a: list, b: list, dom) -> object:
    """Resultant of two dense-list polynomials via the subresultant PRS."""
    a = dl_trim(list(a), dom)
    b = dl_trim(list(b), dom)
    da, db = len(a) - 1, len(b) - 1
    if da < 0 or db < 0:
        return dom.zero()
    sign = 1
    if da < db:
        a, b, da, db = b, a, db, da
        if (da & 1) and (db & 1):
            sign = -sign
    if da == 0:
        return dom.one  # both constants
    if db == 0:
        return _apply_sign(_dom_pow(dom, b[0], da), sign, dom)
    g = dom.one
    h = dom.one
    while True:
        delta = da - db
        if (da & 1) and (db & 1):
            sign = -sign
        r = dl_prem(a, b, dom)
        if not r:
            return dom.zero()  # common factor
        den = dom.mul(g, _dom_pow(dom, h, delta))
        r = [dom.divexact(c, den) for c in r]
        a, da = b, db
        b, db = r, len(r) - 1
        g = a[-1]
        if delta > 0:
            h = dom.divexact(_dom_pow(dom, g, delta), _dom_pow(dom, h, delta - 1))
        if db == 0:
            num = _dom_pow(dom, b[0], da)
            res = dom.divexact(num, _dom_pow(dom, h, da - 1)) if da > 1 else b[0]
            return _apply_sign(res, sign, dom)


def bareiss_det(rows: List[list], dom) -> object:
    """Fraction-free determinant (Bareiss) over an integral domain."""
    n = len(rows)
    if n == 0:
        return dom.one
    m = [list(r) for r in rows]
    sign = 1
    prev = dom.one
    for k in range(n - 1):
        if dom.is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not dom.is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return dom.zero()
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = dom.sub(dom.mul(m[i][j], pk), dom.mul(m[i][k], m[k][j]))
                m[i][j] = dom.divexact(num, prev)
            m[i][k] = dom.zero()
        prev = pk
    return _apply_sign(m[n - 1][n - 1], sign, dom)


def dl_psc(a: list, b: list, j: int, dom) -> object:
    """The j-th principal subresultant coefficient as a Bareiss minor.

    Definition: with m = deg a, n = deg b, take the rows x^t*a for
    t = n-j-1..0 and x^t*b for t = m-j-1..0, as coefficient vectors on the
    monomials x^(m+n-j-1)..x^0, and keep the leading m+n-2j columns.
    """
    m, n = len(a) - 1, len(b) - 1
    size = m + n - 2 * j
    if size == 0:
        return dom.one
    if size < 0:
        raise ValueError("psc index exceeds both degrees")
    width = m + n - j
    rows = []
    for t in range(n - j - 1, -1, -1):
        row = [dom.zero()] * width
        for i, c in enumerate(a):
            row[width - 1 - (i + t)] = c
        rows.append(row)
    for t in range(m - j - 1, -1, -1):
        row = [dom.zero()] * width
        for i, c in enumerate(b):
            row[width - 1 - (i + t)] = c
        rows.append(row)
    mat = [r[:size] for r in rows]
    return bareiss_det(mat, dom)


def dl_sylvester_resultant(a: list, b: list, dom) -> object:
    """Resultant as a Sylvester determinant (test oracle / fallback)."""
    da, db = len(a) - 1, len(b) - 1
    if da < 0 or db < 0:
        return dom.zero()
    if da == 0 and db == 0:
        return dom.one
    if da == 0:
        return _dom_pow(dom, a[0], db)
    if db == 0:
        return _dom_pow(dom, b[0], da)
    n = da + db
    rows = []
    for t in range(db):
        row = [dom.zero()] * n
        for i, c in enumerate(a):
            row[t + (da - i)] = c
        rows.append(row)
    for t in range(da):
        row = [dom.zero()] * n
        for i, c in enumerate(b):
            row[t + (db - i)] = c
        rows.append(row)
    return bareiss_det(rows, dom)


# ---------------------------------------------------------------------------
# multivariate over Z (sparse dicts)
# ---------------------------------------------------------------------------


def zp_zero() -> Zp:
    return {}


def zp_const(nvars: int, c: int) -> Zp:
    if c == 0:
        return {}
    return {(0,) * nvars: c}


def zp_is_const(p: Zp) -> bool:
    return all(not any(e) for e in p)


def zp_const_value(p: Zp) -> int:
    if not p:
        return 0
    return next(iter(p.values()))


def zp_nvars(p: Zp) -> int:
    for e in p:
        return len(e)
    raise ValueError("cannot infer variable count of the zero polynomial")


def zp_add(a: Zp, b: Zp) -> Zp:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def zp_neg(a: Zp) -> Zp:
    return {e: -c for e, c in a.items()}


def zp_sub(a: Zp, b: Zp) -> Zp:
    return zp_add(a, zp_neg(b))


def zp_mul(a: Zp, b: Zp) -> Zp:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: Zp = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def zp_scale(a: Zp, k: int) -> Zp:
    if k == 0:
        return {}
    return {e: c * k for e, c in a.items()}


def zp_pow(a: Zp, n: int, nvars: int) -> Zp:
    out = zp_const(nvars, 1)
    base = a
    while n:
        if n & 1:
            out = zp_mul(out, base)
        base = zp_mul(base, base)
        n >>= 1
    return out


def zp_degree_in(p: Zp, v: int) -> int:
    return max((e[v] for e in p), default=-1)


def zp_total_degree(p: Zp) -> int:
    return max((sum(e) for e in p), default=-1)


def zp_vars_present(p: Zp) -> List[int]:
    if not p:
        return []
    n = zp_nvars(p)
    present = [False] * n
    for e in p:
        for i, x in enumerate(e):
            if x:
                present[i] = True
    return [i for i, f in enumerate(present) if f]


def zp_derivative(p: Zp, v: int) -> Zp:
    out: Zp = {}
    for e, c in p.items():
        if e[v]:
            e2 = list(e)
            e2[v] -= 1
            out[tuple(e2)] = c * e[v]
    return out


def zp_univar(p: Zp, v: int) -> List[Zp]:
    """Coefficient list of p viewed as univariate in x_v (ascending)."""
    d = zp_degree_in(p, v)
    out: List[Zp] = [{} for _ in range(d + 1)]
    for e, c in p.items():
        e2 = list(e)
        k = e2[v]
        e2[v] = 0
        out[k][tuple(e2)] = c
    while out and not out[-1]:
        out.pop()
    return out


def zp_from_univar(coeffs: Sequence[Zp], v: int) -> Zp:
    out: Zp = {}
    for k, coef in enumerate(coeffs):
        for e, c in coef.items():
            e2 = list(e)
            e2[v] += k
            key = tuple(e2)
            val = out.get(key, 0) + c
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def zp_int_content(p: Zp) -> int:
    g = 0
    for c in p.values():
        g = _gcd(g, c)
        if g == 1:
            break
    return g


def _zp_lead_key(p: Zp) -> Tuple[int, ...]:
    return max(p)


def zp_normalize_sign(p: Zp) -> Zp:
    """Positive coefficient on the lex-leading monomial (canonical sign)."""
    if not p:
        return p
    if p[_zp_lead_key(p)] < 0:
        return zp_neg(p)
    return dict(p)


def zp_primitive(p: Zp) -> Zp:
    """Integer-content-free version of p, sign pattern preserved."""
    if not p:
        return {}
    g = zp_int_content(p)
    if g == 1:
        return dict(p)
    return {e: c // g for e, c in p.items()}


def zp_canonical(p: Zp) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    q = zp_normalize_sign(zp_primitive(p))
    return tuple(sorted(q.items()))


def zp_try_div(a: Zp, b: Zp) -> Optional[Zp]:
    """a/b if b divides a exactly over Z, else None."""
    if not b:
        return None
    if not a:
        return {}
    lead_b = _zp_lead_key(b)
    cb = b[lead_b]
    rem = dict(a)
    quo: Zp = {}
    while rem:
        lead_r = _zp_lead_key(rem)
        cr = rem[lead_r]
        e = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(x < 0 for x in e) or cr % cb:
            return None
        c = cr // cb
        quo[e] = quo.get(e, 0) + c
        for eb, vb in b.items():
            k = tuple(x + y for x, y in zip(e, eb))
            v = rem.get(k, 0) - c * vb
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return quo


def zp_divexact(a: Zp, b: Zp) -> Zp:
    q = zp_try_div(a, b)
    if q is None:
        raise ArithmeticError("inexact multivariate division")
    return q


def zp_content_wrt(p: Zp, v: int) -> Zp:
    """gcd of the coefficients of p viewed as univariate in x_v."""
    g: Zp = {}
    for c in zp_univar(p, v):
        if c:
            g = zp_gcd(g, c)
            if zp_is_const(g) and abs(zp_const_value(g)) == 1:
                break
    return g


def zp_gcd(a: Zp, b: Zp) -> Zp:
    """Multivariate gcd over Z (primitive PRS), canonical positive sign."""
    if not a:
        return zp_normalize_sign(b)
    if not b:
        return zp_normalize_sign(a)
    if zp_is_const(a) or zp_is_const(b):
        return zp_const(zp_nvars(a), _gcd(zp_int_content(a), zp_int_content(b)))
    va = set(zp_vars_present(a))
    common = [v for v in zp_vars_present(b) if v in va]
    if not common:
        return zp_const(zp_nvars(a), _gcd(zp_int_content(a), zp_int_content(b)))
    v = common[-1]
    ca = zp_content_wrt(a, v)
    cb = zp_content_wrt(b, v)
    pa = zp_univar(zp_divexact(a, ca), v)
    pb = zp_univar(zp_divexact(b, cb), v)
    cont_g = zp_gcd(ca, cb)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    dom = _ZpDomain(zp_nvars(a))
    while pb:
        r = dl_prem(pa, pb, dom)
        r_poly = zp_from_univar(r, v)
        if r_poly:
            rc = zp_content_wrt(r_poly, v)
            r = zp_univar(zp_divexact(r_poly, rc), v)
        else:
            r = []
        pa, pb = pb, r
    if len(pa) - 1 <= 0:
        return zp_normalize_sign(cont_g)
    g_poly = zp_from_univar(pa, v)
    gc = zp_content_wrt(g_poly, v)
    prim = zp_divexact(g_poly, gc)
    return zp_normalize_sign(zp_mul(cont_g, prim))


def zp_squarefree(p: Zp) -> Zp:
    """Multivariate squarefree part, primitive, canonical sign."""
    if not p:
        return {}
    p = zp_primitive(p)
    if zp_is_const(p):
        return zp_normalize_sign(p)
    v = zp_vars_present(p)[-1]
    cont = zp_content_wrt(p, v)
    prim = zp_divexact(p, cont)
    g = zp_gcd(prim, zp_derivative(prim, v))
    if zp_is_const(g):
        sf = prim
    else:
        sf = zp_divexact(prim, g)
    if zp_is_const(cont):
        rest = zp_const(zp_nvars(p), 1)
    else:
        rest = zp_squarefree(cont)
    return zp_normalize_sign(zp_primitive(zp_mul(rest, sf)))


def zp_squarefree_tower(p: Zp) -> List[Zp]:
    """Layers A_1, A_2, ... with p = const * A_1 * A_2 * ... where each A_i
    is squarefree and A_{i+1} divides A_i."""
    layers: List[Zp] = []
    rest = zp_primitive(p)
    while rest and not zp_is_const(rest):
        a = zp_squarefree(rest)
        layers.append(a)
        rest = zp_primitive(zp_divexact(rest, a))
    return layers


def zp_resultant(a: Zp, b: Zp, v: int) -> Zp:
    """Resultant of a, b with respect to x_v (free of x_v)."""
    if not a or not b:
        return {}
    ua = zp_univar(a, v)
    ub = zp_univar(b, v)
    dom = _ZpDomain(zp_nvars(a))
    return dl_resultant(ua, ub, dom)


def zp_psc_chain(a: Zp, b: Zp, v: int) -> List[Zp]:
    """Principal subresultant coefficients psc_0..psc_min with respect to x_v."""
    if not a or not b:
        return []
    ua = zp_univar(a, v)
    ub = zp_univar(b, v)
    da, db = len(ua) - 1, len(ub) - 1
    if da < 0 or db < 0:
        return []
    dom = _ZpDomain(zp_nvars(a))
    return [dl_psc(ua, ub, j, dom) for j in range(min(da, db) + 1)]


def zp_subst_fractions(p: Zp, assign: Dict[int, Fraction]) -> Zp:
    """Substitute exact rational values for some variables.

    The result is scaled by a positive rational to clear denominators, so
    signs, zero sets and root structure are unchanged.
    """
    if not p or not assign:
        return dict(p)
    acc: Dict[Tuple[int, ...], Fraction] = {}
    for e, c in p.items():
        val = Fraction(c)
        e2 = list(e)
        for v, x in assign.items():
            k = e2[v]
            if k:
                val *= x ** k
            e2[v] = 0
        if not val:
            continue
        key = tuple(e2)
        val += acc.get(key, Fraction(0))
        if val:
            acc[key] = val
        else:
            acc.pop(key, None)
    if not acc:
        return {}
    denom = 1
    for c in acc.values():
        denom = denom * c.denominator // _gcd(denom, c.denominator)
    out = {e: int(c * denom) for e, c in acc.items()}
    g = 0
    for c in out.values():
        g = _gcd(g, c)
        if g == 1:
            break
    if g > 1:
        out = {e: c // g for e, c in out.items()}
    return out


def zp_to_univar_int(p: Zp, v: int) -> List[int]:
    """Dense int list of a zp that involves only x_v."""
    cs = [0] * (zp_degree_in(p, v) + 1) if p else []
    for e, c in p.items():
        if any(x for i, x in enumerate(e) if i != v):
            raise ValueError("polynomial involves more than the requested variable")
        cs[e[v]] = c
    return u_trim(cs)


def zp_from_univar_int(cs: Sequence[int], v: int, nvars: int) -> Zp:
    out: Zp = {}
    for k, c in enumerate(cs):
        if c:
            e = [0] * nvars
            e[v] = k
            out[tuple(e)] = c
    return out


def zp_eval_frac(p: Zp, point: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        v = Fraction(c)
        for x, k in zip(point, e):
            if k:
                v *= x ** k
        total += v
    return total


# ---------------------------------------------------------------------------
# exact interval arithmetic over the rationals
# ---------------------------------------------------------------------------


def _imul(alo: Fraction, ahi: Fraction, blo: Fraction, bhi: Fraction) -> Tuple[Fraction, Fraction]:
    ps = (alo * blo, alo * bhi, ahi * blo, ahi * bhi)
    return min(ps), max(ps)


def _ipow(lo: Fraction, hi: Fraction, e: int) -> Tuple[Fraction, Fraction]:
    if e == 1:
        return lo, hi
    if e % 2 == 1:
        return lo ** e, hi ** e
    if lo <= 0 <= hi:
        return Fraction(0), max(-lo, hi) ** e
    a, b = abs(lo), abs(hi)
    lo2, hi2 = min(a, b), max(a, b)
    return lo2 ** e, hi2 ** e


def zp_eval_box(p: Zp, box: Dict[int, Tuple[Fraction, Fraction]]) -> Tuple[Fraction, Fraction]:
    """Enclosure of p over a box; variables not in ``box`` must not occur."""
    tlo = Fraction(0)
    thi = Fraction(0)
    for e, c in p.items():
        mlo = mhi = Fraction(c)
        for v, k in enumerate(e):
            if not k:
                continue
            blo, bhi = box[v]
            plo, phi = _ipow(blo, bhi, k)
            mlo, mhi = _imul(mlo, mhi, plo, phi)
        tlo += mlo
        thi += mhi
    return tlo, thi
