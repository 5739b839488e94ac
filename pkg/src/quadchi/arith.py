"""Exact scalar arithmetic: rationals and the ordered extension Q(eps).

``Rational`` is :class:`fractions.Fraction` (arbitrary precision, always in
canonical reduced form with a positive denominator, which is exactly the
invariant we need).

``EpsRational`` models the field Q(eps) where eps is a positive
infinitesimal: smaller than every positive rational but larger than zero.
Elements are quotients of polynomials in eps.  The order is determined by
the lowest-degree nonzero coefficient of the (normalized) quotient, so sign
queries are exact and O(1) after construction.  Everything is immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Tuple, Union

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _trim(coeffs: Tuple[Fraction, ...]) -> Tuple[Fraction, ...]:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return coeffs[:n]


class EpsPoly:
    """A polynomial in eps with rational coefficients (ascending powers).

    The trailing (highest-index) coefficient is nonzero unless the
    polynomial is zero, in which case ``coeffs`` is empty.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Union[int, Fraction]] = ()):
        object.__setattr__(self, "coeffs", _trim(tuple(Fraction(c) for c in coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("EpsPoly is immutable")

    @classmethod
    def const(cls, c) -> "EpsPoly":
        return cls((Fraction(c),))

    @classmethod
    def eps(cls) -> "EpsPoly":
        return cls((0, 1))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lowest(self) -> Tuple[int, Fraction]:
        """Index and value of the lowest-degree nonzero coefficient."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i, c
        raise ValueError("zero polynomial has no lowest term")

    def __add__(self, other: "EpsPoly") -> "EpsPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return EpsPoly(out)

    def __neg__(self) -> "EpsPoly":
        return EpsPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "EpsPoly") -> "EpsPoly":
        return self + (-other)

    def __mul__(self, other: "EpsPoly") -> "EpsPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return EpsPoly()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return EpsPoly(out)

    def scale(self, c: Fraction) -> "EpsPoly":
        if not c:
            return EpsPoly()
        return EpsPoly(tuple(x * c for x in self.coeffs))

    def evaluate(self, x: Fraction) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "EpsPoly") -> Tuple["EpsPoly", "EpsPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return EpsPoly(), self
        quo = [_ZERO] * (dq + 1)
        lead = other.coeffs[-1]
        db = other.degree()
        for i in range(dq, -1, -1):
            c = rem[i + db] / lead
            quo[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return EpsPoly(quo), EpsPoly(rem[:db])

    def __eq__(self, other) -> bool:
        return isinstance(other, EpsPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero:
            return "EpsPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"{c}*e")
            else:
                parts.append(f"{c}*e^{i}")
        return "EpsPoly(" + " + ".join(parts) + ")"


def _eps_gcd(a: EpsPoly, b: EpsPoly) -> EpsPoly:
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    if a.is_zero:
        return a
    return a.scale(1 / a.coeffs[-1])  # monic


_EpsLike = Union["EpsRational", EpsPoly, Fraction, int]


class EpsRational:
    """An element of Q(eps) as a reduced quotient of eps-polynomials.

    Canonical form: gcd(num, den) = 1 and the lowest-degree nonzero
    coefficient of the denominator is +1.  Under that normalization the
    sign of the element is the sign of the numerator's lowest-degree
    nonzero coefficient.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: _EpsLike = 0, den: _EpsLike = 1):
        num = _as_eps_poly(num)
        den = _as_eps_poly(den)
        if den.is_zero:
            raise ZeroDivisionError("EpsRational denominator is zero")
        if num.is_zero:
            num, den = EpsPoly(), EpsPoly.const(1)
        else:
            g = _eps_gcd(num, den)
            if g.degree() > 0 or g.coeffs != (_ONE,):
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            _, low = den.lowest()
            if low != 1:
                inv = 1 / low
                num = num.scale(inv)
                den = den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("EpsRational is immutable")

    @classmethod
    def eps(cls) -> "EpsRational":
        return cls(EpsPoly.eps())

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_rational(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() <= 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is not a plain rational")
        if self.is_zero:
            return _ZERO
        return self.num.coeffs[0] / self.den.coeffs[0]

    def __add__(self, other) -> "EpsRational":
        o = _as_eps(other)
        if o is None:
            return NotImplemented
        return EpsRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "EpsRational":
        return EpsRational(-self.num, self.den)

    def __sub__(self, other) -> "EpsRational":
        o = _as_eps(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "EpsRational":
        o = _as_eps(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "EpsRational":
        o = _as_eps(other)
        if o is None:
            return NotImplemented
        return EpsRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "EpsRational":
        o = _as_eps(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise ZeroDivisionError("division by zero in Q(eps)")
        return EpsRational(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "EpsRational":
        o = _as_eps(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> "EpsRational":
        if n < 0:
            return (EpsRational(1) / self) ** (-n)
        out = EpsRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sign(self) -> int:
        if self.is_zero:
            return 0
        _, low = self.num.lowest()
        return 1 if low > 0 else -1

    def __bool__(self) -> bool:
        return not self.is_zero

    def __eq__(self, other) -> bool:
        o = _as_eps(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.as_fraction())
        return hash((self.num.coeffs, self.den.coeffs))

    def __lt__(self, other) -> bool:
        return (self - _require_eps(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - _require_eps(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - _require_eps(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - _require_eps(other)).sign() >= 0

    def __repr__(self) -> str:
        if self.den.coeffs == (_ONE,):
            return f"EpsRational({self.num!r})"
        return f"EpsRational({self.num!r}, {self.den!r})"


def _as_eps_poly(x: _EpsLike) -> EpsPoly:
    if isinstance(x, EpsPoly):
        return x
    if isinstance(x, EpsRational):
        raise TypeError("cannot build an EpsPoly from an EpsRational")
    return EpsPoly.const(Fraction(x))


def _as_eps(x) -> Union["EpsRational", None]:
    if isinstance(x, EpsRational):
        return x
    if isinstance(x, (int, Fraction)):
        return EpsRational(x)
    return None


def _require_eps(x) -> "EpsRational":
    e = _as_eps(x)
    if e is None:
        raise TypeError(f"cannot compare EpsRational with {type(x).__name__}")
    return e


EPS = EpsRational.eps()

Scalar = Union[Fraction, EpsRational]


def sign_of(x) -> int:
    """Exact sign of a scalar: Fraction, int, or EpsRational."""
    if isinstance(x, EpsRational):
        return x.sign()
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def eps_sign(x) -> int:
    """Sign of an element of Q(eps) under the non-archimedean order.

    The sign agrees with the sign of the lowest-degree nonzero coefficient
    of the numerator once the element is in canonical form.
    """
    return sign_of(x)


def eps_substitute(x, e0: Union[int, Fraction]) -> Fraction:
    """Evaluate an element of Q(eps) at a concrete positive rational eps.

    Raises ZeroDivisionError if the denominator vanishes at ``e0``.
    """
    e0 = Fraction(e0)
    if e0 <= 0:
        raise ValueError("eps substitution requires a positive rational value")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if not isinstance(x, EpsRational):
        raise TypeError(f"cannot substitute into {type(x).__name__}")
    den = x.den.evaluate(e0)
    if den == 0:
        raise ZeroDivisionError(f"denominator of {x!r} vanishes at eps={e0}")
    return x.num.evaluate(e0) / den


def _poly_threshold(p: EpsPoly) -> Fraction:
    # Below this value the lowest-degree term dominates the tail.
    idx, low = p.lowest()
    tail = sum(abs(c) for c in p.coeffs[idx + 1:])
    if not tail:
        return _ONE
    return abs(low) / (abs(low) + tail)


def eps_sign_threshold(x: EpsRational) -> Fraction:
    """A rational e* > 0 such that sign(eps_substitute(x, e)) == eps_sign(x)
    for every rational 0 < e < e*.

    Computed from the lowest nonzero terms of numerator and denominator.
    """
    if not isinstance(x, EpsRational):
        x = _require_eps(x)
    if x.is_zero:
        return _ONE
    return min(_poly_threshold(x.num), _poly_threshold(x.den))
