"""Polynomials, Laurent polynomials, truncated Laurent series and rational
functions in the delay variable D over GF(p).

Coefficients are stored as ascending tuples of ints in ``[0, p)``.  The
delay of zero is ``INF`` and its degree is ``NEG_INF``; both are floats so
they order correctly against integer exponents.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence, Union

from .errors import BothZero, DivisionByZero, MixedFields, NonCausalDenominator
from .gf import FieldElem, FieldSpec

INF = math.inf
NEG_INF = -math.inf

Degree = Union[int, float]


def _strip(coeffs: Iterable[int], p: int) -> tuple[int, ...]:
    try:
        c = [x % p for x in coeffs]
    except TypeError:
        c = [int(x) % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _conv(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return [x % p for x in out]


class Poly:
    """Element of GF(p)[D]; ``coeffs[i]`` is the coefficient of D^i."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, coeffs: Iterable[int], spec: FieldSpec):
        self.spec = spec
        self.coeffs = _strip(coeffs, spec.p)

    @classmethod
    def zero(cls, spec: FieldSpec) -> Poly:
        return cls((), spec)

    @classmethod
    def one(cls, spec: FieldSpec) -> Poly:
        return cls((1,), spec)

    @classmethod
    def monomial(cls, degree: int, spec: FieldSpec, coeff: int = 1) -> Poly:
        return cls([0] * degree + [coeff], spec)

    @property
    def degree(self) -> Degree:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def delay(self) -> Degree:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def elem(self, i: int) -> FieldElem:
        return FieldElem(self[i], self.spec)

    def _other(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            return Poly((other,), self.spec)
        if not isinstance(other, Poly):
            return NotImplemented  # type: ignore[return-value]
        self.spec.check_same(other.spec)
        return other

    def __add__(self, other: Poly | int) -> Poly:
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly((self[i] + o[i] for i in range(n)), self.spec)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly((-c for c in self.coeffs), self.spec)

    def __sub__(self, other: Poly | int) -> Poly:
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: int) -> Poly:
        return (-self) + other

    def __mul__(self, other: Poly | int) -> Poly:
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Poly(_conv(self.coeffs, o.coeffs, self.spec.p), self.spec)

    __rmul__ = __mul__

    def scale(self, c: int) -> Poly:
        return Poly((c * x for x in self.coeffs), self.spec)

    def shift(self, d: int) -> Poly:
        """Multiply by D^d; negative d drops the low coefficients."""
        if d >= 0:
            return Poly((0,) * d + self.coeffs, self.spec)
        return Poly(self.coeffs[-d:], self.spec)

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        o = self._other(other)
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        p = self.spec.p
        r = list(self.coeffs)
        db = len(o.coeffs) - 1
        inv = self.spec.inv(o.lc)
        q = [0] * max(len(r) - db, 0)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i] * inv % p
            if c:
                q[i - db] = c
                for j, y in enumerate(o.coeffs):
                    r[i - db + j] = (r[i - db + j] - c * y) % p
        return Poly(q, self.spec), Poly(r[:db], self.spec)

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: Poly) -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(self.spec.inv(self.lc))

    def __pow__(self, e: int) -> Poly:
        out = Poly.one(self.spec)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.coeffs == _strip((other,), self.spec.p)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.spec.p, self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def to_list(self) -> list[int]:
        return list(self.coeffs) if self.coeffs else [0]

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.to_list()) + "]"

    def __repr__(self) -> str:
        return f"Poly({self.to_list()}, GF({self.spec.p}))"


def poly_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: monic ``g`` with ``g == s*a + t*b``."""
    a.spec.check_same(b.spec)
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    spec = a.spec
    r0, r1 = a, b
    s0, s1 = Poly.one(spec), Poly.zero(spec)
    t0, t1 = Poly.zero(spec), Poly.one(spec)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = spec.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


class LaurentPoly:
    """Finite Laurent series ``sum coeffs[i] * D^(offset + i)``."""

    __slots__ = ("spec", "offset", "coeffs")

    def __init__(self, offset: int, coeffs: Iterable[int], spec: FieldSpec):
        c = list(_strip(coeffs, spec.p))
        lead = 0
        while lead < len(c) and c[lead] == 0:
            lead += 1
        self.spec = spec
        self.coeffs = tuple(c[lead:])
        self.offset = offset + lead if self.coeffs else 0

    @classmethod
    def from_poly(cls, f: Poly) -> LaurentPoly:
        return cls(0, f.coeffs, f.spec)

    @classmethod
    def monomial(cls, exponent: int, spec: FieldSpec, coeff: int = 1) -> LaurentPoly:
        return cls(exponent, (coeff,), spec)

    @classmethod
    def zero(cls, spec: FieldSpec) -> LaurentPoly:
        return cls(0, (), spec)

    @classmethod
    def from_terms(cls, terms: dict[int, int], spec: FieldSpec) -> LaurentPoly:
        """Build from ``{exponent: coefficient}``."""
        if not terms:
            return cls.zero(spec)
        lo, hi = min(terms), max(terms)
        return cls(lo, (terms.get(e, 0) for e in range(lo, hi + 1)), spec)

    @property
    def delay(self) -> Degree:
        return self.offset if self.coeffs else INF

    @property
    def degree(self) -> Degree:
        return self.offset + len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, e: int) -> int:
        i = e - self.offset
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def terms(self) -> dict[int, int]:
        return {self.offset + i: c for i, c in enumerate(self.coeffs) if c}

    def causal(self) -> LaurentPoly:
        if self.offset >= 0:
            return self
        return LaurentPoly(0, self.coeffs[-self.offset:], self.spec)

    def anticausal(self) -> LaurentPoly:
        if self.offset >= 0:
            return LaurentPoly.zero(self.spec)
        return LaurentPoly(self.offset, self.coeffs[: -self.offset], self.spec)

    def to_poly(self) -> Poly:
        if self.coeffs and self.offset < 0:
            raise ValueError(f"{self!r} has negative exponents")
        return Poly((0,) * self.offset + self.coeffs, self.spec)

    def shift(self, d: int) -> LaurentPoly:
        return LaurentPoly(self.offset + d, self.coeffs, self.spec)

    def _other(self, other: LaurentPoly | Poly | int) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly(0, (other,), self.spec)
        if isinstance(other, Poly):
            other = LaurentPoly.from_poly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented  # type: ignore[return-value]
        self.spec.check_same(other.spec)
        return other

    def __add__(self, other: LaurentPoly | Poly | int) -> LaurentPoly:
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        lo = min(self.offset, o.offset)
        hi = max(self.offset + len(self.coeffs), o.offset + len(o.coeffs))
        out = [0] * (hi - lo)
        for x in (self, o):
            base = x.offset - lo
            for i, c in enumerate(x.coeffs):
                out[base + i] += c
        return LaurentPoly(lo, out, self.spec)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.offset, (-c for c in self.coeffs), self.spec)

    def __sub__(self, other: LaurentPoly | Poly | int) -> LaurentPoly:
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other: LaurentPoly | Poly | int) -> LaurentPoly:
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return LaurentPoly(
            self.offset + o.offset, _conv(self.coeffs, o.coeffs, self.spec.p), self.spec
        )

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            other = LaurentPoly.from_poly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.offset == other.offset
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.spec.p, self.offset, self.coeffs))

    def to_pair(self) -> tuple[int, list[int]]:
        return self.offset, list(self.coeffs) if self.coeffs else [0]

    def __str__(self) -> str:
        off, c = self.to_pair()
        return f"({off}, [{','.join(map(str, c))}])"

    def __repr__(self) -> str:
        return f"LaurentPoly{self}"


def delay_degree(x: LaurentPoly | Poly) -> tuple[Degree, Degree]:
    return x.delay, x.degree


def causal_part(x: LaurentPoly) -> LaurentPoly:
    return x.causal()


def anticausal_part(x: LaurentPoly) -> LaurentPoly:
    return x.anticausal()


class TruncatedSeries:
    """Laurent series known exactly below ``horizon``; unknown from there on.

    ``horizon`` may be ``INF`` for a series that is exactly a Laurent
    polynomial.
    """

    __slots__ = ("spec", "offset", "coeffs", "horizon")

    def __init__(self, offset: int, coeffs: Iterable[int], horizon: Degree, spec: FieldSpec):
        c = list(coeffs)
        if horizon != INF:
            c = c[: max(int(horizon) - offset, 0)]
        lp = LaurentPoly(offset, c, spec)
        self.spec = spec
        self.offset = lp.offset
        self.coeffs = lp.coeffs
        self.horizon = horizon

    @classmethod
    def exact(cls, x: LaurentPoly | Poly) -> TruncatedSeries:
        if isinstance(x, Poly):
            x = LaurentPoly.from_poly(x)
        return cls(x.offset, x.coeffs, INF, x.spec)

    @classmethod
    def from_laurent(cls, x: LaurentPoly | Poly, horizon: Degree) -> TruncatedSeries:
        if isinstance(x, Poly):
            x = LaurentPoly.from_poly(x)
        return cls(x.offset, x.coeffs, horizon, x.spec)

    def known_part(self) -> LaurentPoly:
        return LaurentPoly(self.offset, self.coeffs, self.spec)

    def coeff(self, e: int) -> int:
        if e >= self.horizon:
            raise ValueError(f"coefficient of D^{e} is beyond horizon {self.horizon}")
        return self.known_part().coeff(e)

    def lower_bound(self) -> Degree:
        """Lowest exponent that may carry a nonzero coefficient."""
        return self.offset if self.coeffs else self.horizon

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self.spec.check_same(other.spec)
        h = min(self.horizon, other.horizon)
        s = self.known_part() + other.known_part()
        return TruncatedSeries(s.offset, s.coeffs, h, self.spec)

    def __neg__(self) -> TruncatedSeries:
        s = -self.known_part()
        return TruncatedSeries(s.offset, s.coeffs, self.horizon, self.spec)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.spec != other.spec:
            raise MixedFields(f"{self.spec} vs {other.spec}")
        # A product coefficient is known only if every contributing pair is.
        h = min(self.horizon + other.lower_bound(), other.horizon + self.lower_bound())
        s = self.known_part() * other.known_part()
        return TruncatedSeries(s.offset, s.coeffs, h, self.spec)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.horizon == other.horizon
            and self.offset == other.offset
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.known_part()}, horizon={self.horizon})"


class RationalFn:
    """``num/den`` in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.spec)
        num.spec.check_same(den.spec)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, Poly.one(num.spec)
            return
        g = poly_gcd(num, den)[0]
        num, den = num // g, den // g
        inv = num.spec.inv(den.lc)
        self.num, self.den = num.scale(inv), den.scale(inv)

    @classmethod
    def from_laurent(cls, x: LaurentPoly) -> RationalFn:
        spec = x.spec
        if x.offset >= 0:
            return cls(x.to_poly())
        return cls(Poly(x.coeffs, spec), Poly.monomial(-x.offset, spec))

    @property
    def spec(self) -> FieldSpec:
        return self.num.spec

    def is_causal(self) -> bool:
        return self.den[0] != 0

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __add__(self, other: RationalFn) -> RationalFn:
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> RationalFn:
        return RationalFn(-self.num, self.den)

    def __sub__(self, other: RationalFn) -> RationalFn:
        return self + (-other)

    def __mul__(self, other: RationalFn) -> RationalFn:
        return RationalFn(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: RationalFn) -> RationalFn:
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def split(self) -> tuple[LaurentPoly, RationalFn]:
        """Return ``(Z(f), K(f))``: anticausal Laurent part and causal remainder."""
        spec = self.spec
        s = self.den.delay
        if s == 0 or self.is_zero():
            return LaurentPoly.zero(spec), self
        s = int(s)
        c = self.den.shift(-s)
        head = rational_expand(RationalFn(self.num, c), s).known_part().shift(-s)
        z = head.anticausal()
        rest = self - RationalFn.from_laurent(z)
        return z, rest

    def __repr__(self) -> str:
        return f"RationalFn({self.num.to_list()} / {self.den.to_list()})"


def rational_expand(f: RationalFn, horizon: int) -> TruncatedSeries:
    """Power-series expansion of a causal rational function below ``horizon``."""
    if not f.is_causal():
        raise NonCausalDenominator(f"denominator {f.den} vanishes at D=0")
    p = f.spec.p
    d0inv = f.spec.inv(f.den[0])
    den = f.den.coeffs
    out: list[int] = []
    for t in range(max(horizon, 0)):
        acc = f.num[t]
        for i in range(1, min(t, len(den) - 1) + 1):
            acc -= den[i] * out[t - i]
        out.append(acc * d0inv % p)
    return TruncatedSeries(0, out, horizon, f.spec)
