"""Exact arithmetic in a real number field Q(alpha).

Elements are stored in the power basis 1, alpha, ..., alpha^(d-1) with
``Fraction`` coefficients.  Signs are certified by bisecting an isolating
interval of alpha until an enclosure of the element's value excludes zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import DivisionByZero, InvalidField, PrecisionCap, ReducibleField

DEFAULT_PRECISION_CAP = 4096


def to_fraction(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def fmt_rational(q) -> str:
    q = to_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- polynomials over Q, coefficient lists with the constant term first --

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pmul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _psub(p, q):
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0)
                  for i in range(n)])


def _pdivmod(p, q):
    p = _trim(p)
    q = _trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    rem = [Fraction(c) for c in p]
    lead = q[-1]
    while len(rem) >= len(q) and rem:
        shift = len(rem) - len(q)
        coef = rem[-1] / lead
        quo[shift] = coef
        for i, c in enumerate(q):
            rem[shift + i] -= coef * c
        rem = _trim(rem)
    return _trim(quo), rem


def _sturm_count(p, lo, hi):
    """Number of distinct real roots of p in (lo, hi]."""
    seq = [_trim(p)]
    deriv = _trim([i * c for i, c in enumerate(p)][1:])
    seq.append(deriv)
    while seq[-1]:
        _, r = _pdivmod(seq[-2], seq[-1])
        seq.append([-c for c in r])
    seq.pop()

    def changes(x):
        signs = [s for s in (_sgn(_peval(q, x)) for q in seq) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return changes(lo) - changes(hi)


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class FieldSpec:
    """A real number field F = Q(alpha).

    ``min_poly`` is monic with the constant term first; ``root_interval``
    isolates the real root alpha.  Degree one encodes Q itself.
    """

    min_poly: tuple
    root_interval: tuple
    precision_cap: int = field(default=DEFAULT_PRECISION_CAP, compare=False)
    _levels: list = field(default_factory=list, compare=False, repr=False)

    def __post_init__(self):
        poly = tuple(to_fraction(c) for c in self.min_poly)
        lo, hi = (to_fraction(c) for c in self.root_interval)
        object.__setattr__(self, "min_poly", poly)
        object.__setattr__(self, "root_interval", (lo, hi))
        if len(poly) < 2:
            raise InvalidField("minimal polynomial must have degree >= 1")
        if poly[-1] != 1:
            raise InvalidField("minimal polynomial must be monic")
        if self.precision_cap < 1:
            raise InvalidField("precision cap must be positive")
        if self.degree == 1:
            return
        if not lo < hi:
            raise InvalidField("root interval must satisfy lo < hi")
        plo, phi = _peval(poly, lo), _peval(poly, hi)
        if plo == 0 or phi == 0:
            raise InvalidField("minimal polynomial vanishes at an interval endpoint")
        if _sgn(plo) == _sgn(phi):
            raise InvalidField("no sign change of the minimal polynomial on the interval")
        if _sturm_count(poly, lo, hi) != 1:
            raise InvalidField("root interval does not isolate exactly one root")
        self._levels.append((lo, hi, _sgn(plo)))

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls((0, 1), (0, 0))

    @classmethod
    def sqrt(cls, k: int) -> "FieldSpec":
        """Q(sqrt k) for a positive non-square integer k."""
        r = math.isqrt(k)
        if r * r == k or k <= 0:
            raise InvalidField(f"{k} is not a positive non-square")
        return cls((-k, 0, 1), (r, r + 1))

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    def element(self, coeffs) -> "FieldElement":
        return FieldElement.make(coeffs, self)

    def rational(self, q) -> "FieldElement":
        return FieldElement.make([q], self)

    def zero(self) -> "FieldElement":
        return self.rational(0)

    def one(self) -> "FieldElement":
        return self.rational(1)

    def alpha(self) -> "FieldElement":
        if self.degree == 1:
            return self.rational(-self.min_poly[0])
        return FieldElement.make([0, 1], self)

    def alpha_interval(self, depth: int):
        """Isolating interval of alpha after ``depth`` bisections."""
        if depth > self.precision_cap:
            raise PrecisionCap(f"bisection depth {depth} exceeds cap {self.precision_cap}")
        levels = self._levels
        while len(levels) <= depth:
            lo, hi, slo = levels[-1]
            mid = (lo + hi) / 2
            smid = _sgn(_peval(self.min_poly, mid))
            if smid == 0:
                raise ReducibleField(f"minimal polynomial has the rational root {mid}")
            if smid == slo:
                levels.append((mid, hi, smid))
            else:
                levels.append((lo, mid, slo))
        lo, hi, _ = levels[depth]
        return lo, hi


@dataclass(frozen=True, eq=False)
class FieldElement:
    coeffs: tuple
    field: FieldSpec

    @classmethod
    def make(cls, coeffs, spec: FieldSpec) -> "FieldElement":
        d = spec.degree
        cs = [to_fraction(c) for c in coeffs]
        if len(cs) > d:
            cs = _reduce(cs, spec.min_poly)
        cs = cs + [Fraction(0)] * (d - len(cs))
        return cls(tuple(cs), spec)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements belong to different fields")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement.make([other], self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.field)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(tuple(-a for a in self.coeffs), self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), self.field)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational():
            return self.scale(other.coeffs[0])
        if self.is_rational():
            return other.scale(self.coeffs[0])
        prod = _pmul(list(self.coeffs), list(other.coeffs))
        return FieldElement.make(_reduce(prod, self.field.min_poly), self.field)

    __rmul__ = __mul__

    def scale(self, q) -> "FieldElement":
        return FieldElement(tuple(c * q for c in self.coeffs), self.field)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return FieldElement.make([1 / self.coeffs[0]], self.field)
        return FieldElement.make(_poly_inverse(list(self.coeffs), self.field.min_poly), self.field)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __repr__(self):
        body = ", ".join(fmt_rational(c) for c in self.coeffs)
        return f"FieldElement([{body}])"

    def sign(self) -> int:
        return sign(self, self.field)

    def __lt__(self, other):
        return sign(self - other, self.field) < 0

    def __le__(self, other):
        return sign(self - other, self.field) <= 0

    def __gt__(self, other):
        return sign(self - other, self.field) > 0

    def __ge__(self, other):
        return sign(self - other, self.field) >= 0


def _reduce(p, modulus):
    """Reduce the coefficient list ``p`` modulo a monic polynomial."""
    d = len(modulus) - 1
    p = [to_fraction(c) for c in p]
    for k in range(len(p) - 1, d - 1, -1):
        c = p[k]
        if c:
            for i in range(d + 1):
                p[k - d + i] -= c * modulus[i]
    return p[:d]


def _poly_inverse(p, modulus):
    # Extended Euclid: track s with s*p == r (mod modulus).
    r0, r1 = _trim(modulus), _trim(p)
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
    if not r1:
        raise ReducibleField(f"element shares the factor {r0} with the minimal polynomial")
    c = r1[0]
    return [x / c for x in s1]


def field_arith(op: str, x: FieldElement, y: FieldElement | None = None) -> FieldElement:
    """Apply ``op`` in {add, sub, mul, inv}; ``inv`` ignores ``y``."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown field operation {op!r}")


def _value_bounds(coeffs, lo, hi):
    # Centered form: |p(a) - p(mid)| <= r * sum_j j |c_j| M^(j-1) for a in [lo, hi].
    mid = (lo + hi) / 2
    rad = (hi - lo) / 2
    big = max(abs(lo), abs(hi))
    val = _peval(coeffs, mid)
    slope = Fraction(0)
    power = Fraction(1)
    for j in range(1, len(coeffs)):
        slope += j * abs(coeffs[j]) * power
        power *= big
    err = rad * slope
    return val - err, val + err


_START_DEPTH = 24


def sign(x: FieldElement, spec: FieldSpec | None = None) -> int:
    """Certified sign of ``x`` as -1, 0 or +1."""
    spec = spec or x.field
    if x.is_zero():
        return 0
    if x.is_rational():
        return _sgn(x.coeffs[0])
    depth = _START_DEPTH
    while True:
        lo, hi = spec.alpha_interval(min(depth, spec.precision_cap))
        vlo, vhi = _value_bounds(x.coeffs, lo, hi)
        if vlo > 0:
            return 1
        if vhi < 0:
            return -1
        if depth >= spec.precision_cap:
            raise PrecisionCap(f"sign undetermined after {spec.precision_cap} bisections")
        depth *= 2


def enclose(x: FieldElement, eps) -> tuple:
    """Rational interval of width <= eps containing the value of ``x``."""
    eps = to_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if x.is_rational():
        return x.coeffs[0], x.coeffs[0]
    spec = x.field
    depth = _START_DEPTH
    while True:
        lo, hi = spec.alpha_interval(min(depth, spec.precision_cap))
        vlo, vhi = _value_bounds(x.coeffs, lo, hi)
        if vhi - vlo <= eps:
            return vlo, vhi
        if depth >= spec.precision_cap:
            raise PrecisionCap(f"enclosure of width {eps} needs more than {spec.precision_cap} bisections")
        depth *= 2


def approx(x: FieldElement, bits: int = 64) -> Fraction:
    """A rational within 2**-bits of ``x``."""
    lo, hi = enclose(x, Fraction(1, 1 << bits))
    return (lo + hi) / 2


def floor_value(x: FieldElement) -> int:
    """Exact floor of the real value of ``x``."""
    if x.is_rational():
        return math.floor(x.coeffs[0])
    width = Fraction(1, 4)
    while True:
        lo, hi = enclose(x, width)
        if math.floor(lo) == math.floor(hi):
            return math.floor(lo)
        # The value is irrational, so it cannot sit on the integer boundary.
        width /= 1 << 16


def vec_scale(v: Sequence[FieldElement], q) -> tuple:
    return tuple(c * q for c in v)
