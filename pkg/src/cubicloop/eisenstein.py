"""Exact arithmetic in K = Z3[theta], theta^2 + theta + 1 = 0.

Elements are stored as exact integer pairs (a, b) meaning a + b*theta.
The uniformizer is pi = 1 - theta; it satisfies pi^2 = -3*theta and
3 = -theta^2 * pi^2, so the extension is totally ramified with nu(3) = 2.

Truncation is lazy: `prec` is metadata (the value is only claimed modulo
pi^prec, with None meaning exact); coefficients are reduced only when a
canonical digit expansion is requested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class PrecisionExhausted(Exception):
    """An operation would claim more pi-adic precision than is available."""


class NonUnitInverse(Exception):
    """Inversion of an element with positive valuation."""


class NonIntegralQuotient(Exception):
    """Division whose result would not lie in K."""


INFINITE = math.inf


def _min_prec(p: int | None, q: int | None) -> int | None:
    if p is None:
        return q
    if q is None:
        return p
    return min(p, q)


class RingElt:
    """a + b*theta with tracked pi-adic precision (prec=None means exact)."""

    __slots__ = ("a", "b", "prec")

    def __init__(self, a: int, b: int = 0, prec: int | None = None):
        self.a = a
        self.b = b
        self.prec = prec

    @staticmethod
    def _coerce(x) -> "RingElt":
        if isinstance(x, RingElt):
            return x
        if isinstance(x, int):
            return RingElt(x)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElt(self.a + o.a, self.b + o.b, _min_prec(self.prec, o.prec))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RingElt(self.a - o.a, self.b - o.b, _min_prec(self.prec, o.prec))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return RingElt(-self.a, -self.b, self.prec)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # theta^2 = -1 - theta
        a, b, c, d = self.a, self.b, o.a, o.b
        bd = b * d
        return RingElt(a * c - bd, a * d + b * c - bd, _min_prec(self.prec, o.prec))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not ring elements")
        result = RingElt(1, 0, self.prec if n > 0 else None)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.prec == o.prec

    def __hash__(self):
        return hash((self.a, self.b, self.prec))

    def __repr__(self):
        if self.prec is None:
            return f"RingElt({self.a}, {self.b})"
        return f"RingElt({self.a}, {self.b}, prec={self.prec})"

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def norm(self) -> int:
        """Norm to Z3: N(a + b*theta) = a^2 - a*b + b^2."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def conj(self) -> "RingElt":
        """Galois conjugate a + b*theta^2 = (a - b) - b*theta."""
        return RingElt(self.a - self.b, -self.b, self.prec)


ZERO = RingElt(0)
ONE = RingElt(1)
THETA = RingElt(0, 1)
PI = RingElt(1, -1)  # the uniformizer 1 - theta
THREE = RingElt(3)


def _v3(n: int) -> int:
    v = 0
    while n % 3 == 0:
        n //= 3
        v += 1
    return v


def nu(x: RingElt) -> int | float:
    """Raw pi-adic valuation, ignoring precision metadata."""
    if x.is_zero():
        return INFINITE
    return _v3(x.norm())


@dataclass(frozen=True)
class Valuation:
    """nu(x), or INFINITE; below_precision marks a truncated value whose
    raw valuation reached its precision bound."""

    value: int | float
    below_precision: bool = False

    @property
    def is_infinite(self) -> bool:
        return self.value == INFINITE


def valuation(x: RingElt) -> Valuation:
    raw = nu(x)
    if x.prec is not None and raw >= x.prec:
        return Valuation(x.prec, below_precision=True)
    return Valuation(raw)


@dataclass(frozen=True)
class DigitVector:
    """Balanced digits d_i in {-1, 0, 1}; represents sum d_i * pi^i mod pi^n."""

    digits: tuple[int, ...]

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)


def _balanced_residue(x: RingElt) -> int:
    # theta = 1 mod pi, so x mod pi is (a + b) mod 3, balanced.
    r = (x.a + x.b) % 3
    return r - 3 if r == 2 else r


def divide_by_pi(x: RingElt) -> RingElt:
    """Exact division by pi = 1 - theta, via pi*(1 - theta^2) = 3."""
    if (x.a + x.b) % 3 != 0:
        raise NonIntegralQuotient(f"{x!r} is not divisible by pi")
    # x * (2 + theta) = (2a - b) + (a + b) theta, then divide by 3.
    prec = None if x.prec is None else x.prec - 1
    if prec is not None and prec < 0:
        raise PrecisionExhausted("dividing by pi below known precision")
    return RingElt((2 * x.a - x.b) // 3, (x.a + x.b) // 3, prec)


def to_digits(x: RingElt, n: int) -> DigitVector:
    if x.prec is not None and x.prec < n:
        raise PrecisionExhausted(f"need {n} digits, have precision {x.prec}")
    digits = []
    cur = RingElt(x.a, x.b)
    for _ in range(n):
        d = _balanced_residue(cur)
        digits.append(d)
        cur = divide_by_pi(cur - d)
    return DigitVector(tuple(digits))


def from_digits(d: DigitVector) -> RingElt:
    acc = ZERO
    for digit in reversed(d.digits):
        acc = acc * PI + digit
    return RingElt(acc.a, acc.b, len(d.digits))


def reduce_mod(x: RingElt, n: int) -> RingElt:
    """Canonical balanced representative of x mod pi^n, with prec = n."""
    return from_digits(to_digits(x, n))


def invert(x: RingElt, n: int) -> RingElt:
    """y with x*y = 1 mod pi^n.  Exact for the six units of K itself."""
    if nu(x) != 0:
        raise NonUnitInverse(f"nu({x!r}) > 0")
    if x.prec is not None and x.prec < n:
        raise PrecisionExhausted(f"inverting to {n} digits needs precision {n}")
    norm = x.norm()
    c = x.conj()
    if norm == 1:
        # +-1, +-theta, +-theta^2: the inverse is the conjugate exactly.
        return RingElt(c.a, c.b, x.prec)
    # x^{-1} = conj(x)/N(x); invert the norm 3-adically.  3^m = unit * pi^{2m}.
    m = n // 2 + 1
    mod = 3**m
    ninv = pow(norm % mod, -1, mod)
    return reduce_mod(RingElt(c.a * ninv, c.b * ninv), n)


def div_exact(x: RingElt, y: RingElt, n: int) -> RingElt:
    """x / y in K, to precision n beyond the valuation shift."""
    vy = nu(y)
    if vy == INFINITE:
        raise NonIntegralQuotient("division by zero")
    if nu(x) < vy:
        raise NonIntegralQuotient(f"nu(x)={nu(x)} < nu(y)={vy}")
    num, den = x, y
    for _ in range(vy):
        num = divide_by_pi(num)
        den = divide_by_pi(den)
    out_prec = _min_prec(x.prec, y.prec)
    if out_prec is not None:
        out_prec -= vy
        if out_prec < 1:
            raise PrecisionExhausted("quotient retains no precision")
    if den.norm() == 1:
        q = num * den.conj()
        return RingElt(q.a, q.b, out_prec)
    target = n if out_prec is None else min(n, out_prec)
    if target < 1:
        raise PrecisionExhausted("quotient retains no precision")
    q = num * invert(RingElt(den.a, den.b), target)
    return reduce_mod(q, target)


def equal_mod(x: RingElt, y: RingElt, n: int) -> bool:
    p = _min_prec(x.prec, y.prec)
    if p is not None and p < n:
        raise PrecisionExhausted(f"comparison mod pi^{n} with precision {p}")
    return nu(x - y) >= n
