"""Points on the cubic surface F = T0^3 + T1^3 + T2^3 + theta*T3^3 = 0.

Chord/tangent geometry, Hensel lifting of the 243 canonical residue
classes mod pi^3, and enumeration of the residue classes mod pi^n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .eisenstein import (
    INFINITE,
    ONE,
    PI,
    THETA,
    ZERO,
    DigitVector,
    PrecisionExhausted,
    RingElt,
    div_exact,
    divide_by_pi,
    from_digits,
    invert,
    nu,
    to_digits,
)

DEFAULT_PRECISION = 12
MAX_PRECISION = 48

FORM_COEFFS = (ONE, ONE, ONE, THETA)

PI2 = PI * PI
PI3 = PI2 * PI


class PointsCoincide(Exception):
    """Chord requested through two projectively equal points."""


class DegenerateLine(Exception):
    """Both chord coefficients vanish for distinct points: a k-line on V.

    The surface has no k-lines, so this signals a bug and is fatal."""


class NotTangentDirection(Exception):
    pass


class HenselCriterionFailed(Exception):
    pass


@dataclass(frozen=True)
class ProjPoint:
    """Projective 4-tuple on (or near) V; prec is the working precision,
    i.e. the tuple agrees with a true surface point to about pi^prec."""

    coords: tuple[RingElt, RingElt, RingElt, RingElt]
    prec: int | None = None

    def effective_prec(self) -> int | None:
        p = self.prec
        for c in self.coords:
            if c.prec is not None:
                p = c.prec if p is None else min(p, c.prec)
        return p


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical residue tuple: pivot coordinate is exactly 1 and every
    earlier coordinate has positive valuation."""

    coords: tuple[DigitVector, DigitVector, DigitVector, DigitVector]
    pivot: int

    @property
    def depth(self) -> int:
        return len(self.coords[0])

    def truncate(self, n: int) -> "CanonicalForm":
        if n > self.depth:
            raise PrecisionExhausted(f"canonical form has only {self.depth} digits")
        return CanonicalForm(
            tuple(DigitVector(d.digits[:n]) for d in self.coords), self.pivot
        )

    def as_point(self) -> ProjPoint:
        return ProjPoint(tuple(from_digits(d) for d in self.coords), self.depth)


@dataclass(frozen=True)
class CompositionTrace:
    chord_a: RingElt
    chord_b: RingElt
    margin: int | float
    tau_prime: RingElt | None = None


@dataclass(frozen=True)
class LambdaParams:
    """Label of one of the 243 canonical classes mod pi^3.

    digits are (y, z, u) for family P, (y1, z1, u1) for family Q and
    (x, z2, u2) for family R; the coupled sign (epsilon, delta, sigma)
    equals digits[0] for P and digits[1] for Q and R."""

    family: str
    exp: int
    digits: tuple[int, int, int]

    def __post_init__(self):
        if self.family not in ("P", "Q", "R"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.exp not in (0, 1, 2):
            raise ValueError(f"theta exponent must be 0..2, got {self.exp}")
        if len(self.digits) != 3 or any(d not in (-1, 0, 1) for d in self.digits):
            raise ValueError(f"digits must be three of -1,0,1, got {self.digits}")

    @property
    def coupled_sign(self) -> int:
        return self.digits[0] if self.family == "P" else self.digits[1]


def eval_form(p: ProjPoint) -> RingElt:
    t0, t1, t2, t3 = p.coords
    val = t0**3 + t1**3 + t2**3 + THETA * t3**3
    if p.prec is not None and (val.prec is None or val.prec > p.prec):
        val = RingElt(val.a, val.b, p.prec)
    return val


def _capped_nu(x: RingElt, prec: int | None) -> int | float:
    raw = nu(x)
    if prec is not None and raw > prec:
        return prec
    return raw


def normalize(p: ProjPoint, n: int = 3, margin: int = 0) -> CanonicalForm:
    prec = p.effective_prec()
    vals = [_capped_nu(c, prec) for c in p.coords]
    vmin = min(vals)
    if vmin == INFINITE or (prec is not None and vmin >= prec):
        raise PrecisionExhausted("no coordinate with valuation below precision")
    coords = list(p.coords)
    for _ in range(int(vmin)):
        coords = [divide_by_pi(RingElt(c.a, c.b)) for c in coords]
    rem = None if prec is None else prec - int(vmin)
    if rem is not None and rem < n + margin:
        raise PrecisionExhausted(
            f"normalized precision {rem} below requested {n}+{margin}"
        )
    pivot = next(i for i, v in enumerate(vals) if v == vmin)
    w = invert(RingElt(coords[pivot].a, coords[pivot].b), n)
    digits = tuple(to_digits(c * w, n) for c in coords)
    return CanonicalForm(digits, pivot)


def _proportional(p: ProjPoint, q: ProjPoint, threshold: int | float) -> bool:
    for i in range(4):
        for j in range(i + 1, 4):
            minor = p.coords[i] * q.coords[j] - p.coords[j] * q.coords[i]
            if nu(minor) < threshold:
                return False
    return True


def chord(p: ProjPoint, q: ProjPoint) -> tuple[ProjPoint, CompositionTrace]:
    """Third intersection point of the line through p and q with V.

    Uses the homogeneous Vieta form R = B*p - A*q with A = sum c_i p_i^2 q_i
    and B = sum c_i p_i q_i^2 (the common factor 3 dropped projectively)."""
    prec = p.effective_prec()
    qprec = q.effective_prec()
    if qprec is not None:
        prec = qprec if prec is None else min(prec, qprec)
    work = prec if prec is not None else DEFAULT_PRECISION
    a = sum((c * pc * pc * qc for c, pc, qc in zip(FORM_COEFFS, p.coords, q.coords)), ZERO)
    b = sum((c * pc * qc * qc for c, pc, qc in zip(FORM_COEFFS, p.coords, q.coords)), ZERO)
    threshold = work - 3
    if min(nu(a), nu(b)) >= threshold:
        if _proportional(p, q, threshold):
            raise PointsCoincide("chord through projectively equal points")
        if _proportional(p, q, 1):
            # near-tangent chord through points of the same reduction class:
            # the coefficients are genuinely small, retry at higher precision
            raise PrecisionExhausted(
                f"chord coefficients have valuation >= {threshold} for nearby points"
            )
        raise DegenerateLine(
            "chord coefficients vanish for points distinct mod pi: a k-line on V"
        )
    coords = tuple(b * pc - a * qc for pc, qc in zip(p.coords, q.coords))
    out = ProjPoint(coords, prec)
    vmin = min(_capped_nu(c, prec) for c in coords)
    margin = INFINITE if prec is None else prec - vmin - 3
    return out, CompositionTrace(a, b, margin)


def tangent_section_point(p: ProjPoint, d: tuple[RingElt, ...]) -> ProjPoint:
    """Third intersection of the tangent line at p in direction d."""
    prec = p.effective_prec()
    work = prec if prec is not None else DEFAULT_PRECISION
    l1 = sum((c * pc * pc * di for c, pc, di in zip(FORM_COEFFS, p.coords, d)), ZERO)
    if nu(l1) < work:
        raise NotTangentDirection(f"nu(sum c_i p_i^2 d_i) = {nu(l1)} < {work}")
    l2 = sum((c * pc * di * di for c, pc, di in zip(FORM_COEFFS, p.coords, d)), ZERO)
    l3 = sum((c * di**3 for c, di in zip(FORM_COEFFS, d)), ZERO)
    # t = 0 is a double root; the third root gives p' = l3*p - 3*l2*d.
    if min(nu(l3), nu(l2) + 2) >= work - 3:
        # line inside the tangent cone (Eckhardt degeneracy)
        return p
    coords = tuple(l3 * pc - 3 * l2 * di for pc, di in zip(p.coords, d))
    return ProjPoint(coords, prec)


def _poly_eval(g: list[RingElt], y: RingElt) -> RingElt:
    acc = ZERO
    for coeff in reversed(g):
        acc = acc * y + coeff
    return acc


def _poly_deriv(g: list[RingElt]) -> list[RingElt]:
    return [i * c for i, c in enumerate(g)][1:]


def _clamp(x: RingElt, n: int) -> RingElt:
    """Centered coefficient reduction mod 3^m with 2m >= n: preserves x mod pi^n."""
    m = n // 2 + 1
    mod = 3**m
    a = x.a % mod
    b = x.b % mod
    if a > mod // 2:
        a -= mod
    if b > mod // 2:
        b -= mod
    return RingElt(a, b, x.prec)


def hensel_lift_root(g: list[RingElt], y0: RingElt, n: int) -> RingElt:
    """Newton-refine y0 to a root of g with nu(g(y)) >= n.

    Requires the general criterion nu(g(y0)) > 2*nu(g'(y0))."""
    dg = _poly_deriv(g)
    t = nu(_poly_eval(dg, y0))
    s = nu(_poly_eval(g, y0))
    if t == INFINITE or s <= 2 * t:
        raise HenselCriterionFailed(f"nu(g(y0))={s} not > 2*nu(g'(y0))={2 * t}")
    y = RingElt(y0.a, y0.b)
    work = n + 2 * int(t) + 4
    for _ in range(80):
        fy = _poly_eval(g, y)
        if nu(fy) >= n:
            return y
        dfy = _poly_eval(dg, y)
        delta = div_exact(fy, dfy, work)
        y = _clamp(RingElt(y.a - delta.a, y.b - delta.b), work)
    raise PrecisionExhausted("Newton iteration did not converge")


def _small(a: int, b: int = 0) -> RingElt:
    return RingElt(a, b)


def residue_tuple(lp: LambdaParams) -> tuple[RingElt, RingElt, RingElt, RingElt]:
    """Exact representative of the class tuple mod pi^3."""
    base = -(THETA**lp.exp)
    if lp.family == "P":
        y, z, u = lp.digits
        return (
            ONE,
            base + PI2 * y,
            PI * y + PI2 * z,
            -(PI * y) + PI2 * u,
        )
    if lp.family == "Q":
        y1, z1, u1 = lp.digits
        return (
            ONE,
            PI * z1 + PI2 * y1,
            base + PI2 * z1,
            -(PI * z1) + PI2 * u1,
        )
    x, z2, u2 = lp.digits
    return (
        PI * z2 + PI2 * x,
        ONE,
        base + PI2 * z2,
        -(PI * z2) + PI2 * u2,
    )


_HENSEL_INDEX = {"P": 1, "Q": 2, "R": 2}


def canonical_form(lp: LambdaParams) -> CanonicalForm:
    coords = residue_tuple(lp)
    pivot = 0 if lp.family in ("P", "Q") else 1
    return CanonicalForm(tuple(to_digits(c, 3) for c in coords), pivot)


def _solve_hensel_coordinate(
    coords: list[RingElt], idx: int, exp: int, w0: int, n: int
) -> RingElt:
    """Resolve coordinate idx = -theta^exp + pi^2*w with w = w0 mod pi so
    that nu(F) >= n; returns the full coordinate value."""
    base = -(THETA**exp)
    c = FORM_COEFFS[idx]
    rest = ZERO
    for j, coeff in enumerate(FORM_COEFFS):
        if j != idx:
            rest = rest + coeff * coords[j] ** 3
    g = [
        rest + c * base**3,
        c * 3 * base * base * PI2,
        c * 3 * base * PI2 * PI2,
        c * PI2**3,
    ]
    ghat = []
    for coeff in g:
        if nu(coeff) < 4:
            raise HenselCriterionFailed(
                f"lifting equation coefficient {coeff!r} not divisible by pi^4"
            )
        v = RingElt(coeff.a, coeff.b)
        for _ in range(4):
            v = divide_by_pi(v)
        ghat.append(v)
    w = hensel_lift_root(ghat, _small(w0), n - 4)
    return _clamp(base + PI2 * w, n + 2)


def lift_representative(lp: LambdaParams, n: int = DEFAULT_PRECISION) -> ProjPoint:
    coords = list(residue_tuple(lp))
    idx = _HENSEL_INDEX[lp.family]
    coords[idx] = _solve_hensel_coordinate(coords, idx, lp.exp, lp.coupled_sign, n)
    return ProjPoint(tuple(coords), n)


_FREE_INDICES = {"P": (2, 3), "Q": (1, 3), "R": (0, 3)}


def random_lift(lp: LambdaParams, n: int, seed: int) -> ProjPoint:
    """A point on V in the class of lp whose free coordinates carry
    seed-dependent digits at levels pi^3 and pi^4."""
    rng = random.Random(f"{lp.family}:{lp.exp}:{lp.digits}:{n}:{seed}")
    coords = list(residue_tuple(lp))
    for i in _FREE_INDICES[lp.family]:
        bump = _small(rng.randrange(-1, 2), rng.randrange(-1, 2)) * PI3
        bump = bump + _small(rng.randrange(-1, 2), rng.randrange(-1, 2)) * PI3 * PI
        coords[i] = coords[i] + bump
    idx = _HENSEL_INDEX[lp.family]
    coords[idx] = _solve_hensel_coordinate(coords, idx, lp.exp, lp.coupled_sign, n)
    return ProjPoint(tuple(coords), n)


def all_params() -> list[LambdaParams]:
    """The 243 class labels in the fixed lexicographic order
    (family P < Q < R, then exponent, then digits)."""
    out = []
    for family in "PQR":
        for exp in (0, 1, 2):
            for digits in product((-1, 0, 1), repeat=3):
                out.append(LambdaParams(family, exp, digits))
    return out


def enumerate_classes(n: int) -> list[CanonicalForm]:
    if n == 1:
        tuples = [
            (ONE, -ONE, ZERO, ZERO),
            (ONE, ZERO, -ONE, ZERO),
            (ZERO, ONE, -ONE, ZERO),
        ]
        pivots = [0, 0, 1]
        return [
            CanonicalForm(tuple(to_digits(c, 1) for c in t), piv)
            for t, piv in zip(tuples, pivots)
        ]
    if n == 2:
        out = []
        for family in "PQR":
            for exp in (0, 1, 2):
                base = -(THETA**exp)
                for s in (-1, 0, 1):
                    sp = PI * s
                    if family == "P":
                        t, piv = (ONE, base, sp, -sp), 0
                    elif family == "Q":
                        t, piv = (ONE, sp, base, -sp), 0
                    else:
                        t, piv = (sp, ONE, base, -sp), 1
                    out.append(CanonicalForm(tuple(to_digits(c, 2) for c in t), piv))
        return out
    if n == 3:
        return [canonical_form(lp) for lp in all_params()]
    raise ValueError(f"n must be 1, 2 or 3, got {n}")


def compose_parametric(lp_p: LambdaParams, lp_q: LambdaParams) -> CanonicalForm:
    """Closed-form mod-pi^3 composition of a family-P and a family-Q class."""
    if lp_p.family != "P" or lp_q.family != "Q":
        raise ValueError("closed formula applies to (family P, family Q) pairs")
    i, (y, z, u) = lp_p.exp, lp_p.digits
    j, (y1, z1, u1) = lp_q.exp, lp_q.digits
    th_i = THETA**i
    th_2i = THETA ** (2 * i)
    th_j = THETA**j
    th_2j = THETA ** (2 * j)
    tau = PI * (th_2i * z1 - th_2j * y) + PI2 * (y1 - z - y * y + y * z1)
    r0 = tau
    r1 = (-th_i + PI2 * y) * tau + PI * z1 + PI2 * y1 + th_i - PI2 * y
    r2 = (PI * y + PI2 * z) * tau - th_j + PI2 * z1 - PI * y - PI2 * z
    r3 = (-(PI * y) + PI2 * u) * tau - PI * z1 + PI2 * u1 + PI * y - PI2 * u
    return normalize(ProjPoint((r0, r1, r2, r3), 3), 3)


def point_from_coords(coords, prec: int | None = None) -> ProjPoint:
    return ProjPoint(tuple(coords), prec)
