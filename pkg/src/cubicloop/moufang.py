"""The 243-class composition table and commutative-Moufang-loop checks."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .eisenstein import PrecisionExhausted
from .surface import (
    DEFAULT_PRECISION,
    MAX_PRECISION,
    CanonicalForm,
    LambdaParams,
    PointsCoincide,
    ProjPoint,
    all_params,
    canonical_form,
    chord,
    lift_representative,
    normalize,
    random_lift,
)

N_CLASSES = 243


class AdmissibilityViolation(Exception):
    """Two representative pairs of the same classes composed to different
    classes.  Fatal: it would falsify the admissibility of the mod-pi^3
    relation, so it always signals a bug."""


@lru_cache(maxsize=1)
def class_params() -> tuple[LambdaParams, ...]:
    return tuple(all_params())


@lru_cache(maxsize=1)
def class_forms() -> tuple[CanonicalForm, ...]:
    return tuple(canonical_form(lp) for lp in class_params())


@lru_cache(maxsize=1)
def _form_index() -> dict[CanonicalForm, int]:
    index = {form: k for k, form in enumerate(class_forms())}
    if len(index) != N_CLASSES:
        raise AssertionError("canonical forms of the 243 classes collide")
    return index


def class_of_form(form: CanonicalForm) -> int:
    try:
        return _form_index()[form]
    except KeyError:
        raise KeyError(f"canonical form not on the surface: {form}") from None


def class_of_point(p: ProjPoint) -> int:
    return class_of_form(normalize(p, 3))


@dataclass(frozen=True)
class ClassId:
    id: int
    params: LambdaParams


def class_id(k: int) -> ClassId:
    return ClassId(k, class_params()[k])


@dataclass
class ClassTable:
    """243x243 table of the symmetric composition S1 o S2."""

    circ: np.ndarray
    precision: int
    seed: int


@dataclass
class LoopTable:
    """Loop law x*y = unit o (x o y) derived from a class table."""

    mul: np.ndarray
    unit: int
    inv: np.ndarray


@dataclass
class CheckReport:
    name: str
    passed: bool
    checks: int
    counterexample: tuple | None = None
    detail: str = ""


@dataclass
class LoopReport:
    order: int
    exponent: int
    nucleus: tuple[int, ...]
    witness_count: int
    witnesses: list[tuple[int, int, int]]
    admissibility_pass: int
    admissibility_fail: int


def _rep(lp: LambdaParams, n: int, seed: int | None) -> ProjPoint:
    if seed is None:
        return lift_representative(lp, n)
    return random_lift(lp, n, seed)


def compose_classes(
    i: int, j: int, n: int = DEFAULT_PRECISION, seed_pair: tuple[int, int] | None = None
) -> int:
    """Class of the chord through representatives of classes i and j.

    Equal classes (or an explicit seed pair) use two random lifts; retries
    at doubled precision on precision exhaustion, bounded by MAX_PRECISION."""
    params = class_params()
    if seed_pair is None and i == j:
        seed_pair = (0, 1)
    work = n
    bump = 0
    while True:
        try:
            s0, s1 = seed_pair if seed_pair is not None else (None, None)
            p = _rep(params[i], work, None if s0 is None else s0 + bump)
            q = _rep(params[j], work, None if s1 is None else s1 + 1000003 * (bump + 1))
            r, _trace = chord(p, q)
            return class_of_form(normalize(r, 3, margin=3))
        except PointsCoincide:
            # the two random lifts collided beyond pi^3; redraw
            bump += 1
            if bump > 16:
                raise
        except PrecisionExhausted:
            if work >= MAX_PRECISION:
                raise
            work = min(2 * work, MAX_PRECISION)


def build_class_table(
    n: int = DEFAULT_PRECISION,
    lift_samples: int = 20,
    seed: int = 0,
    admissibility_cells: int = 500,
) -> ClassTable:
    """Build the full o-table and spot-check admissibility.

    For `admissibility_cells` random cells, `lift_samples` extra random
    representative pairs are composed and must land in the same class."""
    params = class_params()
    reps = [lift_representative(lp, n) for lp in params]
    circ = np.empty((N_CLASSES, N_CLASSES), dtype=np.int16)
    for i in range(N_CLASSES):
        for j in range(i, N_CLASSES):
            if i == j:
                cid = compose_classes(i, i, n, seed_pair=(2 * seed, 2 * seed + 1))
            else:
                r, _trace = chord(reps[i], reps[j])
                cid = class_of_form(normalize(r, 3, margin=3))
            circ[i, j] = cid
            circ[j, i] = cid
    table = ClassTable(circ, n, seed)
    if admissibility_cells > 0:
        check_admissibility(table, admissibility_cells, lift_samples, seed)
    return table


def check_admissibility(
    table: ClassTable, cells: int, samples_per_cell: int, seed: int
) -> tuple[int, int]:
    """Re-derive sampled cells from independent random lifts.

    Any mismatch raises AdmissibilityViolation; returns (passes, fails)."""
    rng = random.Random(f"admissibility:{seed}")
    passes = 0
    for _ in range(cells):
        i = rng.randrange(N_CLASSES)
        j = rng.randrange(N_CLASSES)
        expected = int(table.circ[i, j])
        for s in range(samples_per_cell):
            pair = (rng.randrange(1 << 30), rng.randrange(1 << 30))
            got = compose_classes(i, j, table.precision, seed_pair=pair)
            if got != expected:
                raise AdmissibilityViolation(
                    f"cell ({i},{j}) sample {s}: got class {got}, table says {expected}"
                )
            passes += 1
    return passes, 0


def verify_quasigroup(t: ClassTable) -> CheckReport:
    """Exhaustive check of x o y = y o x and x o (x o y) = y."""
    circ = t.circ
    if not np.array_equal(circ, circ.T):
        i, j = np.argwhere(circ != circ.T)[0]
        return CheckReport("symmetric", False, N_CLASSES**2, (int(i), int(j)))
    ids = np.arange(N_CLASSES)
    for x in range(N_CLASSES):
        back = circ[x, circ[x]]
        if not np.array_equal(back, ids):
            y = int(np.argwhere(back != ids)[0][0])
            return CheckReport("involution", False, N_CLASSES**2, (x, y))
    return CheckReport("symmetric quasigroup", True, 2 * N_CLASSES**2)


def loop_from(t: ClassTable, unit: int) -> LoopTable:
    mul = t.circ[unit][t.circ]
    hits = mul == unit
    if not np.all(hits.sum(axis=1) == 1):
        raise AssertionError("row without a unique inverse; not a quasigroup")
    inv = np.argmax(hits, axis=1)
    return LoopTable(mul, unit, inv)


def verify_cml(l: LoopTable) -> list[CheckReport]:
    """Commutativity, unit, inverses and the three weak-associativity laws."""
    mul, unit = l.mul, l.unit
    n = N_CLASSES
    ids = np.arange(n)
    reports = [
        CheckReport("commutativity", bool(np.array_equal(mul, mul.T)), n * n),
        CheckReport("unit", bool(np.array_equal(mul[unit], ids)), n),
        CheckReport(
            "inverses", bool(np.array_equal(mul[ids, l.inv], np.full(n, unit))), n
        ),
    ]
    sq = mul[ids, ids]
    ok3 = all(np.array_equal(mul[x, mul[x]], mul[sq[x]]) for x in range(n))
    reports.append(CheckReport("x(xy) = x^2 y", ok3, n * n))
    ok4a = True
    ok4b = True
    for x in range(n):
        row = mul[x]
        if ok4a and not np.array_equal(mul[np.ix_(row, row)], mul[sq[x]][mul]):
            ok4a = False
        if ok4b and not np.array_equal(mul[x][mul[:, row]], mul[mul[sq[x]], :]):
            ok4b = False
    reports.append(CheckReport("(xy)(xz) = x^2(yz)", ok4a, n**3))
    reports.append(CheckReport("x(y(xz)) = (x^2 y)z", ok4b, n**3))
    return reports


def exponent(l: LoopTable) -> int:
    """Least e with x^e = unit for all x; asserted to divide 6."""
    e = 1
    for x in range(N_CLASSES):
        y = x
        order = 1
        while y != l.unit:
            y = int(l.mul[y, x])
            order += 1
            if order > 6:
                raise AssertionError(f"element {x} has order above 6")
        e = math.lcm(e, order)
    if 6 % e != 0:
        raise AssertionError(f"exponent {e} does not divide 6")
    return e


def nucleus(l: LoopTable) -> set[int]:
    """Associative center: a with (a x) y = a (x y) for all x, y."""
    mul = l.mul
    members = set()
    for a in range(N_CLASSES):
        if np.array_equal(mul[mul[a]], mul[a][mul]):
            members.add(a)
    # a subloop: closed under mul and inverses, contains the unit
    ids = sorted(members)
    sub = mul[np.ix_(ids, ids)]
    if l.unit not in members or not set(sub.ravel()) <= members:
        raise AssertionError("nucleus is not closed under multiplication")
    if not {int(l.inv[a]) for a in members} <= members:
        raise AssertionError("nucleus is not closed under inverses")
    return members


def associator_mask(l: LoopTable) -> np.ndarray:
    """Boolean (x,y,z) mask where (xy)z != x(yz)."""
    mul = l.mul
    mask = np.empty((N_CLASSES, N_CLASSES, N_CLASSES), dtype=bool)
    for x in range(N_CLASSES):
        mask[x] = mul[mul[x], :] != mul[x][mul]
    return mask


def find_nonassoc(l: LoopTable, limit: int = 10) -> list[tuple[int, int, int]]:
    """First `limit` non-associative triples in lexicographic order."""
    mul = l.mul
    out: list[tuple[int, int, int]] = []
    for x in range(N_CLASSES):
        bad = np.argwhere(mul[mul[x], :] != mul[x][mul])
        for y, z in bad:
            out.append((x, int(y), int(z)))
            if len(out) >= limit:
                return out
    return out


def circ_closure(t: ClassTable, gens: set[int]) -> set[int]:
    """Closure of gens under the symmetric composition."""
    closed = set(gens)
    frontier = np.array(sorted(closed))
    while True:
        new = set(np.unique(t.circ[np.ix_(frontier, frontier)]).tolist()) - closed
        if not new:
            return closed
        closed |= new
        frontier = np.array(sorted(closed))


def ch_check(
    t: ClassTable, samples: int = 200, seed: int = 0, exhaustive: bool = False
) -> CheckReport:
    """Any three elements must generate an Abelian subquasigroup: the law
    a *' b = u' o (a o b) on the o-closure is an Abelian group law."""
    rng = random.Random(f"ch:{seed}")
    if exhaustive:
        triples = [
            (x, y, z)
            for x in range(N_CLASSES)
            for y in range(x, N_CLASSES)
            for z in range(y, N_CLASSES)
        ]
    else:
        triples = [
            tuple(rng.randrange(N_CLASSES) for _ in range(3)) for _ in range(samples)
        ]
    checks = 0
    for triple in triples:
        closed = sorted(circ_closure(t, set(triple)))
        index = {c: k for k, c in enumerate(closed)}
        sub = np.array([[index[t.circ[a, b]] for b in closed] for a in closed])
        uprime = 0  # any fixed element of the closure
        m = sub[uprime][sub]
        if not np.array_equal(m, m.T):
            return CheckReport("ch-closure abelian", False, checks, triple, "not commutative")
        for a in range(len(closed)):
            if not np.array_equal(m[m[a], :], m[a][m]):
                return CheckReport(
                    "ch-closure abelian", False, checks, triple, "not associative"
                )
        checks += 1
    return CheckReport("ch-closure abelian", True, checks)


def subloop(l: LoopTable, gens: set[int]) -> set[int]:
    """Closure of gens and the unit under mul and inversion."""
    closed = set(gens) | {l.unit}
    closed |= {int(l.inv[g]) for g in closed}
    while True:
        ids = np.array(sorted(closed))
        new = set(np.unique(l.mul[np.ix_(ids, ids)]).tolist()) - closed
        if not new:
            break
        closed |= new
        closed |= {int(l.inv[g]) for g in new}
    size = len(closed)
    while size % 3 == 0:
        size //= 3
    if size != 1:
        raise AssertionError(f"subloop size {len(closed)} is not a power of 3")
    return closed


# Named classes from the explicit non-associativity computation.
U0 = LambdaParams("P", 0, (0, 0, 0))  # (1,-1,0,0)
U1 = LambdaParams("Q", 0, (0, 0, 0))  # (1,0,-1,0)
U2 = LambdaParams("R", 0, (0, 0, 0))  # (0,1,-1,0)
Q0 = LambdaParams("P", 0, (1, 0, 0))  # lift of (1,-1+p^2,p,-p)
Q1 = U1
Q2 = LambdaParams("R", 1, (0, 0, 0))  # (0,1,-theta,0)


def named_class(lp: LambdaParams) -> int:
    return class_of_form(canonical_form(lp))


def witness_sides(t: ClassTable, l: LoopTable) -> tuple[tuple[int, int, int], int, int]:
    """The explicit triple and the classes of (XY) o Z vs X o (YZ).

    The loop products (XY)Z and X(YZ) are unit o these two; since
    composing with a fixed class is a bijection, the sides differ iff the
    loop products differ."""
    x, y, z = named_class(Q0), named_class(Q1), named_class(Q2)
    unit = l.unit
    xy = int(t.circ[unit, t.circ[x, y]])
    yz = int(t.circ[unit, t.circ[y, z]])
    left = int(t.circ[xy, z])
    right = int(t.circ[x, yz])
    if (int(t.circ[unit, left]), int(t.circ[unit, right])) != (
        int(l.mul[l.mul[x, y], z]),
        int(l.mul[x, l.mul[y, z]]),
    ):
        raise AssertionError("association sides inconsistent with the loop table")
    return (x, y, z), left, right


def build_report(
    t: ClassTable,
    l: LoopTable,
    admissibility: tuple[int, int] = (0, 0),
    witness_limit: int = 10,
) -> LoopReport:
    mask = associator_mask(l)
    return LoopReport(
        order=N_CLASSES,
        exponent=exponent(l),
        nucleus=tuple(sorted(nucleus(l))),
        witness_count=int(mask.sum()),
        witnesses=find_nonassoc(l, witness_limit),
        admissibility_pass=admissibility[0],
        admissibility_fail=admissibility[1],
    )
