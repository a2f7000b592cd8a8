"""Ideal-level operations built on Groebner bases.

Intersections use the classic one-auxiliary-variable trick, quotients reduce
to intersections generator by generator, saturation iterates quotients until
stabilisation (with an equivalent single-elimination strategy available),
elimination uses block orders, and radical membership uses the adjoined
inverse (1 - t*f) trick.  Auxiliary variables carry reserved names and never
escape: every result lives in the caller's ring (or the declared reduced
ring for elimination).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .errors import MathPreconditionError, RingMismatchError
from .groebner import (
    BudgetClock,
    ComputationBudget,
    GroebnerBasis,
    Ideal,
    _KeyCache,
    _ideal_with_basis,
    ensure_clock,
    ideal_equal,
)
from .polyring import GREVLEX, BlockOrder, GrevLexLast, Polynomial, QQ, RingContext

#: strategy used by :func:`saturation` when none is requested explicitly
DEFAULT_SATURATION_STRATEGY = "quotient"


def _same_ring(a: Ideal, b: Ideal):
    if a.ring != b.ring:
        raise RingMismatchError("ideals live in different rings")


# ---------------------------------------------------------------------------
# sums and light interreduction
# ---------------------------------------------------------------------------


def _division_remainder(f: Polynomial, reducers: Sequence[Polynomial]) -> Polynomial:
    """Multivariate division remainder of f by an arbitrary list (grevlex)."""
    if not f or not reducers:
        return f
    from .groebner import _dict_of, _element_of, _normal_form

    keys = _KeyCache(f.ring, GREVLEX)
    els = [_element_of(_dict_of(g), keys) for g in reducers if g]
    if not els:
        return f
    red, _ = _normal_form(_dict_of(f), els, keys)
    return Polynomial(f.ring, red)


def interreduce(gens: Iterable[Polynomial]) -> list[Polynomial]:
    """Drop redundant generators by mutual division; preserves the ideal."""
    pending = sorted(
        (g for g in gens if g),
        key=lambda g: (g.degree(), len(g.terms), str(g)),
    )
    kept: list[Polynomial] = []
    for g in pending:
        r = _division_remainder(g, kept)
        if r:
            kept.append(r.primitive())
    return kept


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    """The ideal generated by both generator lists (lightly interreduced)."""
    _same_ring(a, b)
    return Ideal(a.ring, interreduce(list(a.generators) + list(b.generators)))


# ---------------------------------------------------------------------------
# intersection / quotient / saturation
# ---------------------------------------------------------------------------


def ideal_intersection(
    a: Ideal,
    b: Ideal,
    budget: ComputationBudget | BudgetClock | None = None,
) -> Ideal:
    """I cap J via elimination of t from t*I + (1-t)*J."""
    _same_ring(a, b)
    clock = ensure_clock(budget)
    if a.is_zero_ideal or b.is_zero_ideal:
        return Ideal(a.ring, [])
    if a.is_unit(clock):
        return Ideal(a.ring, b.generators)
    if b.is_unit(clock):
        return Ideal(a.ring, a.generators)
    ring2, (t,) = a.ring.with_aux(1)
    tv = ring2.var(t)
    gens = [tv * g.map_to(ring2) for g in a.generators]
    one_minus_t = ring2.one - tv
    gens += [one_minus_t * g.map_to(ring2) for g in b.generators]
    gb = Ideal(ring2, gens).groebner_basis(BlockOrder((t,)), clock)
    out = [g.map_to(a.ring) for g in gb.elements if g.degree_in(t) <= 0]
    # the t-free part of the reduced block basis is the reduced basis of
    # the contraction, so the intersection comes with its basis attached
    return _ideal_with_basis(a.ring, out, clock=clock)


def exact_divide(p: Polynomial, g: Polynomial) -> Polynomial:
    """Exact division p/g; raises if g does not divide p."""
    if not g:
        raise MathPreconditionError("division by the zero polynomial")
    if not p:
        return p
    keys = _KeyCache(p.ring, GREVLEX)
    gterms = list(g.terms.items())
    glm = max(g.terms, key=keys.key)
    glc = g.terms[glm]
    rem = dict(p.terms)
    quo: dict = {}
    while rem:
        m = max(rem, key=keys.key)
        c = rem[m]
        shift = tuple(x - y for x, y in zip(m, glm))
        if any(s < 0 for s in shift):
            raise MathPreconditionError("polynomial division is not exact")
        qc = c / glc
        quo[shift] = qc
        for e2, c2 in gterms:
            et = tuple(s + t for s, t in zip(shift, e2))
            nc = rem.get(et, QQ(0)) - qc * c2
            if nc:
                rem[et] = nc
            else:
                rem.pop(et, None)
    return Polynomial(p.ring, quo)


def ideal_quotient(
    a: Ideal,
    b: Ideal,
    budget: ComputationBudget | BudgetClock | None = None,
) -> Ideal:
    """The colon ideal I : J, one generator of J at a time."""
    _same_ring(a, b)
    clock = ensure_clock(budget)
    if b.is_zero_ideal:
        return Ideal(a.ring, [a.ring.one])
    result: Ideal | None = None
    for g in b.generators:
        if g.is_constant():
            part = Ideal(a.ring, a.generators)
        else:
            inter = ideal_intersection(a, Ideal(a.ring, [g]), clock)
            # dividing out g shifts every leading monomial by the same
            # monomial lm(g), so the divided set is again a basis
            part = _ideal_with_basis(
                a.ring, [exact_divide(p, g) for p in inter.generators], clock=clock
            )
        result = part if result is None else ideal_intersection(result, part, clock)
        if result.is_zero_ideal:
            return result
    return result


def saturate_variable(
    a: Ideal, name: str, budget: ComputationBudget | BudgetClock | None = None
) -> Ideal:
    """I : v^infinity for a single variable v and homogeneous I.

    Under grevlex with v cheapest, a homogeneous basis element whose leading
    monomial contains v is divisible by v throughout (any v-free term would
    out-rank the lead), so dividing each reduced basis element by its maximal
    v-power stays inside I : v^infinity.  Iterating to a fixed point S gives
    S : v = S, and I <= S <= I : v^infinity forces S = I : v^infinity.
    """
    j = a.ring.index(name)
    if not a.homogeneous:
        raise MathPreconditionError(
            "variable saturation shortcut requires homogeneous generators"
        )
    clock = ensure_clock(budget)
    order = GrevLexLast(name)
    current = a
    while True:
        gb = current.groebner_basis(order, clock)
        divided = []
        changed = False
        for g in gb.elements:
            k = min(e[j] for e in g.terms)
            if k:
                changed = True
                g = Polynomial(
                    g.ring,
                    {e[:j] + (e[j] - k,) + e[j + 1 :]: c for e, c in g.terms.items()},
                )
            divided.append(g)
        if not changed:
            return current
        current = Ideal(a.ring, divided)


def _saturate_principal_elimination(
    a: Ideal, g: Polynomial, clock: BudgetClock | None
) -> Ideal:
    """I : g^infinity in one stroke, by eliminating t from I + (t*g - 1)."""
    ring2, (t,) = a.ring.with_aux(1)
    gens = [p.map_to(ring2) for p in a.generators]
    gens.append(ring2.var(t) * g.map_to(ring2) - ring2.one)
    gb = Ideal(ring2, gens).groebner_basis(BlockOrder((t,)), clock)
    out = [p.map_to(a.ring) for p in gb.elements if p.degree_in(t) <= 0]
    return _ideal_with_basis(a.ring, out, clock=clock)


def saturation(
    a: Ideal,
    b: Ideal,
    budget: ComputationBudget | BudgetClock | None = None,
    strategy: str | None = None,
) -> Ideal:
    """The saturation I : J^infinity.

    ``quotient`` iterates I : J until stabilisation.  ``elimination``
    computes each principal saturation I : g^infinity by eliminating an
    adjoined inverse and intersects them (I : J^infinity equals the
    intersection of the principal saturations over any generating set of J);
    both strategies return the same ideal, the latter often faster on the
    conormal-style inputs this package cares about.
    """
    _same_ring(a, b)
    strategy = strategy or DEFAULT_SATURATION_STRATEGY
    clock = ensure_clock(budget)
    if b.is_zero_ideal:
        return Ideal(a.ring, [a.ring.one])
    if strategy == "quotient":
        current = a
        while True:
            if clock is not None:
                clock.check_time()
            nxt = ideal_quotient(current, b, clock)
            if ideal_equal(nxt, current, clock):
                return current
            current = nxt
    if strategy == "elimination":
        result: Ideal | None = None
        for g in b.generators:
            if g.is_constant():
                part = Ideal(a.ring, a.generators)
            else:
                if clock is not None:
                    clock.check_time()
                part = _saturate_principal_elimination(a, g, clock)
            result = part if result is None else ideal_intersection(result, part, clock)
        return result
    raise MathPreconditionError(f"unknown saturation strategy {strategy!r}")


# ---------------------------------------------------------------------------
# elimination and radical membership
# ---------------------------------------------------------------------------


def eliminate(
    a: Ideal,
    names: Iterable[str],
    budget: ComputationBudget | BudgetClock | None = None,
) -> Ideal:
    """Contract to the subring without the named variables.

    The result lives in the reduced ring context.
    """
    names = tuple(names)
    if not names:
        return Ideal(a.ring, a.generators)
    for n in names:
        a.ring.index(n)  # raises for unknown variables
    target = a.ring.without(names)
    clock = ensure_clock(budget)
    gb = a.groebner_basis(BlockOrder(names), clock)
    kept = [
        g.map_to(target)
        for g in gb.elements
        if all(g.degree_in(n) <= 0 for n in names)
    ]
    return _ideal_with_basis(target, kept, clock=clock)


def radical_membership(
    a: Ideal,
    f: Polynomial,
    budget: ComputationBudget | BudgetClock | None = None,
) -> bool:
    """Whether f vanishes on the variety of I (f in the radical of I)."""
    if f.ring != a.ring:
        raise RingMismatchError("polynomial ring differs from ideal ring")
    if not f:
        return True
    if a.is_zero_ideal:
        return False
    clock = ensure_clock(budget)
    if a.is_unit(clock):
        return True
    ring2, (t,) = a.ring.with_aux(1)
    gens = [p.map_to(ring2) for p in a.generators]
    gens.append(ring2.one - ring2.var(t) * f.map_to(ring2))
    return Ideal(ring2, gens).groebner_basis(budget=clock).is_unit


def projectively_empty(
    a: Ideal, budget: ComputationBudget | BudgetClock | None = None
) -> bool:
    """For a homogeneous ideal: does it cut out the empty projective set?

    True when the affine cone is at most the origin (dimension <= 0).
    """
    return a.dimension(ensure_clock(budget)) <= 0


# ---------------------------------------------------------------------------
# matrices of polynomials and minor ideals
# ---------------------------------------------------------------------------


class PolyMatrix:
    """A rectangular matrix of polynomials from one ring."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: RingContext, rows: Sequence[Sequence[Polynomial]]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise MathPreconditionError("matrix needs at least one row and column")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise MathPreconditionError("ragged matrix rows")
            for p in r:
                if p.ring != ring:
                    raise RingMismatchError("matrix entry from a different ring")
        self.ring = ring
        self.rows = rows

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]))

    @staticmethod
    def jacobian(polys: Sequence[Polynomial], names: Sequence[str]) -> "PolyMatrix":
        """Rows of partial derivatives of each polynomial w.r.t. the names."""
        if not polys:
            raise MathPreconditionError("jacobian of an empty list")
        ring = polys[0].ring
        rows = [[p.differentiate(n) for n in names] for p in polys]
        return PolyMatrix(ring, rows)

    def stacked(self, extra_row: Sequence[Polynomial]) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.rows + (tuple(extra_row),))

    def _det_cofactor(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
        if len(rows) == 1:
            return self.rows[rows[0]][cols[0]]
        if len(rows) == 2:
            a, b = rows
            c, d = cols
            return self.rows[a][c] * self.rows[b][d] - self.rows[a][d] * self.rows[b][c]
        total = self.ring.zero
        r0 = rows[0]
        for k, c in enumerate(cols):
            entry = self.rows[r0][c]
            if not entry:
                continue
            sub = self._det_cofactor(rows[1:], cols[:k] + cols[k + 1 :])
            term = entry * sub
            total = total + term if k % 2 == 0 else total - term
        return total

    def _det_bareiss(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> Polynomial:
        """Fraction-free Gaussian elimination; divisions are exact."""
        n = len(rows)
        m = [[self.rows[i][j] for j in cols] for i in rows]
        sign = 1
        prev = self.ring.one
        for k in range(n - 1):
            if not m[k][k]:
                pivot = next((i for i in range(k + 1, n) if m[i][k]), None)
                if pivot is None:
                    return self.ring.zero
                m[k], m[pivot] = m[pivot], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                    m[i][j] = exact_divide(num, prev) if not prev.is_constant() or prev.constant_value() != 1 else num
                m[i][k] = self.ring.zero
            prev = m[k][k]
        det = m[n - 1][n - 1]
        return det if sign > 0 else -det

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
        rows, cols = tuple(rows), tuple(cols)
        if len(rows) != len(cols):
            raise MathPreconditionError("minor needs equally many rows and columns")
        if len(rows) <= 3:
            return self._det_cofactor(rows, cols)
        return self._det_bareiss(rows, cols)

    def k_minors(self, k: int) -> list[Polynomial]:
        nr, nc = self.shape
        if k <= 0:
            raise MathPreconditionError("minor size must be positive")
        if k > nr or k > nc:
            raise MathPreconditionError(
                f"minor size {k} exceeds matrix shape {nr}x{nc}"
            )
        out = []
        for rows in combinations(range(nr), k):
            for cols in combinations(range(nc), k):
                out.append(self.minor(rows, cols))
        return out


def minors_ideal(matrix: PolyMatrix, k: int) -> Ideal:
    """The ideal generated by all k x k minors (zeroes and duplicates dropped)."""
    seen = set()
    gens = []
    for p in matrix.k_minors(k):
        if not p:
            continue
        p = p.primitive()
        if p not in seen:
            seen.add(p)
            gens.append(p)
    return Ideal(matrix.ring, gens)
