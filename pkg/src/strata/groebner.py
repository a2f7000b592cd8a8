"""Groebner bases over Q via Buchberger's algorithm, plus the Ideal type.

The engine keeps basis elements monic and reduces S-polynomials with a
lazy-heap normal form.  Pair management uses the Gebauer-Moeller update,
which realises the product (coprime leading term) and chain criteria;
selection is by sugar degree with deterministic index tie-breaks, so for
homogeneous input the computation proceeds degree by degree and the whole
run is reproducible.  Long computations honour a :class:`ComputationBudget`
and abort with :class:`~strata.errors.BudgetExceededError`, which callers
may treat as a recoverable "try a smaller question" signal.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceededError, MathPreconditionError, RingMismatchError
from .polyring import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    QQ,
    RingContext,
)

_ONE = QQ(1)


# ---------------------------------------------------------------------------
# budgets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComputationBudget:
    """Resource limits for a computation tree.

    ``max_seconds`` is wall-clock from the moment the budget is started and
    is shared by every nested Groebner run; ``max_s_pairs`` likewise counts
    S-pair reductions across the whole tree.
    """

    max_seconds: float | None = None
    max_s_pairs: int | None = None

    def start(self) -> "BudgetClock":
        return BudgetClock(self)


class BudgetClock:
    """A started budget; pass it down so sub-computations share the meter."""

    __slots__ = ("budget", "deadline", "pairs")

    def __init__(self, budget: ComputationBudget):
        self.budget = budget
        self.deadline = (
            None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
        )
        self.pairs = 0

    def charge_pair(self, n: int = 1):
        self.pairs += n
        if self.budget.max_s_pairs is not None and self.pairs > self.budget.max_s_pairs:
            raise BudgetExceededError(
                f"S-pair budget exhausted ({self.budget.max_s_pairs} pairs)"
            )
        self.check_time()

    def check_time(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceededError(
                f"time budget exhausted ({self.budget.max_seconds:g}s)"
            )

    def remaining_seconds(self) -> float | None:
        if self.deadline is None:
            return None
        return self.deadline - time.monotonic()


def ensure_clock(budget: "ComputationBudget | BudgetClock | None") -> BudgetClock | None:
    if budget is None:
        return None
    if isinstance(budget, ComputationBudget):
        return budget.start()
    return budget


# ---------------------------------------------------------------------------
# key plumbing
# ---------------------------------------------------------------------------


def _negate_key(key):
    if isinstance(key, tuple):
        return tuple(_negate_key(k) for k in key)
    return -key


class _KeyCache:
    """Memoised (key, negated key) evaluation for one order on one ring."""

    __slots__ = ("keyf", "pos", "neg")

    def __init__(self, ring: RingContext, order: MonomialOrder):
        self.keyf = order.key_function(ring)
        self.pos: dict[Monomial, tuple] = {}
        self.neg: dict[Monomial, tuple] = {}

    def key(self, e: Monomial) -> tuple:
        k = self.pos.get(e)
        if k is None:
            k = self.pos[e] = self.keyf(e)
        return k

    def nkey(self, e: Monomial) -> tuple:
        k = self.neg.get(e)
        if k is None:
            k = self.neg[e] = _negate_key(self.key(e))
        return k


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# internal basis elements and normal form
# ---------------------------------------------------------------------------


class _Element:
    """Monic basis element: leading monomial + tail term list."""

    __slots__ = ("lm", "lmdeg", "tail", "sugar", "alive")

    def __init__(self, lm: Monomial, tail: list[tuple[Monomial, QQ]], sugar: int):
        self.lm = lm
        self.lmdeg = sum(lm)
        self.tail = tail
        self.sugar = sugar
        self.alive = True  # False once superseded for pairing purposes


def _dict_of(p: Polynomial) -> dict[Monomial, QQ]:
    return dict(p.terms)


def _element_of(terms: dict[Monomial, QQ], keys: _KeyCache, sugar: int | None = None) -> _Element:
    lm = min(terms, key=keys.nkey)
    lc = terms[lm]
    tail = []
    for e, c in terms.items():
        if e != lm:
            tail.append((e, c / lc))
    tail.sort(key=lambda t: keys.nkey(t[0]))
    if sugar is None:
        sugar = max(sum(e) for e in terms)
    return _Element(lm, tail, sugar)


def _normal_form(
    h: dict[Monomial, QQ],
    basis: Sequence[_Element],
    keys: _KeyCache,
    sugar: int = 0,
    clock: BudgetClock | None = None,
) -> tuple[dict[Monomial, QQ], int]:
    """Fully reduce the term dict ``h``; returns (remainder, sugar)."""
    nkey = keys.nkey
    heap = [(nkey(e), e) for e in h]
    heapq.heapify(heap)
    out: dict[Monomial, QQ] = {}
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = h.pop(m, None)
        if c is None:
            continue
        mdeg = sum(m)
        red = None
        for g in basis:
            if g.lmdeg <= mdeg and _divides(g.lm, m):
                red = g
                break
        if red is None:
            out[m] = c
            continue
        steps += 1
        if clock is not None and steps % 1024 == 0:
            clock.check_time()
        shift = tuple(a - b for a, b in zip(m, red.lm))
        sh = sum(shift)
        if red.sugar + sh > sugar:
            sugar = red.sugar + sh
        for e2, c2 in red.tail:
            et = tuple(s + t for s, t in zip(shift, e2))
            prev = h.get(et)
            if prev is None:
                nc = -c * c2
                if nc:
                    h[et] = nc
                    heapq.heappush(heap, (nkey(et), et))
            else:
                nc = prev - c * c2
                if nc:
                    h[et] = nc
                else:
                    del h[et]
    return out, sugar


# ---------------------------------------------------------------------------
# Buchberger with Gebauer-Moeller pair handling
# ---------------------------------------------------------------------------


def _gm_update(
    basis: list[_Element],
    pairs: dict[tuple[int, int], tuple],
    t: int,
    keys: _KeyCache,
):
    """Gebauer-Moeller pair update after appending basis[t].

    Implements the M/F criteria (divisibility among the new pairs), drops
    coprime-head pairs (product criterion), prunes old pairs via the chain
    criterion and retires old elements whose head the new head divides.
    """
    new = basis[t]
    cand: list[tuple[Monomial, int]] = []
    for i, g in enumerate(basis[:t]):
        if g.alive:
            cand.append((_lcm(g.lm, new.lm), i))

    # criterion M: drop (i,t) when another new pair's lcm strictly divides its lcm
    keep_m: list[tuple[Monomial, int]] = []
    for L, i in cand:
        dominated = False
        for L2, j in cand:
            if j != i and L2 != L and _divides(L2, L):
                dominated = True
                break
        if not dominated:
            keep_m.append((L, i))

    # criterion F: among equal lcms keep the smallest index
    by_lcm: dict[Monomial, int] = {}
    for L, i in keep_m:
        if L not in by_lcm or i < by_lcm[L]:
            by_lcm[L] = i

    # product criterion: coprime leading monomials reduce to zero
    fresh: list[tuple[int, int, Monomial]] = []
    for L, i in sorted(by_lcm.items(), key=lambda kv: kv[1]):
        g = basis[i]
        if all(a == 0 or b == 0 for a, b in zip(g.lm, new.lm)):
            continue
        fresh.append((i, t, L))

    # chain criterion on old pairs
    for (i, j), (L, _sug) in list(pairs.items()):
        if (
            _divides(new.lm, L)
            and _lcm(basis[i].lm, new.lm) != L
            and _lcm(basis[j].lm, new.lm) != L
        ):
            del pairs[(i, j)]

    for i, j, L in fresh:
        gi, gj = basis[i], basis[j]
        sug = sum(L) + max(gi.sugar - gi.lmdeg, gj.sugar - gj.lmdeg)
        pairs[(i, j)] = (L, sug)

    # retire superseded heads from future pairing
    for g in basis[:t]:
        if g.alive and _divides(new.lm, g.lm) and g.lm != new.lm:
            g.alive = False


def _buchberger(
    polys: list[dict[Monomial, QQ]],
    keys: _KeyCache,
    clock: BudgetClock | None,
    presolved: list[_Element] | None = None,
) -> list[_Element]:
    basis: list[_Element] = []
    pairs: dict[tuple[int, int], tuple] = {}
    if presolved:
        # a reduced basis rewrites its own S-polynomials to zero, so its
        # internal pairs never need enqueueing; copy the shells because the
        # alive flags are mutated as new heads arrive
        for g in presolved:
            basis.append(_Element(g.lm, g.tail, g.sugar))

    def push(terms: dict[Monomial, QQ], sugar: int | None):
        el = _element_of(terms, keys, sugar)
        basis.append(el)
        _gm_update(basis, pairs, len(basis) - 1, keys)
        return el

    # deterministic insertion: ascending leading monomial
    seeds = [(min(t, key=keys.nkey), t) for t in polys if t]
    seeds.sort(key=lambda s: keys.key(s[0]))
    for _, terms in seeds:
        red, sugar = _normal_form(
            dict(terms), basis, keys, sugar=max(sum(e) for e in terms), clock=clock
        )
        if not red:
            continue
        el = push(red, sugar)
        if el.lmdeg == 0:
            return [el]

    while pairs:
        (i, j) = min(
            pairs,
            key=lambda ij: (pairs[ij][1], keys.key(pairs[ij][0]), ij[0], ij[1]),
        )
        L, sug = pairs.pop((i, j))
        if clock is not None:
            clock.charge_pair()
        gi, gj = basis[i], basis[j]
        h: dict[Monomial, QQ] = {}
        si = tuple(a - b for a, b in zip(L, gi.lm))
        for e, c in gi.tail:
            et = tuple(s + t for s, t in zip(si, e))
            h[et] = h.get(et, QQ(0)) + c
        sj = tuple(a - b for a, b in zip(L, gj.lm))
        for e, c in gj.tail:
            et = tuple(s + t for s, t in zip(sj, e))
            nc = h.get(et, QQ(0)) - c
            if nc:
                h[et] = nc
            else:
                h.pop(et, None)
        red, sugar = _normal_form(h, basis, keys, sugar=sug, clock=clock)
        if not red:
            continue
        el = push(red, sugar)
        if el.lmdeg == 0:
            return [el]
    return basis


def _interreduce(basis: list[_Element], keys: _KeyCache, clock: BudgetClock | None) -> list[_Element]:
    """Minimalise and tail-reduce a basis; heads stay fixed."""
    order = sorted(range(len(basis)), key=lambda i: keys.key(basis[i].lm))
    kept: list[_Element] = []
    for i in order:
        g = basis[i]
        if any(_divides(k.lm, g.lm) for k in kept):
            continue
        kept.append(g)
    reduced: list[_Element] = []
    for g in kept:
        others = [k for k in kept if k is not g]
        terms = {g.lm: _ONE}
        for e, c in g.tail:
            terms[e] = c
        # the head is irreducible against the other minimal heads, so only
        # the tail changes
        red, _ = _normal_form(terms, others, keys, clock=clock)
        reduced.append(_element_of(red, keys, g.sugar))
    reduced.sort(key=lambda g: keys.key(g.lm), reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# public faces
# ---------------------------------------------------------------------------


class GroebnerBasis:
    """A reduced Groebner basis, canonically normalised.

    Elements are interreduced, sorted by descending leading monomial, scaled
    to integer content 1 with positive leading coefficient; for a fixed ideal
    and order this presentation is unique.
    """

    __slots__ = ("ring", "order", "elements", "_keys", "_core")

    def __init__(self, ring: RingContext, order: MonomialOrder, core: list[_Element]):
        self.ring = ring
        self.order = order
        self._keys = _KeyCache(ring, order)
        self._core = core
        els = []
        for g in core:
            terms = {g.lm: _ONE}
            terms.update(g.tail)
            els.append(Polynomial(ring, terms).primitive(order))
        self.elements = tuple(els)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def leading_monomials(self) -> tuple[Monomial, ...]:
        return tuple(g.lm for g in self._core)

    @property
    def is_unit(self) -> bool:
        return any(g.lmdeg == 0 for g in self._core)

    def reduce(self, f: Polynomial, clock: BudgetClock | None = None) -> Polynomial:
        """Normal form of ``f`` modulo this basis (unique remainder)."""
        if f.ring != self.ring:
            raise RingMismatchError(f"polynomial ring {f.ring} differs from basis ring {self.ring}")
        if not f:
            return f
        red, _ = _normal_form(_dict_of(f), self._core, self._keys, clock=clock)
        return Polynomial(self.ring, red)

    def contains(self, f: Polynomial, clock: BudgetClock | None = None) -> bool:
        return not self.reduce(f, clock=clock)


def reduce(f: Polynomial, basis: GroebnerBasis) -> Polynomial:
    return basis.reduce(f)


class Ideal:
    """An ideal of a polynomial ring, with cached Groebner bases.

    Generators are stored as given (zeroes dropped, exact duplicates
    merged); mathematical equality is via reduced bases, so ``==`` can be
    expensive but is exact.
    """

    __slots__ = ("ring", "generators", "_gb_cache", "_homog")

    def __init__(self, ring: RingContext, generators: Iterable[Polynomial]):
        gens: list[Polynomial] = []
        seen = set()
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise RingMismatchError("generator ring differs from ideal ring")
            if not g:
                continue
            if g not in seen:
                seen.add(g)
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb_cache: dict = {}
        self._homog: bool | None = None

    # -- basic structure ---------------------------------------------------

    @property
    def is_zero_ideal(self) -> bool:
        return not self.generators

    @property
    def homogeneous(self) -> bool:
        if self._homog is None:
            self._homog = all(g.is_homogeneous() for g in self.generators)
        return self._homog

    def __repr__(self):  # pragma: no cover - debugging aid
        inside = ", ".join(str(g) for g in self.generators) or "0"
        return f"<{inside}>"

    def generator_strings(self) -> list[str]:
        return [str(g) for g in self.generators]

    # -- Groebner machinery ------------------------------------------------

    def groebner_basis(
        self,
        order: MonomialOrder = GREVLEX,
        budget: ComputationBudget | BudgetClock | None = None,
    ) -> GroebnerBasis:
        token = order.cache_token(self.ring)
        cached = self._gb_cache.get(token)
        if cached is not None:
            return cached
        clock = ensure_clock(budget)
        keys = _KeyCache(self.ring, order)
        raw = _buchberger([_dict_of(g) for g in self.generators], keys, clock)
        if any(g.lmdeg == 0 for g in raw):
            core = [_element_of({(0,) * self.ring.nvars: _ONE}, keys, 0)]
        else:
            core = _interreduce(raw, keys, clock)
        gb = GroebnerBasis(self.ring, order, core)
        self._gb_cache[token] = gb
        return gb

    def reduce(
        self,
        f: Polynomial,
        order: MonomialOrder = GREVLEX,
        budget: ComputationBudget | BudgetClock | None = None,
    ) -> Polynomial:
        clock = ensure_clock(budget)
        return self.groebner_basis(order, clock).reduce(f, clock)

    def contains(
        self, f: Polynomial, budget: ComputationBudget | BudgetClock | None = None
    ) -> bool:
        if not f:
            return True
        if self.is_zero_ideal:
            return False
        return self.groebner_basis(budget=budget).contains(f)

    def contains_ideal(
        self, other: "Ideal", budget: ComputationBudget | BudgetClock | None = None
    ) -> bool:
        """Whether every generator of ``other`` lies in this ideal."""
        clock = ensure_clock(budget)
        return all(self.contains(g, clock) for g in other.generators)

    def is_unit(self, budget: ComputationBudget | BudgetClock | None = None) -> bool:
        if self.is_zero_ideal:
            return False
        if any(g.is_constant() and g for g in self.generators):
            return True
        return self.groebner_basis(budget=budget).is_unit

    def dimension(self, budget: ComputationBudget | BudgetClock | None = None) -> int:
        """Krull dimension of the quotient ring (affine dimension); -1 for the unit ideal."""
        if self.is_zero_ideal:
            return self.ring.nvars
        gb = self.groebner_basis(budget=budget)
        if gb.is_unit:
            return -1
        supports = [
            frozenset(i for i, e in enumerate(lm) if e) for lm in gb.leading_monomials()
        ]
        # only minimal supports constrain independence
        supports = [
            s for s in supports if not any(t < s for t in supports)
        ]
        memo: dict[frozenset, int] = {}

        def best(allowed: frozenset) -> int:
            hit = memo.get(allowed)
            if hit is not None:
                return hit
            bad = None
            for s in supports:
                if s <= allowed:
                    bad = s
                    break
            if bad is None:
                r = len(allowed)
            else:
                r = max(best(allowed - {v}) for v in sorted(bad))
            memo[allowed] = r
            return r

        return best(frozenset(range(self.ring.nvars)))

    def max_independent_set(
        self, budget: ComputationBudget | BudgetClock | None = None
    ) -> tuple[str, ...]:
        """A maximum set of variables independent modulo the leading-term ideal.

        Deterministic: among maximum independent sets, the lexicographically
        first by variable position is returned.
        """
        gb = self.groebner_basis(budget=budget)
        if gb.is_unit:
            raise MathPreconditionError("the unit ideal has no independent sets")
        supports = [
            frozenset(i for i, e in enumerate(lm) if e) for lm in gb.leading_monomials()
        ]
        target = self.dimension(budget)
        n = self.ring.nvars

        chosen: list[int] = []

        def extend(start: int, current: list[int]) -> list[int] | None:
            if len(current) == target:
                return current
            for v in range(start, n):
                cand = current + [v]
                cs = set(cand)
                if any(s <= cs for s in supports):
                    continue
                got = extend(v + 1, cand)
                if got is not None:
                    return got
            return None

        got = extend(0, chosen)
        if got is None:  # pragma: no cover - target came from the same data
            raise MathPreconditionError("no independent set of maximal size found")
        return tuple(self.ring.names[i] for i in got)

    # -- equality ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = None  # mathematical equality is incompatible with cheap hashing


def _ideal_with_basis(
    ring: RingContext,
    polys: Iterable[Polynomial],
    order: MonomialOrder = GREVLEX,
    clock: BudgetClock | None = None,
) -> Ideal:
    """An ideal whose reduced basis for ``order`` is known in advance.

    Elimination theory supplies such bases for free: the auxiliary-free part
    of a reduced block-order basis is itself the reduced basis of the
    contraction for the inner order, and the variable-padded image of a
    reduced degree-compatible basis is the reduced basis of the
    homogenisation with the new variable cheapest.  Callers are responsible
    for that guarantee; here the elements only get the normalisation pass
    (no pairs) before seeding the cache, so the first basis request is
    already answered.
    """
    ideal = Ideal(ring, polys)
    keys = _KeyCache(ring, order)
    core = [_element_of(_dict_of(g), keys) for g in ideal.generators]
    if any(g.lmdeg == 0 for g in core):
        core = [_element_of({(0,) * ring.nvars: _ONE}, keys, 0)]
    else:
        core = _interreduce(core, keys, clock)
    ideal._gb_cache[order.cache_token(ring)] = GroebnerBasis(ring, order, core)
    return ideal


def groebner_basis(
    ideal: Ideal,
    order: MonomialOrder = GREVLEX,
    budget: ComputationBudget | BudgetClock | None = None,
) -> GroebnerBasis:
    return ideal.groebner_basis(order, budget)


def contains(ideal: Ideal, f: Polynomial, budget=None) -> bool:
    return ideal.contains(f, budget)


def ideal_equal(
    a: Ideal, b: Ideal, budget: ComputationBudget | BudgetClock | None = None
) -> bool:
    """Mathematical equality via reduced Groebner bases."""
    if a.ring != b.ring:
        raise RingMismatchError("cannot compare ideals of different rings")
    clock = ensure_clock(budget)
    return (
        a.groebner_basis(budget=clock).elements == b.groebner_basis(budget=clock).elements
    )


def dimension(ideal: Ideal, budget=None) -> int:
    return ideal.dimension(budget)
