"""Minimal prime decomposition over Q.

The splitting engine works down a queue of candidate ideals, each strictly
larger than the one it came from, so the process terminates by the
ascending chain condition.  Three kinds of split are used:

* a reduced basis element that factors splits the ideal along its factors;
* the leading coefficients (over a maximal independent set of variables S)
  cut out the locus where the ideal fails to be "generic over k(S)"; if
  saturating them away changes the ideal, the two sides are processed
  separately.  Afterwards every minimal prime survives localisation at
  k[S] \\ {0}, which is what the final stage needs;
* in the generic stage the ideal is zero-dimensional over the rational
  function field k(S), and the minimal polynomial of a candidate primitive
  element (a single variable, then seeded random shears) either factors --
  splitting the ideal -- or certifies the quotient to be a field, proving
  the ideal prime.

Certification is honest: a component is labelled ``certified-prime`` only
when one of the closing arguments applies (linear generators, an
irreducible principal generator, or a primitive element whose minimal
polynomial is irreducible of full degree).  If every candidate shear fails
to be primitive the component is returned with ``maybe-non-prime`` rather
than silently assumed prime.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .errors import MathPreconditionError
from .groebner import (
    BudgetClock,
    ComputationBudget,
    Ideal,
    ensure_clock,
    ideal_equal,
)
from .idealops import eliminate, exact_divide, ideal_intersection, radical_membership, saturation
from .factor import content_wrt, factor_multivariate, gcd_many
from .polyring import GREVLEX, BlockOrder, Polynomial, RingContext, _grevlex_key

CERTIFIED = "certified-prime"
UNCERTIFIED = "maybe-non-prime"

_SHEAR_ATTEMPTS = 4


@dataclass(frozen=True)
class PrimeComponent:
    """One component of a decomposition, with its certification status."""

    ideal: Ideal
    certification: str
    witness: str

    @cached_property
    def dimension(self) -> int:
        return self.ideal.dimension()

    @cached_property
    def canonical_generators(self) -> tuple[str, ...]:
        return tuple(str(g) for g in self.ideal.groebner_basis().elements)

    @property
    def certified(self) -> bool:
        return self.certification == CERTIFIED

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"PrimeComponent(<{', '.join(self.canonical_generators)}>, {self.certification})"


# ---------------------------------------------------------------------------
# factor splitting
# ---------------------------------------------------------------------------

_split_cache: dict[Polynomial, tuple[Polynomial, ...] | None] = {}


def _factor_split(g: Polynomial) -> tuple[Polynomial, ...] | None:
    """Distinct irreducible factors when g is not already irreducible."""
    hit = _split_cache.get(g, False)
    if hit is not False:
        return hit
    fac = factor_multivariate(g)
    if fac.is_irreducible:
        out = None
    else:
        out = fac.distinct()
    _split_cache[g] = out
    return out


def _u_part(e, uixs):
    return tuple(e[i] for i in uixs)


def _leading_coefficient_over(g: Polynomial, uixs: tuple[int, ...]) -> Polynomial:
    """g as a polynomial in the u-variables: coefficient of the top u-monomial."""
    top = max((_u_part(e, uixs) for e in g.terms), key=_grevlex_key)
    uset = set(uixs)
    terms = {}
    for e, c in g.terms.items():
        if _u_part(e, uixs) == top:
            terms[tuple(0 if i in uset else x for i, x in enumerate(e))] = c
    return Polynomial(g.ring, terms)


def _standard_monomial_count(betas: list[tuple[int, ...]]) -> int:
    """Number of monomials outside the monomial ideal generated by betas.

    Requires the ideal to be zero-dimensional (a pure power of every
    variable present); raises otherwise.
    """
    minimal = [
        b
        for b in betas
        if not any(c != b and all(x <= y for x, y in zip(c, b)) for c in betas)
    ]
    memo: dict[frozenset, int] = {}

    def count(bs: frozenset) -> int:
        if any(not any(b) for b in bs):
            return 0
        if not bs:
            raise MathPreconditionError("not zero-dimensional over the base field")
        hit = memo.get(bs)
        if hit is not None:
            return hit
        width = len(next(iter(bs)))
        if width == 1:
            r = min(b[0] for b in bs)
        else:
            pure = [b[0] for b in bs if not any(b[1:])]
            if not pure:
                raise MathPreconditionError("not zero-dimensional over the base field")
            r = 0
            for e in range(min(pure)):
                r += count(frozenset(b[1:] for b in bs if b[0] <= e))
        memo[bs] = r
        return r

    return count(frozenset(dict.fromkeys(minimal)))


def _minimal_polynomial_of_var(
    ideal: Ideal, keep: str, uvars: tuple[str, ...], clock
) -> tuple[Polynomial, RingContext]:
    """Generator of (extension of the ideal to k(S)[keep]) as a primitive
    polynomial in k[S][keep]; returned in the ring without the other u-variables."""
    others = tuple(n for n in uvars if n != keep)
    ej = eliminate(ideal, others, clock)
    gens = [g for g in ej.generators if g.degree_in(keep) > 0]
    if not gens:
        raise MathPreconditionError(
            f"variable {keep} is not algebraic over the independent set"
        )
    g0 = gcd_many(gens)
    cont = content_wrt(g0, keep)
    if not cont.is_constant():
        g0 = exact_divide(g0, cont)
    return g0.primitive(), ej.ring


def _positive_degree_factors(m: Polynomial, var: str):
    fac = factor_multivariate(m)
    parts = [(f, k) for f, k in fac.factors if f.degree_in(var) > 0]
    if not parts:
        raise MathPreconditionError("eliminant degenerated to a unit")
    return parts


def _shear_coefficients(uvars: tuple[str, ...], attempt: int, seed: int) -> list[int]:
    if attempt == 0:
        return list(range(1, len(uvars) + 1))
    rng = random.Random((seed << 16) ^ attempt)
    return [rng.randint(1, 40) for _ in uvars]


class _Split(Exception):
    """Control flow: carries the strictly-larger pieces back to the queue."""

    def __init__(self, pieces):
        self.pieces = pieces


def _generic_stage(ideal: Ideal, seed: int, clock) -> PrimeComponent:
    """Certify a leading-coefficient-saturated ideal prime, or raise _Split.

    Precondition established by the caller: every minimal prime of the
    ideal meets k[S] only in zero, where S is the maximal independent set
    used here.  Then the ideal is prime iff its extension to k(S)[U] is,
    which a primitive element decides.
    """
    ring = ideal.ring
    sset = ideal.max_independent_set(clock)
    uvars = tuple(n for n in ring.names if n not in sset)
    uixs = tuple(ring.index(n) for n in uvars)
    border = BlockOrder(uvars, GREVLEX) if sset else GREVLEX
    bgb = ideal.groebner_basis(border, clock)
    basis = bgb.elements

    vdim = _standard_monomial_count([_u_part(g.leading_monomial(border), uixs) for g in basis])

    def split_along(factors, to_ring_poly):
        pieces = []
        for f, _ in factors:
            extra = to_ring_poly(f)
            pieces.append(Ideal(ring, list(basis) + [extra]))
        raise _Split(pieces)

    # single variables as primitive-element candidates first: cheaper, and
    # the eliminants split reducible ideals early
    for keep in uvars:
        if clock is not None:
            clock.check_time()
        m, mring = _minimal_polynomial_of_var(ideal, keep, uvars, clock)
        parts = _positive_degree_factors(m, keep)
        if len(parts) > 1 or parts[0][1] > 1:
            split_along(parts, lambda f: f.map_to(ring))
        f0 = parts[0][0]
        if f0.degree_in(keep) == vdim:
            return PrimeComponent(
                ideal,
                CERTIFIED,
                f"{keep} is a primitive element of degree {vdim} over "
                f"Q({', '.join(sset)})" if sset else f"{keep} is a primitive element of degree {vdim} over Q",
            )

    # seeded shears
    for attempt in range(_SHEAR_ATTEMPTS):
        if clock is not None:
            clock.check_time()
        coeffs = _shear_coefficients(uvars, attempt, seed)
        ring2, (tname,) = ring.with_aux(1)
        tvar = ring2.var(tname)
        shear2 = ring2.zero
        for c, n in zip(coeffs, uvars):
            shear2 = shear2 + ring2.const(c) * ring2.var(n)
        lifted = Ideal(ring2, [g.map_to(ring2) for g in basis] + [tvar - shear2])
        m, mring = _minimal_polynomial_of_var(lifted, tname, uvars + (tname,), clock)
        parts = _positive_degree_factors(m, tname)

        def back(f, ring2=ring2, tname=tname, shear2=shear2):
            return f.map_to(ring2).substitute({tname: shear2}).map_to(ring)

        if len(parts) > 1 or parts[0][1] > 1:
            split_along(parts, back)
        if parts[0][0].degree_in(tname) == vdim:
            text = " + ".join(f"{c}*{n}" for c, n in zip(coeffs, uvars))
            return PrimeComponent(
                ideal,
                CERTIFIED,
                f"{text} is a primitive element of degree {vdim} over "
                + (f"Q({', '.join(sset)})" if sset else "Q"),
            )

    return PrimeComponent(
        ideal,
        UNCERTIFIED,
        f"no primitive element found after {_SHEAR_ATTEMPTS} shears "
        f"(candidate quotient dimension {vdim})",
    )


def _process(ideal: Ideal, seed: int, clock) -> PrimeComponent | None:
    """Classify one candidate: a component, None to drop, or raise _Split."""
    gb = ideal.groebner_basis(budget=clock)
    if gb.is_unit:
        return None
    basis = gb.elements
    if not basis:
        return PrimeComponent(ideal, CERTIFIED, "zero ideal of an integral ring")

    for g in basis:
        factors = _factor_split(g)
        if factors:
            raise _Split([Ideal(ideal.ring, list(basis) + [f]) for f in factors])

    if all(g.degree() == 1 for g in basis):
        return PrimeComponent(ideal, CERTIFIED, "generated by linear forms")
    if len(basis) == 1:
        return PrimeComponent(ideal, CERTIFIED, "principal with irreducible generator")

    # leading-coefficient saturation over a maximal independent set
    sset = ideal.max_independent_set(clock)
    if sset:
        uvars = tuple(n for n in ideal.ring.names if n not in sset)
        uixs = tuple(ideal.ring.index(n) for n in uvars)
        border = BlockOrder(uvars, GREVLEX)
        bgb = ideal.groebner_basis(border, clock)
        hfactors: list[Polynomial] = []
        seen = set()
        for g in bgb.elements:
            lc = _leading_coefficient_over(g, uixs)
            if lc.is_constant():
                continue
            for f in factor_multivariate(lc).distinct():
                if f not in seen:
                    seen.add(f)
                    hfactors.append(f)
        if hfactors:
            h = ideal.ring.one
            for f in hfactors:
                h = h * f
            sat = saturation(ideal, Ideal(ideal.ring, [h]), clock, strategy="elimination")
            if not ideal_equal(sat, ideal, clock):
                pieces = [Ideal(ideal.ring, list(basis) + [f]) for f in hfactors]
                if not sat.is_unit(clock):
                    pieces.insert(0, sat)
                raise _Split(pieces)

    return _generic_stage(ideal, seed, clock)


def _canonicalized(comp: PrimeComponent, clock) -> PrimeComponent:
    """The same component with its reduced basis as the generator list."""
    gb = comp.ideal.groebner_basis(budget=clock)
    if tuple(gb.elements) == comp.ideal.generators:
        return comp
    clean = Ideal(comp.ideal.ring, gb.elements)
    clean._gb_cache.update(comp.ideal._gb_cache)
    return PrimeComponent(clean, comp.certification, comp.witness)


def minimal_primes(
    ideal: Ideal,
    budget: ComputationBudget | BudgetClock | None = None,
    seed: int = 0,
) -> tuple[PrimeComponent, ...]:
    """The minimal primes of an ideal, with certification per component.

    Components are sorted by descending dimension, then by their canonical
    generator strings; they are mutually inclusion-free and presented by
    their reduced bases.
    """
    clock = ensure_clock(budget)
    pending = [ideal]
    found: list[PrimeComponent] = []
    while pending:
        if clock is not None:
            clock.check_time()
        current = pending.pop()
        try:
            comp = _process(current, seed, clock)
        except _Split as s:
            pending.extend(reversed(s.pieces))
            continue
        if comp is not None:
            found.append(_canonicalized(comp, clock))
    return remove_redundant(found, clock)


def remove_redundant(
    components,
    budget: ComputationBudget | BudgetClock | None = None,
) -> tuple[PrimeComponent, ...]:
    """Drop unit components, duplicates, and non-minimal (larger) ideals."""
    clock = ensure_clock(budget)
    comps = [c for c in components if not c.ideal.is_unit(clock)]
    comps.sort(key=lambda c: (-c.dimension, c.canonical_generators))
    kept: list[PrimeComponent] = []
    for c in comps:
        redundant = False
        for k in kept:
            # kept components have dimension >= c's, so only c can be the
            # larger ideal of a nested (or equal) pair
            if c.ideal.contains_ideal(k.ideal, clock):
                redundant = True
                break
        if not redundant:
            kept.append(c)
    return tuple(kept)


def verify_decomposition(
    ideal: Ideal,
    components,
    budget: ComputationBudget | BudgetClock | None = None,
) -> dict:
    """Independent check that the components describe the radical of the ideal.

    Three facts are verified directly: every component contains the input;
    no component contains another; and every generator of the intersection
    of the components lies in the radical of the input (by adjoined-inverse
    membership, not by reusing the decomposition machinery).
    """
    clock = ensure_clock(budget)
    comps = list(components)
    contains_input = all(
        c.ideal.contains(g, clock) for c in comps for g in ideal.generators
    )
    pairwise_minimal = True
    for i, a in enumerate(comps):
        for j, b in enumerate(comps):
            if i != j and a.ideal.contains_ideal(b.ideal, clock):
                pairwise_minimal = False
    covers_radical = True
    if comps:
        inter = comps[0].ideal
        for c in comps[1:]:
            inter = ideal_intersection(inter, c.ideal, clock)
        covers_radical = all(
            radical_membership(ideal, g, clock) for g in inter.generators
        )
    else:
        covers_radical = ideal.is_unit(clock)
    return {
        "contains_input": contains_input,
        "pairwise_minimal": pairwise_minimal,
        "covers_radical": covers_radical,
        "ok": contains_input and pairwise_minimal and covers_radical,
        "certified": all(c.certified for c in comps),
    }


def radical_ideal(
    ideal: Ideal,
    budget: ComputationBudget | BudgetClock | None = None,
    seed: int = 0,
) -> Ideal:
    """The radical, as the intersection of the minimal primes."""
    clock = ensure_clock(budget)
    comps = minimal_primes(ideal, clock, seed)
    if not comps:
        return Ideal(ideal.ring, [ideal.ring.one])
    inter = comps[0].ideal
    for c in comps[1:]:
        inter = ideal_intersection(inter, c.ideal, clock)
    return inter
