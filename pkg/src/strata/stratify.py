"""Conormal spaces, dual varieties, and Whitney (a) stratifications.

Everything here works with homogeneous ideals over Q.  A projective
variety X in P^n is described by a prime (or assumed-prime) homogeneous
ideal in the primal ring; its conormal space C(X) -- the closure of the
set of pairs (smooth point, hyperplane annihilating the tangent space) --
lives in the doubled ring with one dual variable per primal variable,
paired by the incidence form sum_i x_i u_i.

The stratification driver refines the singular-locus filtration: a pair of
nested strata (X, Y) fails condition (a) exactly where the closure of the
conormal over Reg(Y) escapes C(X) cap C(Y); those escape points are primes
of the conormal-restriction ideal that do not contain the conormal sum,
projected back down to the primal ring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError, MathPreconditionError
from .groebner import (
    BudgetClock,
    ComputationBudget,
    Ideal,
    _ideal_with_basis,
    ensure_clock,
    ideal_equal,
)
from .idealops import (
    PolyMatrix,
    eliminate,
    interreduce,
    minors_ideal,
    projectively_empty,
    radical_membership,
    saturate_variable,
    saturation,
)
from .decomp import (
    CERTIFIED,
    UNCERTIFIED,
    PrimeComponent,
    minimal_primes,
    remove_redundant,
)
from .factor import squarefree_part
from .polyring import GrevLexLast, Polynomial, QQ, RingContext

DEFAULT_PAIR_SECONDS = 300.0


def as_component(ideal: Ideal, assume_prime: bool = True) -> PrimeComponent:
    """Wrap a caller-supplied ideal for the conormal operations.

    The wrapper does not verify primality; the component is flagged
    accordingly unless the caller insists.
    """
    cert = CERTIFIED if assume_prime else UNCERTIFIED
    return PrimeComponent(ideal, cert, "asserted irreducible by caller")


@dataclass(frozen=True)
class ConormalIdeal:
    """The ideal of C(X) in the doubled ring, with its primal source."""

    ideal: Ideal
    source: PrimeComponent

    @property
    def ring(self) -> RingContext:
        return self.ideal.ring


@dataclass(frozen=True)
class WhitneyPairReport:
    x_ideal: Ideal
    y_ideal: Ideal
    irregular_primes: tuple[PrimeComponent, ...]
    regular: bool
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class StratificationLevels:
    levels: tuple[tuple[PrimeComponent, ...], ...]
    truncated: bool = False
    warnings: tuple[str, ...] = ()

    def __iter__(self):
        return iter(self.levels)

    def __len__(self):
        return len(self.levels)


# ---------------------------------------------------------------------------
# conormal spaces and dual varieties
# ---------------------------------------------------------------------------

_conormal_cache: dict[tuple, ConormalIdeal] = {}


def _require_stratifiable(P: PrimeComponent) -> None:
    ideal = P.ideal
    if ideal.is_zero_ideal:
        raise MathPreconditionError("the zero ideal has no conormal space")
    if not ideal.homogeneous:
        raise MathPreconditionError("conormal spaces require homogeneous ideals")
    if ideal.is_unit():
        raise MathPreconditionError("the unit ideal defines no variety")
    if projectively_empty(ideal):
        raise MathPreconditionError(
            "the ideal is irrelevant (defines no projective points)"
        )


def _euler_form(ring: RingContext) -> Polynomial:
    e = ring.zero
    for n in ring.primal_block:
        e = e + ring.var(n) * ring.var(ring.dual_of(n))
    return e


def _poly_weight(g: Polynomial) -> tuple:
    return (g.degree(), len(g.terms), str(g))


def _witnesses_against(
    base: Ideal,
    minors: list[Polynomial],
    clock,
    seed: int,
    smooth_needs_witness: bool,
) -> list[Polynomial]:
    """Short polynomials covering the singular locus of V(base) but not V(base).

    Decomposing the singular ideal and picking the cheapest form per
    component keeps later saturation degrees far below those of a dense
    Jacobian minor; when that decomposition is itself expensive, fall back
    to the sparsest minor outside the base ideal.  ``smooth_needs_witness``
    forces a witness even for empty singular locus (homogeneous inputs keep
    removable components over the cone point).
    """
    R = base.ring
    minors = sorted(minors, key=_poly_weight)
    for m in minors:
        if m.is_constant():
            return [m] if smooth_needs_witness else []

    remaining = clock.remaining_seconds() if clock is not None else None
    cap = 60.0 if remaining is None else min(60.0, max(1.0, remaining / 4.0))
    try:
        sing = Ideal(R, list(base.generators) + minors)
        sub = ComputationBudget(max_seconds=cap).start()
        picked: list[Polynomial] = []
        for comp in minimal_primes(sing, sub, seed):
            options = sorted(
                comp.ideal.groebner_basis(budget=sub).elements, key=_poly_weight
            )
            choice = next(
                (g for g in options if not base.contains(g, sub)), None
            )
            if choice is None:
                raise MathPreconditionError(
                    "a singular component is not a proper subvariety; "
                    "the input is singular everywhere "
                    "(is it really irreducible and reduced?)"
                )
            if all(str(choice) != str(w) for w in picked):
                picked.append(choice)
        if picked:
            return sorted(picked, key=_poly_weight)
        if not smooth_needs_witness:
            return []
    except BudgetExceededError:
        if clock is not None:
            clock.check_time()

    for m in minors:
        if not base.contains(m, clock):
            return [m]
    raise MathPreconditionError(
        "every Jacobian minor vanishes on the variety; "
        "the input is singular everywhere (is it really irreducible and reduced?)"
    )


def _saturation_witnesses(
    P: PrimeComponent, c: int, clock, seed: int
) -> list[Polynomial]:
    """Saturation targets for the raw conormal generators of a projective X."""
    R = P.ideal.ring
    jac = PolyMatrix(
        R, [[g.differentiate(n) for n in R.names] for g in P.ideal.generators]
    )
    return _witnesses_against(
        P.ideal,
        list(minors_ideal(jac, c).generators),
        clock,
        seed,
        smooth_needs_witness=True,
    )


def _homogenize_by(g: Polynomial, name: str) -> Polynomial:
    """Pad every term with powers of the named variable up to the top degree."""
    j = g.ring.index(name)
    top = g.degree()
    terms = {
        e[:j] + (e[j] + top - sum(e),) + e[j + 1 :]: c for e, c in g.terms.items()
    }
    return Polynomial(g.ring, terms)


def _chart_variable(f: Polynomial) -> str | None:
    """A variable whose affine chart contains a dense part of V(f)."""
    R = f.ring
    preferred = R.homogenizing_name
    order = ([preferred] if preferred else []) + [
        n for n in R.names if n != preferred
    ]
    for v in order:
        j = R.index(v)
        if any(e[j] == 0 for e in f.terms):
            return v
    return None


def _principal_chart_conormal(
    P: PrimeComponent, f: Polynomial, v: str, clock, seed: int
) -> Ideal:
    """Raw conormal ideal of a hypersurface V(f) through the chart v = 1.

    In the chart the incidence form solves the dual of v linearly, so the
    expensive part -- saturating the removable components over the singular
    locus away from the Jacobian minors -- happens with one primal and one
    dual variable fewer and much lighter saturation targets.  The projective
    conormal generators are the v-saturated homogenizations of the chart
    result plus the incidence form; the caller still stabilises the result
    to its radical, which also certifies primality.
    """
    R = P.ideal.ring
    Raff = R.without([v])
    A = Raff.with_duals()
    faff = f.dehomogenize(v).map_to(A)
    grads = [faff.differentiate(n) for n in Raff.names]
    duals = [A.var(A.dual_of(n)) for n in Raff.names]
    minors = list(minors_ideal(PolyMatrix(A, [grads, duals]), 2).generators)

    J = Ideal(A, [faff] + minors)
    sing_minors = [g.map_to(Raff) for g in grads]
    witnesses = _witnesses_against(
        Ideal(Raff, [f.dehomogenize(v)]),
        sing_minors,
        clock,
        seed,
        smooth_needs_witness=False,
    )
    for w in witnesses:
        J = saturation(J, Ideal(A, [w.map_to(A)]), clock, strategy="elimination")

    D = R.with_duals()
    lifted = [
        _homogenize_by(g.map_to(D), v)
        for g in J.groebner_basis(budget=clock).elements
    ]
    # the lifted chart basis is the reduced basis for the degree-compatible
    # order with v cheapest, and what it generates is already v-saturated;
    # seeding turns the saturation into a fixed-point confirmation
    order = GrevLexLast(v)
    K = saturate_variable(_ideal_with_basis(D, lifted, order, clock), v, clock)
    euler = _euler_form(D)
    if not K.groebner_basis(order, clock).contains(euler):
        K = Ideal(D, list(K.generators) + [euler])
    return K


def conormal_ideal(
    P: PrimeComponent | Ideal,
    budget: ComputationBudget | BudgetClock | None = None,
    seed: int = 0,
) -> ConormalIdeal:
    """The ideal of the conormal space C(X) for X = V(P).

    Built as P plus the (c+1)-minors of the Jacobian augmented with the
    row of dual variables (c the codimension), saturated by a Jacobian
    c-minor that is nonzero on X, and stabilised to its radical through
    minimal primes.  The incidence form sum x_i u_i is seeded into the
    generators; it lies in the saturation by Euler's identity, and having
    it early keeps basis degrees down.
    """
    if isinstance(P, Ideal):
        P = as_component(P)
    _require_stratifiable(P)
    R = P.ideal.ring
    key = (R.names, tuple(sorted(str(g) for g in P.ideal.generators)))
    hit = _conormal_cache.get(key)
    if hit is not None:
        return hit
    clock = ensure_clock(budget)

    D = R.with_duals()
    c = R.nvars - P.ideal.dimension(clock)
    reduced = interreduce(P.ideal.generators)

    K = None
    if c == 1 and len(reduced) == 1:
        v = _chart_variable(reduced[0])
        if v is not None:
            K = _principal_chart_conormal(P, reduced[0], v, clock, seed)

    if K is None:
        gens = [g.map_to(D) for g in P.ideal.generators]
        jac_rows = [[g.differentiate(n) for n in R.names] for g in gens]
        augmented = PolyMatrix(D, jac_rows + [[D.var(D.dual_of(n)) for n in R.names]])
        K = Ideal(D, gens + list(minors_ideal(augmented, c + 1).generators)
                  + [_euler_form(D)])
        for witness in _saturation_witnesses(P, c, clock, seed):
            if not witness.is_constant():
                K = saturation(K, Ideal(D, [witness.map_to(D)]), clock,
                               strategy="elimination")

    comps = minimal_primes(K, clock, seed)
    if not comps:
        raise MathPreconditionError(
            "conormal construction collapsed to the unit ideal"
        )
    result = comps[0].ideal
    if len(comps) > 1:
        # a genuinely prime source leaves a single component (everything
        # removable lies over the singular locus, inside the witness
        # vanishing set); an uncertified source may not, and then the
        # honest answer is the radical of the saturation
        from .idealops import ideal_intersection

        for comp in comps[1:]:
            result = ideal_intersection(result, comp.ideal, clock)
    out = ConormalIdeal(result, P)
    _conormal_cache[key] = out
    return out


def dual_variety(
    P: PrimeComponent | Ideal,
    budget: ComputationBudget | BudgetClock | None = None,
    seed: int = 0,
) -> Ideal:
    """The projective dual X^*: eliminate the primal variables from C(X).

    The result lives in the dual ring (dual names promoted to primal roles)
    so it can be fed back into the conormal machinery for biduality.
    """
    clock = ensure_clock(budget)
    K = conormal_ideal(P, clock, seed)
    D = K.ring
    projected = eliminate(K.ideal, D.primal_block, clock)
    target = D.dual_ring()
    return Ideal(target, [g.map_to(target) for g in projected.generators])


# ---------------------------------------------------------------------------
# singular loci
# ---------------------------------------------------------------------------


def _component_singular_ideal(P: PrimeComponent, clock) -> Ideal:
    """P plus the codim-sized Jacobian minors of its generators."""
    R = P.ideal.ring
    c = R.nvars - P.ideal.dimension(clock)
    jac = PolyMatrix(R, [[g.differentiate(n) for n in R.names] for g in P.ideal.generators])
    return Ideal(R, list(P.ideal.generators) + list(minors_ideal(jac, c).generators))


def _proper_components(comps, clock):
    return tuple(c for c in comps if not projectively_empty(c.ideal, clock))


def singular_locus(
    components,
    budget: ComputationBudget | BudgetClock | None = None,
    seed: int = 0,
) -> tuple[PrimeComponent, ...]:
    """Minimal primes of the singular locus of a union of irreducible varieties.

    Per component: the Jacobian criterion (codimension-sized minors); across
    components: all pairwise intersections.  Irrelevant pieces (no projective
    points) are dropped.
    """
    clock = ensure_clock(budget)
    comps = list(components)
    out: list[PrimeComponent] = []
    for P in comps:
        sing = _component_singular_ideal(P, clock)
        if not sing.is_unit(clock):
            out.extend(minimal_primes(sing, clock, seed))
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            pair = Ideal(
                comps[i].ideal.ring,
                list(comps[i].ideal.generators) + list(comps[j].ideal.generators),
            )
            if not pair.is_unit(clock):
                out.extend(minimal_primes(pair, clock, seed))
    return remove_redundant(_proper_components(out, clock), clock)


# ---------------------------------------------------------------------------
# Whitney condition (a)
# ---------------------------------------------------------------------------


def _check_nested(I_X: PrimeComponent, J_Y: PrimeComponent, clock) -> None:
    if I_X.ideal.ring != J_Y.ideal.ring:
        raise MathPreconditionError("stratum pair must live in one ring")
    if not J_Y.ideal.contains_ideal(I_X.ideal, clock):
        raise MathPreconditionError(
            "pair is not nested: the Y ideal must contain the X ideal"
        )
    if I_X.ideal.contains_ideal(J_Y.ideal, clock):
        raise MathPreconditionError("pair is not strictly nested: the ideals coincide")


def whitney_a_irregular(
    I_X: PrimeComponent | Ideal,
    J_Y: PrimeComponent | Ideal,
    budget: ComputationBudget | BudgetClock | None = None,
    seed: int = 0,
) -> WhitneyPairReport:
    """Where does the pair (Reg X, Reg Y) fail Whitney's condition (a)?

    Returns the primes of the closure of the failure locus inside Y, in the
    primal ring.  ``regular`` reports that no returned prime is all of Y,
    i.e. the failure locus misses the generic points of Y.
    """
    if isinstance(I_X, Ideal):
        I_X = as_component(I_X)
    if isinstance(J_Y, Ideal):
        J_Y = as_component(J_Y)
    clock = ensure_clock(budget)
    _check_nested(I_X, J_Y, clock)
    R = I_X.ideal.ring
    warnings = []
    if not (I_X.certified and J_Y.certified):
        warnings.append(
            "an input component is not certified prime; "
            "the irregular set may be coarser than necessary"
        )

    if J_Y.ideal.dimension(clock) <= 1:
        # Y is a point (affine cone a line): a trivial tangent space is
        # contained in every limit, so condition (a) holds vacuously
        return WhitneyPairReport(
            I_X.ideal, J_Y.ideal, (), True, tuple(warnings)
        )

    CX = conormal_ideal(I_X, clock, seed)
    CY = conormal_ideal(J_Y, clock, seed)
    D = CX.ring
    icxy = Ideal(D, CX.ideal.generators + CY.ideal.generators)
    ikxy = Ideal(
        D, CX.ideal.generators + tuple(g.map_to(D) for g in J_Y.ideal.generators)
    )

    comps = minimal_primes(ikxy, clock, seed)
    kept = [c for c in comps if not c.ideal.contains_ideal(icxy, clock)]

    out: list[PrimeComponent] = []
    for c in kept:
        proj = eliminate(c.ideal, D.dual_names, clock)
        back = Ideal(R, [g.map_to(R) for g in proj.generators])
        if projectively_empty(back, clock):
            continue
        out.append(PrimeComponent(back, c.certification, "projection of " + c.witness))
    final = remove_redundant(out, clock)
    regular = not any(ideal_equal(c.ideal, J_Y.ideal, clock) for c in final)
    return WhitneyPairReport(I_X.ideal, J_Y.ideal, final, regular, tuple(warnings))


def whitney_a_holds(
    I_X: PrimeComponent | Ideal,
    J_Y: PrimeComponent | Ideal,
    excluded: Ideal | None = None,
    budget: ComputationBudget | BudgetClock | None = None,
    seed: int = 0,
) -> bool:
    """Does (Reg X, Reg Y) satisfy condition (a) away from an excluded locus?

    Both the conormal-sum ideal (cutting C(X) cap C(Y)) and the conormal
    restriction over Y are saturated by the excluded locus and by the
    singular locus of Y; the condition holds iff every generator of the
    former lies in the radical of the latter.  A zero excluded ideal means
    nothing is excluded.
    """
    if isinstance(I_X, Ideal):
        I_X = as_component(I_X)
    if isinstance(J_Y, Ideal):
        J_Y = as_component(J_Y)
    clock = ensure_clock(budget)
    _check_nested(I_X, J_Y, clock)
    if J_Y.ideal.dimension(clock) <= 1:
        return True

    CX = conormal_ideal(I_X, clock, seed)
    CY = conormal_ideal(J_Y, clock, seed)
    D = CX.ring
    conormal_sum = Ideal(D, CX.ideal.generators + CY.ideal.generators)
    restriction = Ideal(
        D, CX.ideal.generators + tuple(g.map_to(D) for g in J_Y.ideal.generators)
    )

    away: list[Ideal] = []
    if excluded is not None and not excluded.is_zero_ideal:
        if excluded.is_unit(clock):
            raise MathPreconditionError("excluded locus is the whole space")
        away.append(Ideal(D, [g.map_to(D) for g in excluded.generators]))
    ysing = _component_singular_ideal(J_Y, clock)
    if not ysing.is_unit(clock):
        away.append(Ideal(D, [g.map_to(D) for g in ysing.generators]))

    for S in away:
        conormal_sum = saturation(conormal_sum, S, clock, strategy="elimination")
        restriction = saturation(restriction, S, clock, strategy="elimination")

    return all(
        radical_membership(restriction, g, clock) for g in conormal_sum.generators
    )


# ---------------------------------------------------------------------------
# Algorithm: full Whitney (a) stratification
# ---------------------------------------------------------------------------


def _strictly_nested(X: PrimeComponent, Y: PrimeComponent, clock) -> bool:
    return Y.ideal.contains_ideal(X.ideal, clock) and not X.ideal.contains_ideal(
        Y.ideal, clock
    )


def whitney_a_stratify(
    ideal: Ideal,
    budget: ComputationBudget | BudgetClock | None = None,
    pair_seconds: float | None = DEFAULT_PAIR_SECONDS,
    seed: int = 0,
) -> StratificationLevels:
    """Whitney (a) stratification levels of a homogeneous radical ideal.

    Level 0 is the set of irreducible components; each next level collects
    the singular loci of the current components together with the
    condition-(a) failure primes of every strictly nested pair against all
    earlier levels, pruned to its minimal members.  Stops at the first
    empty level.  Pairs that exhaust their time budget are skipped and
    reported; the result is then flagged truncated.
    """
    if not ideal.homogeneous:
        raise MathPreconditionError("stratification requires a homogeneous ideal")
    if ideal.is_zero_ideal or ideal.is_unit():
        raise MathPreconditionError("input must define a nonempty proper variety")
    clock = ensure_clock(budget)

    warnings: list[str] = []
    truncated = False

    L0 = _proper_components(minimal_primes(ideal, clock, seed), clock)
    if not L0:
        raise MathPreconditionError("input defines no projective points")
    for comp in L0:
        if not comp.certified:
            warnings.append(
                f"component <{', '.join(comp.canonical_generators)}> not certified prime"
            )
    levels: list[tuple[PrimeComponent, ...]] = [L0]

    try:
        current = singular_locus(L0, clock, seed)
        while current:
            levels.append(current)
            gathered: list[PrimeComponent] = list(singular_locus(current, clock, seed))
            j = len(levels) - 1
            for i in range(j - 1, -1, -1):
                for X in levels[i]:
                    for Y in current:
                        if Y.ideal.dimension(clock) <= 1:
                            continue
                        if not _strictly_nested(X, Y, clock):
                            continue
                        if clock is not None:
                            clock.check_time()
                        # each pair gets its own meter so one hard pair does
                        # not starve the rest, but never beyond what is left
                        # of the overall budget
                        cap = pair_seconds
                        if clock is not None and clock.deadline is not None:
                            rem = max(clock.remaining_seconds(), 0.0)
                            cap = rem if cap is None else min(cap, rem)
                        pair_clock = (
                            ComputationBudget(max_seconds=cap).start()
                            if cap is not None
                            else clock
                        )
                        try:
                            report = whitney_a_irregular(X, Y, pair_clock, seed)
                        except BudgetExceededError:
                            if clock is not None:
                                clock.check_time()
                            truncated = True
                            warnings.append(
                                "pair (%s | %s) exceeded its time budget; "
                                "its irregular primes are missing"
                                % (
                                    ", ".join(str(g) for g in X.ideal.generators),
                                    ", ".join(str(g) for g in Y.ideal.generators),
                                )
                            )
                            continue
                        gathered.extend(report.irregular_primes)
                        warnings.extend(report.warnings)
            current = remove_redundant(_proper_components(gathered, clock), clock)
    except BudgetExceededError:
        truncated = True
        warnings.append("overall time budget exhausted; deeper levels are missing")

    return StratificationLevels(tuple(levels), truncated, tuple(dict.fromkeys(warnings)))


# ---------------------------------------------------------------------------
# affine boundary view
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineComponent:
    ideal: Ideal
    dimension: int
    point: tuple | None  # rational coordinates when zero-dimensional and linear


@dataclass(frozen=True)
class BoundaryReport:
    projective: StratificationLevels
    affine_levels: tuple[tuple[AffineComponent, ...], ...]
    homogenizing_var: str


def _solve_linear_point(ideal: Ideal) -> tuple | None:
    """Coordinates of V(I) when I is generated by affine-linear forms with a
    unique common zero; None otherwise."""
    R = ideal.ring
    n = R.nvars
    rows = []
    for g in ideal.generators:
        if g.degree() > 1:
            return None
        row = [QQ(0)] * n
        rhs = QQ(0)
        for e, c in g.terms.items():
            if sum(e) == 0:
                rhs = rhs - c
            else:
                row[e.index(1)] = c
        rows.append((row, rhs))
    # exact Gaussian elimination
    sol: list = [None] * n
    work = [list(r) + [b] for r, b in rows]
    pivots = []
    col = 0
    rix = 0
    for col in range(n):
        piv = next((k for k in range(rix, len(work)) if work[k][col]), None)
        if piv is None:
            continue
        work[rix], work[piv] = work[piv], work[rix]
        pv = work[rix][col]
        work[rix] = [v / pv for v in work[rix]]
        for k in range(len(work)):
            if k != rix and work[k][col]:
                f = work[k][col]
                work[k] = [a - f * b for a, b in zip(work[k], work[rix])]
        pivots.append(col)
        rix += 1
    for row in work[rix:]:
        if row[-1]:
            return None  # inconsistent; not a point
    if len(pivots) != n:
        return None  # positive-dimensional
    for k, col in enumerate(pivots):
        sol[col] = work[k][-1]
    return tuple(sol)


def boundary_candidates(
    generators,
    names,
    homogenizing_var: str = "w",
    budget: ComputationBudget | BudgetClock | None = None,
    pair_seconds: float | None = DEFAULT_PAIR_SECONDS,
    seed: int = 0,
) -> BoundaryReport:
    """Candidate strata of the algebraic boundary of a convex semi-algebraic set.

    The affine generators are homogenized, replaced by their square-free
    parts, stratified, and the levels are read back affinely: primes lying
    entirely at infinity are dropped, the rest are dehomogenized, and
    zero-dimensional linear components are resolved to explicit points.
    Every irreducible component printed at some positive level is a
    candidate to contain extreme points of the convex body.
    """
    names = tuple(names)
    if homogenizing_var in names:
        raise MathPreconditionError(
            f"homogenizing variable {homogenizing_var!r} collides with an input variable"
        )
    A = RingContext.create(names)
    polys = [A.parse(g) if isinstance(g, str) else g for g in generators]
    if not polys or all(not p for p in polys):
        raise MathPreconditionError("no generators")
    clock = ensure_clock(budget)

    homogenized = [p.homogenize(homogenizing_var) for p in polys if p]
    H = homogenized[0].ring
    squarefree = [squarefree_part(p.map_to(H)) for p in homogenized]
    projective = whitney_a_stratify(
        Ideal(H, squarefree), clock, pair_seconds=pair_seconds, seed=seed
    )

    wvar = H.var(homogenizing_var)
    affine_levels = []
    for level in projective.levels:
        row = []
        for comp in level:
            if comp.ideal.contains(wvar, clock):
                continue  # at infinity
            gens_affine = [
                g.dehomogenize(homogenizing_var).map_to(A)
                for g in comp.ideal.generators
            ]
            aff = Ideal(A, gens_affine)
            dim = aff.dimension(clock)
            point = _solve_linear_point(aff) if dim == 0 else None
            row.append(AffineComponent(aff, dim, point))
        affine_levels.append(tuple(row))
    return BoundaryReport(projective, tuple(affine_levels), homogenizing_var)
