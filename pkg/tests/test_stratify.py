from __future__ import annotations

import random

import pytest

from strata.errors import MathPreconditionError
from strata.groebner import ComputationBudget, Ideal, ideal_equal
from strata.idealops import radical_membership
from strata.polyring import QQ, RingContext
from strata.stratify import (
    as_component,
    boundary_candidates,
    conormal_ideal,
    dual_variety,
    singular_locus,
    whitney_a_holds,
    whitney_a_irregular,
    whitney_a_stratify,
)

BUDGET = ComputationBudget(max_seconds=240)


@pytest.fixture
def P2():
    return RingContext.create(["x", "y", "z"])


@pytest.fixture
def P3():
    return RingContext.create(["x", "y", "z", "w"], homogenizing="w")


def _level_sets(levels):
    return [sorted(c.canonical_generators for c in level) for level in levels]


# -- conormal spaces --------------------------------------------------------


def test_conic_conormal_contains_parametrized_tangent_data(P2):
    # rational points of the conic come from the parametrization
    # t -> (1 - t^2, 2t, 1 + t^2); at each, the tangent hyperplane is the
    # gradient, so (p, lambda grad f(p)) lies on the conormal space for
    # every scalar lambda.  None of this consults the conormal code.
    f = P2.parse("x^2 + y^2 - z^2")
    K = conormal_ideal(Ideal(P2, [f]), BUDGET)
    D = K.ring
    rng = random.Random(42)
    for _ in range(12):
        t = QQ(rng.randint(-8, 8), rng.randint(1, 5))
        lam = QQ(rng.randint(1, 7), rng.randint(1, 3))
        p = {"x": 1 - t * t, "y": 2 * t, "z": 1 + t * t}
        assert f.evaluate(p) == 0
        point = dict(p)
        for n in P2.names:
            point[D.dual_of(n)] = lam * f.differentiate(n).evaluate(p)
        for g in K.ideal.generators:
            assert g.evaluate(point) == 0


def test_conic_conormal_ideal_is_the_expected_one(P2):
    K = conormal_ideal(Ideal(P2, ["x^2 + y^2 - z^2"]), BUDGET)
    D = K.ring
    expected = Ideal(
        D,
        [
            "x^2 + y^2 - z^2",
            "x*u_x + y*u_y + z*u_z",
            "y*u_x - x*u_y",
            "z*u_x + x*u_z",
            "z*u_y + y*u_z",
            "u_x^2 + u_y^2 - u_z^2",
        ],
    )
    assert ideal_equal(K.ideal, expected)


def test_conormal_dimension_is_ambient_variable_count(P2, P3):
    # the conormal space of a hypersurface cone in n+1 variables has
    # affine dimension n+1 (projectively: n-1, plus one for each scaling)
    for ring, gen in [
        (P2, "x^2 + y^2 - z^2"),
        (P3, "x*y - z*w"),
    ]:
        K = conormal_ideal(Ideal(ring, [gen]), BUDGET)
        assert K.ideal.dimension() == ring.nvars


def test_conormal_of_a_point_is_its_hyperplane_pencil(P2):
    # hyperplanes through (0:0:1) are exactly those with u_z = 0
    K = conormal_ideal(Ideal(P2, ["x", "y"]), BUDGET)
    D = K.ring
    assert ideal_equal(K.ideal, Ideal(D, ["x", "y", "u_z"]))


def test_conormal_rejects_unit_and_inhomogeneous_input(P2):
    with pytest.raises(MathPreconditionError):
        conormal_ideal(Ideal(P2, ["x", "x - 1"]), BUDGET)
    with pytest.raises(MathPreconditionError):
        conormal_ideal(Ideal(P2, ["x^2 - y"]), BUDGET)


# -- dual varieties ---------------------------------------------------------


def test_conic_dual_is_the_inverse_gram_conic(P2):
    # the dual of v^T diag(1,1,-1) v is v^T diag(1,1,-1)^{-1} v, which has
    # the same equation here; frozen from that matrix computation
    dual = dual_variety(Ideal(P2, ["x^2 + y^2 - z^2"]), BUDGET)
    T = dual.ring
    assert ideal_equal(dual, Ideal(T, ["u_x^2 + u_y^2 - u_z^2"]))


def test_scaled_conic_dual_swaps_the_coefficients(P2):
    # diag(4, 9, -1) inverts to diag(1/4, 1/9, -1): clearing denominators,
    # the dual of 4x^2 + 9y^2 - z^2 is 9 u_x^2 + 4 u_y^2 - 36 u_z^2
    dual = dual_variety(Ideal(P2, ["4*x^2 + 9*y^2 - z^2"]), BUDGET)
    T = dual.ring
    assert ideal_equal(dual, Ideal(T, ["9*u_x^2 + 4*u_y^2 - 36*u_z^2"]))


def test_hyperplane_dual_is_a_point(P3):
    dual = dual_variety(Ideal(P3, ["y - w"]), BUDGET)
    T = dual.ring
    assert ideal_equal(dual, Ideal(T, ["u_x", "u_z", "u_y + u_w"]))


def test_conic_biduality(P2):
    conic = Ideal(P2, ["x^2 + y^2 - z^2"])
    double = dual_variety(dual_variety(conic, BUDGET), BUDGET)
    back = Ideal(
        P2,
        [
            g.map_to(P2, rename={"u_u_x": "x", "u_u_y": "y", "u_u_z": "z"})
            for g in double.generators
        ],
    )
    assert ideal_equal(back, conic)


# -- singular loci ----------------------------------------------------------


def test_smooth_conic_has_empty_singular_locus(P2):
    comps = [as_component(Ideal(P2, ["x^2 + y^2 - z^2"]))]
    assert singular_locus(comps, BUDGET) == ()


def test_two_planes_meet_in_their_common_line(P3):
    comps = [as_component(Ideal(P3, ["x"])), as_component(Ideal(P3, ["y"]))]
    sing = singular_locus(comps, BUDGET)
    assert [c.canonical_generators for c in sing] == [("x", "y")]


def test_cuspidal_cubic_singular_at_one_point(P2):
    comps = [as_component(Ideal(P2, ["y^2*z - x^3"]))]
    sing = singular_locus(comps, BUDGET)
    assert [c.canonical_generators for c in sing] == [("x", "y")]


# -- condition (a) on pairs -------------------------------------------------


def test_pair_must_be_nested(P2):
    X = Ideal(P2, ["x^2 + y^2 - z^2"])
    with pytest.raises(MathPreconditionError):
        whitney_a_irregular(X, Ideal(P2, ["x - z"]), BUDGET)
    with pytest.raises(MathPreconditionError):
        whitney_a_irregular(X, X, BUDGET)


def test_pair_against_a_point_is_vacuous(P2):
    X = Ideal(P2, ["y^2*z - x^3"])
    rep = whitney_a_irregular(X, Ideal(P2, ["x", "y"]), BUDGET)
    assert rep.regular and rep.irregular_primes == ()


def test_quartic_surface_pair_failure_primes(P3):
    # the singular line x = z + w = 0 of this quartic carries two special
    # points where limiting tangent planes escape condition (a)
    X = Ideal(P3, ["x^4 + (z + w)^3*w - (y + 2*w)*(z + w)^2*w"])
    Y = Ideal(P3, ["x", "z + w"])
    rep = whitney_a_irregular(X, Y, BUDGET)
    assert rep.regular
    assert sorted(c.canonical_generators for c in rep.irregular_primes) == [
        ("x", "y + 2*w", "z + w"),
        ("x", "z", "w"),
    ]


def test_cusp_edge_pair_is_regular_everywhere():
    # V(x^2 t^2 - y^2 z^2 + z^3 t) over its singular line V(x, z): every
    # limiting tangent hyperplane along the line contains the line, so the
    # radical-level condition holds even at the special points
    R = RingContext.create(["x", "y", "z", "t"])
    X = Ideal(R, ["x^2*t^2 - y^2*z^2 + z^3*t"])
    Y = Ideal(R, ["x", "z"])
    rep = whitney_a_irregular(X, Y, BUDGET)
    assert rep.regular
    assert rep.irregular_primes == ()
    assert whitney_a_holds(X, Y, excluded=Ideal(R, ["y"]), budget=BUDGET)


def test_cusp_edge_conormal_fibers_lie_over_the_line():
    # independent route for the previous test: specialize the conormal
    # ideal at two points of the line and look at the hyperplane fibers
    R = RingContext.create(["x", "y", "z", "t"])
    K = conormal_ideal(Ideal(R, ["x^2*t^2 - y^2*z^2 + z^3*t"]), BUDGET)
    D = K.ring
    for point in [
        {"x": QQ(0), "y": QQ(0), "z": QQ(0), "t": QQ(1)},
        {"x": QQ(0), "y": QQ(1), "z": QQ(0), "t": QQ(0)},
    ]:
        fiber = Ideal(
            D, [g.substitute(point) for g in K.ideal.generators]
        )
        # hyperplanes containing the line V(x, z) are those with
        # u_y = u_t = 0; the fiber must lie inside that pencil
        assert radical_membership(fiber, D.parse("u_y"), BUDGET)
        assert radical_membership(fiber, D.parse("u_t"), BUDGET)
    # over the origin-side point the fiber is a genuine pencil, not a
    # single hyperplane
    origin_fiber = Ideal(
        D,
        [
            g.substitute({"x": QQ(0), "y": QQ(0), "z": QQ(0), "t": QQ(1)})
            for g in K.ideal.generators
        ],
    )
    assert not radical_membership(origin_fiber, D.parse("u_x"), BUDGET)
    assert not radical_membership(origin_fiber, D.parse("u_z"), BUDGET)


# -- full stratification ----------------------------------------------------


def test_quartic_times_plane_stratification(P3):
    g = P3.parse("(x^4 + (z + w)^3*w - (y + 2*w)*(z + w)^2*w)*(y - w)")
    result = whitney_a_stratify(Ideal(P3, [g]), BUDGET)
    assert not result.truncated
    assert _level_sets(result.levels) == [
        [
            ("x^4 - y*z^2*w + z^3*w - 2*y*z*w^2 + z^2*w^2 - y*w^3 - z*w^3 - w^4",),
            ("y - w",),
        ],
        [
            ("x", "y - z", "w"),
            ("x", "z + w"),
            ("x^4 + z^3*w - 3*z*w^3 - 2*w^4", "y - w"),
        ],
        [
            ("x", "y + 2*w", "z + w"),
            ("x", "y - w", "z + w"),
            ("x", "z", "w"),
        ],
    ]


def test_stratification_levels_nest_with_descending_dimension(P3):
    g = P3.parse("(x^4 + (z + w)^3*w - (y + 2*w)*(z + w)^2*w)*(y - w)")
    result = whitney_a_stratify(Ideal(P3, [g]), BUDGET)
    for j in range(1, len(result.levels)):
        for c in result.levels[j]:
            parents = [
                d
                for d in result.levels[j - 1]
                if c.ideal.contains_ideal(d.ideal)
            ]
            assert parents, f"level {j} component {c.canonical_generators} floats free"
            assert all(c.dimension < d.dimension for d in parents)


def test_stratify_requires_homogeneous_nonunit(P2):
    with pytest.raises(MathPreconditionError):
        whitney_a_stratify(Ideal(P2, ["x^2 - y"]), BUDGET)
    with pytest.raises(MathPreconditionError):
        whitney_a_stratify(Ideal(P2, []), BUDGET)
    with pytest.raises(MathPreconditionError):
        whitney_a_stratify(Ideal(P2, ["x", "y", "z"]), BUDGET)


def test_stratify_with_starved_pair_budget_reports_truncation(P3):
    g = P3.parse("(x^4 + (z + w)^3*w - (y + 2*w)*(z + w)^2*w)*(y - w)")
    result = whitney_a_stratify(Ideal(P3, [g]), budget=None, pair_seconds=0.0)
    assert result.truncated
    assert any("budget" in w for w in result.warnings)
    # level 0 and the singular skeleton are still present
    assert len(result.levels) >= 2


# -- affine boundary reading ------------------------------------------------


def test_quartic_boundary_candidates_affine_view():
    report = boundary_candidates(
        ["(x^4 + (z + 1)^3 - (y + 2)*(z + 1)^2)*(y - 1)"],
        ["x", "y", "z"],
        homogenizing_var="w",
        budget=ComputationBudget(max_seconds=240),
    )
    assert not report.projective.truncated
    affine = report.affine_levels
    assert len(affine) == 3

    first = sorted(tuple(str(g) for g in c.ideal.generators) for c in affine[1])
    assert first == [("x", "z + 1"), ("x^4 + z^3 - 3*z - 2", "y - 1")]

    points = sorted(c.point for c in affine[2] if c.point is not None)
    assert points == [(QQ(0), QQ(-2), QQ(-1)), (QQ(0), QQ(1), QQ(-1))]
    assert all(c.dimension == 0 for c in affine[2])


def test_boundary_drops_components_at_infinity():
    # the projective stratification of the quartic-times-plane surface has
    # components inside w = 0 at two levels; none of them may survive the
    # affine reading
    report = boundary_candidates(
        ["(x^4 + (z + 1)^3 - (y + 2)*(z + 1)^2)*(y - 1)"],
        ["x", "y", "z"],
        homogenizing_var="w",
        budget=ComputationBudget(max_seconds=240),
    )
    wcount = 0
    for level in report.projective.levels:
        for c in level:
            if any(str(g) == "w" for g in c.ideal.generators):
                wcount += 1
    assert wcount >= 1
    for level in report.affine_levels:
        for c in level:
            assert all("w" not in str(g) for g in c.ideal.generators)


def test_boundary_rejects_variable_collision():
    with pytest.raises(MathPreconditionError):
        boundary_candidates(["x^2 - y"], ["x", "y"], homogenizing_var="y")


def test_boundary_squares_are_flattened():
    # non-reduced input describes the same boundary; the squarefree part
    # is taken before stratifying
    a = boundary_candidates(
        ["(x^2 + y^2 - 1)^2"], ["x", "y"], budget=BUDGET
    )
    b = boundary_candidates(
        ["x^2 + y^2 - 1"], ["x", "y"], budget=BUDGET
    )
    assert _level_sets(a.projective.levels) == _level_sets(b.projective.levels)
