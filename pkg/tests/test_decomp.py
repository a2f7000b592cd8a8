from __future__ import annotations

import random

import pytest

from strata.decomp import (
    minimal_primes,
    radical_ideal,
    remove_redundant,
    verify_decomposition,
)
from strata.groebner import ComputationBudget, Ideal, ideal_equal
from strata.polyring import QQ, RingContext


def _prime_sets(components):
    return sorted(tuple(c.canonical_generators) for c in components)


@pytest.fixture
def R():
    return RingContext.create(["x", "y", "z"])


# -- small hand-checkable decompositions ------------------------------------


def test_two_coordinate_planes(R):
    comps = minimal_primes(Ideal(R, ["x*y"]))
    assert _prime_sets(comps) == [("x",), ("y",)]
    assert all(c.certified for c in comps)


def test_plane_and_line(R):
    # <x*y, x*z> = <x> cap <y, z>
    comps = minimal_primes(Ideal(R, ["x*y", "x*z"]))
    assert _prime_sets(comps) == [("x",), ("y", "z")]
    dims = sorted(c.dimension for c in comps)
    assert dims == [1, 2]


def test_embedded_prime_is_not_minimal(R):
    # <x^2, x*y> has radical <x>; the embedded <x, y> must not show up
    comps = minimal_primes(Ideal(R, ["x^2", "x*y"]))
    assert _prime_sets(comps) == [("x",)]


def test_difference_of_squares_splits(R):
    comps = minimal_primes(Ideal(R, ["x^2 - y^2"]))
    assert _prime_sets(comps) == [("x + y",), ("x - y",)]


def test_irreducible_quadric_stays_whole(R):
    comps = minimal_primes(Ideal(R, ["x^2 + y^2 - z^2"]))
    assert len(comps) == 1
    assert comps[0].certified
    assert comps[0].dimension == 2


def test_union_of_three_points():
    S = RingContext.create(["x", "y"])
    I = Ideal(S, ["x*(x - 1)*(x + 2)", "y"])
    comps = minimal_primes(I)
    assert _prime_sets(comps) == [("x", "y"), ("x + 2", "y"), ("x - 1", "y")]
    assert all(c.dimension == 0 for c in comps)


def test_nonradical_input_gives_reduced_components(R):
    comps = minimal_primes(Ideal(R, ["(x - z)^3"]))
    assert _prime_sets(comps) == [("x - z",)]


def test_unit_ideal_has_no_primes(R):
    assert minimal_primes(Ideal(R, ["x", "x - 1"])) == ()


# -- the twisted cubic ------------------------------------------------------


def test_twisted_cubic_is_prime_and_contains_its_points():
    P = RingContext.create(["x", "y", "z", "w"])
    gens = ["x*z - y^2", "x*w - y*z", "y*w - z^2"]
    comps = minimal_primes(Ideal(P, gens))
    assert len(comps) == 1
    C = comps[0]
    assert C.certified
    assert C.dimension == 2  # affine cone over a projective curve

    # independent route: the curve is the image of (s, t) -> (s^3, s^2 t, s t^2, t^3),
    # so every generator of the returned prime must vanish on sampled points
    rng = random.Random(9)
    for _ in range(12):
        s = QQ(rng.randint(-6, 6), rng.randint(1, 4))
        t = QQ(rng.randint(-6, 6), rng.randint(1, 4))
        pt = {"x": s**3, "y": s**2 * t, "z": s * t**2, "w": t**3}
        for g in C.ideal.generators:
            assert g.evaluate(pt) == 0


def test_twisted_cubic_decomposition_verifies():
    P = RingContext.create(["x", "y", "z", "w"])
    I = Ideal(P, ["x*z - y^2", "x*w - y*z", "y*w - z^2"])
    report = verify_decomposition(I, minimal_primes(I))
    assert report["ok"]
    assert report["certified"]


# -- quartic-surface singular loci ------------------------------------------


def _xano_ring():
    return RingContext.create(["x", "y", "z", "w"], homogenizing="w")


def _xano_surface(R4):
    return R4.parse("(x^4 + (z + w)^3*w - (y + 2*w)*(z + w)^2*w)*(y - w)")


def test_quartic_times_plane_singular_primes():
    R4 = _xano_ring()
    g = _xano_surface(R4)
    sing = Ideal(
        R4, [g] + [g.differentiate(n) for n in R4.names]
    )
    comps = minimal_primes(sing, ComputationBudget(max_seconds=120))
    assert _prime_sets(comps) == sorted(
        [
            ("x", "z + w"),
            ("x^4 + z^3*w - 3*z*w^3 - 2*w^4", "y - w"),
            ("x", "y - z", "w"),
        ]
    )
    assert all(c.certified for c in comps)


def test_quartic_times_plane_decomposition_verifies():
    R4 = _xano_ring()
    g = _xano_surface(R4)
    sing = Ideal(R4, [g] + [g.differentiate(n) for n in R4.names])
    comps = minimal_primes(sing, ComputationBudget(max_seconds=120))
    report = verify_decomposition(sing, comps, ComputationBudget(max_seconds=120))
    assert report["ok"]


def test_teardrop_quintic_singular_primes():
    R4 = RingContext.create(["x", "y", "z", "w"], homogenizing="w")
    g = R4.parse(
        "(z^2*w + y^2*w - (x + w)*(x - w)^2)*(y - 5*(x - w))*(y + 5*(x - w))"
        " + (1/10)*w*(x - w)*y*z^2"
    )
    sing = Ideal(R4, [g] + [g.differentiate(n) for n in R4.names])
    comps = minimal_primes(sing, ComputationBudget(max_seconds=300))
    assert _prime_sets(comps) == sorted(
        [
            ("x - w", "y"),
            ("x - 24*w", "y + 115*w", "z"),
            ("x - 24*w", "y - 115*w", "z"),
            ("y^2 + z^2", "x", "w"),
        ]
    )


# -- redundancy and radicals -------------------------------------------------


def test_remove_redundant_drops_contained_components(R):
    a = minimal_primes(Ideal(R, ["x"]))[0]
    b = minimal_primes(Ideal(R, ["x", "y"]))[0]
    kept = remove_redundant([a, b, a])
    assert _prime_sets(kept) == [("x",)]


def test_radical_ideal_strips_powers(R):
    assert ideal_equal(radical_ideal(Ideal(R, ["x^2", "x*y"])), Ideal(R, ["x"]))
    assert ideal_equal(
        radical_ideal(Ideal(R, ["x^2*y", "x*y^2"])), Ideal(R, ["x*y"])
    )


def test_radical_of_unit_is_unit(R):
    assert radical_ideal(Ideal(R, ["x", "x - 1"])).is_unit()


def test_verify_decomposition_flags_wrong_answers(R):
    I = Ideal(R, ["x*y"])
    right = minimal_primes(I)
    # dropping a component breaks radical coverage
    partial = verify_decomposition(I, right[:1])
    assert not partial["ok"]
    # adding a redundant component breaks minimality
    too_many = verify_decomposition(I, list(right) + [minimal_primes(Ideal(R, ["x", "y"]))[0]])
    assert not too_many["pairwise_minimal"]


def test_verify_decomposition_random_monomial_corpus(R):
    rng = random.Random(1234)
    for _ in range(8):
        gens = []
        for _ in range(rng.randint(1, 4)):
            e = tuple(rng.randint(0, 2) for _ in range(3))
            if any(e):
                gens.append(
                    R.parse(
                        "*".join(f"{n}^{k}" for n, k in zip(R.names, e) if k) or "1"
                    )
                )
        if not gens:
            continue
        I = Ideal(R, gens)
        report = verify_decomposition(I, minimal_primes(I))
        assert report["ok"], [str(g) for g in gens]
