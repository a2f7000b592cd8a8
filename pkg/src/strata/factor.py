"""Factorisation of polynomials over Q.

The classical pipeline (Yun square-free splitting, reduction mod small
primes with Hensel lifting for one variable, evaluation plus lifting for
several) is provided by sympy's polynomial domain, which is exact over Q
and deterministic.  This module owns the conversion layer and the canonical
presentation: factors are primitive with positive leading coefficient under
the default order, sorted reproducibly, and the rational ``unit`` makes the
product reconstruct the input exactly.

``maybe_reducible`` reports that a factor could not be certified
irreducible.  The backend factors completely over Q, so the flag is clean on
every path through it; consumers (notably the prime decomposition) are
written to respect the flag should a future backend set it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy

from .errors import MathPreconditionError
from .polyring import Polynomial, QQ, RingContext

_SYMBOL_CACHE: dict[tuple[str, ...], tuple] = {}


def _symbols(ring: RingContext):
    syms = _SYMBOL_CACHE.get(ring.names)
    if syms is None:
        syms = sympy.symbols(" ".join(ring.names), seq=True)
        _SYMBOL_CACHE[ring.names] = tuple(syms)
    return syms


def to_sympy(p: Polynomial) -> sympy.Poly:
    syms = _symbols(p.ring)
    data = {
        e: sympy.Rational(int(c.numerator), int(c.denominator))
        for e, c in p.terms.items()
    }
    return sympy.Poly.from_dict(data, *syms, domain=sympy.QQ)


def from_sympy(p_sym: sympy.Poly, ring: RingContext) -> Polynomial:
    dom = p_sym.domain
    terms = {}
    for exps, c in p_sym.terms():
        cq = dom.to_sympy(c)
        terms[tuple(int(e) for e in exps)] = QQ(int(cq.p), int(cq.q))
    return Polynomial(ring, terms)


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factor^multiplicity) == the factored polynomial."""

    unit: object  # rational scalar
    factors: tuple[tuple[Polynomial, int], ...]
    maybe_reducible: bool = False

    def expand(self) -> Polynomial:
        if not self.factors:
            raise MathPreconditionError("empty factorization has no ring to expand in")
        acc = self.factors[0][0].ring.const(self.unit)
        for f, k in self.factors:
            acc = acc * f ** k
        return acc

    def distinct(self) -> tuple[Polynomial, ...]:
        return tuple(f for f, _ in self.factors)

    @property
    def is_irreducible(self) -> bool:
        return (
            len(self.factors) == 1
            and self.factors[0][1] == 1
            and not self.maybe_reducible
        )


def _canonical(p: Polynomial, fac_pairs, maybe=False) -> Factorization:
    norm: list[tuple[Polynomial, int]] = []
    for f, k in fac_pairs:
        norm.append((f.primitive(), int(k)))
    norm.sort(key=lambda fk: (fk[0].degree(), str(fk[0]), fk[1]))
    prod = p.ring.one
    for f, k in norm:
        prod = prod * f ** k
    if not prod:
        raise MathPreconditionError("inconsistent factorization")
    # p = unit * prod with prod monic-primitive: the ratio is a scalar
    some = next(iter(prod.terms))
    unit = p.terms[some] / prod.terms[some]
    check = p.ring.const(unit)
    # cheap exactness guard on the reconstruction
    if (check * prod) != p:
        raise MathPreconditionError("factor reconstruction failed")
    return Factorization(unit, tuple(norm), maybe)


def squarefree_decomposition(p: Polynomial) -> Factorization:
    """Yun-style square-free split: p = unit * prod part_i^i."""
    if not p:
        raise MathPreconditionError("cannot factor the zero polynomial")
    if p.is_constant():
        return Factorization(p.constant_value(), ())
    _, pairs = to_sympy(p).sqf_list()
    converted = [(from_sympy(f, p.ring), k) for f, k in pairs]
    return _canonical(p, converted)


def squarefree_part(p: Polynomial) -> Polynomial:
    """Product of the distinct irreducible factors, primitive-normalised."""
    fac = squarefree_decomposition(p)
    out = p.ring.one
    for f in fac.distinct():
        out = out * f
    return out.primitive()


def factor_univariate(p: Polynomial) -> Factorization:
    """Factor a polynomial that involves at most one variable."""
    if not p:
        raise MathPreconditionError("cannot factor the zero polynomial")
    used = p.variables()
    if len(used) > 1:
        raise MathPreconditionError(
            f"polynomial involves {len(used)} variables; expected a univariate input"
        )
    return factor_multivariate(p)


def factor_multivariate(p: Polynomial) -> Factorization:
    """Complete factorisation over Q into irreducible (primitive) factors."""
    if not p:
        raise MathPreconditionError("cannot factor the zero polynomial")
    if p.is_constant():
        return Factorization(p.constant_value(), ())
    _, pairs = to_sympy(p).factor_list()
    converted = [(from_sympy(f, p.ring), k) for f, k in pairs]
    return _canonical(p, converted)


def is_irreducible(p: Polynomial) -> bool:
    if not p or p.is_constant():
        return False
    return factor_multivariate(p).is_irreducible


# ---------------------------------------------------------------------------
# gcd utilities (used by the decomposition machinery)
# ---------------------------------------------------------------------------


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Primitive gcd over Q (positive leading coefficient)."""
    if not a:
        return b.primitive() if b else b
    if not b:
        return a.primitive()
    g = sympy.gcd(to_sympy(a), to_sympy(b))
    return from_sympy(sympy.Poly(g, *_symbols(a.ring), domain=sympy.QQ), a.ring).primitive()


def gcd_many(polys) -> Polynomial:
    acc = None
    for p in polys:
        acc = p if acc is None else poly_gcd(acc, p)
        if acc.is_constant() and acc:
            return acc.ring.one
    if acc is None:
        raise MathPreconditionError("gcd of an empty list")
    return acc


def content_wrt(p: Polynomial, name: str) -> Polynomial:
    """Gcd of the coefficient polynomials of p viewed as a polynomial in name."""
    i = p.ring.index(name)
    buckets: dict[int, dict] = {}
    for e, c in p.terms.items():
        buckets.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1 :]] = c
    coeffs = [Polynomial(p.ring, terms) for terms in buckets.values()]
    return gcd_many(coeffs)
