"""Exact sparse multivariate polynomial arithmetic over the rationals.

Variables live in a :class:`RingContext` which fixes their textual names,
their order, and their role: ``primal`` coordinates, ``dual`` (hyperplane)
coordinates, an optional ``homogenizing`` variable and internal ``auxiliary``
variables used by elimination tricks.  Polynomials are immutable maps from
exponent tuples to nonzero rational coefficients; every operation is pure and
returns canonical data, so equal polynomials compare and print identically.

Coefficients are `gmpy2.mpq` when available (exact rationals with fast C
arithmetic) and `fractions.Fraction` otherwise; both expose the same
numerator/denominator protocol.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    from fractions import Fraction as QQ

from .errors import MathPreconditionError, ParseInputError, RingMismatchError

Rational = Union[int, "QQ"]
Monomial = tuple[int, ...]

ROLE_PRIMAL = "primal"
ROLE_DUAL = "dual"
ROLE_HOMOGENIZING = "homogenizing"
ROLE_AUXILIARY = "auxiliary"

#: prefix of machine-generated auxiliary variables; rejected in user rings
AUX_PREFIX = "_"
DUAL_PREFIX = "u_"

_ZERO = QQ(0)
_ONE = QQ(1)


def _is_identifier(name: str) -> bool:
    if not name:
        return False
    head, tail = name[0], name[1:]
    if not (head.isalpha() or head == "_"):
        return False
    return all(c.isalnum() or c == "_" for c in tail)


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


class MonomialOrder:
    """A global monomial order, realised as a sort-key function.

    ``key_function(ring)`` returns a callable mapping exponent tuples to
    totally ordered keys; larger key means larger monomial.
    """

    def key_function(self, ring: "RingContext") -> Callable[[Monomial], tuple]:
        raise NotImplementedError

    def cache_token(self, ring: "RingContext"):
        """Hashable identity used for Groebner-basis caching."""
        return self


def _grevlex_key(exps: Monomial) -> tuple:
    # a > b iff deg(a) > deg(b), ties broken so the *last* nonzero entry of
    # a - b is negative; encoded as a plain lexicographic tuple comparison.
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class GrevLex(MonomialOrder):
    """Graded reverse lexicographic order (the default everywhere)."""

    def key_function(self, ring: "RingContext") -> Callable[[Monomial], tuple]:
        return _grevlex_key


@dataclass(frozen=True)
class Lex(MonomialOrder):
    """Pure lexicographic order on the ring's variable sequence."""

    def key_function(self, ring: "RingContext") -> Callable[[Monomial], tuple]:
        return lambda exps: exps


@dataclass(frozen=True)
class GrevLexLast(MonomialOrder):
    """Grevlex with one designated variable moved to the cheapest position.

    Useful for saturating a homogeneous ideal by a single variable: under
    this order a reduced Groebner basis element whose leading monomial is
    divisible by ``last`` is divisible by ``last`` outright, so the
    saturation is obtained by dividing out the common power.
    """

    last: str

    def key_function(self, ring: "RingContext") -> Callable[[Monomial], tuple]:
        j = ring.index(self.last)
        rest = tuple(i for i in range(ring.nvars) if i != j)

        def key(exps: Monomial) -> tuple:
            reordered = tuple(exps[i] for i in rest) + (exps[j],)
            return _grevlex_key(reordered)

        return key


@dataclass(frozen=True)
class BlockOrder(MonomialOrder):
    """Elimination order: the named block dominates, grevlex inside blocks.

    Any monomial involving a block variable is larger than any monomial free
    of them, so a Groebner basis under this order intersects down to the
    subring without the block -- the block is eliminated exactly.
    """

    block: tuple[str, ...]
    inner: MonomialOrder = GrevLex()

    def __post_init__(self):
        object.__setattr__(self, "block", tuple(self.block))

    def key_function(self, ring: "RingContext") -> Callable[[Monomial], tuple]:
        block_ix = tuple(ring.index(v) for v in self.block)
        rest_ix = tuple(i for i in range(ring.nvars) if i not in set(block_ix))
        if rest_ix:
            inner_key = self.inner.key_function(ring.without([ring.names[i] for i in block_ix]))
        else:
            inner_key = _grevlex_key

        def key(exps: Monomial) -> tuple:
            head = tuple(exps[i] for i in block_ix)
            tail = tuple(exps[i] for i in rest_ix)
            return (_grevlex_key(head), inner_key(tail))

        return key


GREVLEX = GrevLex()
LEX = Lex()


# ---------------------------------------------------------------------------
# ring contexts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RingContext:
    """An ordered list of named variables with roles, over Q.

    Instances are immutable and compared structurally; two operations may mix
    polynomials only when their rings compare equal.
    """

    names: tuple[str, ...]
    roles: tuple[str, ...]

    # -- construction ------------------------------------------------------

    @staticmethod
    def create(names: Sequence[str], homogenizing: str | None = None) -> "RingContext":
        names = tuple(names)
        if not names:
            raise MathPreconditionError("a ring needs at least one variable")
        seen = set()
        for name in names:
            if not _is_identifier(name):
                raise MathPreconditionError(f"invalid variable name {name!r}")
            if name.startswith(AUX_PREFIX):
                raise MathPreconditionError(
                    f"variable name {name!r} uses the reserved auxiliary prefix {AUX_PREFIX!r}"
                )
            if name in seen:
                raise MathPreconditionError(f"duplicate variable name {name!r}")
            seen.add(name)
        if homogenizing is not None and homogenizing not in names:
            raise MathPreconditionError(
                f"homogenizing variable {homogenizing!r} is not among the ring variables"
            )
        roles = tuple(
            ROLE_HOMOGENIZING if n == homogenizing else ROLE_PRIMAL for n in names
        )
        return RingContext(names, roles)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "roles", tuple(self.roles))
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    # -- basic queries -----------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise MathPreconditionError(f"unknown variable {name!r} in ring {self}") from None

    def role(self, name: str) -> str:
        return self.roles[self.index(name)]

    @property
    def homogenizing_name(self) -> str | None:
        for n, r in zip(self.names, self.roles):
            if r == ROLE_HOMOGENIZING:
                return n
        return None

    @property
    def primal_block(self) -> tuple[str, ...]:
        """Primal coordinates including the homogenizing one, in ring order."""
        return tuple(
            n for n, r in zip(self.names, self.roles) if r in (ROLE_PRIMAL, ROLE_HOMOGENIZING)
        )

    @property
    def dual_names(self) -> tuple[str, ...]:
        return tuple(n for n, r in zip(self.names, self.roles) if r == ROLE_DUAL)

    @property
    def aux_names(self) -> tuple[str, ...]:
        return tuple(n for n, r in zip(self.names, self.roles) if r == ROLE_AUXILIARY)

    def dual_of(self, name: str) -> str:
        """Name of the dual variable paired with a primal-block variable."""
        block = self.primal_block
        duals = self.dual_names
        if name not in block or len(duals) != len(block):
            raise MathPreconditionError(f"no dual variable paired with {name!r}")
        return duals[block.index(name)]

    def primal_of(self, dual_name: str) -> str:
        block = self.primal_block
        duals = self.dual_names
        if dual_name not in duals or len(duals) != len(block):
            raise MathPreconditionError(f"{dual_name!r} is not a paired dual variable")
        return block[duals.index(dual_name)]

    # -- derived rings -----------------------------------------------------

    def with_duals(self, prefix: str = DUAL_PREFIX) -> "RingContext":
        """Append one dual variable per primal-block variable (same order)."""
        if self.dual_names:
            raise MathPreconditionError("ring already carries dual variables")
        block = self.primal_block
        dual = tuple(prefix + n for n in block)
        clash = set(dual) & set(self.names)
        if clash:
            raise MathPreconditionError(f"dual names collide with existing variables: {sorted(clash)}")
        return RingContext(self.names + dual, self.roles + (ROLE_DUAL,) * len(dual))

    def with_aux(self, count: int = 1) -> tuple["RingContext", tuple[str, ...]]:
        """Append reserved auxiliary variables; returns (ring, new names)."""
        fresh: list[str] = []
        k = 0
        existing = set(self.names)
        while len(fresh) < count:
            cand = f"{AUX_PREFIX}t{k}"
            k += 1
            if cand not in existing:
                fresh.append(cand)
        new = RingContext(
            self.names + tuple(fresh), self.roles + (ROLE_AUXILIARY,) * len(fresh)
        )
        return new, tuple(fresh)

    def without(self, names: Iterable[str]) -> "RingContext":
        """The ring with the given variables removed (roles preserved)."""
        drop = set(names)
        unknown = drop - set(self.names)
        if unknown:
            raise MathPreconditionError(f"cannot remove unknown variables {sorted(unknown)}")
        kept = [(n, r) for n, r in zip(self.names, self.roles) if n not in drop]
        if not kept:
            raise MathPreconditionError("cannot remove every variable from a ring")
        return RingContext(tuple(n for n, _ in kept), tuple(r for _, r in kept))

    def dual_ring(self) -> "RingContext":
        """The dual projective space's own ring: dual names become primal.

        The dual of the homogenizing variable serves as the homogenizing
        variable on the dual side, so affine views of dual varieties work.
        """
        duals = self.dual_names
        if not duals:
            raise MathPreconditionError("ring has no dual variables")
        hom = self.homogenizing_name
        roles = tuple(
            ROLE_HOMOGENIZING if hom is not None and d == self.dual_of(hom) else ROLE_PRIMAL
            for d in duals
        )
        return RingContext(duals, roles)

    # -- element constructors ---------------------------------------------

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, value: Rational) -> "Polynomial":
        value = QQ(value)
        if value == 0:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.nvars: value})

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: _ONE})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in self.names)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"RingContext({', '.join(self.names)})"

    def __str__(self) -> str:
        return f"Q[{', '.join(self.names)}]"


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


def _coerce(value: Rational):
    if isinstance(value, Polynomial):
        raise TypeError("expected a rational scalar, got a polynomial")
    return QQ(value)


class Polynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingContext, terms: Mapping[Monomial, Rational]):
        clean: dict[Monomial, QQ] = {}
        for exps, c in terms.items():
            c = QQ(c)
            if c != 0:
                clean[tuple(exps)] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # immutability guard
        raise AttributeError("Polynomial instances are immutable")

    # -- protocol ----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int) or type(other) is type(_ONE):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.ring.names, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def _check_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(
                f"operands live in different rings: {self.ring} vs {other.ring}"
            )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        self._check_ring(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, _ZERO) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        return self.__add__(-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self).__add__(other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = _coerce(other)
            if c == 0:
                return self.ring.zero
            return Polynomial(self.ring, {e: c0 * c for e, c0 in self.terms.items()})
        self._check_ring(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        acc: dict[Monomial, QQ] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = acc.get(e, _ZERO) + ca * cb
                if s:
                    acc[e] = s
                else:
                    acc.pop(e, None)
        return Polynomial(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise MathPreconditionError("polynomial powers must be nonnegative integers")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structure ---------------------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return _ZERO
        if not self.is_constant():
            raise MathPreconditionError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def variables(self) -> tuple[str, ...]:
        """Names of variables that actually occur, in ring order."""
        used = [False] * self.ring.nvars
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return tuple(n for n, u in zip(self.ring.names, used) if u)

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        if not self.terms:
            raise MathPreconditionError("the zero polynomial has no leading term")
        key = (order or GREVLEX).key_function(self.ring)
        return max(self.terms, key=key)

    def leading_coefficient(self, order: MonomialOrder | None = None):
        return self.terms[self.leading_monomial(order)]

    def leading_term(self, order: MonomialOrder | None = None) -> "Polynomial":
        m = self.leading_monomial(order)
        return Polynomial(self.ring, {m: self.terms[m]})

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        return self * (1 / QQ(lc))

    def primitive(self, order: MonomialOrder | None = None) -> "Polynomial":
        """Integer-content-1 scalar multiple with positive leading coefficient."""
        if not self.terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, int(c.denominator))
        num = 0
        for c in self.terms.values():
            num = gcd(num, abs(int(c.numerator) * (den // int(c.denominator))))
        scale = QQ(den, num)
        if self.leading_coefficient(order) < 0:
            scale = -scale
        return self * scale

    # -- calculus / substitution ------------------------------------------

    def differentiate(self, name: str) -> "Polynomial":
        i = self.ring.index(name)
        terms: dict[Monomial, QQ] = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1 :]
                s = terms.get(e2, _ZERO) + c * e[i]
                if s:
                    terms[e2] = s
                else:
                    terms.pop(e2, None)
        return Polynomial(self.ring, terms)

    def substitute(self, assignment: Mapping[str, "Polynomial | Rational"]) -> "Polynomial":
        """Replace variables by polynomials (or scalars) of the same ring."""
        result = self
        for name, value in assignment.items():
            if not isinstance(value, Polynomial):
                value = result.ring.const(value)
            result._check_ring(value)
            i = result.ring.index(name)
            # group terms by the exponent of the substituted variable
            buckets: dict[int, dict[Monomial, QQ]] = {}
            for e, c in result.terms.items():
                stripped = e[:i] + (0,) + e[i + 1 :]
                buckets.setdefault(e[i], {})[stripped] = c
            acc = result.ring.zero
            power = result.ring.one
            last = 0
            for k in sorted(buckets):
                for _ in range(k - last):
                    power = power * value
                last = k
                acc = acc + Polynomial(result.ring, buckets[k]) * power
            result = acc
        return result

    def evaluate(self, point: Mapping[str, Rational]):
        """Full evaluation at a rational point (every occurring variable set)."""
        missing = [n for n in self.variables() if n not in point]
        if missing:
            raise MathPreconditionError(f"no value supplied for {missing}")
        total = _ZERO
        ix = {self.ring.index(n): QQ(v) for n, v in point.items()}
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v = v * ix[i] ** k
            total = total + v
        return total

    # -- homogenization ----------------------------------------------------

    def homogenize(self, hvar: str) -> "Polynomial":
        """Homogenize with the named variable.

        If the variable is not part of the ring it is appended (with the
        homogenizing role) and the result lives in that extended ring.
        """
        if hvar in self.ring.names:
            ring = self.ring
            if self.ring.role(hvar) != ROLE_HOMOGENIZING:
                raise MathPreconditionError(
                    f"{hvar!r} is an ordinary variable of the ring; pick a fresh name"
                )
            poly = self
        else:
            if not _is_identifier(hvar) or hvar.startswith(AUX_PREFIX):
                raise MathPreconditionError(f"invalid homogenizing variable {hvar!r}")
            ring = RingContext(self.ring.names + (hvar,), self.ring.roles + (ROLE_HOMOGENIZING,))
            poly = self.map_to(ring)
        i = ring.index(hvar)
        if any(e[i] for e in poly.terms):
            raise MathPreconditionError(f"polynomial already involves {hvar!r}")
        d = poly.degree()
        terms = {}
        for e, c in poly.terms.items():
            terms[e[:i] + (d - sum(e),) + e[i + 1 :]] = c
        return Polynomial(ring, terms)

    def dehomogenize(self, hvar: str) -> "Polynomial":
        """Set the named variable to 1; the result lives in the reduced ring."""
        i = self.ring.index(hvar)
        target = self.ring.without([hvar])
        terms: dict[Monomial, QQ] = {}
        for e, c in self.terms.items():
            e2 = e[:i] + e[i + 1 :]
            s = terms.get(e2, _ZERO) + c
            if s:
                terms[e2] = s
            else:
                terms.pop(e2, None)
        return Polynomial(target, terms)

    def map_to(self, ring: RingContext, rename: Mapping[str, str] | None = None) -> "Polynomial":
        """Transport to another ring, matching variables by (renamed) name."""
        rename = dict(rename or {})
        target_ix: list[int | None] = []
        for n in self.ring.names:
            name = rename.get(n, n)
            target_ix.append(ring._index.get(name))
        terms: dict[Monomial, QQ] = {}
        for e, c in self.terms.items():
            out = [0] * ring.nvars
            for i, k in enumerate(e):
                if not k:
                    continue
                j = target_ix[i]
                if j is None:
                    raise MathPreconditionError(
                        f"variable {self.ring.names[i]!r} has no image in {ring}"
                    )
                out[j] += k
            e2 = tuple(out)
            s = terms.get(e2, _ZERO) + c
            if s:
                terms[e2] = s
            else:
                terms.pop(e2, None)
        return Polynomial(ring, terms)

    # -- printing ----------------------------------------------------------

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, QQ]]:
        key = (order or GREVLEX).key_function(self.ring)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}"
                for n, k in zip(self.ring.names, e)
                if k
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"<{self} in {self.ring}>"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_T_INT = "int"
_T_NAME = "name"
_T_OP = "op"
_T_END = "end"


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise ParseInputError("floating point literals are not allowed", j)
            tokens.append((_T_INT, text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append((_T_NAME, text[i:j], i))
            i = j
            continue
        if c in "+-*^()/":
            tokens.append((_T_OP, c, i))
            i += 1
            continue
        raise ParseInputError(f"unexpected character {c!r}", i)
    tokens.append((_T_END, "", n))
    return tokens


class _Parser:
    """Recursive-descent parser for the expression grammar.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := ['-'] atom ['^' int]
    atom   := '(' expr ')' | int ['/' int] | variable

    Implicit multiplication and a division operator are deliberately not
    part of the grammar; '/' only joins two integer literals.
    """

    def __init__(self, ring: RingContext, text: str):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        poly = self.expr()
        kind, value, at = self.peek()
        if kind != _T_END:
            if kind in (_T_INT, _T_NAME) or value == "(":
                raise ParseInputError(
                    f"missing operator before {value!r} (implicit multiplication is not allowed)",
                    at,
                )
            raise ParseInputError(f"unexpected {value!r}", at)
        return poly

    def expr(self) -> Polynomial:
        kind, value, _ = self.peek()
        negate = False
        if kind == _T_OP and value in "+-":
            self.advance()
            negate = value == "-"
        poly = self.term()
        if negate:
            poly = -poly
        while True:
            kind, value, _ = self.peek()
            if kind == _T_OP and value in "+-":
                self.advance()
                rhs = self.term()
                poly = poly - rhs if value == "-" else poly + rhs
            else:
                return poly

    def term(self) -> Polynomial:
        poly = self.factor()
        while True:
            kind, value, at = self.peek()
            if kind == _T_OP and value == "*":
                self.advance()
                poly = poly * self.factor()
            elif kind in (_T_INT, _T_NAME) or (kind == _T_OP and value == "("):
                raise ParseInputError(
                    f"missing operator before {value!r} (implicit multiplication is not allowed)",
                    at,
                )
            else:
                return poly

    def factor(self) -> Polynomial:
        kind, value, _ = self.peek()
        if kind == _T_OP and value == "-":
            self.advance()
            return -self.factor()
        poly = self.atom()
        kind, value, at = self.peek()
        if kind == _T_OP and value == "^":
            self.advance()
            kind, value, at = self.advance()
            if kind != _T_INT:
                raise ParseInputError("exponent must be a nonnegative integer literal", at)
            poly = poly ** int(value)
        return poly

    def atom(self) -> Polynomial:
        kind, value, at = self.advance()
        if kind == _T_OP and value == "(":
            poly = self.expr()
            kind, value, at = self.advance()
            if not (kind == _T_OP and value == ")"):
                raise ParseInputError("expected ')'", at)
            return poly
        if kind == _T_INT:
            kind2, value2, _ = self.peek()
            if kind2 == _T_OP and value2 == "/":
                self.advance()
                kind3, value3, at3 = self.advance()
                if kind3 != _T_INT:
                    raise ParseInputError(
                        "'/' is only allowed inside a rational literal", at3
                    )
                if int(value3) == 0:
                    raise ParseInputError("zero denominator in rational literal", at3)
                return self.ring.const(QQ(int(value), int(value3)))
            return self.ring.const(int(value))
        if kind == _T_NAME:
            if value not in self.ring._index:
                raise ParseInputError(f"unknown variable {value!r}", at)
            return self.ring.var(value)
        if kind == _T_OP and value == "/":
            raise ParseInputError("'/' is only allowed inside a rational literal", at)
        raise ParseInputError(f"unexpected {value!r}" if value else "unexpected end of input", at)


def parse_polynomial(ring: RingContext, text: str) -> Polynomial:
    """Parse canonical polynomial text into a polynomial of the ring."""
    return _Parser(ring, text).parse()


def parse_many(ring: RingContext, texts: Iterable[str]) -> list[Polynomial]:
    return [parse_polynomial(ring, t) for t in texts]
