"""Exact coefficient fields and sparse multivariate polynomials.

Coefficients live either in Q (``int``/``Fraction`` values, always exact) or
in a prime field F_p (``int`` values reduced into ``0..p-1``).  Polynomials
are immutable sparse maps from exponent tuples to nonzero coefficients.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ParseError, PreconditionError, RingMismatchError, UnknownVariableError

Exponent = tuple[int, ...]

#: Order of the zero polynomial.
INFINITY = math.inf

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(?:\(\d+\))?'*\Z")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: characteristic 0 means Q, a prime p means F_p."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or c < 0 or (c != 0 and not _is_prime(c)):
            raise PreconditionError(f"characteristic must be 0 or a prime, got {c!r}")

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"

    def coerce(self, value) -> int | Fraction:
        p = self.characteristic
        if p == 0:
            if isinstance(value, int):
                return value
            value = Fraction(value)
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, Fraction):
            num, den = value.numerator % p, value.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"{value} is not defined in F_{p}")
            return num * pow(den, -1, p) % p
        return int(value) % p

    def inverse(self, value):
        if value == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        if p == 0:
            return self.coerce(Fraction(1) / value)
        return pow(int(value), -1, p)


def _natural_key(name: str):
    m = re.match(r"([A-Za-z_]*)(.*)", name)
    head, rest = m.group(1), m.group(2)
    parts = re.findall(r"\d+|\D+", rest)
    return (head,) + tuple((0, int(t), "") if t.isdigit() else (1, 0, t) for t in parts)


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring over ``field`` in the ordered ``variables``."""

    variables: tuple[str, ...]
    field: FieldSpec = FieldSpec(0)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise PreconditionError("a ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise PreconditionError(f"duplicate variable names in {self.variables}")
        for v in self.variables:
            if not _NAME_RE.match(v):
                raise PreconditionError(f"invalid variable name {v!r}")

    @classmethod
    def from_text(cls, *texts: str, field: FieldSpec = FieldSpec(0), minimum: int = 1) -> "PolyRing":
        """Ring whose variables are the names occurring in ``texts`` (natural order)."""
        names = set()
        for text in texts:
            for tok in _tokenize(text):
                if tok.kind == "name":
                    names.add(tok.value)
        ordered = sorted(names, key=_natural_key)
        defaults = iter(n for n in ("x", "y", "z", "w") if n not in names)
        while len(ordered) < minimum:
            ordered.append(next(defaults))
        return cls(tuple(ordered), field)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(name) from None

    def zero(self) -> "Polynomial":
        return Polynomial._make(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        return Polynomial._make(self, {(0,) * self.nvars: c} if c != 0 else {})

    def monomial(self, exponent: Sequence[int], coeff=1) -> "Polynomial":
        exponent = tuple(exponent)
        if len(exponent) != self.nvars:
            raise RingMismatchError("exponent length does not match ring")
        c = self.field.coerce(coeff)
        return Polynomial._make(self, {exponent: c} if c != 0 else {})

    def gen(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial._make(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def with_field(self, field: FieldSpec) -> "PolyRing":
        return PolyRing(self.variables, field)

    def __str__(self):
        return f"{self.field}[{', '.join(self.variables)}]"


def _grlex_key(exponent: Exponent):
    return (sum(exponent), exponent)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Sequence[int], object] | None = None):
        clean: dict[Exponent, object] = {}
        n = ring.nvars
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise RingMismatchError(f"bad exponent vector {e} for {ring}")
            c = ring.field.coerce(clean.get(e, 0) + ring.field.coerce(c))
            if c == 0:
                clean.pop(e, None)
            else:
                clean[e] = c
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _make(cls, ring: PolyRing, terms: dict) -> "Polynomial":
        # trusted constructor: exponents valid, coefficients reduced and nonzero
        self = object.__new__(cls)
        self.ring = ring
        self.terms = terms
        self._hash = None
        return self

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[Exponent, object]]:
        """Terms in canonical order: total degree descending, then lex descending."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var) -> int:
        i = var if isinstance(var, int) else self.ring.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def order(self):
        """Order at the origin: minimum total degree of a term (``INFINITY`` for 0)."""
        if not self.terms:
            return INFINITY
        return min(sum(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def coefficient(self, exponent: Sequence[int]):
        return self.terms.get(tuple(exponent), 0)

    # -- arithmetic ----------------------------------------------------
    def _coerce_other(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"cannot combine polynomials over {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = f.coerce(out.get(e, 0) + c)
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return Polynomial._make(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial._make(self.ring, {e: f.coerce(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        acc: dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        out = {}
        for e, c in acc.items():
            c = f.coerce(c)
            if c != 0:
                out[e] = c
        return Polynomial._make(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PreconditionError("exponent must be a non-negative integer")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f.coerce(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial._make(self.ring, {e: f.coerce(v * c) for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and maps ---------------------------------------------
    def derivative(self, var) -> "Polynomial":
        i = var if isinstance(var, int) else self.ring.index(var)
        f = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = f.coerce(c * e[i])
                if d != 0:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = d
        return Polynomial._make(self.ring, out)

    def evaluate(self, point: Sequence) -> object:
        if len(point) != self.ring.nvars:
            raise RingMismatchError("point dimension does not match ring")
        f = self.ring.field
        pt = [f.coerce(v) for v in point]
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(pt, e):
                if k:
                    t *= v**k
            total += t
        return f.coerce(total)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        return substitute(self, images)

    def translate(self, point: Sequence) -> "Polynomial":
        """``f(x + point)``: moves ``point`` to the origin."""
        r = self.ring
        return substitute(self, [g + r.constant(a) for g, a in zip(r.gens(), point)])

    def divide_by_monomial(self, exponent: Sequence[int]) -> "Polynomial":
        exponent = tuple(exponent)
        out = {}
        for e, c in self.terms.items():
            q = tuple(a - b for a, b in zip(e, exponent))
            if any(x < 0 for x in q):
                raise PreconditionError("monomial does not divide polynomial")
            out[q] = c
        return Polynomial._make(self.ring, out)

    def change_ring(self, ring: PolyRing) -> "Polynomial":
        """Same exponent vectors read in ``ring`` (equal variable count); coefficients re-coerced."""
        if ring.nvars != self.ring.nvars:
            raise RingMismatchError("variable count differs")
        if ring.field == self.ring.field:
            return Polynomial._make(ring, dict(self.terms))
        return Polynomial(ring, self.terms)

    def variables_used(self) -> list[str]:
        used = [False] * self.ring.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return [v for v, u in zip(self.ring.variables, used) if u]

    # -- printing ------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        names = self.ring.variables
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            neg = c < 0 if self.ring.field.characteristic == 0 else False
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if pieces:
                pieces.append(("-" if neg else "+") + body)
            else:
                pieces.append(("-" if neg else "") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"Polynomial({str(self)!r} in {self.ring})"


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Replace each variable of ``f`` by the corresponding image and expand.

    All images must share one target ring.  A ring map is therefore just the
    list of images of the source variables.
    """
    if len(images) != f.ring.nvars:
        raise RingMismatchError(
            f"expected {f.ring.nvars} images, got {len(images)}"
        )
    if not images:
        raise RingMismatchError("empty image list")
    target = images[0].ring
    for g in images:
        if g.ring != target:
            raise RingMismatchError("images live in different rings")
    field = target.field
    if not f.terms:
        return target.zero()

    if all(len(g.terms) == 1 for g in images):
        # monomial map: each term maps to a single term
        img = [next(iter(g.terms.items())) for g in images]
        acc: dict[Exponent, object] = {}
        m = target.nvars
        for e, c in f.terms.items():
            ne = [0] * m
            coef = c
            for (ie, ic), k in zip(img, e):
                if k:
                    if ic != 1:
                        coef *= ic**k
                    for j, x in enumerate(ie):
                        if x:
                            ne[j] += x * k
            ne = tuple(ne)
            acc[ne] = acc.get(ne, 0) + coef
        out = {}
        for e, c in acc.items():
            c = field.coerce(c)
            if c != 0:
                out[e] = c
        return Polynomial._make(target, out)

    powers: list[dict[int, Polynomial]] = [{0: target.one(), 1: g} for g in images]

    def power(i: int, k: int) -> Polynomial:
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * images[i]
        return cache[k]

    result = target.zero()
    one = target.one()
    for e, c in f.sorted_terms():
        t = one.scale(c)
        for i, k in enumerate(e):
            if k:
                t = t * power(i, k)
        result = result + t
    return result


def order_at_point(f: Polynomial, point: Sequence | None = None):
    """Multiplicity of ``f`` at ``point`` (origin by default); ``INFINITY`` for 0."""
    if point is None or not any(point):
        if point is not None and len(point) != f.ring.nvars:
            raise RingMismatchError("point dimension does not match ring")
        return f.order()
    if len(point) != f.ring.nvars:
        raise RingMismatchError("point dimension does not match ring")
    return f.translate(point).order()


def jacobian_generators(f: Polynomial) -> list[Polynomial]:
    """``f`` followed by all its first partials (Jacobian criterion for V(f))."""
    if f.is_zero():
        raise PreconditionError("jacobian_generators needs a nonzero polynomial")
    return [f] + [f.derivative(i) for i in range(f.ring.nvars)]


def monomial_content(f: Polynomial) -> Exponent:
    if f.is_zero():
        raise PreconditionError("zero polynomial has no monomial content")
    it = iter(f.terms)
    m = list(next(it))
    for e in it:
        m = [min(a, b) for a, b in zip(m, e)]
    return tuple(m)


def factor_out_monomial(f: Polynomial) -> tuple[Exponent, Polynomial]:
    """Split ``f = x^m * g`` with ``m`` the componentwise minimum exponent."""
    m = monomial_content(f)
    if not any(m):
        return m, f
    return m, f.divide_by_monomial(m)


# -- parsing -------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "name", "op", "end"
    value: object
    pos: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*(?:\s*\(\s*\d+\s*\))?'*)
  | (?P<op>[-+*^/()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> Iterator[_Token]:
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "int":
            yield _Token("int", int(m.group()), pos)
        elif kind == "name":
            yield _Token("name", re.sub(r"\s+", "", m.group()), pos)
        elif kind == "op":
            yield _Token("op", m.group(), pos)
        pos = m.end()
    yield _Token("end", None, len(text))


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.ring = ring
        self.tokens = list(_tokenize(text))
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        tok = self.take()
        if tok.kind != "op" or tok.value != op:
            raise ParseError(f"expected {op!r}", tok.pos)

    def parse(self) -> Polynomial:
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0)
        result = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected token {tok.value!r}", tok.pos)
        return result

    def expr(self) -> Polynomial:
        tok = self.peek()
        sign = 1
        if tok.kind == "op" and tok.value in "+-":
            self.take()
            sign = -1 if tok.value == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value in "+-":
                self.take()
                rhs = self.term()
                result = result + rhs if tok.value == "+" else result - rhs
            else:
                return result

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value == "*":
                self.take()
                result = result * self.factor()
            elif tok.kind == "op" and tok.value == "/":
                self.take()
                d = self.take()
                if d.kind != "int":
                    raise ParseError("division only by integer literals", d.pos)
                if self.ring.field.coerce(d.value) == 0:
                    raise ParseError("division by zero", d.pos)
                result = result.scale(self.ring.field.inverse(self.ring.field.coerce(d.value)))
            else:
                return result

    def factor(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.value == "^":
            self.take()
            e = self.take()
            if e.kind != "int":
                raise ParseError("exponent must be a non-negative integer literal", e.pos)
            return base**e.value
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "int":
            return self.ring.constant(tok.value)
        if tok.kind == "name":
            if tok.value not in self.ring.variables:
                raise UnknownVariableError(tok.value, tok.pos)
            return self.ring.gen(tok.value)
        if tok.kind == "op" and tok.value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.pos)
        raise ParseError(f"unexpected token {tok.value!r}", tok.pos)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` (e.g. ``"x(1)^2-x(2)*x(3)^2"``) into a polynomial of ``ring``.

    ``^`` binds tighter than ``*`` and ``/``, which bind tighter than ``+``/``-``.
    Variables are identifiers with an optional parenthesized index and
    optional trailing primes (``x(1)'``); there is no implicit multiplication.
    """
    return _Parser(text, ring).parse()


def parse_ideal(text: str, ring: PolyRing) -> list[Polynomial]:
    """Generators separated by commas, semicolons or newlines."""
    parts = [p for p in re.split(r"[,;\n]", text) if p.strip()]
    return [parse_polynomial(p, ring) for p in parts]


def split_generators(text: str) -> list[str]:
    return [p.strip() for p in re.split(r"[,;\n]", text) if p.strip()]


def polynomials_in(texts: Iterable[str], field: FieldSpec = FieldSpec(0), minimum: int = 1):
    """Parse several polynomials into the ring spanned by their variable names."""
    texts = list(texts)
    ring = PolyRing.from_text(*texts, field=field, minimum=minimum)
    return ring, [parse_polynomial(t, ring) for t in texts]
