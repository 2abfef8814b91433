"""Blow-ups at coordinate centers and the chart data model.

A :class:`Chart` is one affine piece of a blown-up space: the ambient ring,
the transformed ideal, the exceptional divisors visible in it and the images
of the original variables (the composed blow-up morphism).  Blowing up a
chart along a coordinate subspace ``V(x_i : i in C)`` yields one chart per
center variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .algebra import INFINITY, Polynomial, PolyRing, substitute
from .errors import PreconditionError, UnknownVariableError


@dataclass(frozen=True)
class Center:
    """Coordinate subspace ``V(variables)`` of an ambient space of dimension ``ambient_dim``."""

    variables: tuple[str, ...]
    ambient_dim: int

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise PreconditionError("center needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise PreconditionError(f"repeated center variable in {self.variables}")

    @classmethod
    def of(cls, ring: PolyRing, variables: Sequence[str]) -> "Center":
        for v in variables:
            if v not in ring.variables:
                raise UnknownVariableError(v)
        return cls(tuple(variables), ring.nvars)

    @property
    def dimension(self) -> int:
        return self.ambient_dim - len(self.variables)

    def __str__(self):
        return f"V({', '.join(self.variables)})"


@dataclass(frozen=True)
class ExceptionalDivisor:
    """Exceptional hypersurface ``{generator = 0}`` created by blow-up number ``birth``.

    In coordinate blow-ups the generator is a chart variable; after the point
    translations of curve resolution it can be an affine-linear polynomial.
    """

    generator: Polynomial
    birth: int

    @property
    def variable(self) -> str | None:
        g = self.generator
        if len(g.terms) == 1:
            (e, c), = g.terms.items()
            if c == 1 and sum(e) == 1:
                return g.ring.variables[e.index(1)]
        return None


@dataclass(frozen=True)
class Chart:
    ring: PolyRing
    ideal: tuple[Polynomial, ...]
    images: tuple[Polynomial, ...]
    source: PolyRing
    exceptional: tuple[ExceptionalDivisor, ...] = ()
    id: int | None = 0
    parent: int | None = None
    center: Center | None = None
    center_dim: int | None = None
    chart_variable: str | None = None
    translation: tuple | None = None
    final: bool = False
    note: str | None = None

    @classmethod
    def root(cls, ideal: Sequence[Polynomial], ring: PolyRing | None = None) -> "Chart":
        ideal = tuple(ideal)
        if ring is None:
            if not ideal:
                raise PreconditionError("need a ring or at least one generator")
            ring = ideal[0].ring
        for g in ideal:
            if g.ring != ring:
                raise PreconditionError("generators must share the chart ring")
        return cls(ring=ring, ideal=ideal, images=tuple(ring.gens()), source=ring)

    @property
    def exceptional_variables(self) -> list[str]:
        return [d.variable for d in self.exceptional if d.variable is not None]

    def __post_init__(self):
        if len(self.images) != self.source.nvars:
            raise PreconditionError("one image per original variable required")
        for d in self.exceptional:
            if d.generator.ring != self.ring:
                raise PreconditionError("exceptional divisor outside the chart ring")


def strict_transform(f: Polynomial, exceptional_variable: str) -> Polynomial:
    """Divide ``f`` by the largest power of ``exceptional_variable`` dividing it."""
    if f.is_zero():
        raise PreconditionError("strict transform of the zero polynomial")
    i = f.ring.index(exceptional_variable)
    m = min(e[i] for e in f.terms)
    if m == 0:
        return f
    shift = [0] * f.ring.nvars
    shift[i] = m
    return f.divide_by_monomial(shift)


def weak_transform(f: Polynomial, exceptional_variable: str, power: int) -> Polynomial:
    """Divide ``f`` by exactly ``exceptional_variable**power``; the power must divide ``f``."""
    if power < 0:
        raise PreconditionError("power must be non-negative")
    if f.is_zero():
        return f
    i = f.ring.index(exceptional_variable)
    shift = [0] * f.ring.nvars
    shift[i] = power
    return f.divide_by_monomial(shift)


def _fresh_name(name: str, taken: set[str]) -> str:
    new = name + "'"
    while new in taken:
        new += "'"
    return new


def translate_chart(chart: Chart, point: Sequence) -> Chart:
    """Re-coordinatize ``chart`` so that ``point`` becomes the origin.

    The ring is unchanged; ideal, images and divisors are composed with
    ``x -> x + point``.
    """
    r = chart.ring
    if len(point) != r.nvars:
        raise PreconditionError("point dimension does not match chart")
    if not any(point):
        return chart
    shift = [g + r.constant(a) for g, a in zip(r.gens(), point)]
    return replace(
        chart,
        ideal=tuple(substitute(g, shift) for g in chart.ideal),
        images=tuple(substitute(g, shift) for g in chart.images),
        exceptional=tuple(replace(d, generator=substitute(d.generator, shift)) for d in chart.exceptional),
        translation=tuple(r.field.coerce(a) for a in point),
    )


def chart_map(ring: PolyRing, center: Center, k: str) -> tuple[PolyRing, list[Polynomial]]:
    """Ring of chart ``k`` and the images of the parent variables in it.

    Center variables ``x_i != x_k`` become ``x_k * x_i'`` with a fresh ``x_i'``
    occupying the same position in the variable list.
    """
    taken = set(ring.variables)
    names = []
    for v in ring.variables:
        if v in center.variables and v != k:
            fresh = _fresh_name(v, taken)
            taken.add(fresh)
            names.append(fresh)
        else:
            names.append(v)
    new = PolyRing(tuple(names), ring.field)
    xk = new.gen(k)
    images = [
        xk * new.gen(i) if (v in center.variables and v != k) else new.gen(i)
        for i, v in enumerate(ring.variables)
    ]
    return new, images


def blow_up(
    chart: Chart,
    center: Center | Sequence[str],
    *,
    transform: str = "strict",
    power: int | None = None,
    birth: int | None = None,
) -> list[Chart]:
    """Blow up ``chart`` along the coordinate center; one chart per center variable.

    ``transform="strict"`` removes the full power of the new exceptional
    variable from every generator; ``"weak"`` removes exactly ``power``.
    ``birth`` labels the new exceptional divisor (default: one more than the
    largest birth index already present).
    """
    if not isinstance(center, Center):
        center = Center.of(chart.ring, center)
    for v in center.variables:
        if v not in chart.ring.variables:
            raise UnknownVariableError(v)
    if len(center.variables) < 2:
        raise PreconditionError("blowing up a codimension-1 center is the identity")
    if transform not in ("strict", "weak"):
        raise PreconditionError(f"unknown transform {transform!r}")
    if transform == "weak" and power is None:
        raise PreconditionError("weak transform needs a power")
    if birth is None:
        birth = 1 + max((d.birth for d in chart.exceptional), default=0)

    children = []
    for k in center.variables:
        ring, phi = chart_map(chart.ring, center, k)
        ideal = []
        for g in chart.ideal:
            h = substitute(g, phi)
            if not h.is_zero():
                h = strict_transform(h, k) if transform == "strict" else weak_transform(h, k, power)
            ideal.append(h)
        divisors = []
        for d in chart.exceptional:
            h = strict_transform(substitute(d.generator, phi), k)
            if not h.is_constant():
                divisors.append(ExceptionalDivisor(h, d.birth))
        divisors.append(ExceptionalDivisor(ring.gen(k), birth))
        children.append(
            Chart(
                ring=ring,
                ideal=tuple(ideal),
                images=tuple(substitute(g, phi) for g in chart.images),
                source=chart.source,
                exceptional=tuple(divisors),
                id=None,
                parent=chart.id,
                center=center,
                center_dim=center.dimension,
                chart_variable=k,
            )
        )
    return children


def show_chart(chart: Chart) -> str:
    """Multi-section text dump of a chart (ambient space, ideal, divisors, images)."""
    lines = ["==== Ambient Space", "_[1]=0", "==== Ideal of Variety:"]
    lines += [f"_[{i}]={g}" for i, g in enumerate(chart.ideal, 1)] or ["_[1]=0"]
    lines.append("==== Exceptional Divisors:")
    for i, d in enumerate(chart.exceptional, 1):
        lines += [f"[{i}]:", f"_[1]={d.generator}"]
    if not chart.exceptional:
        lines.append("empty list")
    lines.append("==== Images of variables of original ring:")
    lines += [f"_[{i}]={g}" for i, g in enumerate(chart.images, 1)]
    return "\n".join(lines)


# -- coefficient ideal ----------------------------------------------------

@dataclass(frozen=True)
class CoefficientIdealData:
    """Coefficients ``a_1..a_k`` of a monic ``z^k + a_1 z^(k-1) + ... + a_k``.

    ``exponents[i-1] == k!/i``; the auxiliary ideal is generated by
    ``a_i ** (k!/i)``.
    """

    k: int
    main_variable: str
    coefficients: tuple[Polynomial, ...]
    exponents: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        fk = math.factorial(self.k)
        object.__setattr__(self, "exponents", tuple(fk // i for i in range(1, self.k + 1)))

    @property
    def threshold(self) -> int:
        return math.factorial(self.k)

    @cached_property
    def powered_coefficients(self) -> tuple[Polynomial, ...]:
        # materialized on demand; a_1**24 for k = 4 is already large
        return tuple(a**e for a, e in zip(self.coefficients, self.exponents))

    def powered_orders(self) -> tuple:
        """Orders at the origin of the powered generators (order is additive on products)."""
        return tuple(
            INFINITY if a.is_zero() else e * a.order()
            for a, e in zip(self.coefficients, self.exponents)
        )

    def normalized_order(self):
        """Order of the auxiliary ideal divided by ``k!`` (``INFINITY`` if it is zero)."""
        o = min(self.powered_orders(), default=INFINITY)
        return INFINITY if o == INFINITY else Fraction(o, self.threshold)


def coefficient_ideal(f: Polynomial, z: str) -> CoefficientIdealData:
    i = f.ring.index(z)
    k = f.degree_in(i)
    if k < 1:
        raise PreconditionError(f"{f} does not involve {z}")
    lead = {e: c for e, c in f.terms.items() if e[i] == k}
    unit = tuple(k if j == i else 0 for j in range(f.ring.nvars))
    if lead != {unit: 1}:
        raise PreconditionError(f"{f} is not monic in {z}")
    coeffs: list[dict] = [dict() for _ in range(k)]
    for e, c in f.terms.items():
        if e[i] == k:
            continue
        j = k - e[i]  # coefficient a_j multiplies z^(k-j)
        stripped = e[:i] + (0,) + e[i + 1:]
        coeffs[j - 1][stripped] = c
    return CoefficientIdealData(k, z, tuple(Polynomial._make(f.ring, d) for d in coeffs))


def check_order_equivalence(f: Polynomial, z: str) -> bool:
    """Check ``ord(f) == k  <=>  ord(a_1^{k!}, a_2^{k!/2}, ...) >= k!`` at the origin.

    The left side is read off the terms of ``f``; the right side from the
    coefficient data.  Returns whether both sides agree.
    """
    data = coefficient_ideal(f, z)
    lhs = f.order() == data.k
    rhs = all(o >= data.threshold for o in data.powered_orders())
    return lhs == rhs
