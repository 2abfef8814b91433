"""Resolution of affine plane curves over Q by blowing up singular points.

Singular points are the common zeros of ``f, f_x, f_y``.  They are found by
eliminating one variable with resultants, extracting rational roots of the
eliminant and back-substituting.  Only rational points are supported; an
eliminant with irrational roots raises :class:`IrrationalPointError`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from . import _univariate as U
from .algebra import Polynomial
from .blowup import Center, Chart, blow_up, translate_chart
from .errors import BudgetExceeded, IrrationalPointError, PreconditionError
from .tree import ChartTree

Point = tuple[Fraction, Fraction]
DEFAULT_MAX_STEPS = 10_000


@dataclass(frozen=True)
class PlaneCurve:
    """``V(f)`` in the affine plane; ``f`` is assumed squarefree."""

    f: Polynomial

    def __post_init__(self):
        if self.f.ring.nvars != 2:
            raise PreconditionError("a plane curve needs a ring in exactly two variables")
        if self.f.is_zero():
            raise PreconditionError("the zero polynomial does not define a curve")
        if self.f.ring.field.characteristic != 0:
            raise PreconditionError("plane-curve resolution is implemented over Q only")


def _bipoly(f: Polynomial) -> dict:
    return {e: Fraction(c) for e, c in f.terms.items()}


def _eliminant(polys: list[dict], var: int) -> U.UPoly:
    """Polynomial in the other variable vanishing on the projection of the common zeros."""
    free, rest = [], []
    for p in polys:
        (rest if any(e[var] for e in p) else free).append(p)
    # polynomials free of the eliminated variable are already univariate
    univariate = [_restrict(p, var, Fraction(0)) for p in free]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            r = U.resultant(U.coeffs_in(rest[i], var), U.coeffs_in(rest[j], var))
            if r:
                univariate.append(r)
    if not univariate:
        raise PreconditionError(
            "common zeros form a curve component; the input is not squarefree"
        )
    g: U.UPoly = []
    for r in univariate:
        g = U.gcd(g, r) if g else U.monic(r)
    return g


def _restrict(p: dict, var: int, value: Fraction) -> U.UPoly:
    """Substitute ``value`` for variable ``var``; result is univariate in the other one."""
    other = 1 - var
    out: dict[int, Fraction] = {}
    for e, c in p.items():
        out[e[other]] = out.get(e[other], 0) + c * value ** e[var]
    top = max(out, default=-1)
    return U.trim([out.get(k, 0) for k in range(top + 1)])


def _fibre_roots(polys: list[dict], var: int, value: Fraction) -> tuple[list[Fraction], int]:
    """Rational roots of the restricted system plus the degree of its irrational part."""
    g: U.UPoly = []
    for p in polys:
        r = _restrict(p, var, value)
        if r:
            g = U.gcd(g, r) if g else U.monic(r)
    if not g:
        raise PreconditionError("common zeros contain a whole line; the input is not squarefree")
    roots = U.rational_roots(g)
    return roots, U.deg(U.remove_roots(g, roots))


def common_rational_zeros(polys: Sequence[Polynomial]) -> list[Point]:
    """Rational common zeros of bivariate polynomials over Q, sorted.

    Raises :class:`IrrationalPointError` when elimination exposes candidate
    zeros with irrational coordinates.
    """
    bis = [_bipoly(p) for p in polys if not p.is_zero()]
    if not bis:
        raise PreconditionError("every polynomial is zero")
    if any(list(p) == [(0, 0)] for p in bis):
        return []
    points: set[Point] = set()
    irrational = {}
    for var in (1, 0):  # eliminate y (project to x), then eliminate x
        kept = 1 - var
        elim = _eliminant(bis, var)
        if U.deg(elim) < 1:
            return []
        roots = U.rational_roots(elim)
        irrational[kept] = U.deg(U.remove_roots(elim, roots))
        for a in roots:
            others, irr = _fibre_roots(bis, kept, a)
            if irr:
                raise IrrationalPointError(
                    f"common zero with coordinate {a} has a partner coordinate of degree {irr} over Q",
                    irr,
                )
            for b in others:
                points.add((a, b) if kept == 0 else (b, a))
    if irrational[0] and irrational[1]:
        d = min(irrational.values())
        raise IrrationalPointError(
            f"elimination leaves irrational candidate points (minimal polynomial degree up to {d})", d
        )
    return sorted(points)


def singular_points(curve: PlaneCurve | Polynomial) -> list[Point]:
    """Rational points where ``f``, ``f_x`` and ``f_y`` vanish simultaneously."""
    f = curve.f if isinstance(curve, PlaneCurve) else PlaneCurve(curve).f
    if f.is_constant():
        raise PreconditionError("constant polynomial does not define a curve")
    return common_rational_zeros([f, f.derivative(0), f.derivative(1)])


def _jacobian_det(f: Polynomial, g: Polynomial) -> Polynomial:
    return f.derivative(0) * g.derivative(1) - f.derivative(1) * g.derivative(0)


def non_normal_crossing_points(chart: Chart) -> list[Point]:
    """Points where the strict transform meets the exceptional divisors badly.

    Bad means: tangent to a divisor, or passing through the intersection of
    two divisors.
    """
    f = chart.ideal[0]
    divisors = [d.generator for d in chart.exceptional]
    bad: set[Point] = set()
    for g in divisors:
        bad.update(common_rational_zeros([f, g, _jacobian_det(f, g)]))
    for i in range(len(divisors)):
        for j in range(i + 1, len(divisors)):
            bad.update(common_rational_zeros([f, divisors[i], divisors[j]]))
    return sorted(bad)


def bad_points(chart: Chart, embedded: bool = False) -> list[Point]:
    f = chart.ideal[0]
    if f.is_constant():
        return []
    pts = set(singular_points(f))
    if embedded:
        pts.update(non_normal_crossing_points(chart))
    return sorted(pts)


def resolve_plane_curve(
    curve: PlaneCurve | Polynomial,
    *,
    embedded: bool = False,
    max_steps: int = DEFAULT_MAX_STEPS,
    transform: str = "strict",
) -> ChartTree:
    """Blow up singular points (translated to the origin) until every chart is smooth.

    With ``embedded=True`` points where the strict transform fails to cross
    the exceptional divisors normally are blown up as well.  Each chart
    blows up only its first bad point; remaining ones reappear in the
    children, so every final chart is smooth everywhere.  The weak transform
    divides by the multiplicity of the point, which for a curve equals the
    strict transform.
    """
    if transform not in ("strict", "weak"):
        raise PreconditionError(f"unknown transform {transform!r}")
    if not isinstance(curve, PlaneCurve):
        curve = PlaneCurve(curve)
    f = curve.f
    tree = ChartTree(
        mode="curve",
        info={"input": [str(f)], "embedded": embedded, "max_steps": max_steps, "transform": transform},
    )
    root = tree.add(Chart.root([f]))
    queue = deque([root.id])
    steps = 0
    while queue:
        cid = queue.popleft()
        chart = tree[cid]
        pts = bad_points(chart, embedded)
        if not pts:
            tree.mark_final(cid)
            continue
        if steps >= max_steps:
            raise BudgetExceeded(f"curve resolution exceeded {max_steps} blow-ups", tree)
        steps += 1
        p = pts[0]
        moved = translate_chart(chart, p)
        center = Center(chart.ring.variables, 2)
        power = moved.ideal[0].order() if transform == "weak" else None
        for child in blow_up(moved, center, transform=transform, power=power, birth=steps):
            child = replace(child, translation=tuple(p) if any(p) else None)
            child = tree.add(child)
            queue.append(child.id)
    return tree
