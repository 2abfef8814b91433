"""Independent re-checks of finished chart trees.

* morphism round-trip: off the exceptional divisors, a chart point lies on
  the chart variety iff its image lies on the original (and parent) variety;
* terminal soundness: final charts are locally monomial (binomial runs) or
  carry a smooth strict transform (curve runs), re-checked with the Jacobian
  criterion on a rational grid.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _univariate as U
from .algebra import Polynomial, factor_out_monomial, jacobian_generators, substitute
from .blowup import Chart, chart_map
from .tree import ChartTree

GRID = (Fraction(-2), Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))


@dataclass
class VerificationReport:
    checked_charts: int = 0
    checked_points: int = 0
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def _vanishes(ideal: Sequence[Polynomial], point) -> bool:
    return all(g.evaluate(point) == 0 for g in ideal)


def local_images(tree: ChartTree, chart: Chart) -> list[Polynomial]:
    """Images of the parent chart's variables in ``chart`` (translation included)."""
    parent = tree[chart.parent]
    _, phi = chart_map(parent.ring, chart.center, chart.chart_variable)
    if chart.translation is not None:
        # parent coordinates were shifted by the translation before blowing up
        phi = [g + chart.ring.constant(a) for g, a in zip(phi, chart.translation)]
    return phi


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.choice((1, 1, 2, 3)))


def sample_points(chart: Chart, count: int, rng: random.Random, on_variety: bool = True) -> list[tuple]:
    """Rational points of the chart off every exceptional divisor.

    Roughly half are taken on the chart variety (rational roots of a random
    one-variable restriction) when such points can be found.
    """
    n = chart.ring.nvars
    char = chart.ring.field.characteristic
    on_variety = on_variety and char == 0
    divisors = [d.generator for d in chart.exceptional]
    gens = [g for g in chart.ideal if not g.is_zero()]
    out: list[tuple] = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        if char:
            q = [rng.randrange(char) for _ in range(n)]
        else:
            q = [_random_rational(rng) for _ in range(n)]
        if on_variety and gens and len(out) % 2 == 0 and attempts <= 25 * count:
            # try to move q onto the variety; fall back to q itself otherwise
            g = gens[attempts % len(gens)]
            used = [i for i in range(n) if g.degree_in(i) > 0]
            if used:
                v = used[attempts % len(used)]
                restricted = _restrict_to(g, q, v)
                if restricted and U.deg(restricted) >= 1:
                    roots = U.rational_roots(restricted)
                    if roots:
                        q[v] = roots[attempts % len(roots)]
        q = tuple(chart.ring.field.coerce(a) for a in q)
        if any(d.evaluate(q) == 0 for d in divisors):
            continue
        out.append(q)
    return out


def _restrict_to(g: Polynomial, q, v: int) -> U.UPoly:
    coeffs: dict[int, Fraction] = {}
    for e, c in g.terms.items():
        t = Fraction(c)
        for i, k in enumerate(e):
            if i != v and k:
                t *= Fraction(q[i]) ** k
        coeffs[e[v]] = coeffs.get(e[v], 0) + t
    top = max(coeffs, default=-1)
    return U.trim([coeffs.get(k, 0) for k in range(top + 1)])


def check_roundtrip(
    tree: ChartTree, chart: Chart, points: int = 20, rng: random.Random | None = None
) -> tuple[list[str], int]:
    """Vanishing equivalence under the chart morphisms at ``points`` sample points.

    Returns the problems found and the number of points actually checked.
    """
    rng = rng or random.Random(chart.id)
    root = tree.root
    problems = []
    sample = sample_points(chart, points, rng)
    for q in sample:
        here = _vanishes(chart.ideal, q)
        image = tuple(g.evaluate(q) for g in chart.images)
        there = _vanishes(root.ideal, image)
        if here != there:
            problems.append(f"chart {chart.id}: point {q} vanishes={here} but its image vanishes={there}")
        if chart.parent is not None:
            parent = tree[chart.parent]
            pq = tuple(g.evaluate(q) for g in local_images(tree, chart))
            if _vanishes(parent.ideal, pq) != here:
                problems.append(f"chart {chart.id}: parent vanishing differs at {q}")
    return problems, len(sample)


def grid_singular_points(f: Polynomial, grid: Sequence = GRID) -> list[tuple]:
    """Grid points where ``f`` and all its partials vanish (brute force)."""
    gens = jacobian_generators(f)
    n = f.ring.nvars
    if len(grid) ** n > 500:
        grid = grid[1::2]
    return [q for q in itertools.product(grid, repeat=n) if all(g.evaluate(q) == 0 for g in gens)]


def residual_generators(chart: Chart) -> list[Polynomial]:
    out = []
    for g in chart.ideal:
        if g.is_zero() or g.is_constant():
            continue
        _, h = factor_out_monomial(g)
        if not h.is_constant():
            out.append(h)
    return out


def check_terminal(tree: ChartTree, chart: Chart) -> list[str]:
    from .binomial import is_locally_monomial
    from .curves import singular_points

    problems = []
    if tree.mode == "binomial":
        if not is_locally_monomial(chart):
            problems.append(f"final chart {chart.id} is not locally monomial")
        elif chart.ring.field.characteristic == 0:
            for h in residual_generators(chart):
                if len(h.terms) == 2 and grid_singular_points(h):
                    problems.append(f"final chart {chart.id}: residual {h} has singular grid points")
    elif tree.mode == "curve":
        f = chart.ideal[0]
        if not f.is_constant():
            if singular_points(f):
                problems.append(f"final chart {chart.id}: strict transform {f} is singular")
            if grid_singular_points(f):
                problems.append(f"final chart {chart.id}: grid search found a singular point of {f}")
    return problems


def verify_tree(tree: ChartTree, points: int = 20, seed: int = 0) -> VerificationReport:
    """Re-check structure, terminal soundness, morphism round-trip and invariant decrease."""
    report = VerificationReport()
    try:
        tree.validate()
    except Exception as exc:  # structural failure makes every other check meaningless
        report.problems.append(str(exc))
        return report
    parents = {c.parent for c in tree.charts}
    for c in tree.charts:
        report.checked_charts += 1
        if c.final and c.id in parents:
            report.problems.append(f"final chart {c.id} has children")
        if not c.final and c.id not in parents:
            report.problems.append(f"childless chart {c.id} is not marked final")
        if c.final and c.note != "empty variety":
            report.problems += check_terminal(tree, c)
        rng = random.Random(seed * 100_003 + c.id)
        problems, checked = check_roundtrip(tree, c, points, rng)
        report.problems += problems
        report.checked_points += checked
        if checked < points:
            report.problems.append(f"chart {c.id}: only {checked} of {points} sample points found")
        if c.parent is not None and c.id in tree.invariants and c.parent in tree.invariants:
            if not tree.invariants[c.id] < tree.invariants[c.parent]:
                report.problems.append(f"invariant does not drop on edge {c.parent} -> {c.id}")
    return report
