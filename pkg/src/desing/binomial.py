"""Combinatorial resolution of binomial ideals.

Everything is decided on exponent vectors.  A generator ``x^a - c*x^b`` with
its monomial content removed is *terminal* once one of its two terms is a
constant (``1 - c*x^d``, a hyperbolic equation) or it is a single monomial.
Blow-ups at coordinate centers map monomials to monomials injectively, so
binomials stay binomials, terminal generators stay terminal, and the
coefficients never change: the combinatorial skeleton of a run does not
depend on the characteristic.

Center choice for a non-terminal residual ``x^a - c*x^b`` with
``|a| <= |b|`` (``x^a`` is the smallest order term):

* the order of the binomial is ``|a|``; its maximal-order locus is the union
  of the coordinate subspaces ``V(supp a + S)`` with ``S`` a subset of
  ``supp b`` such that ``sum(b_i, i in S) >= |a|``;
* the center is the component of largest dimension (smallest ``S``), ties
  broken by the sorted list of variable indices.

In the chart of a variable of ``supp a`` the order drops; in the chart of
a variable of ``S`` either the order drops or ``|b|`` does (``S`` is
minimal).  This is recorded by the invariant
``(unresolved; (|a|, old_n); (|b|/|a|, old_{n-1}))`` where ``|b|/|a|`` is the
normalized order of the coefficient ideal after descending along the
variables of ``x^a`` and ``old_*`` count exceptional divisors born before the
level's current value was reached.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .algebra import Exponent, FieldSpec, Polynomial, factor_out_monomial
from .blowup import Center, Chart, blow_up
from .errors import BudgetExceeded, InvariantViolation, NotBinomialError, PreconditionError
from .invariant import ResolutionInvariant
from .tree import ChartTree

DEFAULT_MAX_STEPS = 10_000


@dataclass(frozen=True)
class Binomial:
    """``plus_coeff * x^plus - minus_coeff * x^minus`` (``minus`` may be absent)."""

    plus: Exponent
    plus_coeff: object
    minus: Exponent | None = None
    minus_coeff: object = 0

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> "Binomial":
        if len(f.terms) > 2:
            raise NotBinomialError(f"{f} has {len(f.terms)} terms")
        terms = f.sorted_terms()
        if not terms:
            raise PreconditionError("the zero polynomial is not a binomial")
        if len(terms) == 1:
            return cls(terms[0][0], terms[0][1])
        (e1, c1), (e2, c2) = terms
        return cls(e1, c1, e2, f.ring.field.coerce(-c2))

    def to_polynomial(self, ring) -> Polynomial:
        out = {self.plus: self.plus_coeff}
        if self.minus is not None:
            out[self.minus] = -self.minus_coeff
        return Polynomial(ring, out)


def check_binomial(f: Polynomial) -> None:
    if len(f.terms) > 2:
        raise NotBinomialError(f"generator {f} has {len(f.terms)} terms; at most 2 allowed")


def _residual(g: Polynomial) -> tuple[Exponent, Exponent] | None:
    """Exponents ``(a, b)`` of a non-terminal residual, smallest order first; None if terminal."""
    if len(g.terms) < 2:
        return None
    _, h = factor_out_monomial(g)
    (e1, _), (e2, _) = h.sorted_terms()  # e1 has the larger degree
    if not any(e1) or not any(e2):
        return None
    return (e2, e1)


def is_terminal_generator(g: Polynomial) -> bool:
    check_binomial(g)
    return _residual(g) is None


def is_locally_monomial(chart: Chart) -> bool:
    """True iff every generator is a monomial times a unit or a hyperbolic ``1 - c*x^d``."""
    return all(is_terminal_generator(g) for g in chart.ideal)


@dataclass(frozen=True)
class InductionState:
    chart: Chart
    residual: tuple[tuple[int, Exponent, Exponent], ...]  # (generator index, a, b), non-terminal only
    chain: tuple[str, ...]
    invariant: ResolutionInvariant
    epochs: tuple[tuple[tuple, int], ...] = ()

    @property
    def is_terminal(self) -> bool:
        return not self.residual

    def focus(self) -> tuple[int, Exponent, Exponent]:
        if not self.residual:
            raise PreconditionError("terminal state has no focus generator")
        return min(self.residual, key=_focus_key)


def _focus_key(item):
    idx, a, b = item
    return (sum(a), Fraction(sum(b), sum(a)), idx)


def _descent_chain(chart: Chart, a: Exponent) -> tuple[str, ...]:
    idx = sorted((i for i, k in enumerate(a) if k), key=lambda i: (-a[i], i))
    return tuple(chart.ring.variables[i] for i in idx)


def _old_count(chart: Chart, epoch: int) -> int:
    return sum(1 for d in chart.exceptional if d.birth <= epoch)


def induction_state(chart: Chart, parent: InductionState | None = None) -> InductionState:
    """Analyze ``chart``; ``parent`` supplies the epochs of the counting components."""
    for g in chart.ideal:
        check_binomial(g)
    residual = []
    for i, g in enumerate(chart.ideal):
        r = _residual(g)
        if r is not None:
            residual.append((i,) + r)
    residual = tuple(residual)
    if not residual:
        return InductionState(chart, (), (), ResolutionInvariant(0))
    idx, a, b = min(residual, key=_focus_key)
    o1 = Fraction(sum(a))
    o2 = Fraction(sum(b), sum(a))
    newest = max((d.birth for d in chart.exceptional), default=0)
    inherited = dict(parent.epochs) if parent is not None else {}
    unresolved = len(residual)
    key1 = (unresolved, o1)
    key2 = (unresolved, o1, o2)
    # a level keeps its epoch while its value (and everything above it) is unchanged
    epoch1 = inherited.get(key1, newest)
    epoch2 = inherited.get(key2, newest)
    c1 = _old_count(chart, epoch1)
    c2 = _old_count(chart, epoch2)
    inv = ResolutionInvariant(unresolved, ((o1, c1), (o2, c2)))
    epochs = ((key1, epoch1), (key2, epoch2))
    return InductionState(chart, residual, _descent_chain(chart, a), inv, epochs)


def binomial_order(state: InductionState) -> Fraction:
    """Smallest term order among the non-terminal residual binomials."""
    if not state.residual:
        raise PreconditionError("empty residual ideal")
    return Fraction(min(sum(a) for _, a, _ in state.residual))


def candidate_centers(state: InductionState) -> list[tuple[int, ...]]:
    """Index sets of the maximal-order components, in tie-break order."""
    _, a, b = state.focus()
    order = sum(a)
    base = {i for i, k in enumerate(a) if k}
    supp_b = [i for i, k in enumerate(b) if k]
    found = []
    for size in range(1, len(supp_b) + 1):
        for s in itertools.combinations(supp_b, size):
            if sum(b[i] for i in s) >= order:
                found.append(tuple(sorted(base | set(s))))
        if found:
            break
    # descending center dimension = ascending size, then lexicographic
    return sorted(set(found), key=lambda c: (len(c), c))


def select_center(state: InductionState) -> Center:
    if state.is_terminal:
        raise PreconditionError("locally monomial chart: no center to blow up")
    idx = candidate_centers(state)[0]
    ring = state.chart.ring
    return Center(tuple(ring.variables[i] for i in idx), ring.nvars)


def order_along(ideal: Sequence[Polynomial], center: Center) -> int:
    """Order of the ideal at the generic point of the center (the weak-transform power)."""
    ring = ideal[0].ring
    idx = [ring.index(v) for v in center.variables]
    return min(
        (min(sum(e[i] for i in idx) for e in g.terms) for g in ideal if not g.is_zero()),
        default=0,
    )


def _prepare(ideal: Sequence[Polynomial], field: FieldSpec | None) -> list[Polynomial]:
    ideal = list(ideal)
    if not ideal:
        raise PreconditionError("empty ideal")
    ring = ideal[0].ring
    if any(g.ring != ring for g in ideal):
        raise PreconditionError("generators live in different rings")
    for g in ideal:
        check_binomial(g)
    if field is not None and field != ring.field:
        target = ring.with_field(field)
        ideal = [g.change_ring(target) for g in ideal]
    return ideal


def resolve_binomial(
    ideal: Sequence[Polynomial],
    field: FieldSpec | None = None,
    *,
    max_steps: int = DEFAULT_MAX_STEPS,
    transform: str = "strict",
    check_invariant: bool = True,
) -> ChartTree:
    """Blow up coordinate centers until every chart is locally monomial.

    ``transform="weak"`` divides by the order of the whole ideal along the
    center instead of the full exceptional power of each generator; the
    residual binomials, and hence the tree shape, are the same.  Charts are processed breadth-first.  Every edge is checked for a strict
    decrease of the resolution invariant (``InvariantViolation`` otherwise).
    Raises ``BudgetExceeded`` carrying the partial tree after ``max_steps``
    blow-ups.
    """
    ideal = _prepare(ideal, field)
    if transform not in ("strict", "weak"):
        raise PreconditionError(f"unknown transform {transform!r}")
    ring = ideal[0].ring
    tree = ChartTree(
        mode="binomial",
        info={"input": [str(g) for g in ideal], "max_steps": max_steps, "transform": transform},
    )
    root = tree.add(Chart.root(ideal, ring))
    if any(g.is_constant() and not g.is_zero() for g in ideal):
        tree.mark_final(root.id, "empty variety")
        tree.invariants[root.id] = ResolutionInvariant(0)
        return tree

    states = {root.id: induction_state(root)}
    tree.invariants[root.id] = states[root.id].invariant
    queue = deque([root.id])
    steps = 0
    while queue:
        cid = queue.popleft()
        state = states.pop(cid)
        if state.is_terminal:
            tree.mark_final(cid)
            continue
        if steps >= max_steps:
            raise BudgetExceeded(f"binomial resolution exceeded {max_steps} blow-ups", tree)
        steps += 1
        center = select_center(state)
        power = order_along(tree[cid].ideal, center) if transform == "weak" else None
        for child in blow_up(tree[cid], center, transform=transform, power=power, birth=steps):
            child = tree.add(child)
            cstate = induction_state(child, state)
            if check_invariant and not cstate.invariant < state.invariant:
                raise InvariantViolation(
                    f"invariant did not drop from chart {cid} {state.invariant} "
                    f"to chart {child.id} {cstate.invariant}"
                )
            tree.invariants[child.id] = cstate.invariant
            states[child.id] = cstate
            queue.append(child.id)
    return tree
