"""Toric resolution: star-subdivide a simplicial fan until every cone is smooth."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded
from .lattice import Fan, Vector, cone_multiplicity, pick_subdivision_ray, star_subdivide


@dataclass(frozen=True)
class SubdivisionStep:
    ray: Vector
    before: tuple[int, ...]  # cone multiplicities, sorted descending
    after: tuple[int, ...]


@dataclass
class SubdivisionHistory:
    steps: list[SubdivisionStep] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    @property
    def rays(self) -> list[Vector]:
        return [s.ray for s in self.steps]


def _snapshot(fan: Fan) -> tuple[int, ...]:
    return tuple(sorted(fan.multiplicities(), reverse=True))


def resolve_fan(fan: Fan, max_steps: int = 10_000) -> tuple[Fan, SubdivisionHistory]:
    """Refine ``fan`` to a smooth fan with the same support.

    The cone of largest multiplicity (first in ray order on ties) is attacked
    at each step.
    """
    history = SubdivisionHistory()
    while True:
        mults = [(cone_multiplicity(c), c) for c in fan.cones]
        worst = max(m for m, _ in mults)
        if worst == 1:
            return fan, history
        if len(history) >= max_steps:
            raise BudgetExceeded(f"toric resolution exceeded {max_steps} subdivisions", (fan, history))
        target = min((c for m, c in mults if m == worst), key=lambda c: c.sort_key())
        ray = pick_subdivision_ray(target)
        before = _snapshot(fan)
        fan = star_subdivide(fan, ray)
        history.steps.append(SubdivisionStep(ray, before, _snapshot(fan)))
