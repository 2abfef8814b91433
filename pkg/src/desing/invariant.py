"""Lexicographic resolution invariant used to drive and audit binomial resolution."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class ResolutionInvariant:
    """``(unresolved; (order_n, count_n); (order_{n-1}, count_{n-1}); ...)``.

    ``unresolved`` is the number of generators not yet in terminal form and
    is compared first; then the levels are compared lexicographically, order
    before count.  The terminal invariant is ``(0; )``.
    """

    unresolved: int
    levels: tuple[tuple[Fraction, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "levels", tuple((Fraction(o), int(c)) for o, c in self.levels)
        )

    def key(self):
        return (self.unresolved, self.levels)

    def __lt__(self, other):
        if not isinstance(other, ResolutionInvariant):
            return NotImplemented
        return self.key() < other.key()

    @property
    def is_terminal(self) -> bool:
        return self.unresolved == 0

    def __str__(self):
        lv = "; ".join(f"({o}, {c})" for o, c in self.levels)
        return f"({self.unresolved}; {lv})"

    def to_json(self):
        return {"unresolved": self.unresolved, "levels": [[str(o), c] for o, c in self.levels]}

    @classmethod
    def from_json(cls, data) -> "ResolutionInvariant":
        return cls(data["unresolved"], tuple((Fraction(o), c) for o, c in data["levels"]))
