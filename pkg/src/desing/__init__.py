"""Resolution of singularities by explicit blow-ups.

Exact polynomial arithmetic over Q and F_p, coordinate blow-ups with
strict and weak transforms, combinatorial resolution of binomial ideals,
toric fan refinement, and resolution of plane curves, with chart trees
exportable to JSON and DOT.
"""

from .algebra import FieldSpec, PolyRing, Polynomial, parse_ideal, parse_polynomial, polynomials_in
from .binomial import induction_state, is_locally_monomial, resolve_binomial, select_center
from .blowup import (
    Center,
    Chart,
    ExceptionalDivisor,
    blow_up,
    check_order_equivalence,
    coefficient_ideal,
    show_chart,
    strict_transform,
    weak_transform,
)
from .curves import PlaneCurve, resolve_plane_curve, singular_points
from .errors import (
    BudgetExceeded,
    DesingError,
    InvariantViolation,
    IrrationalPointError,
    NotBinomialError,
    ParseError,
    PreconditionError,
    RingMismatchError,
    UnknownVariableError,
)
from .invariant import ResolutionInvariant
from .lattice import Cone, Fan, cone_multiplicity, hermite_normal_form, parse_fan, pick_subdivision_ray, star_subdivide
from .toric import resolve_fan
from .tree import ChartTree, DivisorTable, collect_divisors, export_tree, load_tree
from .verify import verify_tree

__version__ = "0.1.0"
