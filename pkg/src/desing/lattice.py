"""Integer lattice linear algebra and simplicial fans.

Vectors are plain tuples of Python ints, matrices are lists of rows.  All
arithmetic is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError, PreconditionError

Vector = tuple[int, ...]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ A == H``.  ``H`` is upper
    triangular (echelon), pivots are positive and the entries above a pivot
    lie in ``[0, pivot)``.  Zero rows end up at the bottom.
    """
    A = [[int(x) for x in r] for r in rows]
    if not A:
        raise PreconditionError("empty matrix")
    m, n = len(A), len(A[0])
    if any(len(r) != n for r in A):
        raise PreconditionError("rows of unequal length")
    U = _identity(m)

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def addmul(dst, src, q):
        # row_dst -= q * row_src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nonzero = [i for i in range(r, m) if A[i][c] != 0]
            if not nonzero:
                break
            piv = min(nonzero, key=lambda i: (abs(A[i][c]), i))
            swap(r, piv)
            clean = True
            for i in range(r + 1, m):
                if A[i][c]:
                    addmul(i, r, A[i][c] // A[r][c])
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-a for a in A[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                addmul(i, r, q)
        r += 1
    return A, U


def rank(rows: Sequence[Sequence[int]]) -> int:
    H, _ = hermite_normal_form(rows)
    return sum(1 for row in H if any(row))


def is_primitive(v: Sequence[int]) -> bool:
    return math.gcd(*v) == 1


def primitive(v: Sequence[int]) -> Vector:
    g = math.gcd(*v)
    if g == 0:
        raise PreconditionError("zero vector has no primitive form")
    return tuple(x // g for x in v)


class _Coordinates:
    """Exact coordinates with respect to the rays of a simplicial cone.

    With ``U @ R^T = H`` (row HNF), ``W = U^T`` satisfies ``R @ W = [B | 0]``;
    a lattice vector ``x`` lies in the rational span iff the last ``n - d``
    entries of ``x @ W`` vanish, and its ray coordinates solve ``lam @ B = y``.
    """

    def __init__(self, rays: Sequence[Vector]):
        d, n = len(rays), len(rays[0])
        cols = [list(col) for col in zip(*rays)]  # R^T, n x d
        H, U = hermite_normal_form(cols)
        self.d, self.n = d, n
        self.top = [row[:] for row in H[:d]]  # upper triangular d x d, equals B^T
        self.W = [list(col) for col in zip(*U)]  # U^T
        self.rays = [tuple(r) for r in rays]
        if any(self.top[i][i] == 0 for i in range(d)):
            raise PreconditionError("rays are linearly dependent")

    @property
    def index(self) -> int:
        return math.prod(self.top[i][i] for i in range(self.d))

    def lattice_coords(self, x: Sequence[int]) -> list[int]:
        return [sum(a * self.W[i][j] for i, a in enumerate(x)) for j in range(self.n)]

    def solve(self, y: Sequence) -> list[Fraction]:
        # back substitution on top @ lam^T = y^T
        lam = [Fraction(0)] * self.d
        for i in reversed(range(self.d)):
            s = Fraction(y[i]) - sum(self.top[i][j] * lam[j] for j in range(i + 1, self.d))
            lam[i] = s / self.top[i][i]
        return lam

    def ray_coords(self, x: Sequence) -> list[Fraction] | None:
        """Coordinates of ``x`` in the ray basis, or ``None`` if outside the span."""
        xw = [sum(Fraction(a) * self.W[i][j] for i, a in enumerate(x)) for j in range(self.n)]
        if any(xw[self.d:]):
            return None
        return self.solve(xw[: self.d])

    def parallelepiped_points(self) -> list[tuple[Vector, tuple[Fraction, ...]]]:
        """Lattice points ``sum lam_i r_i`` of the saturation with all ``0 <= lam_i < 1``."""
        B = [list(col) for col in zip(*self.top)]  # lower triangular
        H2, _ = hermite_normal_form(B)
        pivots = [H2[i][i] for i in range(self.d)]
        points = []
        reps = [[]]
        for p in pivots:
            reps = [c + [t] for c in reps for t in range(p)]
        for c in reps:
            lam = [l - math.floor(l) for l in self.solve(c)]
            x = [sum(l * r[j] for l, r in zip(lam, self.rays)) for j in range(self.n)]
            if any(v.denominator != 1 for v in x):
                raise AssertionError("parallelepiped point is not integral")
            points.append((tuple(int(v) for v in x), tuple(lam)))
        return points


@dataclass(frozen=True)
class Cone:
    """Simplicial rational cone spanned by primitive, linearly independent rays."""

    rays: tuple[Vector, ...]

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        object.__setattr__(self, "rays", rays)
        if not rays:
            raise PreconditionError("a cone needs at least one ray")
        n = len(rays[0])
        if n < 1 or any(len(r) != n for r in rays):
            raise PreconditionError("rays must share a lattice dimension >= 1")
        for r in rays:
            if not is_primitive(r):
                raise PreconditionError(f"ray {r} is not primitive")
        if rank(rays) != len(rays):
            raise PreconditionError(f"rays {rays} are linearly dependent (non-simplicial)")

    @property
    def dim(self) -> int:
        return len(self.rays)

    @property
    def ambient_dim(self) -> int:
        return len(self.rays[0])

    def _coords(self) -> _Coordinates:
        return _Coordinates(self.rays)

    def ray_coordinates(self, x: Sequence) -> list[Fraction] | None:
        return self._coords().ray_coords(x)

    def contains(self, x: Sequence) -> bool:
        lam = self.ray_coordinates(x)
        return lam is not None and all(l >= 0 for l in lam)

    def contains_in_interior(self, x: Sequence) -> bool:
        lam = self.ray_coordinates(x)
        return lam is not None and all(l > 0 for l in lam)

    def sort_key(self):
        return self.rays

    def __str__(self):
        return "; ".join(",".join(str(a) for a in r) for r in self.rays)


def cone_multiplicity(c: Cone) -> int:
    """Index of the ray lattice in its saturation; 1 iff the cone is smooth."""
    return c._coords().index


def fundamental_parallelepiped(c: Cone) -> list[tuple[Vector, tuple[Fraction, ...]]]:
    """Nonzero lattice points of the half-open fundamental parallelepiped, with ray coordinates."""
    return [(x, lam) for x, lam in c._coords().parallelepiped_points() if any(x)]


def pick_subdivision_ray(c: Cone) -> Vector:
    """Parallelepiped point with the smallest coordinate sum (ties: smallest entries).

    Each cone produced by the star subdivision at this point has multiplicity
    ``lam_i * mult(c) < mult(c)``.
    """
    pts = fundamental_parallelepiped(c)
    if not pts:
        raise PreconditionError(f"cone {c} is smooth")
    x, _ = min(pts, key=lambda p: (sum(p[1]), p[0]))
    return primitive(x)


@dataclass(frozen=True)
class Fan:
    """Finite collection of simplicial maximal cones in a common lattice."""

    cones: tuple[Cone, ...]

    def __post_init__(self):
        object.__setattr__(self, "cones", tuple(self.cones))
        if self.cones:
            n = self.cones[0].ambient_dim
            if any(c.ambient_dim != n for c in self.cones):
                raise PreconditionError("cones live in different lattices")

    @property
    def ambient_dim(self) -> int:
        return self.cones[0].ambient_dim

    def rays(self) -> list[Vector]:
        seen = {}
        for c in self.cones:
            for r in c.rays:
                seen.setdefault(r, None)
        return list(seen)

    def multiplicities(self) -> list[int]:
        return [cone_multiplicity(c) for c in self.cones]

    def is_smooth(self) -> bool:
        return all(m == 1 for m in self.multiplicities())

    def contains(self, x: Sequence) -> bool:
        return any(c.contains(x) for c in self.cones)

    def cones_containing(self, x: Sequence) -> list[Cone]:
        return [c for c in self.cones if c.contains(x)]

    def __str__(self):
        return "\n".join(str(c) for c in self.cones)


def star_subdivide(fan: Fan, ray: Sequence[int]) -> Fan:
    """Insert ``ray`` and re-triangulate every cone containing it.

    A cone with ``ray = sum lam_i r_i`` is replaced by the cones obtained by
    swapping ``ray`` in for each ``r_i`` with ``lam_i > 0`` (the facets not
    containing the ray, coned over it).  Cones for which the ray is already
    a generator are left unchanged.
    """
    ray = tuple(int(x) for x in ray)
    if not any(ray) or not is_primitive(ray):
        raise PreconditionError(f"ray {ray} is not primitive")
    if not fan.cones or len(ray) != fan.ambient_dim:
        raise PreconditionError("ray dimension does not match the fan")
    out: list[Cone] = []
    inside = False
    for c in fan.cones:
        lam = c.ray_coordinates(ray)
        if lam is None or any(l < 0 for l in lam):
            out.append(c)
            continue
        inside = True
        support = [i for i, l in enumerate(lam) if l > 0]
        if len(support) == 1:
            out.append(c)
            continue
        for i in support:
            rays = list(c.rays)
            rays[i] = ray
            out.append(Cone(tuple(rays)))
    if not inside:
        raise PreconditionError(f"ray {ray} lies outside the support of the fan")
    return Fan(tuple(out))


def parse_fan(text: str) -> Fan:
    """One cone per line, rays separated by ``;``, entries by ``,`` (``1,0; 1,2``)."""
    cones = []
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0].strip()
        if body:
            rays = []
            for chunk in body.split(";"):
                chunk = chunk.strip()
                try:
                    rays.append(tuple(int(t) for t in chunk.split(",")))
                except ValueError:
                    raise ParseError(f"bad ray {chunk!r}", offset) from None
            try:
                cones.append(Cone(tuple(rays)))
            except PreconditionError as exc:
                raise ParseError(str(exc), offset) from None
        offset += len(line)
    if not cones:
        raise ParseError("no cones in fan text", 0)
    try:
        return Fan(tuple(cones))
    except PreconditionError as exc:
        raise ParseError(str(exc), 0) from None


def format_fan(fan: Fan) -> str:
    return str(fan) + "\n"


def cones_from(rays_list: Iterable[Sequence[Sequence[int]]]) -> Fan:
    return Fan(tuple(Cone(tuple(tuple(r) for r in rays)) for rays in rays_list))
