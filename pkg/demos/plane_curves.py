# # Plane curves
#
# Singular points are found by resultants and rational roots; each is
# translated to the origin and blown up.  With embedded=True the run keeps
# going until the curve also crosses the exceptional divisors normally.

from desing import polynomials_in, resolve_plane_curve, singular_points
from desing.errors import IrrationalPointError

for text in ["x*y", "x^2-y^3", "y^2-x^4", "x^3-x*y^2", "y^2-x^3+x^2", "(x-1)^2-(y+2)^3"]:
    _, (f,) = polynomials_in([text], minimum=2)
    pts = [tuple(str(a) for a in p) for p in singular_points(f)]
    tree = resolve_plane_curve(f)
    emb = resolve_plane_curve(f, embedded=True)
    print(f"{text:18s} singular at {pts}: {tree.blowup_count()} blow-ups, {emb.blowup_count()} embedded")

# The cusp: chart y carries the smooth parabola x'^2 = y.

_, (cusp,) = polynomials_in(["x^2-y^3"], minimum=2)
tree = resolve_plane_curve(cusp)
for c in tree.children(0):
    print(f"chart {c.chart_variable}: {c.ideal[0]}   images {', '.join(map(str, c.images))}")

# Points with irrational coordinates are reported, not approximated.

_, (f,) = polynomials_in(["y^2-(x^2-2)^2"], minimum=2)
try:
    singular_points(f)
except IrrationalPointError as exc:
    print("\n", exc)
