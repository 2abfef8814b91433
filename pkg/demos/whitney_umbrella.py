# # The Whitney umbrella, one blow-up at a time
#
# The surface x(1)^2 = x(2)*x(3)^2 is singular along the whole x(2)-axis.
# Blowing up that line gives two charts; we look at both.

from desing import Chart, blow_up, polynomials_in, resolve_binomial, show_chart

ring, ideal = polynomials_in(["x(1)^2-x(2)*x(3)^2"])
root = Chart.root(ideal)
print(show_chart(root))

# The singular line is V(x(1), x(3)).  Each center variable gives one chart;
# the other center variable is replaced by a product with a fresh primed name.

chart_x1, chart_x3 = blow_up(root, ["x(1)", "x(3)"])

print("\n// chart x(1)")
print(show_chart(chart_x1))
print("\n// chart x(3)")
print(show_chart(chart_x3))

# In chart x(3) the strict transform x(1)'^2 - x(2) is smooth, and in chart
# x(1) it is 1 - x(2)*x(3)'^2, which misses the exceptional divisor near
# the origin.  The full binomial algorithm goes on until every generator is a
# monomial times a unit or a hyperbolic equation:

tree = resolve_binomial(ideal)
print(f"\ncharts: {len(tree)}, final charts: {len(tree.finals())}, blow-ups: {tree.blowup_count()}")
for c in tree.finals():
    print(f"  final chart {c.id}: {', '.join(map(str, c.ideal))}")
