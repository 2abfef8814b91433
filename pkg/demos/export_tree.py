# # Exporting a resolution tree
#
# JSON is lossless and can be re-checked later; DOT renders with graphviz:
#     python demos/export_tree.py > tree.dot && dot -Tpng tree.dot -o tree.png

import sys

from desing import collect_divisors, export_tree, load_tree, polynomials_in, resolve_binomial, verify_tree

_, ideal = polynomials_in(["x(1)^2-x(2)^2*x(3)^2"])
tree = resolve_binomial(ideal)
table = collect_divisors(tree)

for label, entries in table.classes.items():
    print(f"// {label}: born at step {table.births[label]}, seen in charts {sorted({c for c, _ in entries})}", file=sys.stderr)

text = export_tree(tree, table, "json")
again = load_tree(text)
print("// JSON round trip equal:", again.charts == tree.charts, file=sys.stderr)
print("// verification:", "ok" if verify_tree(again).ok else "FAILED", file=sys.stderr)

print(export_tree(tree, table, "dot"), end="")
