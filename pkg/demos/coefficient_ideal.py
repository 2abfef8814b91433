# # Coefficient ideals
#
# For f = z^k + a_1 z^(k-1) + ... + a_k, the order of f at the origin is k
# exactly when every a_i^(k!/i) has order at least k!.

from desing import PolyRing, parse_polynomial
from desing.blowup import check_order_equivalence, coefficient_ideal

ring = PolyRing(("z", "x", "y"))
for text in ["z^2-x*y^2", "z^2+x*z", "z^3+x*z^2+y^3", "z^3+x*z+y^2", "z^4+x*y*z^2+x^5"]:
    f = parse_polynomial(text, ring)
    data = coefficient_ideal(f, "z")
    orders = ["inf" if o == float("inf") else o for o in data.powered_orders()]
    print(f"{text:18s} k={data.k} exponents={data.exponents} orders={orders}"
          f"  ord(f)={f.order()}  holds={check_order_equivalence(f, 'z')}")
