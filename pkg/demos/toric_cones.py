# # Toric resolution of two-dimensional cones
#
# The cone spanned by (1,0) and (1,m) has multiplicity m.  Star subdivision
# at a lattice point of the fundamental parallelepiped lowers it; repeating
# gives a smooth fan.

from desing import Cone, Fan, cone_multiplicity, parse_fan, resolve_fan
from desing.lattice import fundamental_parallelepiped, pick_subdivision_ray

cone = Cone(((1, 0), (1, 5)))
print("multiplicity:", cone_multiplicity(cone))
for x, lam in fundamental_parallelepiped(cone):
    print(f"  parallelepiped point {x}, ray coordinates {[str(l) for l in lam]}")
print("chosen ray:", pick_subdivision_ray(cone))

fan, history = resolve_fan(Fan((cone,)))
print("\ninserted rays:", history.rays)
print(fan)

# Fans are read from text: one cone per line, rays separated by ';'.

fan = parse_fan("""
0,1; 7,-3
7,-3; -1,-1
""")
out, history = resolve_fan(fan)
print(f"\n{len(history)} subdivisions, multiplicities {out.multiplicities()}")

# A three-dimensional cone works the same way.
out, history = resolve_fan(Fan((Cone(((1, 0, 0), (0, 1, 0), (1, 1, 3))),)))
print(f"3D: {len(history)} subdivisions -> {len(out.cones)} smooth cones")
