"""Geometry of the low-norm region of the simplex.

The set of parameters with |theta|^2 <= r is a ball slice around the
simplex center.  For k = 2 and k = 3 its share of the simplex has a closed
form; for larger k a corner-cutting construction gives a sharp lower bound
once r >= 1/2.
"""

import numpy as np

from multirisk import (
    RegionSpec,
    ball_fraction_exact,
    ball_fraction_lower_bound,
    center_to_boundary_distance,
    center_to_sphere_distance,
    simplex_surface_area,
    simplex_volume,
)

print("solid simplex volumes 1/k! and face areas sqrt(k)/(k-1)!:")
for k in (2, 3, 5, 10):
    print(f"  k={k:3d}: volume {simplex_volume(k):.3e}   area {simplex_surface_area(k):.3e}")

print("\ndistances from the center of the k=4 simplex:")
print(f"  to the sphere |theta|^2 = 0.5 : {center_to_sphere_distance(4, 0.5):.4f}")
for j in range(1, 4):
    print(f"  to the boundary with {j} zero coordinate(s): "
          f"{center_to_boundary_distance(4, j):.4f}")

print("\nshare of the simplex inside the ball, exact for k = 2 and 3:")
print(f"{'r':>6s} {'k=2':>10s} {'k=3':>10s} {'k=3 bound':>10s} {'k=10 bound':>11s}")
for r in np.linspace(0.35, 0.95, 7):
    row = [f"{r:6.2f}"]
    row.append(f"{ball_fraction_exact(RegionSpec(2, float(r))):10.6f}")
    row.append(f"{ball_fraction_exact(RegionSpec(3, float(r))):10.6f}")
    for k in (3, 10):
        if r >= 0.5:
            row.append(f"{ball_fraction_lower_bound(RegionSpec(k, float(r))):10.6f}")
        else:
            row.append(f"{'-':>10s}")
    print(" ".join(row))

print("\nthe bound races to 1 as the dimension grows (r = 1/2):")
for k in (3, 5, 10, 20, 50):
    bound = ball_fraction_lower_bound(RegionSpec(k, 0.5))
    print(f"  k={k:3d}: at least {bound:.14f} of the simplex is inside")
