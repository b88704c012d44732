"""
Degrees through the Hecke graph
===============================

Loci in the even moduli space are pulled back to the projective bundle Z
over the odd moduli space.  Integrals on Z reduce to the odd moduli space
using H^2 = aH - (a^2 - b)/4.
"""

from fractions import Fraction

from degcalc import classes, intersect
from degcalc.ring import hecke_ring

ring = hecke_ring()
h = ring.gen("h")

# powers of H written as u*H + v
for k in range(2, 6):
    u, v = (h ** k).reduce_h()
    print(f"H^{k} = ({u})*H + ({v})")

###############################################################################
# An integral over Z only sees the H-coefficient.  In genus 3 the locus
# h^0(E) >= 3 is a single point.

cls = classes.type3_class(1)
g = 3
z = hecke_ring(g)
print(Fraction(1, 2) * intersect.integrate_Z(cls.lift(z) * z.gen("a"), g))

# the type III table
for n, gs in ((0, (3, 4)), (1, (3, 4, 5)), (2, (5, 6))):
    print(n, [str(intersect.evaluate_degree_Z(classes.type3_class(n), g)) for g in gs])

###############################################################################
# Calibration.  The divisor and the fibre factor are searched on a grid and
# pinned by the genus-3 point count and the genus-4 degree; genus 5 and 6
# are held out.

report = intersect.calibrate_even_convention()
print(report.format())

###############################################################################
# Three candidate codimension-6 classes.  The published closed form in
# Chern characters gives a class that no grid point can fit.

for route in classes.TYPE2_ROUTES:
    cls = classes.type2_class(4, "hecke-graph", route=route)
    print(route, [str(intersect.evaluate_degree_Z(cls, g)) for g in (4, 5, 6)])
