"""
Degrees on the odd moduli space
===============================

Intersection numbers of a, b, c on the moduli space of stable rank-2
bundles with odd determinant, and the degree of a Pfaffian locus.
"""

from degcalc import classes, intersect
from degcalc.ring import moduli_ring

# In genus 2 the moduli space is an intersection of two quadrics in P^5,
# so a^3 should be 4.
for row in intersect.pairing_table(2):
    print(row["monomial"], row["value"])

# The whole table in genus 4, as CSV
print(intersect.records_to_csv(intersect.pairing_table(4)))

###############################################################################
# Degree of the moduli space itself against the closed formula

for g in range(2, 9):
    print(g, intersect.degree_odd_moduli(g), intersect.degree_display(g))

###############################################################################
# The codimension-3 class is built from the Chern characters of the
# pushforward bundle: dualize, feed into a 2x2 Schur determinant, and the
# unknown even characters drop out.

ch = classes.odd_moduli_pushforward_ch(3)
print({k: str(v) for k, v in ch.components.items()})

cls = classes.type2_class(3)
print(cls)

# pairing against powers of a gives the degrees
for g in range(2, 6):
    print(g, intersect.evaluate_degree(cls, g))

###############################################################################
# Same thing by hand: a^(3g-6) times the class, integrated term by term

g = 4
ring = moduli_ring(g)
integrand = cls.lift(ring) * ring.gen("a") ** (3 * g - 6)
print(integrand)
print(intersect.integrate_M(integrand, g))
