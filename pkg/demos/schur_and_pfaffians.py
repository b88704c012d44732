"""
Schur determinants, Pfaffians and Chern characters
==================================================

"""

import random

from degcalc.ring import chern_ring
from degcalc.symfun import ChSeries, ChernSeries, Partition, ch_to_chern, chern_to_ch, determinant, pfaffian, schur

ring = chern_ring(6)
c = ChernSeries(ring, tuple(ring.gen(f"c{i}") for i in range(1, 7)))

for parts in [(1,), (1, 1), (2, 1), (2, 2), (3, 2, 1)]:
    print(parts, schur(Partition(parts), c))

###############################################################################
# Newton identities: Chern classes to characters and back

ch = chern_to_ch(c, 4)
for k in range(1, 5):
    print(f"ch{k} =", ch[k])
print(ch_to_chern(ch, 4) == ChernSeries(ring, c.classes[:4]))

###############################################################################
# Staircase Schur polynomials written in Chern characters only involve the
# odd ones.

chr_ = chern_ring(5, prefix="ch")
generic = ChSeries(chr_, {k: chr_.gen(f"ch{k}") for k in range(1, 6)})
print(schur(Partition.of(2, 1), ch_to_chern(generic, 3)))
print(schur(Partition.of(3, 2, 1), ch_to_chern(generic, 5)))

###############################################################################
# Pfaffians of integer skew matrices square to the determinant

rng = random.Random(0)
n = 6
a = [[0] * n for _ in range(n)]
for i in range(n):
    for j in range(i + 1, n):
        a[i][j] = rng.randint(-3, 3)
        a[j][i] = -a[i][j]
pf = pfaffian(a, one=1)
print(pf, pf ** 2, determinant(a, one=1))
