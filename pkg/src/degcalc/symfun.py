"""Characteristic-class calculus over a :class:`~degcalc.ring.GradedRing`.

Chern series are stored without their leading 1; Chern character series are
maps degree -> class, where degree 0 (the rank) may be present as a constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .ring import GradedPoly, GradedRing


@dataclass(frozen=True)
class ChernSeries:
    """1 + c_1 + c_2 + ... ; ``classes[i-1]`` is c_i."""

    ring: GradedRing
    classes: tuple[GradedPoly, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        for i, ci in enumerate(self.classes, start=1):
            if ci.ring != self.ring:
                raise ValueError(f"c_{i} lives in a different ring")
            if ci and ci.weight != i:
                raise ValueError(f"c_{i} must be homogeneous of weight {i}")

    @classmethod
    def from_list(cls, classes: Sequence[GradedPoly], ring: GradedRing | None = None):
        if ring is None:
            if not classes:
                raise ValueError("need a ring for an empty series")
            ring = classes[0].ring
        return cls(ring, tuple(classes)).trimmed()

    def __getitem__(self, k: int) -> GradedPoly:
        if k == 0:
            return self.ring.one()
        if k < 0 or k > len(self.classes):
            return self.ring.zero()
        return self.classes[k - 1]

    @property
    def length(self) -> int:
        return len(self.classes)

    def trimmed(self) -> ChernSeries:
        classes = list(self.classes)
        while classes and classes[-1].is_zero():
            classes.pop()
        return ChernSeries(self.ring, tuple(classes))

    def __eq__(self, other):
        if not isinstance(other, ChernSeries):
            return NotImplemented
        a, b = self.trimmed(), other.trimmed()
        return a.ring == b.ring and a.classes == b.classes

    def __hash__(self):
        t = self.trimmed()
        return hash((t.ring, t.classes))


@dataclass(frozen=True)
class ChSeries:
    """Chern character components; a missing degree is unknown."""

    ring: GradedRing
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        comps = {}
        for k, v in dict(self.components).items():
            if k < 0:
                raise ValueError("negative Chern character degree")
            if not isinstance(v, GradedPoly):
                v = self.ring.const(v)
            if v.ring != self.ring:
                raise ValueError(f"ch_{k} lives in a different ring")
            if v and v.weight != k:
                raise ValueError(f"ch_{k} must be homogeneous of weight {k}")
            comps[k] = v
        object.__setattr__(self, "components", dict(sorted(comps.items())))

    def __getitem__(self, k: int) -> GradedPoly:
        return self.components[k]

    def __contains__(self, k: int) -> bool:
        return k in self.components

    def get(self, k: int, default=None):
        return self.components.get(k, default)

    @property
    def degrees(self) -> list[int]:
        return list(self.components)

    @property
    def top(self) -> int:
        return max(self.components, default=0)

    def missing(self, top: int, start: int = 1) -> list[int]:
        return [k for k in range(start, top + 1) if k not in self.components]

    def map(self, fn) -> ChSeries:
        return ChSeries(self.ring, {k: fn(k, v) for k, v in self.components.items()})

    def lift(self, ring: GradedRing) -> ChSeries:
        return ChSeries(ring, {k: v.lift(ring) for k, v in self.components.items()})

    def __eq__(self, other):
        if not isinstance(other, ChSeries):
            return NotImplemented
        return self.ring == other.ring and self.components == other.components

    def __hash__(self):
        return hash((self.ring, tuple(self.components.items())))


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(x < y for x, y in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(p for p in parts if p))

    @classmethod
    def rectangle(cls, width: int, height: int) -> Partition:
        if width <= 0 or height <= 0:
            return cls(())
        return cls((width,) * height)

    @classmethod
    def staircase(cls, top: int) -> Partition:
        """(top, top-1, ..., 1)."""
        return cls(tuple(range(top, 0, -1)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)


# series algebra ------------------------------------------------------------

def series_product(c: ChernSeries, d: ChernSeries, top: int | None = None) -> ChernSeries:
    if c.ring != d.ring:
        raise ValueError("series live in different rings")
    n = c.length + d.length if top is None else top
    out = []
    for k in range(1, n + 1):
        out.append(sum((c[i] * d[k - i] for i in range(k + 1)), c.ring.zero()))
    return ChernSeries(c.ring, tuple(out)).trimmed()


def series_inverse(c: ChernSeries, top: int) -> ChernSeries:
    """Inverse of 1 + c_1 + c_2 + ... up to weight ``top``."""
    inv = [c.ring.one()]
    for k in range(1, top + 1):
        acc = c.ring.zero()
        for i in range(1, k + 1):
            acc = acc + c[i] * inv[k - i]
        inv.append(-acc)
    return ChernSeries(c.ring, tuple(inv[1:])).trimmed()


def dualize(c: ChernSeries) -> ChernSeries:
    return ChernSeries(c.ring, tuple(ci if i % 2 == 0 else -ci for i, ci in enumerate(c.classes, 1)))


def dualize_ch(ch: ChSeries) -> ChSeries:
    return ch.map(lambda k, v: -v if k % 2 else v)


def half_twist_ch(ch: ChSeries, divisor_class: GradedPoly, top: int | None = None) -> ChSeries:
    """ch(E (x) L) where c_1(L) = -divisor/2, i.e. ch(E) * exp(-divisor/2).

    Every component from 0 up to ``top`` must be known.
    """
    ring = ch.ring
    if divisor_class.ring != ring:
        raise ValueError("divisor class lives in a different ring")
    if divisor_class and divisor_class.weight != 1:
        raise ValueError("divisor class must be homogeneous of weight 1")
    top = ch.top if top is None else top
    missing = ch.missing(top, start=0)
    if missing:
        raise ValueError(f"half twist needs ch_0..ch_{top}; missing {missing}")
    shift = divisor_class * Fraction(-1, 2)
    powers = [ring.one()]
    for k in range(1, top + 1):
        powers.append(powers[-1] * shift)
    out = {}
    for k in range(top + 1):
        acc = ring.zero()
        for j in range(k + 1):
            acc = acc + ch[j] * powers[k - j] / math.factorial(k - j)
        out[k] = acc
    return ChSeries(ring, out)


# Newton identities -----------------------------------------------------------

def chern_to_ch(c: ChernSeries, top: int | None = None, rank=None) -> ChSeries:
    """Chern classes -> Chern characters via power sums p_k = k! ch_k."""
    ring = c.ring
    top = c.length if top is None else top
    p = [ring.zero()]
    for k in range(1, top + 1):
        acc = c[k] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + c[i] * p[k - i] * (-1) ** (i - 1)
        p.append(acc)
    out = {k: p[k] / math.factorial(k) for k in range(1, top + 1)}
    if rank is not None:
        out[0] = ring.const(rank)
    return ChSeries(ring, out)


def placeholder_name(k: int) -> str:
    return f"ch{k}"


def with_placeholders(ch: ChSeries, top: int) -> ChSeries:
    """Fill unknown components 1..top with fresh generators ``ch<k>``."""
    missing = ch.missing(top)
    if not missing:
        return ch
    ring = ch.ring.extend((placeholder_name(k), k) for k in missing)
    comps = {k: v.lift(ring) for k, v in ch.components.items()}
    for k in missing:
        comps[k] = ring.gen(placeholder_name(k))
    return ChSeries(ring, comps)


def ch_to_chern(ch: ChSeries, top: int | None = None, placeholders: bool = False) -> ChernSeries:
    """Chern characters -> Chern classes (inverse Newton identities).

    With ``placeholders=True`` unknown components become fresh generators and
    the result lives in the extended ring.
    """
    top = ch.top if top is None else top
    missing = ch.missing(top)
    if missing:
        if not placeholders:
            raise ValueError(f"ch components {missing} unknown; pass placeholders=True")
        ch = with_placeholders(ch, top)
    ring = ch.ring
    p = [None] + [ch[k] * math.factorial(k) for k in range(1, top + 1)]
    c = [ring.one()]
    for k in range(1, top + 1):
        acc = ring.zero()
        for i in range(1, k + 1):
            acc = acc + p[i] * c[k - i] * (-1) ** (i - 1)
        c.append(acc / k)
    return ChernSeries(ring, tuple(c[1:]))


# determinants -----------------------------------------------------------------

def _one_like(x):
    if isinstance(x, GradedPoly):
        return x.ring.one()
    return 1


def _zero_like(x):
    if isinstance(x, GradedPoly):
        return x.ring.zero()
    return 0 * x


def _is_zero(x) -> bool:
    return x == 0


def determinant(matrix: Sequence[Sequence], one=None):
    """Exact determinant by cofactor expansion with minor memoization.

    Division-free, so it works over any commutative ring of values.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        if one is None:
            raise ValueError("0x0 determinant needs an explicit one")
        return one
    memo: dict[tuple[int, ...], object] = {}

    def minor(row: int, cols: tuple[int, ...]):
        if row == n:
            return one if one is not None else _one_like(matrix[0][0])
        if cols in memo:
            return memo[cols]
        total = None
        for pos, j in enumerate(cols):
            entry = matrix[row][j]
            if _is_zero(entry):
                continue
            term = entry * minor(row + 1, cols[:pos] + cols[pos + 1:])
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = _zero_like(matrix[row][cols[0]])
        memo[cols] = total
        return total

    return minor(0, tuple(range(n)))


def schur(partition: Partition | Iterable[int], c: ChernSeries) -> GradedPoly:
    """Delta_lambda(c) = det(c_{lambda_i - i + j}); c_0 = 1, c_k = 0 for k < 0."""
    if not isinstance(partition, Partition):
        partition = Partition(tuple(partition))
    m = len(partition)
    if m == 0:
        return c.ring.one()
    lam = partition.parts
    matrix = [[c[lam[i] - i + j] for j in range(m)] for i in range(m)]
    return determinant(matrix, one=c.ring.one())


def pfaffian(matrix: Sequence[Sequence], one=None):
    """Pfaffian of an even skewsymmetric matrix, normalized so Pf([[0, x], [-x, 0]]) = x.

    Expands along the first row:
    Pf(A) = sum_{j>0} (-1)^(j+1) a_{0j} Pf(A with rows/cols 0, j removed).
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("pfaffian needs a square matrix")
    for i in range(n):
        for j in range(i, n):
            if not _is_zero(matrix[i][j] + matrix[j][i]):
                raise ValueError(f"matrix is not skewsymmetric at ({i}, {j})")
    if n % 2:
        raise ValueError("pfaffian needs an even-dimensional matrix")
    if n == 0:
        if one is None:
            raise ValueError("0x0 pfaffian needs an explicit one")
        return one
    memo: dict[tuple[int, ...], object] = {}

    def pf(idx: tuple[int, ...]):
        if not idx:
            return one if one is not None else _one_like(matrix[0][1])
        if idx in memo:
            return memo[idx]
        first, rest = idx[0], idx[1:]
        total = None
        for pos, j in enumerate(rest):
            entry = matrix[first][j]
            if _is_zero(entry):
                continue
            term = entry * pf(rest[:pos] + rest[pos + 1:])
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = _zero_like(matrix[first][rest[0]])
        memo[idx] = total
        return total

    return pf(tuple(range(n)))
