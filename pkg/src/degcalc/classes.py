"""Brill-Noether numerics and fundamental classes of degeneracy loci.

Covers the classical loci W^r_d in the Picard variety, the general,
symmetric and skewsymmetric degeneracy formulas, and the type II / type III
non-Abelian loci on the rank-2 moduli spaces (odd moduli space and the
Hecke graph over it).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exact import factorial
from .ring import GradedPoly, GradedRing, hecke_ring, moduli_ring, theta_ring
from .symfun import (
    ChernSeries,
    ChSeries,
    Partition,
    ch_to_chern,
    dualize_ch,
    placeholder_name,
    schur,
)


class OutOfRange(ValueError):
    pass


# locus descriptions ------------------------------------------------------------

@dataclass(frozen=True)
class Classic:
    """W^r_d: line bundles of degree d with at least r+1 sections."""
    r: int
    d: int


@dataclass(frozen=True)
class General:
    """D_k(f) for f: E -> F of ranks (rank_e, rank_f)."""
    k: int
    rank_e: int
    rank_f: int


@dataclass(frozen=True)
class Symmetric:
    k: int


@dataclass(frozen=True)
class Lagrangian:
    k: int


@dataclass(frozen=True)
class Skew:
    nu: int


@dataclass(frozen=True)
class TypeIII:
    """{E in M(2, K) : h^0(E) >= n + 2}."""
    n: int


@dataclass(frozen=True)
class TypeII:
    """{E : hom(F, E) >= nu}; ``deg_f`` optional, checked for parity."""
    nu: int
    deg_f: int | None = None


LocusKind = Classic | General | Symmetric | Lagrangian | Skew | TypeIII | TypeII


@dataclass(frozen=True)
class LocusSpec:
    kind: LocusKind
    g: int

    def __post_init__(self):
        if self.g < 2:
            raise ValueError(f"genus must be >= 2, got {self.g}")
        for name, value in vars(self.kind).items():
            if name in ("d", "deg_f") or value is None:
                continue
            if value < 0:
                raise ValueError(f"{type(self.kind).__name__}.{name} must be nonnegative")
        if isinstance(self.kind, TypeII) and self.kind.deg_f is not None:
            if not hom_parity_ok(self.kind.nu, self.kind.deg_f):
                raise ValueError(
                    f"nu = {self.kind.nu} has the wrong parity for deg F = {self.kind.deg_f}")


# numerics ------------------------------------------------------------------------

def brill_noether_rho(g: int, r: int, d: int) -> int:
    return g - (r + 1) * (r - d + g)


def expected_codim(spec: LocusSpec) -> int:
    kind = spec.kind
    if isinstance(kind, Classic):
        return (kind.r + 1) * (spec.g - kind.d + kind.r)
    if isinstance(kind, General):
        return (kind.rank_e - kind.k) * (kind.rank_f - kind.k)
    if isinstance(kind, (Symmetric, Lagrangian)):
        return kind.k * (kind.k + 1) // 2
    if isinstance(kind, (Skew, TypeII)):
        return kind.nu * (kind.nu - 1) // 2
    if isinstance(kind, TypeIII):
        return (kind.n + 2) * (kind.n + 3) // 2
    raise TypeError(f"unknown locus kind {kind!r}")


def ambient_dim(spec: LocusSpec) -> int | None:
    """Dimension of the space the locus sits in, when it is determined by g."""
    if isinstance(spec.kind, Classic):
        return spec.g
    if isinstance(spec.kind, (TypeIII, TypeII)):
        return 3 * spec.g - 3
    return None


def expected_dim(spec: LocusSpec) -> int:
    dim = ambient_dim(spec)
    if dim is None:
        raise ValueError(f"ambient dimension of {type(spec.kind).__name__} loci is not fixed by g")
    return dim - expected_codim(spec)


def lambda_coeff(r: int, d: int, g: int) -> Fraction:
    """prod_{i=0}^{r} i! / (g - d + r + i)!"""
    if g - d + r < 0:
        raise OutOfRange(f"class formula out of range: g - d + r = {g - d + r} < 0")
    value = Fraction(1)
    for i in range(r + 1):
        value *= Fraction(factorial(i), factorial(g - d + r + i))
    return value


def w_class(r: int, d: int, g: int) -> GradedPoly:
    """[W^r_d] = lambda(r, d, g) * Theta^(g - rho) in Q[Theta]/(Theta^(g+1)).

    Also evaluates the rectangular Schur determinant in c_i = Theta^i / i!
    (without truncation) and insists it agrees.
    """
    lam = lambda_coeff(r, d, g)
    rho = brill_noether_rho(g, r, d)
    free = theta_ring()
    theta = free.gen("t")
    c = ChernSeries(free, tuple(theta ** i / factorial(i) for i in range(1, 2 * (g - d + r) + r + 1)))
    det = schur(Partition.rectangle(g - d + r, r + 1), c)
    closed = theta ** (g - rho) * lam
    if det != closed:
        raise AssertionError(f"Schur determinant {det} != {closed} for (r, d, g) = {(r, d, g)}")
    return closed.lift(theta_ring(g))


def castelnuovo_count(g: int, r: int, d: int) -> int:
    """Number of g^r_d on a general curve when rho = 0, i.e. g! * lambda(r, d, g)."""
    rho = brill_noether_rho(g, r, d)
    if rho != 0:
        raise ValueError(f"point count needs rho = 0, got rho = {rho}")
    count = lambda_coeff(r, d, g) * factorial(g)
    if count.denominator != 1:
        raise AssertionError(f"non-integral count {count}")
    return int(count)


# degeneracy classes --------------------------------------------------------------

def porteous_class(k: int, cf: ChernSeries, r: int, s: int) -> GradedPoly:
    """[D_k(f)] = Delta_{(s-k)^(r-k)}(c(f)) for f of ranks (r, s)."""
    if k > min(r, s) or k < 0:
        raise ValueError(f"need 0 <= k <= min(r, s); got k={k}, r={r}, s={s}")
    return schur(Partition.rectangle(s - k, r - k), cf)


def harris_tu_symmetric(k: int, cdual: ChernSeries) -> GradedPoly:
    return schur(Partition.staircase(k), cdual) * 2 ** k


def harris_tu_skew(nu: int, cdual: ChernSeries) -> GradedPoly:
    return schur(Partition.staircase(nu - 1), cdual) if nu > 1 else cdual.ring.one()


# closed forms of the skew classes in Chern characters ---------------------------------
#
# Written in c1 = ch1 and odd ch's of the same series.  The published
# nu = 4 form carries -1/3 on c1^3*ch3; expanding the 3x3 determinant gives
# -2/3.  Both are kept so the discrepancy can be reported.

CLOSED_FORM_RING = GradedRing.build([("c1", 1), ("ch3", 3), ("ch5", 5)])

SKEW_CLOSED_FORMS = {
    "printed": {
        3: "1/3*c1^3 - 2*ch3",
        4: "1/45*c1^6 - 1/3*c1^3*ch3 + 24*c1*ch5 - 4*ch3^2",
    },
    "corrected": {
        3: "1/3*c1^3 - 2*ch3",
        4: "1/45*c1^6 - 2/3*c1^3*ch3 + 24*c1*ch5 - 4*ch3^2",
    },
}


def skew_closed_form(nu: int, variant: str = "printed") -> GradedPoly:
    try:
        return CLOSED_FORM_RING.parse(SKEW_CLOSED_FORMS[variant][nu])
    except KeyError:
        raise ValueError(f"no closed form for nu={nu}, variant={variant!r}") from None


def apply_closed_form(form: GradedPoly, ch: ChSeries) -> GradedPoly:
    """Evaluate a closed form at a Chern character series (c1 = ch1)."""
    needed = {"c1": 1, "ch3": 3, "ch5": 5}
    values = {}
    for name, k in needed.items():
        if name in form.generators_used():
            if k not in ch:
                raise ValueError(f"closed form needs ch_{k}")
            values[name] = ch[k]
        else:
            values[name] = ch.ring.zero()
    return form.substitute(values, target=ch.ring)


# Chern characters of the pushed-forward bundles --------------------------------

def _odd_ch_series(top_n: int, ring: GradedRing, degree_one: GradedPoly, linear: GradedPoly) -> ChSeries:
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    b, c = ring.gens("b", "c")
    comps = {1: -degree_one}
    for n in range(2, top_n + 1):
        comps[2 * n - 1] = (b / 4) ** (n - 2) * (linear + c * Fraction(n - 1, 2)) / factorial(2 * n - 1)
    return ChSeries(ring, comps)


def odd_moduli_pushforward_ch(top_n: int, ring: GradedRing | None = None) -> ChSeries:
    """Odd Chern characters ch_1, ch_3, ..., ch_{2 top_n - 1} of the half-twisted
    direct image on the odd moduli space (in alpha, beta, gamma).

    Even components are deliberately absent.
    """
    ring = ring or moduli_ring()
    a, b = ring.gens("a", "b")
    return _odd_ch_series(top_n, ring, a / 2, -(a * b) / 8)


def hecke_pushforward_ch(top_n: int, ring: GradedRing | None = None) -> ChSeries:
    """Same series on the Hecke graph: alpha/2 replaced by H."""
    ring = ring or hecke_ring().without_h_rule()
    h, b = ring.gens("h", "b")
    return _odd_ch_series(top_n, ring, h, -(b * h) / 4)


# type II classes ---------------------------------------------------------------

class Context(enum.Enum):
    ODD_MODULI = "odd-moduli"
    HECKE_GRAPH = "hecke-graph"


# published classes, used as data and as cross-checks
TYPE2_NU3_ODD = "1/24*a^3 - 1/24*a*b + 1/6*c"
TYPE2_NU4_HECKE_PRINTED = "1/45*h^6 + 1/18*h^3*c - 1/36*c^2 - 1/36*h^4*b - 1/45*h*b*c + 1/180*h^2*b^2"

TYPE2_ROUTES = ("determinant", "closed-form", "printed")


def _context_series(nu: int, context: Context, ring: GradedRing | None) -> ChSeries:
    top_n = nu - 1
    if context is Context.ODD_MODULI:
        return odd_moduli_pushforward_ch(top_n, ring)
    return hecke_pushforward_ch(top_n, ring)


def type2_class_determinant(nu: int, context: Context, ring: GradedRing | None = None) -> GradedPoly:
    """Staircase Schur determinant of the dual series, through Newton's identities.

    The unknown even Chern characters enter as placeholder generators and
    must cancel; an AssertionError is raised otherwise.
    """
    series = _context_series(nu, context, ring)
    top = 2 * nu - 3
    c = ch_to_chern(dualize_ch(series), top=top, placeholders=True)
    value = harris_tu_skew(nu, c)
    leftover = {placeholder_name(k) for k in range(2, top + 1, 2)} & value.generators_used()
    if leftover:
        raise AssertionError(f"even Chern characters {sorted(leftover)} did not cancel")
    return value.lift(series.ring)


def type2_class_closed_form(nu: int, context: Context, variant: str = "printed",
                            ring: GradedRing | None = None) -> GradedPoly:
    ch = dualize_ch(_context_series(nu, context, ring))
    return apply_closed_form(skew_closed_form(nu, variant), ch)


def type2_class(nu: int, context: Context | str = Context.ODD_MODULI, route: str = "determinant",
                ring: GradedRing | None = None) -> GradedPoly:
    """Fundamental class of the type II locus of index nu in {3, 4}.

    ``route``: ``determinant`` (Schur determinant with cancelling even
    Chern characters), ``closed-form`` (the published closed form in odd
    Chern characters) or ``printed`` (the published class itself; only
    nu = 3 on the odd moduli space and nu = 4 on the Hecke graph exist).
    """
    if nu not in (3, 4):
        raise ValueError(f"type II classes are available for nu in {{3, 4}}, got {nu}")
    context = Context(context)
    if route == "determinant":
        value = type2_class_determinant(nu, context, ring)
    elif route == "closed-form":
        value = type2_class_closed_form(nu, context, "printed", ring)
    elif route == "printed":
        value = printed_type2_class(nu, context, ring)
    else:
        raise ValueError(f"unknown route {route!r}; expected one of {TYPE2_ROUTES}")
    if nu == 3 and context is Context.ODD_MODULI and route != "printed":
        expected = printed_type2_class(3, context, value.ring)
        if value != expected:
            raise AssertionError(f"nu = 3 class {value} differs from {expected}")
    return value


def printed_type2_class(nu: int, context: Context | str, ring: GradedRing | None = None) -> GradedPoly:
    context = Context(context)
    if nu == 3 and context is Context.ODD_MODULI:
        return (ring or moduli_ring()).parse(TYPE2_NU3_ODD)
    if nu == 4 and context is Context.HECKE_GRAPH:
        return (ring or hecke_ring().without_h_rule()).parse(TYPE2_NU4_HECKE_PRINTED)
    raise ValueError(f"no published class for nu={nu} on {context.value}")


def type2_comparison(nu: int, context: Context | str) -> dict:
    """All available routes for one class, and which of them agree."""
    context = Context(context)
    values = {"determinant": type2_class(nu, context, "determinant"),
              "closed-form": type2_class(nu, context, "closed-form")}
    try:
        values["printed"] = printed_type2_class(nu, context)
    except ValueError:
        pass
    names = list(values)
    agree = {f"{x}=={y}": values[x] == values[y]
             for i, x in enumerate(names) for y in names[i + 1:]}
    return {"nu": nu, "context": context.value,
            "classes": {k: v.format() for k, v in values.items()},
            "agreement": agree}


# type III classes (published, consumed as data) ------------------------------------

TYPE3_HECKE_CLASSES = {
    0: "1/6*h^3 - 1/6*h*b + 1/3*c",
    1: ("1/360*h^6 - 1/72*h^4*b + 1/36*h^3*c + 1/90*h^2*b^2 - 2/45*h*b*c - 1/18*c^2"),
    2: ("1/302400*h^10 - 1/20160*h^8*b + 1/10080*h^7*c - 17/60480*h^4*b^3"
        " + 17/10080*h^3*b^2*c + 1/720*h^2*b*c^2 + 1/8400*h^2*b^4 + 1/216*h*c^3"
        " - 1/1050*h*b^3*c - 3/2800*b^2*c^2 + 1/4800*h^6*b^2 - 1/1200*h^5*b*c"),
}


def type3_class(n: int, ring: GradedRing | None = None) -> GradedPoly:
    """Pullback to the Hecke graph of the class of {h^0(E) >= n + 2}, n in {0, 1, 2}."""
    if n not in TYPE3_HECKE_CLASSES:
        raise ValueError(f"type III classes are available for n in {{0, 1, 2}}, got {n}")
    return (ring or hecke_ring().without_h_rule()).parse(TYPE3_HECKE_CLASSES[n])


# canonical class and parity ------------------------------------------------------------

def canonical_exponent(kind: str, index: int) -> int:
    """Exponent e with K = O_M(e) on a type III (index n) or type II (index nu) locus."""
    kind = kind.upper()
    if kind not in ("III", "II"):
        raise ValueError(f"kind must be 'III' or 'II', got {kind!r}")
    if index % 2 == 0:
        raise ValueError(f"parity violates proposition hypothesis: {index} is even")
    return (index - 5) // 2


def hom_parity_ok(hom_dim: int, deg_f: int) -> bool:
    return (hom_dim - deg_f) % 2 == 0
