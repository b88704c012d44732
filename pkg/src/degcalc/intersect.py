"""Intersection numbers on the odd moduli space M and the Hecke graph Z = P(E_p).

``pair_M`` is the closed Bernoulli-number formula for (a^m b^n c^p) on M.
Integrals over Z use the relation H^2 = aH - (a^2 - b)/4 to write a class as
u*H + v and then integrate u over M (H restricts to degree 1 on every P^1
fibre, classes pulled back from M integrate to 0).

Degrees on the even moduli space are computed on Z as

    fiber_factor * int_Z class * divisor^ell * a

where ``divisor`` is the pullback of the determinant line bundle and the
trailing ``a`` with factor 1/2 accounts for the map from Z being of degree 2
on the relevant fibres.  Both are parameters of :class:`PairingConvention`
and can be pinned down by :func:`calibrate_even_convention`.
"""

from __future__ import annotations

import csv
import enum
import functools
import io
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import classes
from .exact import bernoulli, factorial, format_rational
from .ring import GradedPoly, hecke_ring, moduli_ring


class TwosFactor(enum.Enum):
    POW_Q = "pow-q"  # (2^q - 2); agrees with the closed degree formula
    POW_G = "pow-g"  # (2^g - 2); literal variant, kept for comparison


class ZPairing(enum.Enum):
    FIBER_RULE = "fiber-rule"
    LITERAL = "literal"  # closed two-branch formula for (H a^m b^n c^p)


def _hecke_free():
    return hecke_ring().without_h_rule()


@dataclass(frozen=True)
class PairingConvention:
    twos_factor: TwosFactor = TwosFactor.POW_Q
    z_pairing: ZPairing = ZPairing.FIBER_RULE
    divisor: GradedPoly = field(default_factory=lambda: _hecke_free().gen("h"))
    fiber_factor: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "twos_factor", TwosFactor(self.twos_factor))
        object.__setattr__(self, "z_pairing", ZPairing(self.z_pairing))
        object.__setattr__(self, "fiber_factor", Fraction(self.fiber_factor))
        div = self.divisor
        if isinstance(div, str):
            div = _hecke_free().parse(div)
        div = div.lift(_hecke_free())
        if div and (div.weight != 1 or not div.generators_used() <= {"h", "a"}):
            raise ValueError(f"divisor must be a linear form in h and a, got {div}")
        object.__setattr__(self, "divisor", div)
        if self.fiber_factor <= 0:
            raise ValueError("fiber_factor must be positive")

    @property
    def divisor_coeffs(self) -> tuple[Fraction, Fraction]:
        return self.divisor.coefficient({"h": 1}), self.divisor.coefficient({"a": 1})

    def describe(self) -> str:
        return (f"{self.twos_factor.value}, {self.z_pairing.value}, divisor {self.divisor}, "
                f"fiber factor {format_rational(self.fiber_factor)}")


DEFAULT_CONVENTION = PairingConvention()


def _check_genus(g: int):
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")


@functools.lru_cache(maxsize=None)
def _pair_m(g: int, m: int, n: int, p: int, factor: TwosFactor) -> Fraction:
    q = m + p + 1 - g
    if q < 0 or p > g:
        return Fraction(0)
    sign = -1 if (p - g) % 2 else 1
    twos = 2 ** q - 2 if factor is TwosFactor.POW_Q else 2 ** g - 2
    value = Fraction(factorial(g) * factorial(m), factorial(g - p) * factorial(q))
    return sign * value * Fraction(2) ** (2 * g - 2 - p) * twos * bernoulli(q)


def pair_M(g: int, m: int, n: int, p: int, conv: PairingConvention = DEFAULT_CONVENTION) -> Fraction:
    """(a^m b^n c^p) on the odd moduli space of genus g; needs m + 2n + 3p = 3g - 3."""
    _check_genus(g)
    if min(m, n, p) < 0:
        raise ValueError("exponents must be nonnegative")
    if m + 2 * n + 3 * p != 3 * g - 3:
        raise ValueError(f"degree mismatch: m + 2n + 3p = {m + 2 * n + 3 * p} != 3g - 3 = {3 * g - 3}")
    return _pair_m(g, m, n, p, conv.twos_factor)


def degree_odd_moduli(g: int, conv: PairingConvention = DEFAULT_CONVENTION) -> Fraction:
    return pair_M(g, 3 * g - 3, 0, 0, conv)


def degree_display(g: int) -> Fraction:
    """(-1)^g (3g-3)!/(2g-2)! 2^(2g-2) (2^(2g-2) - 2) B_{2g-2}."""
    _check_genus(g)
    return ((-1) ** g * Fraction(factorial(3 * g - 3), factorial(2 * g - 2))
            * 2 ** (2 * g - 2) * (2 ** (2 * g - 2) - 2) * bernoulli(2 * g - 2))


def _pair_z_literal(g: int, m: int, n: int, p: int) -> Fraction:
    q = m + p + 1 - g
    if p > g:
        return Fraction(0)
    if q == 0:
        sign = -1 if (p + g + 1) % 2 else 1
        return sign * Fraction(2 ** g * factorial(g) * factorial(m) * m, factorial(g - p))
    if q < 0:
        return Fraction(0)
    sign = -1 if (p + g) % 2 else 1
    return sign * Fraction(2 ** g * factorial(g) * factorial(m), factorial(g - p) * factorial(q)) * bernoulli(q)


def pair_Z(g: int, a: int, m: int, n: int, p: int, conv: PairingConvention = DEFAULT_CONVENTION) -> Fraction:
    """(H^a a^m b^n c^p) on the Hecke graph; needs a + m + 2n + 3p = 3g - 2."""
    _check_genus(g)
    if min(a, m, n, p) < 0:
        raise ValueError("exponents must be nonnegative")
    if a + m + 2 * n + 3 * p != 3 * g - 2:
        raise ValueError(f"degree mismatch: a + m + 2n + 3p = {a + m + 2 * n + 3 * p} != 3g - 2 = {3 * g - 2}")
    if conv.z_pairing is ZPairing.LITERAL:
        if a != 1:
            raise ValueError("the literal Hecke pairing is only defined for a single power of H")
        return _pair_z_literal(g, m, n, p)
    ring = hecke_ring(g)
    return integrate_Z(ring.monomial({"h": a, "a": m, "b": n, "c": p}), g, conv)


def integrate_M(poly: GradedPoly, g: int, conv: PairingConvention = DEFAULT_CONVENTION) -> Fraction:
    """Linear extension of ``pair_M``; parts below top degree integrate to 0."""
    ring = moduli_ring(g)
    poly = poly.lift(ring)
    top = 3 * g - 3
    total = Fraction(0)
    for powers, coeff in poly.items():
        m, n, p = powers.get("a", 0), powers.get("b", 0), powers.get("c", 0)
        if m + 2 * n + 3 * p == top:
            total += coeff * pair_M(g, m, n, p, conv)
    return total


def integrate_Z(poly: GradedPoly, g: int, conv: PairingConvention = DEFAULT_CONVENTION) -> Fraction:
    """Integral over the Hecke graph: reduce to u*H + v and integrate u over M."""
    ring = hecke_ring(g)
    u, _ = poly.lift(ring).reduce_h()
    if conv.z_pairing is ZPairing.LITERAL:
        total = Fraction(0)
        for powers, coeff in u.items():
            m, n, p = powers.get("a", 0), powers.get("b", 0), powers.get("c", 0)
            if m + 2 * n + 3 * p == 3 * g - 3:
                total += coeff * _pair_z_literal(g, m, n, p)
        return total
    return integrate_M(u.lift(moduli_ring(g)), g, conv)


def evaluate_degree(cls: GradedPoly, g: int, conv: PairingConvention = DEFAULT_CONVENTION) -> Fraction:
    """Degree w.r.t. a of a locus with class ``cls`` on the odd moduli space."""
    if cls.is_zero():
        return Fraction(0)
    if not cls.is_homogeneous():
        raise ValueError("class must be homogeneous")
    codim = cls.weight
    dim = 3 * g - 3
    if codim > dim:
        raise ValueError(f"codimension {codim} exceeds dim M = {dim}")
    ring = moduli_ring(g)
    return integrate_M(cls.lift(ring) * ring.gen("a") ** (dim - codim), g, conv)


def evaluate_degree_Z(cls: GradedPoly, g: int, ell_powers: int | None = None,
                      conv: PairingConvention = DEFAULT_CONVENTION) -> Fraction:
    """Degree on the even moduli space of a locus whose pullback to Z is ``cls``."""
    if not cls.is_homogeneous() or cls.is_zero():
        raise ValueError("class must be nonzero and homogeneous")
    codim = cls.weight
    if ell_powers is None:
        ell_powers = 3 * g - 3 - codim
    if codim + ell_powers + 1 != 3 * g - 2:
        raise ValueError(f"degree mismatch: codim {codim} + {ell_powers} + 1 != 3g - 2 = {3 * g - 2}")
    ring = hecke_ring(g)
    integrand = cls.lift(ring) * conv.divisor.lift(ring) ** ell_powers * ring.gen("a")
    return conv.fiber_factor * integrate_Z(integrand, g, conv)


# tables -------------------------------------------------------------------------

def top_monomials(g: int, hecke: bool = False) -> list[tuple[int, int, int, int]]:
    """(H, a, b, c) exponents of top degree, deterministic order."""
    top = 3 * g - 2 if hecke else 3 * g - 3
    rows = []
    for p in range(top // 3, -1, -1):
        for n in range((top - 3 * p) // 2, -1, -1):
            rest = top - 3 * p - 2 * n
            if hecke:
                for a in range(1, rest + 1):
                    rows.append((a, rest - a, n, p))
            else:
                rows.append((0, rest, n, p))
    rows.sort(key=lambda r: (-r[0], -r[1], -r[2], -r[3]))
    return rows


def pairing_table(g: int, hecke: bool = False, conv: PairingConvention = DEFAULT_CONVENTION) -> list[dict]:
    records = []
    for a, m, n, p in top_monomials(g, hecke):
        if hecke:
            if conv.z_pairing is ZPairing.LITERAL and a != 1:
                continue
            value = pair_Z(g, a, m, n, p, conv)
        else:
            value = pair_M(g, m, n, p, conv)
        records.append({"g": g, "monomial": {"H": a, "a": m, "b": n, "c": p},
                        "value": format_rational(value)})
    return records


TABLE_VERSION = 1


def table_document(kind: str, rows: Sequence[dict], conv: PairingConvention = DEFAULT_CONVENTION) -> dict:
    """Versioned JSON document wrapping a table of rows."""
    return {"version": TABLE_VERSION, "kind": kind, "convention": conv.describe(), "rows": list(rows)}


def records_to_json(records: Sequence[dict], conv: PairingConvention = DEFAULT_CONVENTION) -> str:
    return json.dumps(table_document("pairing-table", records, conv), indent=2)


def records_to_csv(records: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["g", "H", "a", "b", "c", "value"])
    for rec in records:
        mono = rec["monomial"]
        writer.writerow([rec["g"], mono["H"], mono["a"], mono["b"], mono["c"], rec["value"]])
    return buf.getvalue()


# calibration of the even-moduli degree convention ---------------------------------

@dataclass(frozen=True)
class Target:
    """A pinned degree: ``kind`` 2 (index nu) or 3 (index n) at genus g."""

    kind: int
    index: int
    g: int
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.kind not in (2, 3):
            raise ValueError("target kind must be 2 or 3")

    def label(self) -> str:
        name = "nu" if self.kind == 2 else "n"
        return f"type{self.kind}:{name}={self.index}:g={self.g}"

    def to_json(self) -> dict:
        key = "nu" if self.kind == 2 else "n"
        return {"type": self.kind, key: self.index, "g": self.g, "value": format_rational(self.value)}

    @classmethod
    def from_json(cls, data: dict) -> Target:
        kind = int(data["type"])
        index = data["nu"] if kind == 2 else data["n"]
        return cls(kind, int(index), int(data["g"]), Fraction(str(data["value"])))


DEFAULT_TARGETS = (Target(3, 1, 3, 1), Target(2, 4, 4, 6))
DEFAULT_HELDOUT = (Target(2, 4, 5, 256), Target(2, 4, 6, 28640))

# search grid: divisor x*H + y*a with x, y in {-2, -3/2, ..., 2}
GRID_VALUES = tuple(Fraction(k, 2) for k in range(-4, 5))
FIBER_FACTORS = (Fraction(1), Fraction(1, 2))
NU4_VARIANTS = ("printed", "closed-form", "determinant")


@dataclass(frozen=True)
class Configuration:
    h_coeff: Fraction
    a_coeff: Fraction
    fiber_factor: Fraction
    variant: str

    def convention(self, base: PairingConvention = DEFAULT_CONVENTION) -> PairingConvention:
        ring = _hecke_free()
        div = ring.gen("h") * self.h_coeff + ring.gen("a") * self.a_coeff
        return PairingConvention(base.twos_factor, base.z_pairing, div, self.fiber_factor)

    def to_json(self) -> dict:
        ring = _hecke_free()
        div = ring.gen("h") * self.h_coeff + ring.gen("a") * self.a_coeff
        return {"divisor": div.format(), "fiber_factor": format_rational(self.fiber_factor),
                "nu4_variant": self.variant}


def _target_class(target: Target, variant: str) -> GradedPoly:
    if target.kind == 3:
        return classes.type3_class(target.index)
    if target.index == 4:
        return classes.type2_class(4, classes.Context.HECKE_GRAPH, route=variant)
    raise ValueError(f"no Hecke-graph class for type II with nu = {target.index}")


@functools.lru_cache(maxsize=None)
def _moments(cls: GradedPoly, g: int, ell: int, conv_key) -> tuple[Fraction, ...]:
    """I_k = int_Z cls * H^k * a^(ell - k + 1), k = 0..ell."""
    ring = hecke_ring(g)
    conv = PairingConvention(*conv_key)
    base = cls.lift(ring)
    h, a = ring.gens("h", "a")
    out = []
    for k in range(ell + 1):
        out.append(integrate_Z(base * h ** k * a ** (ell - k + 1), g, conv))
    return tuple(out)


def _evaluate(target: Target, config: Configuration, base: PairingConvention) -> Fraction:
    cls = _target_class(target, config.variant)
    ell = 3 * target.g - 3 - cls.weight
    if ell < 0:
        raise ValueError(f"{target.label()}: locus has negative expected dimension")
    moments = _moments(cls, target.g, ell, (base.twos_factor, base.z_pairing))
    total = Fraction(0)
    x, y = config.h_coeff, config.a_coeff
    for k, mom in enumerate(moments):
        if mom:
            total += factorial(ell) // (factorial(k) * factorial(ell - k)) * x ** k * y ** (ell - k) * mom
    return config.fiber_factor * total


@dataclass
class CalibrationReport:
    targets: list[Target]
    heldout: list[Target]
    solutions: list[Configuration]
    heldout_results: list[dict]
    near_misses: list[dict]

    @property
    def found(self) -> bool:
        return bool(self.solutions)

    @property
    def surviving_variants(self) -> list[str]:
        return sorted({s.variant for s in self.solutions})

    @property
    def rejected_variants(self) -> list[str]:
        return [v for v in NU4_VARIANTS if v not in self.surviving_variants]

    @property
    def heldout_ok(self) -> bool:
        return bool(self.heldout_results) and all(r["ok"] for r in self.heldout_results)

    @property
    def distinct_solutions(self) -> int:
        """Solutions up to identical divisor, factor and class polynomial."""
        seen = set()
        for s in self.solutions:
            cls = _target_class(Target(2, 4, 4, 0), s.variant)
            seen.add((s.h_coeff, s.a_coeff, s.fiber_factor, cls))
        return len(seen)

    def to_json(self) -> dict:
        return {
            "version": TABLE_VERSION,
            "targets": [t.to_json() for t in self.targets],
            "heldout": [t.to_json() for t in self.heldout],
            "found": self.found,
            "solutions": [s.to_json() for s in self.solutions],
            "distinct_solutions": self.distinct_solutions,
            "surviving_nu4_variants": self.surviving_variants,
            "rejected_nu4_variants": self.rejected_variants,
            "heldout_results": self.heldout_results,
            "heldout_ok": self.heldout_ok,
            "near_misses": self.near_misses,
        }

    def format(self) -> str:
        lines = ["targets: " + ", ".join(f"{t.label()} = {format_rational(t.value)}" for t in self.targets)]
        if not self.found:
            lines.append("no configuration reproduces the targets; nearest misses:")
            for miss in self.near_misses:
                lines.append(f"  {miss['configuration']}  error {miss['error']}  values {miss['values']}")
            return "\n".join(lines)
        lines.append(f"{len(self.solutions)} configuration(s), {self.distinct_solutions} distinct:")
        for s in self.solutions:
            d = s.to_json()
            lines.append(f"  divisor {d['divisor']}, fiber factor {d['fiber_factor']}, nu=4 class: {s.variant}")
        lines.append("surviving nu=4 class variants: " + ", ".join(self.surviving_variants))
        lines.append("rejected nu=4 class variants: " + (", ".join(self.rejected_variants) or "none"))
        for r in self.heldout_results:
            lines.append(f"  held-out {r['target']}: expected {r['expected']}, got {r['computed']} "
                         f"({r['configuration']['nu4_variant']}) {'ok' if r['ok'] else 'MISMATCH'}")
        return "\n".join(lines)


def candidate_configurations(variants: Iterable[str] = NU4_VARIANTS) -> list[Configuration]:
    """Every configuration of the search, in the documented order."""
    return [Configuration(x, y, f, v)
            for v in variants
            for f in FIBER_FACTORS
            for x, y in itertools.product(GRID_VALUES, repeat=2)]


def calibrate_even_convention(targets: Sequence[Target] = DEFAULT_TARGETS,
                              heldout: Sequence[Target] = DEFAULT_HELDOUT,
                              base: PairingConvention = DEFAULT_CONVENTION,
                              n_near_misses: int = 10) -> CalibrationReport:
    """Search divisor, fiber factor and codim-6 class variant against pinned degrees."""
    targets = list(targets)
    heldout = list(heldout)
    if not targets:
        raise ValueError("calibration needs at least one target")
    solutions, scored = [], []
    for config in candidate_configurations():
        values = [_evaluate(t, config, base) for t in targets]
        error = sum(abs(v - t.value) for v, t in zip(values, targets))
        if error == 0:
            solutions.append(config)
        else:
            scored.append((error, config, values))
    near = []
    if not solutions:
        scored.sort(key=lambda s: s[0])
        for error, config, values in scored[:n_near_misses]:
            near.append({"configuration": config.to_json(), "error": format_rational(error),
                         "values": [format_rational(v) for v in values]})
    results = []
    for config in solutions:
        for t in heldout:
            value = _evaluate(t, config, base)
            results.append({"target": t.label(), "configuration": config.to_json(),
                            "expected": format_rational(t.value), "computed": format_rational(value),
                            "ok": value == t.value})
    return CalibrationReport(targets, heldout, solutions, results, near)
