"""Sparse weighted-graded polynomials with exact rational coefficients.

A :class:`GradedRing` fixes the generators (each with a positive weight, the
complex degree of the class it stands for), an optional top weight above
which monomials are discarded, and optionally the tautological relation of a
projectivized rank-2 bundle::

    h^2 = a*h - (a^2 - b)/4

which is applied eagerly, so every stored polynomial has ``h``-degree <= 1.

Text format: terms joined by ``+``/``-``, factors by ``*``, powers by ``^``,
coefficients written ``p`` or ``p/q``.  The generator names used for the
moduli classes are ``h`` (H), ``a`` (alpha), ``b`` (beta), ``c`` (gamma) and
``t`` (Theta); formal Chern classes are ``c1, c2, ...``, Chern characters
``ch1, ch2, ...`` and the first Chern class of the twisting line bundle is
``phi``.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .exact import format_rational, parse_rational, to_rational

# canonical generator order for the named classes
CANONICAL_ORDER = ("h", "a", "b", "c", "t")


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    weight: int

    def __post_init__(self):
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.name):
            raise ValueError(f"bad generator name {self.name!r}")
        if self.weight < 1:
            raise ValueError(f"generator {self.name} must have weight >= 1")


def _canonical_key(name: str):
    if name in CANONICAL_ORDER:
        return (0, CANONICAL_ORDER.index(name), 0)
    m = re.fullmatch(r"(c|ch)(\d+)", name)
    if m:
        return (1 if m.group(1) == "c" else 2, int(m.group(2)), 0)
    if name == "phi":
        return (3, 0, 0)
    return (4, 0, name)


@dataclass(frozen=True)
class GradedRing:
    """Ring specification; hashable so it can key caches."""

    generators: tuple[GeneratorSpec, ...]
    top_weight: int | None = None
    h_rule: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        names = [gen.name for gen in self.generators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        if self.top_weight is not None and self.top_weight < 0:
            raise ValueError("top_weight must be nonnegative")
        if self.h_rule is not None:
            weights = dict(zip(names, self.weights))
            if weights.get(self.h_rule) != 1:
                raise ValueError(f"h_rule generator {self.h_rule!r} must exist with weight 1")
            if weights.get("a") != 1 or weights.get("b") != 2:
                raise ValueError("h_rule needs generators a (weight 1) and b (weight 2)")

    @classmethod
    def build(cls, gens: Iterable[tuple[str, int]], top_weight=None, h_rule=None,
              canonical=True):
        specs = [GeneratorSpec(name, weight) for name, weight in gens]
        if canonical:
            specs.sort(key=lambda s: _canonical_key(s.name))
        return cls(tuple(specs), top_weight, h_rule)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(gen.name for gen in self.generators)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(gen.weight for gen in self.generators)

    @property
    def nvars(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}; ring has {self.names}") from None

    def weight_of(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def zero(self) -> GradedPoly:
        return GradedPoly(self)

    def one(self) -> GradedPoly:
        return self.const(1)

    def const(self, value) -> GradedPoly:
        return GradedPoly(self, {(0,) * self.nvars: to_rational(value)})

    def gen(self, name: str) -> GradedPoly:
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return GradedPoly(self, {tuple(exps): Fraction(1)})

    def gens(self, *names: str) -> tuple[GradedPoly, ...]:
        return tuple(self.gen(name) for name in names)

    def monomial(self, powers: Mapping[str, int], coeff=1) -> GradedPoly:
        exps = [0] * self.nvars
        for name, e in powers.items():
            if e < 0:
                raise ValueError("negative exponent")
            exps[self.index(name)] += e
        return GradedPoly(self, {tuple(exps): to_rational(coeff)})

    def parse(self, text: str) -> GradedPoly:
        return parse(text, self)

    def extend(self, gens: Iterable[tuple[str, int]], canonical=True) -> GradedRing:
        """Ring with extra generators appended (placeholder classes etc.)."""
        pairs = [(g.name, g.weight) for g in self.generators] + list(gens)
        return GradedRing.build(pairs, self.top_weight, self.h_rule, canonical=canonical)

    def with_top_weight(self, top_weight) -> GradedRing:
        return GradedRing(self.generators, top_weight, self.h_rule)

    def without_h_rule(self) -> GradedRing:
        return GradedRing(self.generators, self.top_weight, None)


# standard rings ------------------------------------------------------------

def moduli_ring(g: int | None = None) -> GradedRing:
    """alpha, beta, gamma on the odd moduli space, truncated at 3g-3."""
    top = None if g is None else 3 * g - 3
    return GradedRing.build([("a", 1), ("b", 2), ("c", 3)], top_weight=top)


def hecke_ring(g: int | None = None) -> GradedRing:
    """H, alpha, beta, gamma on the Hecke graph, truncated at 3g-2."""
    top = None if g is None else 3 * g - 2
    return GradedRing.build([("h", 1), ("a", 1), ("b", 2), ("c", 3)], top_weight=top, h_rule="h")


def theta_ring(g: int | None = None) -> GradedRing:
    return GradedRing.build([("t", 1)], top_weight=g)


def chern_ring(k: int, prefix="c", top_weight=None) -> GradedRing:
    """Formal classes prefix1..prefixk with weight i."""
    return GradedRing.build([(f"{prefix}{i}", i) for i in range(1, k + 1)], top_weight=top_weight)


# H-reduction ---------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _h_power(ring: GradedRing, k: int) -> tuple[GradedPoly, GradedPoly]:
    """(u_k, v_k) with H^k = u_k H + v_k, both free of H."""
    if k == 0:
        return ring.zero(), ring.one()
    if k == 1:
        return ring.one(), ring.zero()
    a, b = ring.gen("a"), ring.gen("b")
    v2 = (b - a * a) / 4
    u_prev, _ = _h_power(ring, k - 2)
    u_cur, _ = _h_power(ring, k - 1)
    return a * u_cur + v2 * u_prev, v2 * u_cur


# polynomial ----------------------------------------------------------------

class GradedPoly:
    """Immutable sparse polynomial in a :class:`GradedRing`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: GradedRing, terms: Mapping[tuple, object] | None = None):
        self.ring = ring
        self._hash = None
        if not terms:
            self.terms = {}
            return
        clean = {}
        n = ring.nvars
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for ring {ring.names}")
            coeff = to_rational(coeff)
            if coeff:
                clean[exps] = clean.get(exps, 0) + coeff
        self.terms = _normalize(ring, clean)

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> GradedPoly:
        if isinstance(other, GradedPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring.names} vs {other.ring.names}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            s = terms.get(exps, 0) + coeff
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return GradedPoly._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GradedPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        ring = self.ring
        top = ring.top_weight
        acc: dict[tuple, Fraction] = {}
        right = [(e, c, ring.weight_of(e)) for e, c in other.terms.items()]
        for e1, c1 in self.terms.items():
            w1 = ring.weight_of(e1)
            for e2, c2, w2 in right:
                if top is not None and w1 + w2 > top:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                s = acc.get(e, 0) + c1 * c2
                if s:
                    acc[e] = s
                else:
                    del acc[e]
        return GradedPoly._raw(ring, _reduce_h_terms(ring, acc))

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, r) -> GradedPoly:
        r = to_rational(r)
        if not r:
            return self.ring.zero()
        return GradedPoly._raw(self.ring, {e: c * r for e, c in self.terms.items()})

    def __truediv__(self, r):
        r = to_rational(r)
        return self.scale(1 / r)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # comparison ---------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GradedPoly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            other = self.ring.const(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def weights_present(self) -> set[int]:
        return {self.ring.weight_of(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights_present()) <= 1

    @property
    def weight(self) -> int | None:
        """Weight of a homogeneous polynomial (None for zero)."""
        ws = self.weights_present()
        if not ws:
            return None
        if len(ws) > 1:
            raise ValueError(f"polynomial is not homogeneous (weights {sorted(ws)})")
        return ws.pop()

    def homogeneous_part(self, w: int) -> GradedPoly:
        ring = self.ring
        return GradedPoly._raw(ring, {e: c for e, c in self.terms.items() if ring.weight_of(e) == w})

    def generators_used(self) -> set[str]:
        names = self.ring.names
        return {names[i] for e in self.terms for i, x in enumerate(e) if x}

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def coefficient(self, monomial) -> Fraction:
        """Coefficient of a monomial given as text, a name->exponent map or a monomial poly."""
        if isinstance(monomial, str):
            monomial = self.ring.parse(monomial)
        if isinstance(monomial, GradedPoly):
            if monomial.ring != self.ring or len(monomial.terms) != 1:
                raise ValueError("coefficient() needs a single monomial of the same ring")
            (exps, c), = monomial.terms.items()
            if c != 1:
                raise ValueError("monomial must have coefficient 1")
        else:
            exps = [0] * self.ring.nvars
            for name, e in monomial.items():
                exps[self.ring.index(name)] = e
            exps = tuple(exps)
        return self.terms.get(exps, Fraction(0))

    def items(self):
        """(name->exponent dict, coefficient) pairs in canonical term order."""
        names = self.ring.names
        for exps, coeff in self._sorted_terms():
            yield {n: e for n, e in zip(names, exps) if e}, coeff

    def _sorted_terms(self):
        ring = self.ring
        return sorted(self.terms.items(), key=lambda t: (ring.weight_of(t[0]), t[0]), reverse=True)

    # transformations ------------------------------------------------------------

    def substitute(self, values: Mapping[str, object], target: GradedRing | None = None) -> GradedPoly:
        """Replace generators by polynomials of ``target``; untouched names map by name."""
        target = target or self.ring
        images = []
        for name in self.ring.names:
            if name in values:
                v = values[name]
                images.append(v if isinstance(v, GradedPoly) else target.const(v))
            else:
                images.append(target.gen(name))
        for img in images:
            if img.ring != target:
                raise ValueError("substitution images must live in the target ring")
        power_cache: dict[tuple[int, int], GradedPoly] = {}

        def power(i, e):
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = images[i] ** e
            return power_cache[key]

        result = target.zero()
        for exps, coeff in self.terms.items():
            term = target.const(coeff)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def lift(self, target: GradedRing) -> GradedPoly:
        """Same polynomial viewed in ``target`` (generators matched by name).

        Generators absent from ``target`` are allowed only if they do not
        occur, so this also projects out cancelled placeholder classes.
        """
        if target == self.ring:
            return self
        target_names = set(target.names)
        idx = [target.index(name) if name in target_names else None for name in self.ring.names]
        terms = {}
        for exps, coeff in self.terms.items():
            new = [0] * target.nvars
            for name, i, e in zip(self.ring.names, idx, exps):
                if i is None:
                    if e:
                        raise ValueError(f"generator {name!r} occurs but is not in the target ring")
                    continue
                new[i] = e
            terms[tuple(new)] = coeff
        return GradedPoly(target, terms)

    def reduce_h(self) -> tuple[GradedPoly, GradedPoly]:
        """Split as u*H + v with u, v free of H."""
        ring = self.ring
        if ring.h_rule is None:
            raise ValueError("reduce_h needs a ring with an h_rule")
        hi = ring.index(ring.h_rule)
        u, v = {}, {}
        for exps, coeff in self.terms.items():
            if exps[hi] > 1:
                raise AssertionError("stored polynomial is not H-reduced")
            target = u if exps[hi] == 1 else v
            rest = exps[:hi] + (0,) + exps[hi + 1:]
            target[rest] = coeff
        return GradedPoly._raw(ring, u), GradedPoly._raw(ring, v)

    # text -----------------------------------------------------------------------

    def format(self) -> str:
        return format_poly(self)

    __str__ = format

    def __repr__(self):
        return f"GradedPoly({self.format()!r})"


def _normalize(ring: GradedRing, terms: dict) -> dict:
    terms = {e: c for e, c in terms.items() if c}
    top = ring.top_weight
    if top is not None:
        terms = {e: c for e, c in terms.items() if ring.weight_of(e) <= top}
    return _reduce_h_terms(ring, terms)


def _reduce_h_terms(ring: GradedRing, terms: dict) -> dict:
    if ring.h_rule is None:
        return terms
    hi = ring.index(ring.h_rule)
    if all(e[hi] <= 1 for e in terms):
        return terms
    out: dict[tuple, Fraction] = {}
    top = ring.top_weight

    def add(e, c):
        if top is not None and ring.weight_of(e) > top:
            return
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            del out[e]

    for exps, coeff in terms.items():
        k = exps[hi]
        if k <= 1:
            add(exps, coeff)
            continue
        u, v = _h_power(ring, k)
        rest = exps[:hi] + (0,) + exps[hi + 1:]
        for part, hexp in ((u, 1), (v, 0)):
            for e, c in part.terms.items():
                new = tuple(x + y for x, y in zip(rest, e))
                new = new[:hi] + (hexp,) + new[hi + 1:]
                add(new, coeff * c)
    return out


# text format -----------------------------------------------------------------

def format_poly(p: GradedPoly) -> str:
    if not p.terms:
        return "0"
    names = p.ring.names
    pieces = []
    for exps, coeff in p._sorted_terms():
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = format_rational(mag) + "*" + "*".join(factors)
        pieces.append(("-" if coeff < 0 else "+", body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:/\d*)?)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        num, name, op = m.groups()
        if num is not None:
            if num.endswith("/"):
                raise ValueError(f"malformed rational {num!r} in {text!r}")
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        else:
            if op not in "+-*^":
                raise ValueError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
        pos = m.end()
    return tokens


def parse(text: str, ring: GradedRing) -> GradedPoly:
    """Parse the text format described in the module docstring."""
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial text")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def factor():
        kind, val = take()
        if kind == "num":
            return ring.const(parse_rational(val))
        if kind == "name":
            if val not in ring.names:
                raise ValueError(f"unknown generator {val!r} in {text!r}; ring has {ring.names}")
            base = ring.gen(val)
            if peek() == ("op", "^"):
                take()
                k2, v2 = take()
                if k2 != "num" or "/" in v2:
                    raise ValueError(f"exponent after {val}^ must be a nonnegative integer")
                return base ** int(v2)
            return base
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    def term():
        value = factor()
        while peek() == ("op", "*"):
            take()
            value = value * factor()
        return value

    sign = 1
    if peek() in (("op", "-"), ("op", "+")):
        sign = -1 if take()[1] == "-" else 1
    result = term() * sign
    while pos < len(tokens):
        kind, val = take()
        if kind != "op" or val not in "+-":
            raise ValueError(f"expected + or - but found {val!r} in {text!r}")
        t = term()
        result = result + t if val == "+" else result - t
    return result
