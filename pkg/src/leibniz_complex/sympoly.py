"""The symmetric algebra on an ordered basis z1..zN, with exact coefficients.

A SymPoly is a sparse map {sorted index tuple -> Fraction}. The empty
tuple indexes the scalar part, so Fractions embed as degree-0 elements.
Monomial keys ("Z-multisets") are tuples of 0-based generator indices in
non-decreasing order; two multisets are equal exactly when the sorted
tuples are equal.

Besides ring arithmetic this module provides the one derivation-style
primitive everything downstream leans on: `derivation_extend`, the unique
derivation of the algebra agreeing with a prescribed map on the
generators (and therefore vanishing on scalars).

Text form used by the CLI and the JSON formats: terms sorted by
(degree descending, multiset lexicographic), e.g. ``3/2*z1^2*z2 + 1``.
"""

import re
from fractions import Fraction


class DimensionError(ValueError):
    """Operands live over symmetric algebras with different generator counts."""


class SymPolyParseError(ValueError):
    """Malformed polynomial text."""


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class SymPoly:
    """Immutable element of the symmetric algebra on `nvars` generators."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars, terms=()):
        self.nvars = nvars
        clean = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for mono, coeff in items:
            mono = tuple(mono)
            if any(not (0 <= i < nvars) for i in mono):
                raise DimensionError(f"generator index out of range in {mono} (nvars={nvars})")
            if any(mono[i] > mono[i + 1] for i in range(len(mono) - 1)):
                mono = tuple(sorted(mono))
            coeff = _as_fraction(coeff)
            if coeff != 0:
                acc = clean.get(mono)
                total = coeff if acc is None else acc + coeff
                if total == 0:
                    clean.pop(mono, None)
                else:
                    clean[mono] = total
        self._terms = clean

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def one(cls, nvars):
        return cls(nvars, {(): Fraction(1)})

    @classmethod
    def constant(cls, nvars, value):
        return cls(nvars, {(): _as_fraction(value)})

    @classmethod
    def generator(cls, nvars, index):
        return cls(nvars, {(index,): Fraction(1)})

    @classmethod
    def monomial(cls, nvars, multiset, coeff=1):
        return cls(nvars, {tuple(multiset): _as_fraction(coeff)})

    def items(self):
        return self._terms.items()

    def coeff(self, multiset):
        return self._terms.get(tuple(sorted(multiset)), Fraction(0))

    def is_zero(self):
        return not self._terms

    def degree(self):
        """Maximal symmetric degree among the terms; -1 for the zero element."""
        return max((len(m) for m in self._terms), default=-1)

    def homogeneous_parts(self):
        """Split into {degree: homogeneous SymPoly}; empty for zero."""
        parts = {}
        for mono, coeff in self._terms.items():
            parts.setdefault(len(mono), {})[mono] = coeff
        return {d: SymPoly(self.nvars, t) for d, t in sorted(parts.items())}

    def _check_dim(self, other):
        if self.nvars != other.nvars:
            raise DimensionError(f"mixed generator counts: {self.nvars} vs {other.nvars}")

    def __add__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        self._check_dim(other)
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            total = terms.get(mono, Fraction(0)) + coeff
            if total == 0:
                terms.pop(mono, None)
            else:
                terms[mono] = total
        out = SymPoly.__new__(SymPoly)
        out.nvars = self.nvars
        out._terms = terms
        return out

    def __sub__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        out = SymPoly.__new__(SymPoly)
        out.nvars = self.nvars
        out._terms = {m: -c for m, c in self._terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        self._check_dim(other)
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(sorted(m1 + m2))
                total = terms.get(mono, Fraction(0)) + c1 * c2
                if total == 0:
                    terms.pop(mono, None)
                else:
                    terms[mono] = total
        out = SymPoly.__new__(SymPoly)
        out.nvars = self.nvars
        out._terms = terms
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, factor):
        factor = _as_fraction(factor)
        if factor == 0:
            return SymPoly.zero(self.nvars)
        out = SymPoly.__new__(SymPoly)
        out.nvars = self.nvars
        out._terms = {m: factor * c for m, c in self._terms.items()}
        return out

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"SymPoly({self.nvars}, {self.render()!r})"

    def render(self):
        """Canonical text form, e.g. ``3/2*z1^2*z2 + 1`` (zero renders as ``0``)."""
        if not self._terms:
            return "0"
        pieces = []
        for mono in sorted(self._terms, key=lambda m: (-len(m), m)):
            coeff = self._terms[mono]
            body = _render_monomial(mono)
            mag = -coeff if coeff < 0 else coeff
            if body:
                text = body if mag == 1 else f"{mag}*{body}"
            else:
                text = str(mag)
            pieces.append(("-" if coeff < 0 else "+", text))
        sign, first = pieces[0]
        out = ("-" if sign == "-" else "") + first
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out


def _render_monomial(mono):
    factors = []
    for idx in sorted(set(mono)):
        power = mono.count(idx)
        factors.append(f"z{idx + 1}" if power == 1 else f"z{idx + 1}^{power}")
    return "*".join(factors)


_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])|(?P<num>\d+(?:/\d+)?)|(?P<var>z\d+(?:\^\d+)?)|(?P<mul>\*))")


def parse_sympoly(nvars, text):
    """Inverse of SymPoly.render (also accepts unnormalized spacing/order)."""
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            if text[pos:].strip():
                raise SymPolyParseError(f"unexpected character {text[pos:].strip()[0]!r} in {text!r}")
            break
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
        pos = match.end()
    terms = []
    i = 0
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] == "sign":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            if terms or sign == -1:
                raise SymPolyParseError(f"dangling sign in {text!r}")
            break
        coeff = Fraction(1)
        mono = []
        saw_factor = False
        expect_factor = True
        while i < len(tokens) and tokens[i][0] != "sign":
            kind, value = tokens[i]
            if kind == "mul":
                if expect_factor:
                    raise SymPolyParseError(f"misplaced '*' in {text!r}")
                expect_factor = True
            elif kind == "num":
                if saw_factor:
                    raise SymPolyParseError(f"coefficient after variables in {text!r}")
                coeff = Fraction(value)
                saw_factor = True
                expect_factor = False
            else:
                base, _, exp = value.partition("^")
                index = int(base[1:]) - 1
                power = int(exp) if exp else 1
                if not (0 <= index < nvars):
                    raise SymPolyParseError(f"generator {base} out of range (nvars={nvars})")
                mono.extend([index] * power)
                saw_factor = True
                expect_factor = False
            i += 1
        if expect_factor and saw_factor:
            raise SymPolyParseError(f"trailing '*' in {text!r}")
        if not saw_factor:
            raise SymPolyParseError(f"empty term in {text!r}")
        terms.append((tuple(sorted(mono)), sign * coeff))
    return SymPoly(nvars, terms)


def derivation_extend(base, poly):
    """Apply the derivation sending generator r to base[r] to `poly`.

    `base` assigns a SymPoly to every generator. The result is the unique
    derivation of the algebra with those generator values; in particular
    it kills the scalar part.
    """
    base = list(base)
    if len(base) != poly.nvars:
        raise DimensionError(f"base has {len(base)} entries for {poly.nvars} generators")
    for b in base:
        if b.nvars != poly.nvars:
            raise DimensionError("base values live over a different generator count")
    result = SymPoly.zero(poly.nvars)
    for mono, coeff in poly.items():
        for r in sorted(set(mono)):
            mult = mono.count(r)
            rest = list(mono)
            rest.remove(r)
            cofactor = SymPoly.monomial(poly.nvars, rest, coeff * mult)
            result = result + cofactor * base[r]
    return result
