"""The standard cochain complex of a Leibniz algebra with S(Z) coefficients.

A degree-n cochain is a sequence of components (w_0, ..., w_{n//2}) where
w_k takes n-2k algebra arguments and k symmetric center arguments and is
stored sparsely on basis keys:

    components[k][(e-index tuple, sorted z-index tuple)] = SymPoly

Weak skew-symmetry ties neighbouring components together: swapping two
adjacent algebra arguments is skew only up to a correction by the next
component evaluated on the symmetric product of the swapped pair,

    w_k(..e,e'..; fs) + w_k(..e',e..; fs) = -w_{k+1}(.. ; (e,e'), fs).

Storage does not canonicalize this (the structure is only weakly skew);
`validate_cochain` checks it instead.

The differential splits as d = d0 + delta. d0 is the Chevalley-Eilenberg
style sum of action terms and bracket insertions; delta feeds each center
argument back in as the first algebra argument. The term moving center
arguments along the bracket vanishes identically here because the left
center kills everything on the left, so it is not implemented.

Everything expands multilinearly over the chosen bases, and all shuffle
enumerations are lexicographic so failure reports are reproducible.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

from .sympoly import SymPoly, SymPolyParseError, parse_sympoly


class CochainShapeError(ValueError):
    """Component tables inconsistent with the declared degree."""


class InvalidCochainError(ValueError):
    """Weak skew-symmetry fails; carries the validation report."""

    def __init__(self, report):
        self.report = report
        first = report.violations[0] if report.violations else None
        super().__init__(f"cochain is not weakly skew-symmetric, first violation: {first}")


class ContextMismatchError(ValueError):
    pass


class CochainFormatError(ValueError):
    """Malformed cochain file."""


class ComplexContext:
    """A Leibniz algebra together with the caches cochain operations share.

    `pivot_strategy` picks the deterministic linear section used for
    duality lifts ("first" scans columns left to right, "last" right to
    left); all contexts over the same algebra agree on every operation
    whose value is choice-independent.
    """

    def __init__(self, algebra, pivot_strategy="first"):
        self.algebra = algebra
        self.dim = algebra.dim
        self.zdim = algebra.zdim
        self.pivot_strategy = pivot_strategy
        self.cache = {}

    def zero_poly(self):
        return SymPoly.zero(self.zdim)

    def __repr__(self):
        return f"ComplexContext({self.algebra!r}, pivot_strategy={self.pivot_strategy!r})"


class Cochain:
    """Immutable sparse cochain; missing keys are zero."""

    __slots__ = ("degree", "nvars", "components", "_hash")

    def __init__(self, degree, nvars, components=None):
        if degree < 0:
            raise CochainShapeError(f"negative degree {degree}")
        self.degree = degree
        self.nvars = nvars
        clean = {}
        for k, table in (components or {}).items():
            if not (0 <= k <= degree // 2):
                raise CochainShapeError(f"component index {k} out of range for degree {degree}")
            nl = degree - 2 * k
            out = {}
            for (es, fs), value in table.items():
                es = tuple(es)
                fs = tuple(sorted(fs))
                if len(es) != nl or len(fs) != k:
                    raise CochainShapeError(
                        f"key {(es, fs)} has wrong arity for component {k} of degree {degree}")
                if not isinstance(value, SymPoly):
                    raise TypeError("cochain values must be SymPoly")
                if value.nvars != nvars:
                    raise CochainShapeError("cochain value over wrong number of generators")
                if not value.is_zero():
                    out[(es, fs)] = value
            if out:
                clean[k] = out
        self.components = clean
        self._hash = None

    @classmethod
    def zero(cls, degree, nvars):
        return cls(degree, nvars)

    @classmethod
    def constant(cls, poly):
        """Degree-0 cochain holding one element of S(Z)."""
        return cls(0, poly.nvars, {0: {((), ()): poly}})

    def value(self, k, es, fs):
        table = self.components.get(k)
        if table is None:
            return SymPoly.zero(self.nvars)
        return table.get((tuple(es), tuple(sorted(fs)))) or SymPoly.zero(self.nvars)

    def is_zero(self):
        return not self.components

    def scale(self, factor):
        factor = Fraction(factor)
        if factor == 0:
            return Cochain.zero(self.degree, self.nvars)
        comps = {k: {key: v.scale(factor) for key, v in table.items()}
                 for k, table in self.components.items()}
        return Cochain(self.degree, self.nvars, comps)

    def __add__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if self.nvars != other.nvars:
            raise CochainShapeError("cannot add cochains over different centers")
        if self.degree != other.degree:
            # the zero cochain sits in every degree (brackets of low-degree
            # cochains land there with a clamped degree)
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise CochainShapeError("cannot add nonzero cochains of different degree")
        comps = {k: dict(table) for k, table in self.components.items()}
        for k, table in other.components.items():
            mine = comps.setdefault(k, {})
            for key, value in table.items():
                mine[key] = mine[key] + value if key in mine else value
        return Cochain(self.degree, self.nvars, comps)

    def __sub__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.degree == other.degree and self.nvars == other.nvars
                and self.components == other.components)

    def __hash__(self):
        if self._hash is None:
            frozen = tuple(sorted(
                (k, key, value) for k, table in self.components.items()
                for key, value in table.items()))
            self._hash = hash((self.degree, self.nvars, frozen))
        return self._hash

    def __repr__(self):
        entries = sum(len(t) for t in self.components.values())
        return f"Cochain(degree={self.degree}, entries={entries})"


# -- shuffles ------------------------------------------------------------------


def position_splits(n, p):
    """All splits of positions 0..n-1 into an ordered p-subset and its
    complement, lexicographically; these enumerate the (p, n-p) shuffles."""
    universe = range(n)
    for left in combinations(universe, p):
        chosen = set(left)
        right = tuple(i for i in universe if i not in chosen)
        yield left, right


def split_sign(left, right):
    """Sign of the permutation (left + right) of 0..n-1, both halves ascending."""
    inversions = sum(1 for s in left for t in right if s > t)
    return -1 if inversions % 2 else 1


# -- enumeration helpers -------------------------------------------------------


def component_keys(ctx, degree, k):
    nl = degree - 2 * k
    for es in product(range(ctx.dim), repeat=nl):
        for fs in combinations_with_replacement(range(ctx.zdim), k):
            yield es, fs


def _accumulate(acc, poly, factor=1):
    if poly.is_zero() or factor == 0:
        return
    for mono, coeff in poly.items():
        total = acc.get(mono, 0) + coeff * factor
        if total == 0:
            acc.pop(mono, None)
        else:
            acc[mono] = total


def _flush(ctx, acc):
    return SymPoly(ctx.zdim, acc)


# -- validity ------------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)  # (k, position, es, fs, lhs, rhs)


def validate_cochain(ctx, omega):
    """Check weak skew-symmetry on every component, position and basis key."""
    violations = []
    n = omega.degree
    for k in range(n // 2 + 1):
        nl = n - 2 * k
        if nl < 2:
            break
        for es, fs in component_keys(ctx, n, k):
            for pos in range(nl - 1):
                if es[pos] > es[pos + 1]:
                    continue  # the swapped tuple carries the same equation
                swapped = es[:pos] + (es[pos + 1], es[pos]) + es[pos + 2:]
                lhs = omega.value(k, es, fs) + omega.value(k, swapped, fs)
                pair = ctx.algebra.pairing_poly_basis(es[pos], es[pos + 1])
                reduced = es[:pos] + es[pos + 2:]
                rhs = SymPoly.zero(ctx.zdim)
                for (r,), c in pair.items():
                    rhs = rhs + omega.value(k + 1, reduced, fs + (r,)).scale(-c)
                if lhs != rhs:
                    violations.append((k, pos, es, fs, lhs, rhs))
    return ValidationReport(ok=not violations, violations=violations)


# -- the differential ----------------------------------------------------------


def coboundary(ctx, omega, _flip_first_action_term=False):
    """d(omega) = d0(omega) + delta(omega), one degree up.

    The input must be a valid cochain (InvalidCochainError otherwise).
    `_flip_first_action_term` negates the action term at the first
    argument slot; it exists only so the verification suite can prove
    its own checks would catch a wrong sign.
    """
    report = validate_cochain(ctx, omega)
    if not report.ok:
        raise InvalidCochainError(report)
    return _coboundary_unchecked(ctx, omega, _flip_first_action_term)


def _coboundary_unchecked(ctx, omega, flip=False):
    n = omega.degree
    alg = ctx.algebra
    comps = {}
    for k in range((n + 1) // 2 + 1):
        nl = n + 1 - 2 * k
        if nl < 0:
            continue
        table = {}
        for es, fs in component_keys(ctx, n + 1, k):
            acc = {}
            if k <= n // 2:
                for a in range(nl):
                    rest = es[:a] + es[a + 1:]
                    sign = -1 if a % 2 else 1
                    if flip and a == 0:
                        sign = -sign
                    val = omega.value(k, rest, fs)
                    if not val.is_zero():
                        _accumulate(acc, alg.rho_basis(es[a], val), sign)
                for a in range(nl):
                    for b in range(a + 1, nl):
                        w = alg.table[es[a]][es[b]]
                        sign = 1 if a % 2 else -1  # one less than the action-term sign
                        for t, c in enumerate(w):
                            if c == 0:
                                continue
                            inserted = es[:a] + es[a + 1:b] + (t,) + es[b + 1:]
                            _accumulate(acc, omega.value(k, inserted, fs), sign * c)
            if k >= 1:
                for jpos in range(k):
                    fj = fs[jpos]
                    rest_fs = fs[:jpos] + fs[jpos + 1:]
                    zvec = alg.z_basis[fj]
                    for t, c in enumerate(zvec):
                        if c != 0:
                            _accumulate(acc, omega.value(k - 1, (t,) + es, rest_fs), c)
            if acc:
                table[(es, fs)] = _flush(ctx, acc)
        if table:
            comps[k] = table
    return Cochain(n + 1, ctx.zdim, comps)


@dataclass
class DSquaredReport:
    ok: bool
    first_nonzero: tuple = None  # (k, es, fs, value)


def d_squared_zero(ctx, omega):
    """Assert d(d(omega)) vanishes identically; report the first entry otherwise."""
    ddo = coboundary(ctx, coboundary(ctx, omega))
    for k in sorted(ddo.components):
        for key in sorted(ddo.components[k]):
            es, fs = key
            return DSquaredReport(ok=False, first_nonzero=(k, es, fs, ddo.components[k][key]))
    return DSquaredReport(ok=True)


# -- the product ----------------------------------------------------------------


def cup(ctx, omega, eta):
    """Graded product: double shuffle sum over argument splittings.

    The algebra arguments contribute the shuffle sign; the symmetric
    center arguments shuffle without sign.
    """
    if omega.nvars != ctx.zdim or eta.nvars != ctx.zdim:
        raise ContextMismatchError("cochains built over a different center basis")
    n, m = omega.degree, eta.degree
    total = n + m
    comps = {}
    for k in range(total // 2 + 1):
        table = {}
        for es, fs in component_keys(ctx, total, k):
            acc = {}
            for i in range(k + 1):
                j = k - i
                p, q = n - 2 * i, m - 2 * j
                if p < 0 or q < 0:
                    continue
                for left, right in position_splits(len(es), p):
                    sign = split_sign(left, right)
                    left_es = tuple(es[x] for x in left)
                    right_es = tuple(es[x] for x in right)
                    for fleft, fright in position_splits(k, i):
                        v1 = omega.value(i, left_es, tuple(fs[x] for x in fleft))
                        if v1.is_zero():
                            continue
                        v2 = eta.value(j, right_es, tuple(fs[x] for x in fright))
                        if v2.is_zero():
                            continue
                        _accumulate(acc, v1 * v2, sign)
            if acc:
                table[(es, fs)] = _flush(ctx, acc)
        if table:
            comps[k] = table
    return Cochain(total, ctx.zdim, comps)


# -- a basis of the space of valid cochains --------------------------------------


def cochain_space_basis(ctx, degree):
    """Deterministic basis of the degree-n valid cochains with scalar values.

    The weak skew-symmetry constraints are linear with rational
    coefficients, so the valid cochains with values in the ground field
    form the kernel of an explicit matrix; its reduced echelon basis is
    returned as honest cochains. Single-key indicator tables are NOT
    valid cochains in general, which is why the exhaustive d.d = 0 and
    product suites run over this basis instead.
    """
    from .linalg import kernel_basis

    keys = []
    index = {}
    for k in range(degree // 2 + 1):
        for es, fs in component_keys(ctx, degree, k):
            index[(k, es, fs)] = len(keys)
            keys.append((k, es, fs))
    rows = []
    for k in range(degree // 2 + 1):
        nl = degree - 2 * k
        if nl < 2:
            break
        for es, fs in component_keys(ctx, degree, k):
            for pos in range(nl - 1):
                if es[pos] > es[pos + 1]:
                    continue
                row = [Fraction(0)] * len(keys)
                swapped = es[:pos] + (es[pos + 1], es[pos]) + es[pos + 2:]
                row[index[(k, es, fs)]] += 1
                row[index[(k, swapped, fs)]] += 1
                pair = ctx.algebra.pairing_poly_basis(es[pos], es[pos + 1])
                reduced = es[:pos] + es[pos + 2:]
                for (r,), c in pair.items():
                    row[index[(k + 1, reduced, tuple(sorted(fs + (r,))))]] += c
                if any(v != 0 for v in row):
                    rows.append(row)
    basis = []
    for vec in kernel_basis(rows, len(keys)):
        comps = {}
        for (k, es, fs), c in zip(keys, vec):
            if c != 0:
                comps.setdefault(k, {})[(es, fs)] = SymPoly.constant(ctx.zdim, c)
        basis.append(Cochain(degree, ctx.zdim, comps))
    return basis


# -- the JSON file format ---------------------------------------------------------


def cochain_to_dict(omega):
    components = []
    for k in sorted(omega.components):
        entries = []
        for (es, fs) in sorted(omega.components[k]):
            entries.append({"es": list(es), "fs": list(fs),
                            "value": omega.components[k][(es, fs)].render()})
        components.append({"k": k, "entries": entries})
    return {"degree": omega.degree, "components": components}


def cochain_from_dict(ctx, data):
    if not isinstance(data, dict) or not isinstance(data.get("degree"), int):
        raise CochainFormatError("cochain file needs an integer 'degree'")
    degree = data["degree"]
    comps = {}
    for block in data.get("components", []):
        try:
            k = block["k"]
            entries = block["entries"]
        except (KeyError, TypeError) as exc:
            raise CochainFormatError(f"bad component block {block!r}") from exc
        table = comps.setdefault(k, {})
        for entry in entries:
            try:
                es = tuple(entry["es"])
                fs = tuple(entry["fs"])
                value = parse_sympoly(ctx.zdim, entry["value"])
            except (KeyError, TypeError, SymPolyParseError) as exc:
                raise CochainFormatError(f"bad cochain entry {entry!r}") from exc
            if any(not (0 <= i < ctx.dim) for i in es):
                raise CochainFormatError(f"algebra index out of range in {entry!r}")
            if any(not (0 <= r < ctx.zdim) for r in fs):
                raise CochainFormatError(f"center index out of range in {entry!r}")
            key = (es, tuple(sorted(fs)))
            table[key] = table[key] + value if key in table else value
    try:
        return Cochain(degree, ctx.zdim, comps)
    except (CochainShapeError, TypeError) as exc:
        raise CochainFormatError(str(exc)) from exc


def load_cochain(ctx, path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return cochain_from_dict(ctx, data)


def save_cochain(omega, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cochain_to_dict(omega), fh, indent=2)
        fh.write("\n")
