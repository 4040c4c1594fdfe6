"""Finite-dimensional Leibniz algebras given by structure constants.

The product convention is left Leibniz throughout:

    e1 . (e2 . e3) = (e1 . e2) . e3 + e2 . (e1 . e3)

which makes every square e.e annihilate from the left. The left center
Z = {z : z . e = 0 for all e} is computed from the structure constants,
never user-supplied, and all symmetric products

    (e1, e2) = e1 . e2 + e2 . e1

are stored in coordinates over the computed echelon basis of Z. The
generators of the symmetric algebra S(Z) are identified with that basis,
in order, so z1 is the first echelon basis vector and so on.

Elements are plain coordinate tuples of Fractions over the chosen basis.
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .linalg import kernel_basis
from .sympoly import SymPoly, derivation_extend

ZERO = Fraction(0)


class IntegrityError(RuntimeError):
    """A cached structural fact (pairing in Z, closure of an ideal) failed."""


class PreconditionError(ValueError):
    """An operation's hypothesis does not hold for this algebra."""


class UnknownFixtureError(KeyError):
    pass


class InvalidAlgebraError(ValueError):
    """A structure-constant table violating the Leibniz identity."""

    def __init__(self, report):
        self.report = report
        first = report.violations[0][:3] if report.violations else None
        super().__init__(f"Leibniz identity fails, first violating triple: {first}")


@dataclass
class LeibnizReport:
    """Outcome of the exhaustive Leibniz-identity check over basis triples."""

    ok: bool
    violations: list = field(default_factory=list)  # (i, j, l, lhs, rhs)


def _vec(coords):
    return tuple(Fraction(c) for c in coords)


def vec_add(v, w):
    return tuple(a + b for a, b in zip(v, w))


def vec_sub(v, w):
    return tuple(a - b for a, b in zip(v, w))


def vec_scale(v, factor):
    factor = Fraction(factor)
    return tuple(factor * a for a in v)


def zero_vec(dim):
    return (ZERO,) * dim


def basis_vec(dim, i):
    return tuple(Fraction(1) if j == i else ZERO for j in range(dim))


class LeibnizAlgebra:
    """Structure constants plus eagerly computed left-center/pairing caches."""

    def __init__(self, labels, table):
        self.labels = tuple(str(s) for s in labels)
        self.dim = len(self.labels)
        if len(table) != self.dim or any(len(row) != self.dim for row in table):
            raise ValueError(f"structure table must be {self.dim}x{self.dim}")
        self.table = tuple(tuple(_vec(entry) for entry in row) for row in table)
        for row in self.table:
            for entry in row:
                if len(entry) != self.dim:
                    raise ValueError("structure constants have the wrong length")
        self.z_basis = self._left_center()
        self.zdim = len(self.z_basis)
        self._z_pivots = [_leading_index(v) for v in self.z_basis]
        # (e_i, e_j) in Z-coordinates; None marks entries outside span(Z),
        # which only happens for tables violating the Leibniz identity.
        self._pairing = [[self._try_z_coords(self.symmetric_product_vec(basis_vec(self.dim, i), basis_vec(self.dim, j)))
                          for j in range(self.dim)] for i in range(self.dim)]
        self._rho_base = [self._try_rho_base(i) for i in range(self.dim)]
        self.kernel_basis = self._pairing_kernel()

    # -- products ----------------------------------------------------------

    def basis_vector(self, i):
        return basis_vec(self.dim, i)

    def bracket(self, v, w):
        out = [ZERO] * self.dim
        for i, vi in enumerate(v):
            if vi == 0:
                continue
            for j, wj in enumerate(w):
                if wj == 0:
                    continue
                entry = self.table[i][j]
                f = vi * wj
                for t, c in enumerate(entry):
                    if c != 0:
                        out[t] += f * c
        return tuple(out)

    def symmetric_product_vec(self, v, w):
        return vec_add(self.bracket(v, w), self.bracket(w, v))

    # -- the left center and Z-coordinates ----------------------------------

    def _left_center(self):
        rows = []
        for j in range(self.dim):
            for t in range(self.dim):
                rows.append([self.table[i][j][t] for i in range(self.dim)])
        return tuple(tuple(v) for v in kernel_basis(rows, self.dim))

    def z_coords(self, v):
        """Coordinates of v over the echelon Z-basis; IntegrityError if v is not in Z."""
        coords = [v[p] for p in self._z_pivots]
        residual = list(v)
        for c, zvec in zip(coords, self.z_basis):
            if c != 0:
                residual = [a - c * b for a, b in zip(residual, zvec)]
        if any(a != 0 for a in residual):
            raise IntegrityError("vector outside the left center span")
        return tuple(coords)

    def _try_z_coords(self, v):
        try:
            return self.z_coords(v)
        except IntegrityError:
            return None

    def z_vector(self, zcoords):
        """Embed Z-coordinates back into L."""
        out = [ZERO] * self.dim
        for c, zvec in zip(zcoords, self.z_basis):
            if c != 0:
                for t, b in enumerate(zvec):
                    out[t] += c * b
        return tuple(out)

    # -- the symmetric product valued in S(Z) --------------------------------

    def pairing_z(self, v, w):
        """(v, w) in Z-coordinates."""
        out = [ZERO] * self.zdim
        for i, vi in enumerate(v):
            if vi == 0:
                continue
            for j, wj in enumerate(w):
                if wj == 0:
                    continue
                entry = self._pairing[i][j]
                if entry is None:
                    # broken table: recompute so the IntegrityError surfaces
                    return self.z_coords(self.symmetric_product_vec(v, w))
                f = vi * wj
                for r, c in enumerate(entry):
                    if c != 0:
                        out[r] += f * c
        return tuple(out)

    def symmetric_product(self, v, w):
        """Alias for the Z-coordinate pairing (raises IntegrityError when broken)."""
        return self.pairing_z(v, w)

    def pairing_poly(self, v, w):
        """(v, w) as a degree-1 element of S(Z)."""
        return SymPoly(self.zdim, {(r,): c for r, c in enumerate(self.pairing_z(v, w)) if c != 0})

    def pairing_poly_basis(self, i, j):
        entry = self._pairing[i][j]
        if entry is None:
            raise IntegrityError(f"pairing of basis elements {i},{j} lies outside the left center")
        return SymPoly(self.zdim, {(r,): c for r, c in enumerate(entry) if c != 0})

    # -- the action on S(Z) ---------------------------------------------------

    def _try_rho_base(self, i):
        base = []
        for zvec in self.z_basis:
            coords = self._try_z_coords(self.bracket(basis_vec(self.dim, i), zvec))
            if coords is None:
                return None
            base.append(SymPoly(self.zdim, {(r,): c for r, c in enumerate(coords) if c != 0}))
        return base

    def rho_basis(self, i, poly):
        """Action of basis element e_i on S(Z), extended as a derivation."""
        base = self._rho_base[i]
        if base is None:
            raise IntegrityError(f"e_{i} does not preserve the left center")
        return derivation_extend(base, poly)

    def rho(self, v, poly):
        result = SymPoly.zero(self.zdim)
        for i, vi in enumerate(v):
            if vi != 0:
                result = result + self.rho_basis(i, poly).scale(vi)
        return result

    # -- fatness and the quotient ---------------------------------------------

    def _pairing_kernel(self):
        rows = []
        for j in range(self.dim):
            for t in range(self.dim):
                rows.append([self.symmetric_product_vec(basis_vec(self.dim, i), basis_vec(self.dim, j))[t]
                             for i in range(self.dim)])
        return tuple(tuple(v) for v in kernel_basis(rows, self.dim))

    def pairing_kernel(self):
        return self.kernel_basis

    def is_fat(self):
        return not self.kernel_basis

    def two_sided_center(self):
        rows = []
        for j in range(self.dim):
            for t in range(self.dim):
                rows.append([self.table[i][j][t] for i in range(self.dim)])
                rows.append([self.table[j][i][t] for i in range(self.dim)])
        return tuple(tuple(v) for v in kernel_basis(rows, self.dim))

    def __repr__(self):
        return f"LeibnizAlgebra(dim={self.dim}, labels={list(self.labels)})"


def check_leibniz(algebra_or_table):
    """Exhaustively test the left Leibniz identity on basis triples."""
    algebra = algebra_or_table
    if not isinstance(algebra, LeibnizAlgebra):
        table = algebra_or_table
        algebra = LeibnizAlgebra([f"e{i+1}" for i in range(len(table))], table)
    violations = []
    dim = algebra.dim
    for i, j, l in product(range(dim), repeat=3):
        ei, ej, el = (basis_vec(dim, t) for t in (i, j, l))
        lhs = algebra.bracket(ei, algebra.bracket(ej, el))
        rhs = vec_add(algebra.bracket(algebra.bracket(ei, ej), el),
                      algebra.bracket(ej, algebra.bracket(ei, el)))
        if lhs != rhs:
            violations.append((i, j, l, lhs, rhs))
    return LeibnizReport(ok=not violations, violations=violations)


def left_center(algebra):
    return algebra.z_basis


def pairing_kernel(algebra):
    return algebra.kernel_basis


def is_fat(algebra):
    return algebra.is_fat()


def quotient_by_kernel(algebra):
    """The induced algebra on L/K for K the kernel of the symmetric product.

    Requires a trivial two-sided center. The quotient is realized on the
    standard basis vectors complementary to the pivot columns of K, so
    for block-built fixtures the projected structure constants are
    directly comparable to the block's own table.
    """
    if algebra.two_sided_center():
        raise PreconditionError("the two-sided center must be trivial to quotient by the pairing kernel")
    kernel = algebra.kernel_basis
    dim = algebra.dim
    for kvec in kernel:
        for i in range(dim):
            e = basis_vec(dim, i)
            for w in (algebra.bracket(e, kvec), algebra.bracket(kvec, e)):
                split = _complement_coords(kernel, w, dim)
                if split is None or any(c != 0 for c in split[1]):
                    raise IntegrityError("pairing kernel is not a two-sided ideal")
    pivots = [_leading_index(v) for v in kernel]
    comp = [i for i in range(dim) if i not in pivots]
    labels = [algebra.labels[i] for i in comp]
    table = []
    for i in comp:
        row = []
        for j in comp:
            w = algebra.bracket(basis_vec(dim, i), basis_vec(dim, j))
            split = _complement_coords(kernel, w, dim)
            if split is None:
                raise IntegrityError("bracket does not project onto the chosen complement")
            row.append(tuple(split[1]))
        table.append(row)
    quotient = LeibnizAlgebra(labels, table)
    report = check_leibniz(quotient)
    if not report.ok:
        raise IntegrityError("quotient table violates the Leibniz identity")
    return quotient


def _leading_index(v):
    return next(i for i, c in enumerate(v) if c != 0)


def _complement_coords(kernel, v, dim):
    """Split v = k + c with k in span(kernel), c over the non-pivot axes.

    Returns (kernel coords, complement coords) or None if the split fails.
    """
    pivots = [_leading_index(k) for k in kernel]
    residual = list(v)
    kcoords = []
    for p, kvec in zip(pivots, kernel):
        c = residual[p]
        kcoords.append(c)
        if c != 0:
            residual = [a - c * b for a, b in zip(residual, kvec)]
    comp = [i for i in range(dim) if i not in pivots]
    ccoords = [residual[i] for i in comp]
    for p in pivots:
        if residual[p] != 0:
            return None
    return kcoords, ccoords


# -- fixtures ----------------------------------------------------------------

_OMNI_RE = re.compile(r"^omni\((\d+)\)$")


def build_fixture(name):
    """Named test algebras: A3, O1, O2, AFF_O1, or omni(n)."""
    if name == "A3":
        dim = 3
        return LeibnizAlgebra(["e1", "e2", "e3"], [[zero_vec(dim)] * dim for _ in range(dim)])
    if name == "O1":
        table = [[zero_vec(2), basis_vec(2, 1)], [zero_vec(2), zero_vec(2)]]
        return LeibnizAlgebra(["a", "b"], table)
    if name == "O2":
        return _omni(2)
    if name == "AFF_O1":
        dim = 4
        table = [[zero_vec(dim) for _ in range(dim)] for _ in range(dim)]
        table[0][1] = basis_vec(dim, 1)                  # x.y = y
        table[1][0] = vec_scale(basis_vec(dim, 1), -1)   # y.x = -y
        table[2][3] = basis_vec(dim, 3)                  # a.b = b
        return LeibnizAlgebra(["x", "y", "a", "b"], table)
    match = _OMNI_RE.match(name)
    if match:
        return _omni(int(match.group(1)))
    raise UnknownFixtureError(name)


def _omni(n):
    """gl(n) + k^n with (A,u).(B,v) = ([A,B], Av)."""
    dim = n * n + n
    labels = [f"E{i+1}{j+1}" for i in range(n) for j in range(n)] + [f"u{i+1}" for i in range(n)]

    def eidx(i, j):
        return i * n + j

    def uidx(i):
        return n * n + i

    table = [[zero_vec(dim) for _ in range(dim)] for _ in range(dim)]
    for a, b, c, d in product(range(n), repeat=4):
        out = [ZERO] * dim
        if b == c:
            out[eidx(a, d)] += 1
        if d == a:
            out[eidx(c, b)] -= 1
        table[eidx(a, b)][eidx(c, d)] = tuple(out)
    for a, b, c in product(range(n), repeat=3):
        if b == c:
            table[eidx(a, b)][uidx(c)] = basis_vec(dim, uidx(a))
    return LeibnizAlgebra(labels, table)


FIXTURE_NAMES = ("A3", "O1", "O2", "AFF_O1")


# -- the JSON file format -----------------------------------------------------


class AlgebraFormatError(ValueError):
    """Structurally malformed algebra file (bad JSON shape, indices, coeffs)."""


def algebra_to_dict(algebra):
    brackets = []
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            entry = algebra.table[i][j]
            if any(c != 0 for c in entry):
                brackets.append({"i": i, "j": j, "coeffs": [str(c) for c in entry]})
    return {"dim": algebra.dim, "basis": list(algebra.labels), "brackets": brackets}


def algebra_from_dict(data):
    if not isinstance(data, dict):
        raise AlgebraFormatError("algebra file must hold a JSON object")
    try:
        dim = data["dim"]
        basis = data["basis"]
    except (KeyError, TypeError) as exc:
        raise AlgebraFormatError(f"missing algebra field: {exc}") from exc
    if not isinstance(dim, int) or dim <= 0:
        raise AlgebraFormatError("'dim' must be a positive integer")
    if not isinstance(basis, list) or len(basis) != dim:
        raise AlgebraFormatError("'basis' must list exactly dim labels")
    table = [[zero_vec(dim) for _ in range(dim)] for _ in range(dim)]
    for entry in data.get("brackets", []):
        try:
            i, j, coeffs = entry["i"], entry["j"], entry["coeffs"]
        except (KeyError, TypeError) as exc:
            raise AlgebraFormatError(f"bad bracket entry {entry!r}") from exc
        if not (isinstance(i, int) and 0 <= i < dim and isinstance(j, int) and 0 <= j < dim):
            raise AlgebraFormatError(f"bracket indices ({i},{j}) out of range")
        if not isinstance(coeffs, list) or len(coeffs) != dim:
            raise AlgebraFormatError(f"bracket ({i},{j}) needs exactly {dim} coefficients")
        try:
            table[i][j] = tuple(Fraction(str(c)) for c in coeffs)
        except (ValueError, ZeroDivisionError) as exc:
            raise AlgebraFormatError(f"bad coefficient in bracket ({i},{j}): {exc}") from exc
    algebra = LeibnizAlgebra(basis, table)
    report = check_leibniz(algebra)
    if not report.ok:
        raise InvalidAlgebraError(report)
    return algebra


def load_algebra(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return algebra_from_dict(data)


def save_algebra(algebra, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra_to_dict(algebra), fh, indent=2)
        fh.write("\n")
