"""Exact linear algebra over rationals: RREF, kernels, and repeated solves.

Matrices are plain lists of lists of Fraction. Everything here is
deterministic: pivots are always the first usable column left to right,
so echelon bases and solutions are reproducible across runs.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rref(matrix):
    """Reduced row echelon form of a copy of `matrix`.

    Returns (rows, pivot_cols). Rows of the result below len(pivot_cols)
    are identically zero.
    """
    rows = [list(map(Fraction, row)) for row in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def kernel_basis(matrix, ncols):
    """Reduced echelon basis of {x : matrix @ x = 0} (rows of the result).

    `ncols` must be given explicitly so empty matrices work.
    """
    if not matrix:
        return [_unit(ncols, i) for i in range(ncols)]
    rows, pivots = rref(matrix)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [ZERO] * ncols
        vec[free] = ONE
        for r, c in enumerate(pivots):
            vec[c] = -rows[r][free]
        basis.append(vec)
    if not basis:
        return []
    echelon, _ = rref(basis)
    return [row for row in echelon if any(v != 0 for v in row)]


def _unit(n, i):
    vec = [ZERO] * n
    vec[i] = ONE
    return vec


class LinearSolver:
    """Factorization of A for repeated exact solves of A @ x = b.

    Gauss-Jordan is run once on A, the row operations are recorded in a
    square transform E with E @ A = rref(A). solve() then costs one
    matrix-vector product plus a consistency check. Free variables are
    set to zero, which makes the solution map linear on the column space
    (a genuine section of A).
    """

    def __init__(self, matrix, ncols, column_order=None):
        self.nrows = len(matrix)
        self.ncols = ncols
        self.column_order = list(column_order) if column_order is not None else list(range(ncols))
        augmented = []
        for i, row in enumerate(matrix):
            perm = [row[c] for c in self.column_order]
            augmented.append(perm + _unit(self.nrows, i))
        if augmented:
            reduced, pivots = rref(augmented)
            self.rows = [row[:ncols] for row in reduced]
            self.transform = [row[ncols:] for row in reduced]
            self.pivots = [p for p in pivots if p < ncols]
        else:
            self.rows = []
            self.transform = []
            self.pivots = []
        self.rank = len(self.pivots)

    def solve(self, b):
        """One solution of A @ x = b, or None if b is outside the image."""
        if len(b) != self.nrows:
            raise ValueError(f"rhs has length {len(b)}, expected {self.nrows}")
        x = [ZERO] * self.ncols
        for r in range(self.nrows):
            c = ZERO
            for t, bv in zip(self.transform[r], b):
                if t != 0 and bv != 0:
                    c += t * bv
            if r < self.rank:
                x[self.column_order[self.pivots[r]]] = c
            elif c != 0:
                return None
        return x

    def contains(self, b):
        return self.solve(b) is not None


def matvec(matrix, vec):
    return [sum((a * v for a, v in zip(row, vec) if a != 0 and v != 0), ZERO) for row in matrix]
