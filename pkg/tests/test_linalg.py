from fractions import Fraction
from random import Random

from leibniz_complex.linalg import LinearSolver, kernel_basis, matvec, rref

F = Fraction


def test_rref_known_matrix():
    rows, pivots = rref([[2, 4], [1, 2]])
    assert pivots == [0]
    assert rows[0] == [F(1), F(2)]
    assert rows[1] == [F(0), F(0)]


def test_kernel_of_sum_functional():
    assert kernel_basis([[1, 1]], 2) == [[F(1), F(-1)]]


def test_kernel_empty_matrix_is_identity():
    basis = kernel_basis([], 3)
    assert len(basis) == 3
    assert basis[0][0] == 1 and basis[1][1] == 1 and basis[2][2] == 1


def test_kernel_full_rank_is_trivial():
    assert kernel_basis([[1, 0], [0, 1]], 2) == []


def test_kernel_vectors_annihilate():
    rng = Random(3)
    for _ in range(25):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        matrix = [[F(rng.randint(-3, 3)) for _ in range(ncols)] for _ in range(nrows)]
        for vec in kernel_basis(matrix, ncols):
            assert all(v == 0 for v in matvec(matrix, vec))


def test_solver_roundtrip_and_membership():
    rng = Random(5)
    for _ in range(25):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        matrix = [[F(rng.randint(-3, 3)) for _ in range(ncols)] for _ in range(nrows)]
        solver = LinearSolver(matrix, ncols)
        x = [F(rng.randint(-3, 3)) for _ in range(ncols)]
        b = matvec(matrix, x)
        got = solver.solve(b)
        assert got is not None
        assert matvec(matrix, got) == b


def test_solver_rejects_outside_image():
    solver = LinearSolver([[1, 0], [1, 0]], 2)
    assert solver.solve([F(1), F(2)]) is None
    assert solver.contains([F(1), F(1)])


def test_solver_column_order_changes_section_not_image():
    matrix = [[1, 1]]
    first = LinearSolver(matrix, 2)
    last = LinearSolver(matrix, 2, column_order=[1, 0])
    b = [F(3)]
    xf, xl = first.solve(b), last.solve(b)
    assert matvec(matrix, xf) == b and matvec(matrix, xl) == b
    assert xf != xl  # different sections of the same map


def test_solver_section_is_linear():
    rng = Random(11)
    matrix = [[F(rng.randint(-2, 2)) for _ in range(4)] for _ in range(3)]
    solver = LinearSolver(matrix, 4)
    x1 = [F(rng.randint(-2, 2)) for _ in range(4)]
    x2 = [F(rng.randint(-2, 2)) for _ in range(4)]
    b1, b2 = matvec(matrix, x1), matvec(matrix, x2)
    s1, s2 = solver.solve(b1), solver.solve(b2)
    combined = solver.solve([a + b for a, b in zip(b1, b2)])
    assert combined == [a + b for a, b in zip(s1, s2)]
