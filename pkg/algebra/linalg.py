"""
Gaussian elimination over any exact field used in this project.

Entries may be Fractions, FieldElements, QuotientRingElements over a field,
or modular residues; only ring operations, truth testing and division by a
nonzero pivot are required.
"""

import logging

logger = logging.getLogger(__name__)


def row_reduce(rows, ncols, zero):
    """
    Reduced row echelon form.

    Args:
        rows (list[list]): The matrix, row by row.
        ncols (int): Number of columns.
        zero: Zero of the entry field.

    Returns:
        tuple: (reduced rows, pivot column indices).
    """
    matrix = [list(row) for row in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, len(matrix)) if matrix[r][col]), None)
        if pivot_row is None:
            continue
        matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
        inverse = (zero + 1) / matrix[rank][col]
        matrix[rank] = [entry * inverse for entry in matrix[rank]]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(matrix):
            break
    return matrix[:rank], pivots


def rank(rows, ncols, zero):
    return len(row_reduce(rows, ncols, zero)[1])


def nullspace(rows, ncols, zero):
    """
    A basis of {x : M x = 0}, one vector per free column.
    """
    reduced, pivots = row_reduce(rows, ncols, zero)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vector = [zero] * ncols
        vector[f] = zero + 1
        for row, p in zip(reduced, pivots):
            vector[p] = -row[f]
        basis.append(vector)
    logger.debug("nullspace of a %sx%s system has dimension %s", len(rows), ncols, len(basis))
    return basis


def solve(rows, rhs, zero):
    """
    One solution of M x = rhs, or None when the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = row_reduce(augmented, ncols + 1, zero)
    if ncols in pivots:
        return None
    solution = [zero] * ncols
    for row, p in zip(reduced, pivots):
        solution[p] = row[ncols]
    return solution
