"""Dense cross-check helpers shared by the solver and acceptance tests.

Deliberately reimplements the interior-dimension computation on top of the
dense integer Gauss-Jordan oracle so it shares no sparse bookkeeping with
the production path.
"""
from fractions import Fraction

from lieverify import linalg
from lieverify.derivations import _is_core, assemble_system

F = Fraction


def dense_rank(rows):
    """Row rank over the rationals by plain Gaussian elimination."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [v / lead for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def oracle_interior_dim(spec, g2, window, delta=F(1, 2)):
    """Interior dimension via the dense nullspace oracle."""
    unknowns, rows = assemble_system(spec, g2, window, delta)
    n = len(unknowns)
    dense = [[row.get(c, F(0)) for c in range(n)] for row in rows]
    vectors = linalg.dense_nullspace(dense, n)
    core_cols = [i for i, u in enumerate(unknowns) if _is_core(spec, u, window.n_core2)]
    projections = [[v[c] for c in core_cols] for v in vectors]
    return dense_rank(projections)
