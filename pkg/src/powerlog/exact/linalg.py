"""Exact Gaussian elimination over Q(i)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalars import QQ, to_scalar

__all__ = ["LinearSolution", "solve_linear_system", "solve_sparse"]


@dataclass(frozen=True)
class LinearSolution:
    """Verdict of an exact solve.

    ``consistent`` is False for an inconsistent system.  Otherwise
    ``solution`` is one particular solution (free variables set to zero)
    and ``kernel`` a basis of the homogeneous solution space.
    """

    consistent: bool
    solution: tuple | None = None
    kernel: tuple = field(default_factory=tuple)

    @property
    def unique(self) -> bool:
        return self.consistent and not self.kernel


def solve_linear_system(A, b) -> LinearSolution:
    """Solve ``A x = b`` for a dense matrix given as a list of rows."""
    nrows = len(A)
    if len(b) != nrows:
        raise ValueError("right-hand side length does not match the matrix")
    ncols = len(A[0]) if nrows else 0
    rows = []
    for r in A:
        if len(r) != ncols:
            raise ValueError("ragged matrix")
        rows.append({j: to_scalar(v) for j, v in enumerate(r) if v})
    return solve_sparse(rows, [to_scalar(v) for v in b], ncols)


def solve_sparse(rows, rhs, ncols: int) -> LinearSolution:
    """Gauss-Jordan elimination on rows stored as ``{column: value}`` dicts.

    The pivot row at each step is the remaining row with the smallest
    support, which keeps fill-in low; an already triangular system is
    reduced in time proportional to its number of nonzeros.
    """
    rows = [dict(r) for r in rows]
    rhs = list(rhs)
    col_rows: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            col_rows.setdefault(j, set()).add(i)

    active = {i for i, r in enumerate(rows) if r}
    pivots: dict[int, int] = {}  # column -> row
    while active:
        i = min(active, key=lambda k: (len(rows[k]), k))
        active.discard(i)
        row = rows[i]
        j = min(row)
        inv = 1 / row[j]
        if inv != 1:
            for c in row:
                row[c] = row[c] * inv
            rhs[i] = rhs[i] * inv
        pivots[j] = i
        for k in list(col_rows.get(j, ())):
            if k == i:
                continue
            other = rows[k]
            f = other.get(j)
            if not f:
                continue
            for c, v in row.items():
                nv = other.get(c, QQ(0)) - f * v
                if nv:
                    if c not in other:
                        col_rows.setdefault(c, set()).add(k)
                    other[c] = nv
                else:
                    if c in other:
                        del other[c]
                    col_rows[c].discard(k)
            rhs[k] = rhs[k] - f * rhs[i]
            if not other:
                active.discard(k)

    for i, r in enumerate(rows):
        if not r and rhs[i]:
            return LinearSolution(False)

    free = [j for j in range(ncols) if j not in pivots]
    x = [QQ(0)] * ncols
    for j, i in pivots.items():
        x[j] = rhs[i]
    kernel = []
    for f in free:
        v = [QQ(0)] * ncols
        v[f] = QQ(1)
        for j, i in pivots.items():
            c = rows[i].get(f)
            if c:
                v[j] = -c
        kernel.append(tuple(v))
    return LinearSolution(True, tuple(x), tuple(kernel))
