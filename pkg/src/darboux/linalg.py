"""Exact linear algebra over the coefficient tower.

Elimination is fraction-free in the Bareiss sense (cross-multiplication
with exact division by the previous pivot) to keep intermediate entries
small; pivots are chosen by smallest symbolic size with a deterministic
tie-break, so runs are reproducible bit for bit.
"""

from __future__ import annotations


def nullspace(rows, tower):
    """Basis of the right nullspace of a matrix of FieldElements.

    Each basis vector is normalized so that its first nonzero entry is 1;
    vectors are ordered by their free column.  Returns [] for injective
    matrices and the identity-like basis for a zero matrix.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    m = [list(r) for r in rows]
    nrows = len(m)
    one = tower.one()
    zero = tower.zero()

    pivot_cols = []
    pivot_rows = []
    used = [False] * nrows
    prev = one
    for _ in range(min(nrows, ncols)):
        best = None
        for j in range(ncols):
            if j in pivot_cols:
                continue
            for i in range(nrows):
                if used[i] or m[i][j].is_zero():
                    continue
                key = (m[i][j].size(), j, i)
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            break
        _, pi, pj = best
        used[pi] = True
        pivot_rows.append(pi)
        pivot_cols.append(pj)
        piv = m[pi][pj]
        for i in range(nrows):
            if used[i] or m[i][pj].is_zero():
                continue
            fac = m[i][pj]
            for j in range(ncols):
                if j == pj:
                    m[i][j] = zero
                else:
                    m[i][j] = (piv * m[i][j] - fac * m[pi][j]) / prev
        prev = piv

    free_cols = [j for j in range(ncols) if j not in pivot_cols]
    if not free_cols:
        return []

    # back-substitute through the pivot rows (already mutually eliminated
    # in the columns processed later; solve in reverse pivot order)
    basis = []
    order = list(zip(pivot_rows, pivot_cols))
    for fc in free_cols:
        vec = [zero] * ncols
        vec[fc] = one
        for pi, pj in reversed(order):
            acc = zero
            for j in range(ncols):
                if j != pj and not vec[j].is_zero() and not m[pi][j].is_zero():
                    acc = acc + m[pi][j] * vec[j]
            vec[pj] = -acc / m[pi][pj]
        # normalize: first nonzero entry becomes 1
        lead = next(c for c in vec if not c.is_zero())
        inv = lead.inverse()
        basis.append([c * inv for c in vec])
    return basis


def matvec(rows, vec, tower):
    out = []
    for r in rows:
        acc = tower.zero()
        for c, v in zip(r, vec):
            if not (c.is_zero() or v.is_zero()):
                acc = acc + c * v
        out.append(acc)
    return out
