"""Exact dense linear algebra over a field object (Gaussian elimination)."""


def rref(rows, field):
    """Reduced row echelon form; returns (rows, pivot_columns) with zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != field.zero), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != field.zero:
                f = m[i][c]
                m[i] = [field.sub(m[i][j], field.mul(f, m[r][j])) for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def invert_matrix(rows, field):
    """Inverse of a square matrix, or None if singular."""
    n = len(rows)
    aug = [list(rows[i]) + [field.one if j == i else field.zero for j in range(n)]
           for i in range(n)]
    reduced, pivots = rref(aug, field)
    if pivots != list(range(n)):
        return None
    return [tuple(row[n:]) for row in reduced]


def mat_vec(rows, vec, field):
    return tuple(
        _dot(row, vec, field) for row in rows
    )


def _dot(row, vec, field):
    acc = field.zero
    for a, b in zip(row, vec):
        if a != field.zero and b != field.zero:
            acc = field.add(acc, field.mul(a, b))
    return acc


def mat_mul(a, b, field):
    bt = list(zip(*b))
    return [tuple(_dot(row, col, field) for col in bt) for row in a]


def in_row_space(vec, basis_rref, field):
    """Membership test against a basis already in RREF (with its pivot columns)."""
    rows, pivots = basis_rref
    v = list(vec)
    for row, p in zip(rows, pivots):
        if v[p] != field.zero:
            f = v[p]
            v = [field.sub(v[j], field.mul(f, row[j])) for j in range(len(v))]
    return all(x == field.zero for x in v)
