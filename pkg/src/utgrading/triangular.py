"""The algebra of n x n upper triangular matrices over an exact field.

Entries are stored packed (row-major over cells (i, j) with 1 <= i <= j <= n),
which is also the coordinate order used for the matrix-unit basis everywhere
else in the package.
"""

import itertools


class NotInvertible(ValueError):
    pass


ASSOCIATIVE = "assoc"
LIE = "lie"
JORDAN = "jordan"
PRODUCT_KINDS = (ASSOCIATIVE, LIE, JORDAN)


def packed_cells(n):
    """Cell order (i, j), 1-based, matching the packed entry layout."""
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def packed_index(n, i, j):
    # row i holds n - i + 1 entries starting at column i
    return (i - 1) * n - (i - 1) * (i - 2) // 2 + (j - i)


def dimension(n):
    return n * (n + 1) // 2


class TriMatrix:
    """Immutable upper triangular matrix with exact entries."""

    __slots__ = ("n", "field", "entries")

    def __init__(self, n, field, entries):
        if n < 1:
            raise ValueError("n must be >= 1")
        entries = tuple(entries)
        if len(entries) != dimension(n):
            raise ValueError(f"expected {dimension(n)} entries, got {len(entries)}")
        self.n = n
        self.field = field
        self.entries = entries

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, n, field):
        return cls(n, field, (field.zero,) * dimension(n))

    @classmethod
    def identity(cls, n, field):
        return cls.diagonal(n, field, [field.one] * n)

    @classmethod
    def unit(cls, n, field, i, j):
        """The matrix unit e_ij."""
        entries = [field.zero] * dimension(n)
        entries[packed_index(n, i, j)] = field.one
        return cls(n, field, entries)

    @classmethod
    def diagonal(cls, n, field, values):
        entries = [field.zero] * dimension(n)
        for i, v in enumerate(values, start=1):
            entries[packed_index(n, i, i)] = v
        return cls(n, field, entries)

    @classmethod
    def from_rows(cls, field, rows):
        n = len(rows)
        entries = [rows[i - 1][j - 1] for (i, j) in packed_cells(n)]
        return cls(n, field, entries)

    # access ---------------------------------------------------------------

    def entry(self, i, j):
        if i > j:
            return self.field.zero
        return self.entries[packed_index(self.n, i, j)]

    def with_entry(self, i, j, value):
        idx = packed_index(self.n, i, j)
        entries = list(self.entries)
        entries[idx] = value
        return TriMatrix(self.n, self.field, entries)

    def is_zero(self):
        return all(v == self.field.zero for v in self.entries)

    def rows(self):
        f = self.field
        return [[self.entry(i, j) if i <= j else f.zero for j in range(1, self.n + 1)]
                for i in range(1, self.n + 1)]

    # arithmetic -----------------------------------------------------------

    def _check(self, other):
        if other.n != self.n or other.field != self.field:
            raise ValueError("size or field mismatch")

    def __add__(self, other):
        self._check(other)
        f = self.field
        return TriMatrix(self.n, f, (f.add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check(other)
        f = self.field
        return TriMatrix(self.n, f, (f.sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        f = self.field
        return TriMatrix(self.n, f, (f.neg(a) for a in self.entries))

    def scale(self, c):
        f = self.field
        return TriMatrix(self.n, f, (f.mul(c, a) for a in self.entries))

    def matmul(self, other):
        """Associative matrix product."""
        self._check(other)
        n, f = self.n, self.field
        out = [f.zero] * dimension(n)
        for i in range(1, n + 1):
            for k in range(i, n + 1):
                a = self.entry(i, k)
                if a == f.zero:
                    continue
                for j in range(k, n + 1):
                    b = other.entry(k, j)
                    if b != f.zero:
                        idx = packed_index(n, i, j)
                        out[idx] = f.add(out[idx], f.mul(a, b))
        return TriMatrix(n, f, out)

    def __eq__(self, other):
        return (isinstance(other, TriMatrix) and other.n == self.n
                and other.field == self.field and other.entries == self.entries)

    def __hash__(self):
        return hash((self.n, self.entries))

    def __repr__(self):
        f = self.field
        return "TriMatrix(" + "; ".join(
            " ".join(f.to_str(v) for v in row) for row in self.rows()) + ")"


def multiply(x, y, kind):
    """Product in the chosen structure: xy, [x,y] = xy - yx, or x o y = xy + yx."""
    if kind == ASSOCIATIVE:
        return x.matmul(y)
    if kind == LIE:
        return x.matmul(y) - y.matmul(x)
    if kind == JORDAN:
        return x.matmul(y) + y.matmul(x)
    raise ValueError(f"unknown product kind {kind!r}")


def inverse(x):
    """Inverse of an upper triangular matrix by back-substitution."""
    n, f = x.n, x.field
    for i in range(1, n + 1):
        if x.entry(i, i) == f.zero:
            raise NotInvertible(f"zero diagonal entry at ({i},{i})")
    b = [[f.zero] * (n + 1) for _ in range(n + 1)]  # 1-based
    for i in range(1, n + 1):
        b[i][i] = f.inv(x.entry(i, i))
    for i in range(n, 0, -1):
        for j in range(i + 1, n + 1):
            acc = f.zero
            for k in range(i + 1, j + 1):
                acc = f.add(acc, f.mul(x.entry(i, k), b[k][j]))
            b[i][j] = f.neg(f.mul(f.inv(x.entry(i, i)), acc))
    return TriMatrix(n, f, (b[i][j] for (i, j) in packed_cells(n)))


def is_invertible(x):
    return all(x.entry(i, i) != x.field.zero for i in range(1, x.n + 1))


def flip_t(x):
    """The involution t: e_ij -> e_{n-j+1, n-i+1} (flip along the antidiagonal)."""
    n = x.n
    return TriMatrix(n, x.field,
                     (x.entry(n - j + 1, n - i + 1) for (i, j) in packed_cells(n)))


def omega(x):
    """omega = -t, an automorphism of the Lie structure."""
    return -flip_t(x)


def radical_degree(x):
    """Largest m with x in J^m = span{e_ij : j - i >= m}; n for the zero matrix."""
    strips = [j - i for (i, j), v in zip(packed_cells(x.n), x.entries)
              if v != x.field.zero]
    return min(strips) if strips else x.n


def center_project(x, kind):
    """Coordinates of x modulo the center K*1 of the Lie structure.

    Normalizes the (n, n) entry to zero by subtracting a multiple of the
    identity, then drops that coordinate.
    """
    if kind != LIE:
        raise ValueError("center projection is defined for the Lie product only")
    c = x.entry(x.n, x.n)
    if c != x.field.zero:
        x = x - TriMatrix.identity(x.n, x.field).scale(c)
    return x.entries[:-1]


def symmetric_part_cells(n):
    """Orbit representatives of the flip on cells: (i, j) with i + j <= n + 1."""
    return [(i, j) for (i, j) in packed_cells(n) if i + j <= n + 1]


def all_matrices(n, field, cells=None, invertible=False):
    """Iterate matrices supported on the given cells (all cells by default).

    With invertible=True, diagonal cells run over units only and any diagonal
    cell missing from `cells` makes the output empty.
    """
    if cells is None:
        cells = packed_cells(n)
    if invertible and any((i, i) not in cells for i in range(1, n + 1)):
        return
    pools = []
    for (i, j) in cells:
        pools.append(field.units() if (invertible and i == j) else field.elements())
    zero_entries = [field.zero] * dimension(n)
    for combo in itertools.product(*pools):
        entries = list(zero_entries)
        for (i, j), v in zip(cells, combo):
            entries[packed_index(n, i, j)] = v
        yield TriMatrix(n, field, entries)
