"""Grading groups: finitely generated abelian groups in invariant-factor
normal form, finite Cayley-table groups, and integer Smith normal form."""

import itertools
from math import gcd


class GroupError(ValueError):
    pass


def _identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """Smith normal form of an integer matrix.

    Returns (D, U, V) with D = U @ M @ V, U and V unimodular and the diagonal
    of D nonnegative with successive divisibility d1 | d2 | ...
    """
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    A = [list(row) for row in M]
    U = _identity_matrix(nrows)
    V = _identity_matrix(ncols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row_i += c * row_j
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]

    def add_col(i, j, c):  # col_i += c * col_j
        for row in A:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    def find_pivot(t):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(nrows, ncols):
        pos = find_pivot(t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            dirty = False
            for i in range(t + 1, nrows):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty and all(A[i][t] == 0 for i in range(t + 1, nrows)) \
                    and all(A[t][j] == 0 for j in range(t + 1, ncols)):
                # enforce the divisibility chain before moving on
                bad = next(((i, j) for i in range(t + 1, nrows)
                            for j in range(t + 1, ncols)
                            if A[i][j] % A[t][t] != 0), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    return A, U, V


class GroupElement:
    """Element of an abelian or Cayley-table group; immutable and hashable."""

    __slots__ = ("group", "coords")

    def __init__(self, group, coords):
        self.group = group
        self.coords = coords

    def __mul__(self, other):
        if other.group != self.group:
            raise GroupError("elements of different groups")
        return self.group._mul(self, other)

    def inv(self):
        return self.group._inv(self)

    def order(self):
        """Element order; None means infinite."""
        return self.group._order(self)

    def is_identity(self):
        return self == self.group.identity()

    def __eq__(self, other):
        return (isinstance(other, GroupElement)
                and other.group == self.group and other.coords == self.coords)

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.coords < other.coords

    def __repr__(self):
        return f"g{self.coords}"


class AbelianGroup:
    """Z^r x Z_{d1} x ... x Z_{ds} with d1 | d2 | ... (invariant factors)."""

    def __init__(self, free_rank=0, torsion=()):
        torsion = tuple(int(d) for d in torsion)
        if free_rank < 0:
            raise GroupError("free rank must be nonnegative")
        if any(d < 2 for d in torsion):
            raise GroupError("invariant factors must be >= 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a != 0:
                raise GroupError(f"invariant factors must divide successively: {torsion}")
        self.free_rank = free_rank
        self.torsion = torsion
        self.rank = free_rank + len(torsion)
        self.is_abelian = True

    def _reduce(self, coords):
        free = coords[:self.free_rank]
        tors = tuple(c % d for c, d in zip(coords[self.free_rank:], self.torsion))
        return tuple(free) + tors

    def element(self, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise GroupError(f"expected {self.rank} coordinates, got {len(coords)}")
        return GroupElement(self, self._reduce(coords))

    def identity(self):
        return GroupElement(self, (0,) * self.rank)

    def _mul(self, x, y):
        return GroupElement(self, self._reduce(tuple(a + b for a, b in zip(x.coords, y.coords))))

    def _inv(self, x):
        return GroupElement(self, self._reduce(tuple(-a for a in x.coords)))

    def _order(self, x):
        if any(c != 0 for c in x.coords[:self.free_rank]):
            return None
        n = 1
        for c, d in zip(x.coords[self.free_rank:], self.torsion):
            k = d // gcd(d, c) if c else 1
            n = n * k // gcd(n, k)
        return n

    def order(self):
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def elements(self):
        if self.free_rank:
            raise GroupError("cannot enumerate an infinite group")
        for coords in itertools.product(*(range(d) for d in self.torsion)):
            yield GroupElement(self, coords)

    def descriptor(self):
        return {"abelian": {"free_rank": self.free_rank, "torsion": list(self.torsion)}}

    def __eq__(self, other):
        return (isinstance(other, AbelianGroup)
                and other.free_rank == self.free_rank and other.torsion == self.torsion)

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    def __repr__(self):
        parts = ["Z"] * self.free_rank + [f"Z_{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "1"


class CayleyGroup:
    """Finite group given by an m x m multiplication table of element indices."""

    def __init__(self, table):
        table = tuple(tuple(int(v) for v in row) for row in table)
        m = len(table)
        if any(len(row) != m for row in table):
            raise GroupError("Cayley table must be square")
        full = set(range(m))
        for row in table:
            if set(row) != full:
                raise GroupError("Cayley table rows must be permutations")
        for j in range(m):
            if {row[j] for row in table} != full:
                raise GroupError("Cayley table columns must be permutations")
        ident = next((e for e in range(m)
                      if all(table[e][x] == x and table[x][e] == x for x in range(m))), None)
        if ident is None:
            raise GroupError("Cayley table has no identity element")
        for x in range(m):
            if not any(table[x][y] == ident and table[y][x] == ident for y in range(m)):
                raise GroupError(f"element {x} has no inverse")
        for a in range(m):
            for b in range(m):
                for c in range(m):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise GroupError(f"table is not associative at ({a},{b},{c})")
        self.table = table
        self.size = m
        self._identity = ident
        self.is_abelian = all(table[a][b] == table[b][a]
                              for a in range(m) for b in range(m))

    def element(self, i):
        if not 0 <= i < self.size:
            raise GroupError(f"index {i} out of range")
        return GroupElement(self, i)

    def identity(self):
        return GroupElement(self, self._identity)

    def _mul(self, x, y):
        return GroupElement(self, self.table[x.coords][y.coords])

    def _inv(self, x):
        for y in range(self.size):
            if self.table[x.coords][y] == self._identity:
                return GroupElement(self, y)
        raise GroupError("no inverse found")  # unreachable after validation

    def _order(self, x):
        n, acc = 1, x.coords
        while acc != self._identity:
            acc = self.table[acc][x.coords]
            n += 1
        return n

    def order(self):
        return self.size

    def elements(self):
        for i in range(self.size):
            yield GroupElement(self, i)

    def descriptor(self):
        return {"cayley": [list(row) for row in self.table]}

    def __eq__(self, other):
        return isinstance(other, CayleyGroup) and other.table == self.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"CayleyGroup(order {self.size})"


def is_commutative_subset(elems):
    """True iff all pairwise products in the set commute."""
    elems = list(elems)
    if not elems:
        raise GroupError("empty subset")
    group = elems[0].group
    if any(e.group != group for e in elems):
        raise GroupError("elements of different groups")
    if getattr(group, "is_abelian", False):
        return True
    return all(x * y == y * x for x in elems for y in elems)


def normalized_from_presentation(ngens, relations):
    """Quotient Z^ngens by the rows of `relations`, in normal form.

    Returns (group, project) where project maps an integer coordinate vector
    of length ngens to its class in the normalized group.
    """
    if not relations:
        group = AbelianGroup(free_rank=ngens)
        return group, lambda coords: group.element(tuple(coords))
    D, _U, V = smith_normal_form([list(r) for r in relations])
    t = len(relations)
    factors = [D[i][i] if i < t else 0 for i in range(ngens)]
    free_cols = [i for i, d in enumerate(factors) if d == 0]
    tors_cols = [i for i, d in enumerate(factors) if d >= 2]
    group = AbelianGroup(free_rank=len(free_cols),
                         torsion=[factors[i] for i in tors_cols])

    def project(coords):
        y = [sum(coords[i] * V[i][j] for i in range(ngens)) for j in range(ngens)]
        return group.element(tuple(y[i] for i in free_cols) + tuple(y[i] for i in tors_cols))

    return group, project


def quotient_by(group, h):
    """Quotient of an abelian group by an order-2 element.

    Returns (quotient, projection) with projection a surjective homomorphism
    whose kernel is {1, h}.
    """
    if not isinstance(group, AbelianGroup):
        raise GroupError("quotient_by requires an abelian group")
    if h.group != group:
        raise GroupError("element not in group")
    if h.order() != 2:
        raise GroupError(f"element must have order 2, has order {h.order()}")
    k = group.rank
    relations = []
    for j, d in enumerate(group.torsion):
        row = [0] * k
        row[group.free_rank + j] = d
        relations.append(row)
    relations.append(list(h.coords))
    quotient, project_ints = normalized_from_presentation(k, relations)

    def projection(x):
        if x.group != group:
            raise GroupError("element not in group")
        return project_ints(list(x.coords))

    return quotient, projection
