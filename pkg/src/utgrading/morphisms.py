"""Linear endomorphisms of UT_n over the matrix-unit basis: inner maps,
the Lie translations psi_s, the flip t and omega, and the graded / diagonal /
involution predicates."""

from collections import namedtuple

from . import linalg
from .triangular import (
    ASSOCIATIVE,
    NotInvertible,
    TriMatrix,
    dimension,
    flip_t,
    inverse,
    is_invertible,
    multiply,
    omega,
    packed_cells,
    packed_index,
)


class MorphismError(ValueError):
    pass


class LinearMap:
    """Linear endomorphism of UT_n stored column-wise over the unit basis."""

    __slots__ = ("n", "field", "cols", "provenance", "source")

    def __init__(self, n, field, cols, provenance="raw", source=None):
        cols = tuple(tuple(c) for c in cols)
        if len(cols) != dimension(n):
            raise MorphismError("wrong number of columns")
        self.n = n
        self.field = field
        self.cols = cols
        self.provenance = provenance
        self.source = source

    @classmethod
    def from_function(cls, n, field, fn, provenance="raw", source=None):
        cols = [fn(TriMatrix.unit(n, field, i, j)).entries for (i, j) in packed_cells(n)]
        return cls(n, field, cols, provenance, source)

    @classmethod
    def identity(cls, n, field):
        d = dimension(n)
        cols = [[field.one if r == k else field.zero for r in range(d)] for k in range(d)]
        return cls(n, field, cols, "identity")

    def apply(self, x):
        f = self.field
        d = len(self.cols)
        out = [f.zero] * d
        for k, c in enumerate(x.entries):
            if c == f.zero:
                continue
            col = self.cols[k]
            for r in range(d):
                if col[r] != f.zero:
                    out[r] = f.add(out[r], f.mul(c, col[r]))
        return TriMatrix(self.n, f, out)

    def compose(self, other):
        """self after other."""
        if other.n != self.n or other.field != self.field:
            raise MorphismError("size or field mismatch")
        cols = [self.apply(TriMatrix(self.n, self.field, col)).entries
                for col in other.cols]
        return LinearMap(self.n, self.field, cols, "composite")

    def scale(self, c):
        f = self.field
        cols = [[f.mul(c, v) for v in col] for col in self.cols]
        return LinearMap(self.n, f, cols, "composite")

    def is_invertible(self):
        rows = [tuple(col[r] for col in self.cols) for r in range(len(self.cols))]
        return linalg.invert_matrix(rows, self.field) is not None

    def key(self):
        """Hashable action key; equal keys mean equal maps."""
        return self.cols

    def __eq__(self, other):
        return (isinstance(other, LinearMap) and other.n == self.n
                and other.field == self.field and other.cols == self.cols)

    def __hash__(self):
        return hash(self.cols)

    def __repr__(self):
        return f"LinearMap({self.provenance}, n={self.n})"


def compose(f, g):
    return f.compose(g)


def inner(a):
    """The inner automorphism x -> a x a^{-1} via the expansion
    a e_ij a^{-1} = sum_{l,m} a_li b_jm e_lm with b = a^{-1}."""
    if not is_invertible(a):
        raise NotInvertible("inner automorphism needs an invertible matrix")
    n, f = a.n, a.field
    b = inverse(a)
    cols = []
    for (i, j) in packed_cells(n):
        col = [f.zero] * dimension(n)
        for l in range(1, i + 1):
            ali = a.entry(l, i)
            if ali == f.zero:
                continue
            for m in range(j, n + 1):
                bjm = b.entry(j, m)
                if bjm != f.zero:
                    idx = packed_index(n, l, m)
                    col[idx] = f.add(col[idx], f.mul(ali, bjm))
        cols.append(col)
    return LinearMap(n, f, cols, "inner", source=a)


def psi(n, field, s):
    """The Lie translation e_ij -> e_ij + delta_ij s_i * 1 for s with
    s_1 + ... + s_n + 1 != 0."""
    s = list(s)
    if len(s) != n:
        raise MorphismError(f"s must have length {n}")
    total = field.zero
    for v in s:
        total = field.add(total, v)
    total = field.add(total, field.one)
    if total == field.zero:
        raise MorphismError(
            "sum of entries plus one vanishes (%s); psi_s is singular" % field.to_str(total))
    one = TriMatrix.identity(n, field)

    def fn(e):
        for i in range(1, n + 1):
            if e == TriMatrix.unit(n, field, i, i):
                return e + one.scale(s[i - 1])
        return e

    return LinearMap.from_function(n, field, fn, "psi", source=tuple(s))


def flip_map(n, field):
    return LinearMap.from_function(n, field, flip_t, "flip_t")


def omega_map(n, field):
    return LinearMap.from_function(n, field, omega, "omega")


def is_automorphism(f, kind):
    """True iff f is bijective and multiplicative for the given product."""
    if not f.is_invertible():
        return False
    n, field = f.n, f.field
    units = [TriMatrix.unit(n, field, i, j) for (i, j) in packed_cells(n)]
    images = [f.apply(u) for u in units]
    for x, fx in zip(units, images):
        for y, fy in zip(units, images):
            if f.apply(multiply(x, y, kind)) != multiply(fx, fy, kind):
                return False
    return True


def is_graded(f, grading):
    """True iff f maps every homogeneous component into itself."""
    for vec, g in zip(grading.basis(), grading.degrees):
        image = f.apply(vec)
        if image.is_zero():
            continue
        coords = grading.coordinates(image)
        if any(c != grading.field.zero and grading.degrees[idx] != g
               for idx, c in enumerate(coords)):
            return False
    return True


def as_self_equivalence(f, grading):
    """The support permutation alpha with f(A_g) = A_{alpha(g)}, or None."""
    field = grading.field
    alpha = {}
    for g, indices in grading.components().items():
        targets = set()
        for idx in indices:
            image = f.apply(grading.basis()[idx])
            if image.is_zero():
                return None
            coords = grading.coordinates(image)
            targets |= {grading.degrees[k]
                        for k, c in enumerate(coords) if c != field.zero}
        if len(targets) != 1:
            return None
        alpha[g] = targets.pop()
    if len(set(alpha.values())) != len(alpha):
        return None
    return alpha


def as_diagonal(f, grading):
    """The scalars lambda_g with f acting as lambda_g on A_g, or None."""
    field = grading.field
    lambdas = {}
    for g, indices in grading.components().items():
        lam = None
        for idx in indices:
            vec = grading.basis()[idx]
            image = f.apply(vec)
            coords_vec = grading.coordinates(vec)
            coords_img = grading.coordinates(image)
            # image must be a scalar multiple of vec
            ratio = None
            for cv, ci in zip(coords_vec, coords_img):
                if cv == field.zero:
                    if ci != field.zero:
                        return None
                    continue
                r = field.div(ci, cv)
                if ratio is None:
                    ratio = r
                elif ratio != r:
                    return None
            if ratio is None or ratio == field.zero:
                return None
            if lam is None:
                lam = ratio
            elif lam != ratio:
                return None
        lambdas[g] = lam
    return lambdas


def make_involution(a):
    """The involution x -> a t(x) a^{-1}; requires t(a) = a or t(a) = -a."""
    if a.field.characteristic == 2:
        raise MorphismError("involutions require characteristic != 2")
    ta = flip_t(a)
    if ta != a and ta != -a:
        raise MorphismError("matrix must satisfy t(a) = a or t(a) = -a")
    f = inner(a).compose(flip_map(a.n, a.field))
    return LinearMap(a.n, a.field, f.cols, "involution", source=a)


def is_involution(f):
    """f^2 = id and f(xy) = f(y) f(x) on all basis pairs."""
    if f.compose(f) != LinearMap.identity(f.n, f.field):
        return False
    n, field = f.n, f.field
    units = [TriMatrix.unit(n, field, i, j) for (i, j) in packed_cells(n)]
    images = [f.apply(u) for u in units]
    for x, fx in zip(units, images):
        for y, fy in zip(units, images):
            if f.apply(multiply(x, y, ASSOCIATIVE)) != multiply(fy, fx, ASSOCIATIVE):
                return False
    return True


def is_graded_involution(f, grading):
    return is_involution(f) and is_graded(f, grading)


OmegaCompat = namedtuple("OmegaCompat", ["kind", "k"])


def omega_compatibility(a):
    """Classify a against omega: commuting(k) iff a w(a) = w(a) a = -k 1,
    anticommuting(k) iff w(a) a = -a w(a) = -k 1, else neither."""
    if not is_invertible(a):
        raise NotInvertible("omega compatibility is defined for invertible matrices")
    n, f = a.n, a.field
    wa = omega(a)
    left = a.matmul(wa)
    right = wa.matmul(a)

    def scalar_of(m):
        # m == c * identity?
        c = m.entry(1, 1)
        return c if m == TriMatrix.identity(n, f).scale(c) else None

    cl, cr = scalar_of(left), scalar_of(right)
    if cl is not None and cr is not None and cl != f.zero:
        if cl == cr:
            return OmegaCompat("commuting", f.neg(cl))
        if cl == f.neg(cr):
            return OmegaCompat("anticommuting", f.neg(cr))
    return OmegaCompat("neither", None)
