"""Construction and validation of elementary and MT gradings on the upper
triangular matrices."""

from .groups import GroupError, normalized_from_presentation, quotient_by
from .triangular import TriMatrix, dimension, multiply, packed_cells

ELEMENTARY = "elementary"
MT = "mt"


class GradingError(ValueError):
    pass


def rev(eta):
    """The reverse sequence (g_{n-1}, ..., g_1)."""
    return list(reversed(eta))


def is_symmetric(eta):
    return list(eta) == rev(eta)


def flip_cell(n, i, j):
    return (n - j + 1, n - i + 1)


class Grading:
    """A group grading given by a homogeneous basis and its degree map.

    Basis vectors are described by tags: ("unit", i, j) is the matrix unit
    e_ij; ("plus"/"minus", i, j) is X^+/X^- = e_ij +/- e_{n-j+1,n-i+1}.
    The tag order fixes the coordinate order used by decompose().
    """

    def __init__(self, kind, group, n, field, basis_tags, degrees, eta=None,
                 mt_distinguished=None, h_group=None, h_eta=None, mt_embed=None):
        if len(basis_tags) != dimension(n) or len(degrees) != len(basis_tags):
            raise GradingError("basis must span the full algebra")
        self.kind = kind
        self.group = group
        self.n = n
        self.field = field
        self.basis_tags = list(basis_tags)
        self.degrees = list(degrees)
        self.eta = eta
        self.mt_distinguished = mt_distinguished
        self.h_group = h_group
        self.h_eta = h_eta
        self._mt_embed = mt_embed
        self._components = None
        self._basis = None

    # basis ------------------------------------------------------------

    def basis(self):
        if self._basis is None:
            self._basis = [self._materialize(tag) for tag in self.basis_tags]
        return self._basis

    def _materialize(self, tag):
        kind, i, j = tag
        e = TriMatrix.unit(self.n, self.field, i, j)
        if kind == "unit":
            return e
        fi, fj = flip_cell(self.n, i, j)
        mirror = TriMatrix.unit(self.n, self.field, fi, fj)
        return e + mirror if kind == "plus" else e - mirror

    def coordinates(self, x):
        """Coefficients of x over the homogeneous basis."""
        f = self.field
        out = []
        if self.kind == ELEMENTARY:
            return x.entries
        half = f.inv(f.element(2))
        for kind, i, j in self.basis_tags:
            fi, fj = flip_cell(self.n, i, j)
            a = x.entry(i, j)
            if (fi, fj) == (i, j):
                out.append(f.mul(half, a))  # X^+ = 2 e_ij on the middle cells
                continue
            b = x.entry(fi, fj)
            if kind == "plus":
                out.append(f.mul(half, f.add(a, b)))
            else:
                out.append(f.mul(half, f.sub(a, b)))
        return tuple(out)

    # structure ----------------------------------------------------------

    def components(self):
        """Map degree -> list of basis indices."""
        if self._components is None:
            comps = {}
            for idx, g in enumerate(self.degrees):
                comps.setdefault(g, []).append(idx)
            self._components = comps
        return self._components

    def support(self):
        return sorted(self.components())

    def component_basis(self, g):
        basis = self.basis()
        return [basis[i] for i in self.components().get(g, [])]

    def decompose(self, x):
        """Map degree -> homogeneous component; the components sum back to x."""
        coords = self.coordinates(x)
        basis = self.basis()
        parts = {}
        for idx, c in enumerate(coords):
            if c != self.field.zero:
                g = self.degrees[idx]
                term = basis[idx].scale(c)
                parts[g] = parts[g] + term if g in parts else term
        return parts

    def homogeneous_degree(self, x):
        """The unique degree of x, or None if x mixes degrees."""
        if x.is_zero():
            raise GradingError("the zero matrix has no degree")
        degrees = {self.degrees[idx]
                   for idx, c in enumerate(self.coordinates(x)) if c != self.field.zero}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def verify_axioms(self, kind):
        """Check A_g A_h subset A_{gh} on all basis pairs.

        Returns (True, None) or (False, witness) naming the violating pair.
        """
        basis = self.basis()
        for i, (b1, g) in enumerate(zip(basis, self.degrees)):
            for j, (b2, h) in enumerate(zip(basis, self.degrees)):
                prod = multiply(b1, b2, kind)
                if prod.is_zero():
                    continue
                target = g * h
                bad = {self.degrees[idx]
                       for idx, c in enumerate(self.coordinates(prod))
                       if c != self.field.zero and self.degrees[idx] != target}
                if bad:
                    return False, {"left": self.basis_tags[i],
                                   "right": self.basis_tags[j],
                                   "expected": target, "found": sorted(bad)}
        return True, None

    def mt_induced_elementary(self, kind):
        """The symmetric elementary grading over G/<t> induced by an MT grading.

        Returns (grading, projection) where projection maps G onto G/<t>.
        """
        if self.kind != MT:
            raise GradingError("only MT gradings induce a quotient grading")
        quotient, projection = quotient_by(self.group, self.mt_distinguished)
        eta_q = [projection(self._mt_embed(0, h)) for h in self.h_eta]
        induced = elementary_from_eta(self.n, quotient, eta_q, kind, self.field)
        return induced, projection


def _check_group_for_kind(group, kind):
    if kind != "assoc" and not getattr(group, "is_abelian", False):
        raise GradingError("Lie/Jordan gradings require an abelian grading group")


def _degree_table(n, group, eta):
    one = group.identity()
    degree = {}
    for i in range(1, n + 1):
        acc = one
        degree[(i, i)] = acc
        for j in range(i + 1, n + 1):
            acc = acc * eta[j - 2]
            degree[(i, j)] = acc
    return degree


def elementary_from_eta(n, group, eta, kind, field):
    """Elementary grading from eta in G^{n-1}: deg e_{i,i+1} = eta_i, deg e_ii = 1."""
    eta = list(eta)
    if len(eta) != n - 1:
        raise GradingError(f"eta must have length {n - 1}, got {len(eta)}")
    if any(g.group != group for g in eta):
        raise GradingError("eta entries must lie in the grading group")
    _check_group_for_kind(group, kind)
    degree = _degree_table(n, group, eta)
    cells = packed_cells(n)
    tags = [("unit", i, j) for (i, j) in cells]
    degrees = [degree[(i, j)] for (i, j) in cells]
    return Grading(ELEMENTARY, group, n, field, tags, degrees, eta=eta)


def elementary_from_sequence(n, group, a, kind, field):
    """Elementary grading from a in G^n with deg e_ij = a_i a_j^{-1}.

    Agrees with elementary_from_eta under eta_i = a_i a_{i+1}^{-1}; for the
    Lie and Jordan products the entries must commute pairwise.
    """
    a = list(a)
    if len(a) != n:
        raise GradingError(f"sequence must have length {n}, got {len(a)}")
    if kind != "assoc":
        for x in a:
            for y in a:
                if x * y != y * x:
                    raise GradingError(
                        "Lie/Jordan sequences must commute pairwise")
    eta = [a[i] * a[i + 1].inv() for i in range(n - 1)]
    return elementary_from_eta(n, group, eta, kind, field)


def mt_from_symmetric(n, h_group, eta, field, kind):
    """MT grading over Z_2 x H refining a symmetric elementary H-grading.

    The Z_2-part separates the flip eigenspaces; which sign goes where is
    forced by the product: t is a Jordan automorphism, so symmetric elements
    (X^+) form the even part there, while under the bracket the product of
    two symmetric elements is skew, so for Lie the even part is spanned by
    the X^-.  Degenerate middles (e_{i:m} fixed by the flip) contribute
    only X^+.
    """
    if field.characteristic == 2:
        raise GradingError("MT gradings require characteristic != 2")
    if not getattr(h_group, "is_abelian", False):
        raise GradingError("MT gradings require an abelian group")
    eta = list(eta)
    if not is_symmetric(eta):
        raise GradingError("MT gradings require a symmetric sequence")
    if len(eta) != n - 1:
        raise GradingError(f"eta must have length {n - 1}, got {len(eta)}")

    # G = Z_2 x H, renormalized to invariant-factor form.
    ngens = 1 + h_group.rank
    relations = [[2] + [0] * h_group.rank]
    for idx, d in enumerate(h_group.torsion):
        row = [0] * ngens
        row[1 + h_group.free_rank + idx] = d
        relations.append(row)
    group, project = normalized_from_presentation(ngens, relations)

    def embed(eps, h):
        return project([eps] + list(h.coords))

    eps_plus = 0 if kind == "jordan" else 1
    h_degree = _degree_table(n, h_group, eta)
    tags, degrees = [], []
    for (i, j) in packed_cells(n):
        if i + j > n + 1:
            continue  # covered by the mirror cell's orbit
        h = h_degree[(i, j)]
        tags.append(("plus", i, j))
        degrees.append(embed(eps_plus, h))
        if i + j < n + 1:
            tags.append(("minus", i, j))
            degrees.append(embed(1 - eps_plus, h))
    return Grading(MT, group, n, field, tags, degrees,
                   mt_distinguished=embed(1, h_group.identity()),
                   h_group=h_group, h_eta=eta, mt_embed=embed)
