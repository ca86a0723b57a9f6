"""The universal grading group in abelianized normal form, its character
group over finite prime fields, and character-induced diagonal matrices."""

import itertools
from math import gcd

from .fields import UnsupportedEnumeration
from .groups import normalized_from_presentation
from .triangular import TriMatrix, multiply


class EvaluationError(ValueError):
    pass


def _pow(field, x, e):
    if e < 0:
        x, e = field.inv(x), -e
    acc = field.one
    for _ in range(e):
        acc = field.mul(acc, x)
    return acc


class AbelianPresentation:
    """Abelianization of the universal grading group U(Gamma).

    Generators are the support elements; one additive relation
    x_{gh} - x_g - x_h per pair of basis vectors with nonzero product.
    """

    def __init__(self, support, relations, group, embed):
        self.support = support
        self.relations = relations
        self.group = group          # normal form: AbelianGroup
        self.embed = embed          # support element -> element of `group`

    @property
    def free_rank(self):
        return self.group.free_rank

    @property
    def torsion(self):
        return self.group.torsion

    def descriptor(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def universal_abelian(grading, kind):
    """Harvest relations from all basis-pair products and normalize via SNF."""
    support = grading.support()
    index = {g: i for i, g in enumerate(support)}
    basis = grading.basis()
    rows = set()
    for b1, g in zip(basis, grading.degrees):
        for b2, h in zip(basis, grading.degrees):
            if multiply(b1, b2, kind).is_zero():
                continue
            row = [0] * len(support)
            row[index[g * h]] += 1
            row[index[g]] -= 1
            row[index[h]] -= 1
            if any(row):
                rows.add(tuple(row))
    relations = sorted(rows)
    group, project = normalized_from_presentation(len(support), [list(r) for r in relations])
    embed = {}
    for g, i in index.items():
        coords = [0] * len(support)
        coords[i] = 1
        embed[g] = project(coords)
    return AbelianPresentation(support, relations, group, embed)


class Character:
    """Homomorphism from the normalized universal group into K^*."""

    __slots__ = ("presentation", "field", "images")

    def __init__(self, presentation, field, images):
        self.presentation = presentation
        self.field = field
        self.images = tuple(images)

    def evaluate(self, u):
        """Value at an element of the normal-form group."""
        if u.group != self.presentation.group:
            raise EvaluationError("element not in the universal group")
        acc = self.field.one
        for x, c in zip(self.images, u.coords):
            acc = self.field.mul(acc, _pow(self.field, x, c))
        return acc

    def evaluate_support(self, g):
        return self.evaluate(self.presentation.embed[g])

    def __eq__(self, other):
        return isinstance(other, Character) and other.images == self.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Character{self.images}"


def characters(presentation, field):
    """All characters into K^*: free generators map to any unit, a Z_d
    generator to units of order dividing d."""
    if not field.is_finite:
        raise UnsupportedEnumeration("character enumeration needs a finite field")
    units = field.units()
    pools = []
    group = presentation.group
    for _ in range(group.free_rank):
        pools.append(units)
    for d in group.torsion:
        pools.append([u for u in units if _pow(field, u, d) == field.one])
    return [Character(presentation, field, images)
            for images in itertools.product(*pools)]


def character_count(presentation, field):
    """(p-1)^rank * prod gcd(d_i, p-1); must match len(characters(...))."""
    q = len(field.units())
    count = q ** presentation.group.free_rank
    for d in presentation.group.torsion:
        count *= gcd(d, q)
    return count


def grading_sequence(grading):
    """The defining sequence (1, g_2, ..., g_n) with deg e_ij = g_i g_j^{-1},
    recovered from the first row: g_i = (deg e_{1i})^{-1}."""
    degs = grading.degrees  # elementary gradings store units in packed order
    if grading.kind != "elementary":
        raise EvaluationError("sequence recovery applies to elementary gradings")
    return [grading.group.identity()] + [degs[i].inv() for i in range(1, grading.n)]


def evaluate_group_element(chi, g):
    """chi extended to G through the support: g or g^{-1} must be a support degree."""
    pres = chi.presentation
    if g.is_identity():
        return chi.field.one
    if g in pres.embed:
        return chi.evaluate_support(g)
    ginv = g.inv()
    if ginv in pres.embed:
        return chi.field.inv(chi.evaluate_support(ginv))
    raise EvaluationError(f"group element {g!r} is not evaluable under the character")


def diagonal_from_character(chi, a_seq, n, field):
    """The diagonal matrix diag(chi(a_1), ..., chi(a_n))."""
    if len(a_seq) != n:
        raise EvaluationError(f"sequence must have length {n}")
    return TriMatrix.diagonal(n, field, [evaluate_group_element(chi, a) for a in a_seq])


def diagonal_for_character(chi, grading):
    """The conjugating diagonal matrix realizing the character action.

    Entries accumulate chi along the superdiagonal universal degrees, so
    conjugation scales the cell (i, j) by chi of its universal degree even
    when the universal group does not factor through the grading group.
    """
    if grading.kind != "elementary":
        raise EvaluationError("diagonal realization applies to elementary gradings")
    n, field = grading.n, grading.field
    pres = chi.presentation
    cell_deg = {(i, j): g for (_, i, j), g in zip(grading.basis_tags, grading.degrees)}
    values = [field.one] * n
    for i in range(n - 1, 0, -1):
        step = chi.evaluate(pres.embed[cell_deg[(i, i + 1)]])
        values[i - 1] = field.mul(step, values[i])
    return TriMatrix.diagonal(n, field, values)
