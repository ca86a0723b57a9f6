import itertools

import pytest
from hypothesis import given, settings, strategies as st

from utgrading.groups import (
    AbelianGroup,
    CayleyGroup,
    GroupError,
    is_commutative_subset,
    normalized_from_presentation,
    quotient_by,
    smith_normal_form,
)


def mat_mul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def det_frac(M):
    from fractions import Fraction
    M = [[Fraction(v) for v in row] for row in M]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d *= M[c][c]
        inv = 1 / M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] * inv
            M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return d


int_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(int_matrices)
def test_smith_normal_form_matches_sympy(M):
    import sympy
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    D, U, V = smith_normal_form(M)
    # D = U M V exactly
    assert D == mat_mul(mat_mul(U, M), V)
    # U, V unimodular
    assert abs(det_frac(U)) == 1
    assert abs(det_frac(V)) == 1
    # diagonal, nonnegative, divisibility chain
    diag = []
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            if i != j:
                assert v == 0
            elif v:
                diag.append(v)
    assert all(v > 0 for v in diag)
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0
    expected = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
    exp_diag = [abs(int(expected[i, i])) for i in range(min(expected.shape))
                if expected[i, i] != 0]
    assert diag == exp_diag


def test_abelian_group_validation():
    with pytest.raises(GroupError):
        AbelianGroup(free_rank=-1)
    with pytest.raises(GroupError):
        AbelianGroup(torsion=[1])
    with pytest.raises(GroupError):
        AbelianGroup(torsion=[4, 2])  # must divide successively
    AbelianGroup(torsion=[2, 4])


def test_abelian_group_arithmetic():
    g = AbelianGroup(free_rank=1, torsion=[2, 4])
    x = g.element([3, 1, 5])
    y = g.element([-1, 1, 2])
    assert (x * y).coords == (2, 0, 3)
    assert x.inv().coords == (-3, 1, 3)
    assert (x * x.inv()).is_identity()
    assert g.element([0, 1, 2]).order() == 2
    assert g.element([0, 1, 1]).order() == 4
    assert g.element([1, 0, 0]).order() is None
    assert g.order() is None
    assert AbelianGroup(torsion=[2, 4]).order() == 8
    assert len(list(AbelianGroup(torsion=[2, 4]).elements())) == 8


def test_abelian_elements_sortable_hashable():
    g = AbelianGroup(torsion=[3])
    elems = sorted(g.elements())
    assert [e.coords for e in elems] == [(0,), (1,), (2,)]
    assert len({e for e in g.elements()}) == 3


def _s3_table():
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    return [[index[compose(p, q)] for q in perms] for p in perms]


def test_cayley_s3():
    g = CayleyGroup(_s3_table())
    assert not g.is_abelian
    assert g.order() == 6
    elems = list(g.elements())
    assert sum(1 for e in elems if e.order() == 2) == 3
    assert sum(1 for e in elems if e.order() == 3) == 2
    assert not is_commutative_subset(elems)


def test_cayley_rejects_non_associative_latin_square():
    # a 5x5 Latin square that is a quasigroup but not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 3, 4, 0, 1],
        [3, 4, 1, 2, 0],
        [4, 2, 0, 1, 3],
    ]
    with pytest.raises(GroupError):
        CayleyGroup(table)


def test_cayley_rejects_non_latin():
    with pytest.raises(GroupError):
        CayleyGroup([[0, 0], [1, 1]])


def test_normalized_from_presentation_klein():
    group, project = normalized_from_presentation(2, [[2, 0], [0, 2]])
    assert group.free_rank == 0 and tuple(group.torsion) == (2, 2)
    x = project([1, 0])
    y = project([0, 1])
    assert x != y and (x * x).is_identity() and (y * y).is_identity()


def test_normalized_from_presentation_mixed():
    # Z x Z_2 from three generators with x0 = x1 and 2*x2 = 0
    group, project = normalized_from_presentation(3, [[1, -1, 0], [0, 0, 2]])
    assert group.free_rank == 1 and tuple(group.torsion) == (2,)
    assert project([1, 0, 0]) == project([0, 1, 0])
    assert (project([0, 0, 1]) * project([0, 0, 1])).is_identity()


def test_quotient_by_order_two():
    g = AbelianGroup(torsion=[2, 2])
    t = g.element([1, 0])
    q, pi = quotient_by(g, t)
    assert q.order() == 2
    assert pi(t).is_identity()
    assert not pi(g.element([0, 1])).is_identity()
    with pytest.raises(GroupError):
        quotient_by(g, g.element([0, 0]))
