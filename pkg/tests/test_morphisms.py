import itertools
import random

import pytest

from utgrading.fields import GF, QQ
from utgrading.gradings import elementary_from_eta, mt_from_symmetric
from utgrading.groups import AbelianGroup
from utgrading.morphisms import (
    LinearMap,
    MorphismError,
    as_diagonal,
    as_self_equivalence,
    flip_map,
    inner,
    is_automorphism,
    is_graded,
    is_graded_involution,
    is_involution,
    make_involution,
    omega_compatibility,
    omega_map,
    psi,
)
from utgrading.triangular import (
    ASSOCIATIVE,
    JORDAN,
    LIE,
    NotInvertible,
    TriMatrix,
    all_matrices,
    dimension,
    inverse,
    multiply,
)

F3 = GF(3)
F5 = GF(5)
Z2 = AbelianGroup(torsion=[2])


def z2_eta(*bits):
    return [Z2.element([b]) for b in bits]


def random_invertible(n, field, rng):
    units = field.units()
    entries = [field.element(rng.randrange(field.characteristic))
               for _ in range(dimension(n))]
    a = TriMatrix(n, field, entries)
    for i in range(1, n + 1):
        a = a.with_entry(i, i, rng.choice(units))
    return a


def test_inner_matches_triple_product():
    # expansion formula against direct a x a^{-1} on random matrices
    rng = random.Random(41)
    for n in (2, 3, 4, 5):
        for _ in range(40):
            a = random_invertible(n, F5, rng)
            f = inner(a)
            b = inverse(a)
            x = TriMatrix(n, F5, [F5.element(rng.randrange(5))
                                  for _ in range(dimension(n))])
            assert f.apply(x) == a.matmul(x).matmul(b)


def test_inner_requires_invertible():
    with pytest.raises(NotInvertible):
        inner(TriMatrix.unit(2, F3, 1, 2))


def test_inner_is_automorphism_for_all_kinds():
    rng = random.Random(43)
    for _ in range(5):
        a = random_invertible(3, F3, rng)
        f = inner(a)
        for kind in (ASSOCIATIVE, LIE, JORDAN):
            assert is_automorphism(f, kind)


def test_linear_map_compose_and_identity():
    rng = random.Random(47)
    a = random_invertible(3, F5, rng)
    b = random_invertible(3, F5, rng)
    assert inner(a).compose(inner(b)) == inner(a.matmul(b))
    assert inner(a).compose(inner(inverse(a))) == LinearMap.identity(3, F5)
    x = TriMatrix(3, F5, [F5.element(rng.randrange(5)) for _ in range(6)])
    assert LinearMap.identity(3, F5).apply(x) == x


def test_psi_is_lie_but_not_associative_automorphism():
    s = [F3.element(1), F3.element(1), F3.element(1)]
    f = psi(3, F3, s)
    assert is_automorphism(f, LIE)
    assert not is_automorphism(f, ASSOCIATIVE)
    e11 = TriMatrix.unit(3, F3, 1, 1)
    assert f.apply(e11) == e11 + TriMatrix.identity(3, F3)
    e12 = TriMatrix.unit(3, F3, 1, 2)
    assert f.apply(e12) == e12


def test_psi_rejects_singular_parameter():
    # s_1 + s_2 + 1 = 0 makes psi_s non-invertible
    with pytest.raises(MorphismError):
        psi(2, F3, [F3.element(1), F3.element(1)])
    with pytest.raises(MorphismError):
        psi(2, F3, [F3.element(1)])


def test_psi_count_exhaustive_n3():
    # valid parameters over GF(3): 27 triples minus the 9 with sum = -1
    valid = 0
    for s in itertools.product(F3.elements(), repeat=3):
        try:
            f = psi(3, F3, list(s))
        except MorphismError:
            continue
        valid += 1
        assert is_automorphism(f, LIE)
    assert valid == 18


def test_flip_and_omega_maps():
    fl = flip_map(3, F5)
    om = omega_map(3, F5)
    assert fl.compose(fl) == LinearMap.identity(3, F5)
    assert om.compose(om) == LinearMap.identity(3, F5)
    assert is_automorphism(om, LIE)
    assert not is_automorphism(fl, ASSOCIATIVE)  # antiautomorphism, not automorphism
    assert is_automorphism(fl, JORDAN)
    assert om == fl.scale(F5.neg(F5.one))


def test_is_graded():
    grading = elementary_from_eta(3, Z2, z2_eta(1, 1), ASSOCIATIVE, F3)
    diag = TriMatrix.diagonal(3, F3, [F3.element(1), F3.element(2), F3.element(1)])
    assert is_graded(inner(diag), grading)
    shear = TriMatrix.identity(3, F3).with_entry(1, 2, F3.one)
    assert not is_graded(inner(shear), grading)


def test_as_self_equivalence_flip():
    z22 = AbelianGroup(torsion=[2, 2])
    g, h = z22.element([1, 0]), z22.element([0, 1])
    grading = elementary_from_eta(3, z22, [g, h], ASSOCIATIVE, F3)
    alpha = as_self_equivalence(flip_map(3, F3), grading)
    # flip reverses eta, swapping the degrees g and h
    assert alpha is not None
    assert alpha[z22.identity()] == z22.identity()
    assert alpha[g] == h and alpha[h] == g
    assert alpha[g * h] == g * h
    # for eta = (g, 1) the flip tears the identity component apart
    degenerate = elementary_from_eta(3, Z2, z2_eta(1, 0), ASSOCIATIVE, F3)
    assert as_self_equivalence(flip_map(3, F3), degenerate) is None
    # a non graded-equivalence map yields None
    shear = TriMatrix.identity(3, F3).with_entry(1, 2, F3.one)
    grading2 = elementary_from_eta(3, Z2, z2_eta(1, 1), ASSOCIATIVE, F3)
    assert as_self_equivalence(inner(shear), grading2) is None


def test_as_diagonal():
    grading = elementary_from_eta(3, Z2, z2_eta(1, 1), ASSOCIATIVE, F3)
    d = TriMatrix.diagonal(3, F3, [F3.element(1), F3.element(2), F3.element(1)])
    lam = as_diagonal(inner(d), grading)
    assert lam is not None
    assert lam[Z2.identity()] == F3.one
    assert lam[Z2.element([1])] == F3.element(2)
    shear = TriMatrix.identity(3, F3).with_entry(1, 2, F3.one)
    assert as_diagonal(inner(shear), grading) is None


def test_make_involution():
    a = TriMatrix.identity(3, F3)
    f = make_involution(a)
    assert is_involution(f)
    grading = elementary_from_eta(3, Z2, z2_eta(1, 1), ASSOCIATIVE, F3)
    assert is_graded_involution(f, grading)
    with pytest.raises(MorphismError):
        make_involution(TriMatrix.identity(3, F3).with_entry(1, 2, F3.one))
    with pytest.raises(MorphismError):
        make_involution(TriMatrix.identity(2, GF(2)))


def test_involution_antisymmetric_matrix():
    # t(a) = -a also yields an involution when a is invertible
    from utgrading.triangular import flip_t
    a = TriMatrix.diagonal(4, F5, [F5.element(v) for v in (1, 2, -2, -1)])
    assert flip_t(a) == -a
    f = make_involution(a)
    assert is_involution(f)


def test_is_involution_rejects_plain_automorphism():
    rng = random.Random(53)
    a = random_invertible(3, F5, rng)
    f = inner(a)
    # an inner automorphism is multiplicative, not antimultiplicative
    assert not is_involution(f)


def test_omega_compatibility_exhaustive_n2():
    # every invertible 2x2 upper triangular matrix over GF(3)
    seen = set()
    for a in all_matrices(2, F3, invertible=True):
        res = omega_compatibility(a)
        seen.add(res.kind)
        if res.kind == "commuting":
            from utgrading.triangular import omega
            expect = TriMatrix.identity(2, F3).scale(F3.neg(res.k))
            assert a.matmul(omega(a)) == expect
            assert omega(a).matmul(a) == expect
        elif res.kind == "anticommuting":
            from utgrading.triangular import omega
            wa = omega(a)
            assert wa.matmul(a) == TriMatrix.identity(2, F3).scale(F3.neg(res.k))
            assert a.matmul(wa) == TriMatrix.identity(2, F3).scale(res.k)
    assert "commuting" in seen and "neither" in seen
    with pytest.raises(NotInvertible):
        omega_compatibility(TriMatrix.unit(2, F3, 1, 2))


def test_omega_compatibility_diagonal_examples():
    # diag(c, c^{-1} k) always multiplies with omega to a scalar
    for c in (1, 2):
        for k in (1, 2):
            a = TriMatrix.diagonal(2, F3, [F3.element(c), F3.div(F3.element(k), F3.element(c))])
            res = omega_compatibility(a)
            assert res.kind != "neither"


def test_linear_map_over_rationals():
    from fractions import Fraction
    a = TriMatrix.diagonal(2, QQ, [Fraction(2), Fraction(1, 3)])
    f = inner(a)
    e12 = TriMatrix.unit(2, QQ, 1, 2)
    assert f.apply(e12) == e12.scale(Fraction(6))
