import random
from fractions import Fraction

import pytest

from cliffinv import linalg
from cliffinv.algebras import (
    StructureAlgebra,
    associativity_witness,
    center,
    central_idempotents,
    check_associative,
    find_quaternion_basis,
    is_split_quaternion,
    matrix_algebra,
    opposite,
    quaternion,
    reduced_trace,
    tensor,
)
from cliffinv.errors import CliffinvError, UnsupportedBase
from cliffinv.scalars import GF, QQ, hilbert_symbol, support_places

F = QQ


def ramification(a, b):
    return {str(v) for v in support_places(a, b) if hilbert_symbol(a, b, v) == -1}


def _product_field_algebra(n):
    zero, one = F.zero(), F.one()
    table = [[[one if i == j == k else zero for k in range(n)] for j in range(n)] for i in range(n)]
    return StructureAlgebra(F, tuple(f"u{i}" for i in range(n)), table, [one] * n)


def test_matrix_algebra():
    m2 = matrix_algebra(2, F)
    assert m2.validate_unit()
    assert check_associative(m2)
    assert len(center(m2)) == 1


def test_quaternion_relations():
    q = quaternion(Fraction(2), Fraction(3), F)
    assert q.validate_unit()
    assert check_associative(q)  # 64 triple checks
    i, j, k = q.basis_vec(1), q.basis_vec(2), q.basis_vec(3)
    assert q.is_scalar(q.mul(i, i)) == 2
    assert q.is_scalar(q.mul(j, j)) == 3
    assert q.mul(i, j) == [x - y for x, y in zip(q.zero_vec(), q.scalar_mul(-F.one(), k))]
    assert q.mul(j, i) == q.scalar_mul(-F.one(), k)
    assert q.is_scalar(q.mul(k, k)) == -6


def test_associativity_witness_on_perturbed_table():
    q = quaternion(Fraction(-1), Fraction(-1), F)
    tbl = [[[q.table[i][j][k] for k in range(4)] for j in range(4)] for i in range(4)]
    tbl[1][2][0] = Fraction(5)
    bad = StructureAlgebra(F, q.labels, tbl, q.unit)
    assert associativity_witness(bad) is not None


def test_center_dimensions():
    assert len(center(quaternion(Fraction(-1), Fraction(3), F))) == 1
    assert len(center(_product_field_algebra(2))) == 2


def test_central_idempotents():
    assert len(central_idempotents(_product_field_algebra(2))) == 4
    zero, one = F.zero(), F.one()
    # F[x]/(x^2 - 2): no nontrivial idempotents since 2 is not a square
    t2 = [[[one, zero], [zero, one]], [[zero, one], [Fraction(2), zero]]]
    k2 = StructureAlgebra(F, ("1", "x"), t2, [one, zero])
    assert len(central_idempotents(k2)) == 2
    # F[x]/(x^2 - 1): splits as (1 +- x)/2
    t3 = [[[one, zero], [zero, one]], [[zero, one], [one, zero]]]
    k3 = StructureAlgebra(F, ("1", "x"), t3, [one, zero])
    ids = central_idempotents(k3)
    assert len(ids) == 4
    half = Fraction(1, 2)
    assert [half, half] in ids and [half, -half] in ids
    with pytest.raises(UnsupportedBase):
        central_idempotents(_product_field_algebra(3))


def test_tensor_and_opposite():
    q = quaternion(Fraction(-1), Fraction(-1), F)
    assert tensor(q, matrix_algebra(1, F)).table == q.table
    assert opposite(opposite(q)).table == q.table
    qq = tensor(q, q)
    assert qq.dim == 16
    assert len(center(qq)) == 1
    assert check_associative(opposite(q))


def test_involution_fixes_only_scalars():
    q = quaternion(Fraction(2), Fraction(-3), F)
    inv = [list(r) for r in q.involution]
    ident = linalg.identity(4, F)
    diff = [[inv[i][j] - ident[i][j] for j in range(4)] for i in range(4)]
    assert len(linalg.nullspace(diff, 4, F)) == 1
    # anti-automorphism of order 2
    sq = linalg.matmul(inv, inv, F)
    assert sq == ident


def test_split_quaternions():
    assert is_split_quaternion(quaternion(Fraction(1), Fraction(7), F))
    assert not is_split_quaternion(quaternion(Fraction(-1), Fraction(-1), F))
    f3 = GF(3)
    assert is_split_quaternion(quaternion(f3.from_int(-1), f3.from_int(-1), f3))


def test_reduced_trace():
    q = quaternion(Fraction(-1), Fraction(-1), F)
    assert reduced_trace(q, list(q.unit)) == 2
    for i in range(1, 4):
        assert reduced_trace(q, q.basis_vec(i)) == 0


def test_find_quaternion_basis_recovers_class():
    rng = random.Random(21)
    for _ in range(25):
        a = Fraction(rng.choice([x for x in range(-20, 21) if x]))
        b = Fraction(rng.choice([x for x in range(-20, 21) if x]))
        q = quaternion(a, b, F)
        alpha, beta, basis = find_quaternion_basis(q)
        assert ramification(alpha, beta) == ramification(a, b)
        assert linalg.rank([list(r) for r in basis], F) == 4


def test_find_quaternion_basis_on_conjugated_table():
    # transport the table of (-1,-1) along a random basis change
    q = quaternion(Fraction(-1), Fraction(-1), F)
    rng = random.Random(4)
    while True:
        m = [[Fraction(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
        if linalg.det(m, F):
            break
    minv = linalg.inverse(m, F)
    # new basis f_i = sum_j m[j][i] e_j; table in the new coordinates
    def to_new(vec):
        return linalg.matvec(minv, vec, F)

    basis_vecs = [[m[i][j] for i in range(4)] for j in range(4)]
    table = []
    for i in range(4):
        plane = []
        for j in range(4):
            prod = q.mul(basis_vecs[i], basis_vecs[j])
            plane.append(to_new(prod))
        table.append(plane)
    unit = to_new(list(q.unit))
    conj = StructureAlgebra(F, ("a", "b", "c", "d"), table, unit)
    assert check_associative(conj)
    alpha, beta, _ = find_quaternion_basis(conj)
    assert ramification(alpha, beta) == {"2", "inf"}


def test_find_quaternion_basis_rejects_noncentral():
    with pytest.raises(CliffinvError):
        find_quaternion_basis(_product_field_algebra(4))


def test_quaternion_norm_equivalence():
    # (a, b) and (a, -ab) have the same class
    rng = random.Random(31)
    for _ in range(50):
        a = Fraction(rng.choice([x for x in range(-15, 16) if x]))
        b = Fraction(rng.choice([x for x in range(-15, 16) if x]))
        assert ramification(a, b) == ramification(a, -a * b)


def test_dim_cap():
    with pytest.raises(ValueError):
        matrix_algebra(9, F)  # dim 81 > 64
