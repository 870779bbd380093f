import random
from fractions import Fraction

import pytest

from cliffinv import linalg
from cliffinv.algebras import center, central_idempotents, check_associative, find_quaternion_basis, is_split_quaternion
from cliffinv.brauer import class_of_algebra
from cliffinv.clifford import (
    CliffordBimodule,
    EvenClifford,
    base_change,
    bimodule_mult,
    canonical_involution,
    clifford_bimodule,
    discriminant_algebra,
    even_clifford,
    exterior_operators,
    hyperbolic_model,
    reduction_mod_p,
    split_components,
    sum_isomorphism,
    tables_commute,
)
from cliffinv.errors import CliffinvError, DegenerateFormError
from cliffinv.forms import DiagonalForm, diagonalize, hyperbolic, random_regular_diagonal, random_regular_gram, signed_det
from cliffinv.scalars import GF, QQ, square_class

F = QQ


def frac(*xs):
    return tuple(Fraction(x) for x in xs)


def diag(*xs):
    return DiagonalForm(frac(*xs), F)


def test_dims_across_ranks():
    rng = random.Random(2)
    for _ in range(60):
        field = rng.choice([F, GF(3), GF(5), GF(7), GF(11)])
        n = rng.randint(1, 7)
        form = random_regular_diagonal(rng, field, n)
        ec = EvenClifford(form)
        bim = CliffordBimodule(ec)
        assert ec.dim == 2 ** (n - 1)
        assert bim.dim == 2 ** (n - 1)


def test_rank_one_is_base_field():
    ec = even_clifford(diag(3))
    assert ec.dim == 1


def test_rank_two_relation():
    a, b = Fraction(2), Fraction(5)
    ec = even_clifford(DiagonalForm((a, b), F))
    assert ec.dim == 2
    c, m = ec.mul_masks(0b11, 0b11)
    assert m == 0 and c == -a * b


def test_rank_three_gives_quaternions():
    ec = even_clifford(diag(1, 1, 1))
    assert ec.dim == 4
    assert check_associative(ec.algebra)
    assert len(center(ec.algebra, ec.generators())) == 1
    assert class_of_algebra(ec.algebra).to_json()["ramified"] == ["2", "inf"]


def test_associativity_certified_small_ranks():
    rng = random.Random(8)
    for n in (2, 3, 4, 5):
        form = random_regular_diagonal(rng, F, n)
        assert check_associative(EvenClifford(form).algebra)


def test_bimodule_left_action_example():
    a, b = Fraction(3), Fraction(7)
    bim = clifford_bimodule(DiagonalForm((a, b), F))
    x = [F.zero()] * 2
    x[bim.even.index[0b11]] = F.one()
    out = bim.left_act(x, bim.embed_vector(0))
    assert out[bim.index[0b10]] == -a
    assert not out[bim.index[0b01]]


def test_bimodule_mult_on_generators():
    a, b = Fraction(3), Fraction(7)
    bim = clifford_bimodule(DiagonalForm((a, b), F))
    m = bimodule_mult(bim, bim.embed_vector(0), bim.embed_vector(0))
    assert m[bim.even.index[0]] == a  # m(i(v), i(v)) = q(v)
    m12 = bimodule_mult(bim, bim.embed_vector(0), bim.embed_vector(1))
    assert m12[bim.even.index[0b11]] == F.one()


def test_bimodule_mult_random_values():
    rng = random.Random(12)
    for _ in range(20):
        form = random_regular_diagonal(rng, F, rng.randint(2, 5))
        bim = clifford_bimodule(form)
        n = form.rank
        coords = [F.from_int(rng.randint(-5, 5)) for _ in range(n)]
        vec = [F.zero()] * bim.dim
        for i, c in enumerate(coords):
            vec[bim.index[1 << i]] = c
        q_val = sum((a * c * c for a, c in zip(form.entries, coords)), F.zero())
        m = bim.mult(vec, vec)
        assert m[bim.even.index[0]] == q_val


def test_bimodule_balanced():
    rng = random.Random(14)
    for _ in range(15):
        form = random_regular_diagonal(rng, F, rng.randint(2, 4))
        bim = clifford_bimodule(form)
        ec = bim.even
        x = [F.from_int(rng.randint(-3, 3)) for _ in range(bim.dim)]
        y = [F.from_int(rng.randint(-3, 3)) for _ in range(bim.dim)]
        c = [F.from_int(rng.randint(-3, 3)) for _ in range(ec.dim)]
        assert bim.mult(bim.right_act(x, c), y) == bim.mult(x, bim.left_act(c, y))


def test_bimodule_generator_actions_invertible():
    rng = random.Random(16)
    for _ in range(10):
        form = random_regular_diagonal(rng, F, rng.randint(2, 4))
        bim = clifford_bimodule(form)
        for g in bim.even.generators():
            mat = bim.left_action_matrix(g)
            assert linalg.det(mat, F)


def test_semilinear_center_action():
    rng = random.Random(18)
    for n in (2, 4, 6):
        form = random_regular_diagonal(rng, F, n)
        ec = EvenClifford(form)
        bim = CliffordBimodule(ec)
        z = [F.zero()] * ec.dim
        z[ec.index[ec.top_mask()]] = F.one()
        iota_z = [-c for c in z]  # the nontrivial centre automorphism negates z
        for t in range(bim.dim):
            x = [F.zero()] * bim.dim
            x[t] = F.one()
            assert bim.right_act(x, z) == bim.left_act(iota_z, x)


def test_canonical_involution():
    a, b = Fraction(2), Fraction(3)
    ec = even_clifford(DiagonalForm((a, b), F))
    tau = canonical_involution(ec)
    assert tau[ec.index[0b11]][ec.index[0b11]] == -1
    rng = random.Random(20)
    for _ in range(5):
        form = random_regular_diagonal(rng, F, rng.randint(2, 5))
        ec = EvenClifford(form)
        tau = canonical_involution(ec)
        tmat = [list(r) for r in tau]
        assert linalg.matmul(tmat, tmat, F) == linalg.identity(ec.dim, F)
        # anti-automorphism on random pairs
        for _ in range(20):
            x = [F.from_int(rng.randint(-3, 3)) for _ in range(ec.dim)]
            y = [F.from_int(rng.randint(-3, 3)) for _ in range(ec.dim)]
            lhs = linalg.matvec(tmat, ec.mul_coords(x, y), F)
            rhs = ec.mul_coords(linalg.matvec(tmat, y, F), linalg.matvec(tmat, x, F))
            assert lhs == rhs
        # generators transpose: tau(i(v (x) w)) = i(w (x) v)
        n = form.rank
        for i in range(n):
            for j in range(n):
                assert linalg.matvec(tmat, ec.embed_pair(i, j), F) == ec.embed_pair(j, i)


def test_involution_type_on_idempotents():
    # n = 2 mod 4 with trivial discriminant: tau swaps the idempotents
    sc = split_components(diag(1, -1))
    ec = even_clifford(diag(1, -1))
    tau = [list(r) for r in canonical_involution(ec)]
    assert linalg.matvec(tau, sc.idempotent_plus, F) == sc.idempotent_minus
    # n = 0 mod 4: tau fixes them
    sc4 = split_components(diag(1, 1, 1, 1))
    ec4 = even_clifford(diag(1, 1, 1, 1))
    tau4 = [list(r) for r in canonical_involution(ec4)]
    assert linalg.matvec(tau4, sc4.idempotent_plus, F) == sc4.idempotent_plus


def test_center_dimensions_by_parity():
    rng = random.Random(22)
    for _ in range(20):
        field = rng.choice([F, GF(5)])
        n = rng.randint(1, 6)
        form = random_regular_diagonal(rng, field, n)
        ec = EvenClifford(form)
        cen = center(ec.algebra, ec.generators())
        assert len(cen) == (1 if n % 2 else 2)


def test_discriminant_algebra():
    assert discriminant_algebra(diag(1, -1)).split
    da = discriminant_algebra(diag(1, 1))
    assert not da.split and da.delta == -1
    a, b, c, d = frac(2, 3, 5, 7)
    da4 = discriminant_algebra(DiagonalForm((a, b, c, d), F))
    assert da4.delta == a * b * c * d
    with pytest.raises(ValueError):
        discriminant_algebra(diag(1, 1, 1))


def test_split_components_examples():
    sc = split_components(diag(1, -1))
    assert sc.plus.dim == 1 and sc.minus.dim == 1
    sc4 = split_components(diag(1, 1, 1, 1))
    for comp in (sc4.plus, sc4.minus):
        assert comp.dim == 4
        assert class_of_algebra(comp).to_json()["ramified"] == ["2", "inf"]
    h4 = diagonalize(hyperbolic(2))[0]
    sch = split_components(h4)
    assert is_split_quaternion(sch.plus) and is_split_quaternion(sch.minus)


def test_split_components_needs_square_discriminant():
    with pytest.raises(CliffinvError):
        split_components(diag(1, 1))


def test_functoriality_between_diagonalisations():
    # different diagonalisations of one Gram matrix carry equal invariants
    rng = random.Random(24)
    for _ in range(10):
        q = random_regular_gram(rng, F, 4)
        d1, _ = diagonalize(q)
        perm = list(range(4))
        rng.shuffle(perm)
        d2 = DiagonalForm(tuple(d1.entries[i] for i in perm), F)
        delta1 = discriminant_algebra(d1)
        delta2 = discriminant_algebra(d2)
        assert square_class(delta1.delta) == square_class(delta2.delta)
        if delta1.split:
            c1 = class_of_algebra(split_components(d1).plus)
            c2 = class_of_algebra(split_components(d2).plus)
            assert c1 == c2


def test_hyperbolic_model_small_ranks():
    hm1 = hyperbolic_model(1)
    assert hm1.even.dim == 2
    ids = central_idempotents(hm1.even.algebra, hm1.even.generators())
    assert len(ids) == 4  # split etale quadratic centre
    hm2 = hyperbolic_model(2)
    assert hm2.target.dim == 8  # M2 x M2
    assert hm2.phi0.is_isomorphism()
    with pytest.raises(ValueError):
        hyperbolic_model(5)


def test_exterior_operator_identities():
    rng = random.Random(26)
    for r in (1, 2, 3):
        masks, contract, wedge = exterior_operators(r, F)
        dim = 1 << r
        tvec = [F.from_int(rng.randint(-3, 3)) for _ in range(r)]
        vvec = [F.from_int(rng.randint(-3, 3)) for _ in range(r)]

        def combine(ops, coeffs):
            acc = [[F.zero()] * dim for _ in range(dim)]
            for c, op in zip(coeffs, ops):
                for i in range(dim):
                    for j in range(dim):
                        if op[i][j]:
                            acc[i][j] = acc[i][j] + c * op[i][j]
            return acc

        dt = combine(contract, tvec)
        lv = combine(wedge, vvec)
        zero = [[F.zero()] * dim for _ in range(dim)]
        assert linalg.matmul(dt, dt, F) == zero
        assert linalg.matmul(lv, lv, F) == zero
        s = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(dt, lv)]
        pairing = sum((tc * vc for tc, vc in zip(tvec, vvec)), F.zero())
        sq = linalg.matmul(s, s, F)
        for i in range(dim):
            for j in range(dim):
                assert sq[i][j] == (pairing if i == j else F.zero())


def test_sum_isomorphism_rank_one_pair():
    a, b = Fraction(2), Fraction(5)
    si = sum_isomorphism(DiagonalForm((a,), F), DiagonalForm((b,), F))
    assert si.morphism.is_isomorphism()
    # the image of e1 e2 squares to -ab, matching C0(<a,b>)
    total = even_clifford(DiagonalForm((a, b), F))
    c, _ = total.mul_masks(0b11, 0b11)
    vec = [F.one() if m == 0b11 else F.zero() for m in total.masks]
    gen = si.morphism.apply(vec)
    sq = si.target.mul(gen, gen)
    assert si.target.is_scalar(sq) == c == -a * b


def test_sum_isomorphism_rank_pairs():
    rng = random.Random(28)
    for n1, n2 in ((2, 2), (2, 4), (4, 2), (3, 3), (1, 5)):
        q1 = random_regular_diagonal(rng, F, n1)
        q2 = random_regular_diagonal(rng, F, n2)
        si = sum_isomorphism(q1, q2)
        assert si.morphism.is_isomorphism()
    f7 = GF(7)
    q1 = random_regular_diagonal(rng, f7, 2)
    q2 = random_regular_diagonal(rng, f7, 3)
    assert sum_isomorphism(q1, q2).morphism.is_isomorphism()


def test_base_change():
    rm = reduction_mod_p(5)
    d = base_change(diag(1, -1), rm)
    assert d.entries[1].v == 4
    assert tables_commute(diag(1, -1, 2, 3), rm)
    with pytest.raises(DegenerateFormError):
        base_change(diag(5), rm)
    with pytest.raises(DegenerateFormError):
        base_change(DiagonalForm((Fraction(1, 5),), F), rm)


def test_top_monomial_square_is_signed_det():
    rng = random.Random(30)
    for _ in range(20):
        form = random_regular_diagonal(rng, F, 2 * rng.randint(1, 3))
        ec = EvenClifford(form)
        c, m = ec.mul_masks(ec.top_mask(), ec.top_mask())
        assert m == 0 and c == signed_det(form)
