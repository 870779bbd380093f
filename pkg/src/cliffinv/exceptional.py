"""Rank-4 and rank-6 constructions tied to quaternion and biquaternion
algebras: reduced norm forms, Albert (pfaffian) forms, and the round
trips between forms and algebra classes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebras import StructureAlgebra, quaternion, tensor, is_split_quaternion
from .brauer import BrauerClass2, class_of_algebra, class_of_quaternion
from .clifford import split_components
from .errors import CliffinvError, UnsupportedBase
from .forms import DiagonalForm, signed_discriminant
from .invariants import clifford_invariant_class, construct_preimage, e2_of_form
from .scalars import QQ, PrimeField, RationalField

TRIVIAL_LINE = "trivial"


@dataclass
class NormFormData:
    a: object
    b: object
    form: DiagonalForm


@dataclass
class AlbertFormData:
    params: tuple
    form: DiagonalForm


@dataclass
class PfaffianSpaceData:
    ambient: StructureAlgebra  # the degree-4 algebra acting on itself
    psi: list  # involutory endomorphism of the underlying 16-space
    alternating_basis: list  # basis of im(id - psi)


def _norm_value(q: StructureAlgebra, x):
    conj = q.apply_involution(x)
    prod = q.mul(list(x), conj)
    val = q.is_scalar(prod)
    if val is None:
        raise CliffinvError("norm did not land in the scalars")
    return val


def reduced_norm_form(a, b, field=None, samples: int = 20, seed: int = 0) -> NormFormData:
    """<1, -a, -b, ab>, checked against the algebra norm on samples."""
    field = field or QQ
    if not a or not b:
        raise ValueError("nonzero parameters required")
    q = quaternion(a, b, field)
    form = DiagonalForm((field.one(), -a, -b, a * b), field)
    rng = random.Random(seed)
    for _ in range(samples):
        x = [field.from_int(rng.randint(-5, 5)) for _ in range(4)]
        p = [field.from_int(rng.randint(-5, 5)) for _ in range(4)]
        lhs = _norm_value(q, q.mul(x, p))
        rhs = _norm_value(q, x) * _norm_value(q, p)
        if lhs != rhs:
            raise CliffinvError("norm multiplicativity failed on a sample")
        # the diagonal form evaluates the norm in coordinates
        direct = x[0] ** 2 - a * x[1] ** 2 - b * x[2] ** 2 + a * b * x[3] ** 2
        if direct != _norm_value(q, x):
            raise CliffinvError("norm form disagrees with the algebra norm")
    if not signed_discriminant(form).is_trivial:
        raise CliffinvError("norm form must have trivial signed discriminant")
    return NormFormData(a, b, form)


def norm_roundtrip_check(a, b, field=None) -> bool:
    """Both components of C0 of the norm form carry the algebra's class."""
    field = field or QQ
    data = reduced_norm_form(a, b, field)
    sc = split_components(data.form)
    if isinstance(field, PrimeField):
        return is_split_quaternion(sc.plus) and is_split_quaternion(sc.minus)
    if not isinstance(field, RationalField):
        raise UnsupportedBase("round trip over Q or F_p")
    target = class_of_quaternion(a, b)
    return class_of_algebra(sc.plus) == target and class_of_algebra(sc.minus) == target


def albert_form(a, b, c, d, field=None) -> AlbertFormData:
    """<a, b, -ab, -c, -d, cd> for the biquaternion pair (a,b), (c,d)."""
    field = field or QQ
    for x in (a, b, c, d):
        if not x:
            raise ValueError("nonzero parameters required")
    form = DiagonalForm((a, b, -(a * b), -c, -d, c * d), field)
    if not signed_discriminant(form).is_trivial:
        raise CliffinvError("Albert form must have trivial signed discriminant")
    return AlbertFormData((a, b, c, d), form)


def _goldman_terms(q: StructureAlgebra):
    """Terms (coef, basis index) of the element whose sandwich is the

    trace map x -> Trd(x).1; for a quaternion basis these are the basis
    squares' reciprocals halved.
    """
    field = q.field
    half = field.one() / field.from_int(2)
    coefs = []
    for mu in range(4):
        sq = q.mul(q.basis_vec(mu), q.basis_vec(mu))
        val = q.is_scalar(sq)
        if val is None or not val:
            raise CliffinvError("basis vector square is not an invertible scalar")
        coefs.append(half / val)
    return coefs


def _reduced_trace_general(a: StructureAlgebra, x, degree: int):
    m = a.left_mult_matrix(list(x))
    tr = a.field.zero()
    for i in range(a.dim):
        tr = tr + m[i][i]
    return tr / a.field.from_int(a.dim // degree)


def pfaffian_space(a, b, c, d, field=None) -> PfaffianSpaceData:
    """The 6-dimensional alternating space of the biquaternion algebra.

    Builds A = (a,b) (x) (c,d), realises A (x) A on End(A) by
    u (x) v: x -> u x sigma(v) with sigma the product involution, sends
    the trace element across, and checks the image endomorphism psi is
    an involution with rank(id - psi) = 6.
    """
    field = field or QQ
    qb = quaternion(a, b, field)
    qc = quaternion(c, d, field)
    amb = tensor(qb, qc)
    coefs_b = _goldman_terms(qb)
    coefs_c = _goldman_terms(qc)
    # trace element of A as sum over the 16 product basis vectors
    terms = []
    for mu in range(4):
        for nu in range(4):
            terms.append((coefs_b[mu] * coefs_c[nu], mu * 4 + nu))
    # certify: sandwiching without sigma gives the reduced trace map
    for k in range(16):
        x = amb.basis_vec(k)
        acc = amb.zero_vec()
        for coef, idx in terms:
            u = amb.basis_vec(idx)
            acc = amb.add(acc, amb.scalar_mul(coef, amb.mul(amb.mul(u, x), u)))
        expected = amb.scalar_mul(_reduced_trace_general(amb, x, 4), list(amb.unit))
        if acc != expected:
            raise CliffinvError("trace element certification failed")
    # psi(x) = sum coef * u x sigma(u)
    psi_cols = []
    for k in range(16):
        x = amb.basis_vec(k)
        acc = amb.zero_vec()
        for coef, idx in terms:
            u = amb.basis_vec(idx)
            su = amb.apply_involution(u)
            acc = amb.add(acc, amb.scalar_mul(coef, amb.mul(amb.mul(u, x), su)))
        psi_cols.append(acc)
    psi = [[psi_cols[j][i] for j in range(16)] for i in range(16)]
    sq = linalg.matmul(psi, psi, field)
    ident = linalg.identity(16, field)
    if sq != ident:
        raise CliffinvError("trace image is not involutory")
    diff = [[ident[i][j] - psi[i][j] for j in range(16)] for i in range(16)]
    cols = [[diff[i][j] for i in range(16)] for j in range(16)]
    alt = linalg.column_space_basis(cols, field)
    if len(alt) != 6:
        raise CliffinvError(f"alternating space has dimension {len(alt)}, not 6")
    return PfaffianSpaceData(amb, psi, alt)


def pfaffian_roundtrip_check(a, b, c, d, field=None) -> bool:
    """e2 of the Albert form equals the sum of the two quaternion classes.

    The class of the rank-6 form is extracted through Witt reduction and
    component splitting; a rank-4 norm-form witness of the expected
    class is produced independently and the two classes compared.  The
    dim-16 components of the rank-6 even Clifford algebra are built and
    dimension-checked along the way.
    """
    field = field or QQ
    if not isinstance(field, RationalField):
        raise UnsupportedBase("pfaffian round trip over Q")
    data = albert_form(a, b, c, d, field)
    space = pfaffian_space(a, b, c, d, field)
    if len(space.alternating_basis) != 6:
        return False
    sc = split_components(data.form)
    if sc.plus.dim != 16 or sc.minus.dim != 16:
        return False
    expected = class_of_quaternion(a, b) + class_of_quaternion(c, d)
    got = e2_of_form(data.form)
    if got != expected:
        return False
    witness = construct_preimage(expected)
    return e2_of_form(witness) == got and clifford_invariant_class(data.form.entries) == got


def pfaffian_invariant_field(_algebra=None) -> str:
    """Over a field the pfaffian line-class is always trivial."""
    return TRIVIAL_LINE
