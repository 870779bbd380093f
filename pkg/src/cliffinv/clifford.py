"""Even Clifford algebra and Clifford bimodule of a regular diagonal form.

For a diagonal form <a_1, ..., a_n> the generators rewrite by
e_i e_j = -e_j e_i (i != j) and e_i e_i = a_i, so basis monomials are
indexed by subsets of {1..n} held as bitmasks: even subsets span the
even algebra, odd subsets the bimodule.  Non-diagonal Gram matrices are
routed through diagonalisation first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import linalg
from .algebras import AlgebraMorphism, StructureAlgebra, center
from .errors import CliffinvError, DegenerateFormError
from .forms import DiagonalForm, QuadraticForm, diagonalize, hyperbolic, signed_det

MAX_RANK = 7


def _mul_masks(s: int, t: int, entries, field):
    """Product of basis monomials: e_S e_T = coef * e_(S xor T)."""
    inv = 0
    tt = t
    while tt:
        j = (tt & -tt).bit_length() - 1
        inv += (s >> (j + 1)).bit_count()
        tt &= tt - 1
    coef = field.one() if inv % 2 == 0 else -field.one()
    common = s & t
    while common:
        i = (common & -common).bit_length() - 1
        coef = coef * entries[i]
        common &= common - 1
    return coef, s ^ t


def _mask_label(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i + 1) for i in range(mask.bit_length()) if mask >> i & 1)


def _masks_by_parity(n: int, parity: int):
    masks = [m for m in range(1 << n) if m.bit_count() % 2 == parity]
    masks.sort(key=lambda m: (m.bit_count(), m))
    return tuple(masks)


class EvenClifford:
    """dim 2^(n-1) algebra on even-subset monomials of a diagonal form."""

    def __init__(self, form: DiagonalForm):
        if form.rank > MAX_RANK:
            raise ValueError(f"rank {form.rank} beyond supported {MAX_RANK}")
        if form.field.char == 2:
            raise CliffinvError("2 must be invertible in the base")
        self.form = form
        self.field = form.field
        self.n = form.rank
        self.masks = _masks_by_parity(self.n, 0)
        self.index = {m: i for i, m in enumerate(self.masks)}
        self.dim = len(self.masks)
        self._check_generator_relations()

    def _check_generator_relations(self):
        a = self.form.entries
        f = self.field
        for i in range(self.n):
            c, m = _mul_masks(1 << i, 1 << i, a, f)
            if m != 0 or c != a[i]:
                raise CliffinvError("generator square relation failed")
            for j in range(i + 1, self.n):
                for k in range(j + 1, self.n):
                    c1, m1 = _mul_masks((1 << i) | (1 << j), (1 << j) | (1 << k), a, f)
                    if m1 != (1 << i) | (1 << k) or c1 != a[j]:
                        raise CliffinvError("pair contraction relation failed")

    def mul_masks(self, s, t):
        return _mul_masks(s, t, self.form.entries, self.field)

    def mul_coords(self, x, y):
        out = [self.field.zero()] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            si = self.masks[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c, m = self.mul_masks(si, self.masks[j])
                k = self.index[m]
                out[k] = out[k] + xi * yj * c
        return out

    def unit_coords(self):
        v = [self.field.zero()] * self.dim
        v[self.index[0]] = self.field.one()
        return v

    def embed_pair(self, i: int, j: int):
        """Coordinates of the generator image of e_i (x) e_j."""
        v = [self.field.zero()] * self.dim
        if i == j:
            v[self.index[0]] = self.form.entries[i]
        elif i < j:
            v[self.index[(1 << i) | (1 << j)]] = self.field.one()
        else:
            v[self.index[(1 << i) | (1 << j)]] = -self.field.one()
        return v

    def generators(self):
        return [
            self.embed_pair(i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
        ]

    @cached_property
    def algebra(self) -> StructureAlgebra:
        zero = self.field.zero()
        table = []
        for s in self.masks:
            plane = []
            for t in self.masks:
                row = [zero] * self.dim
                c, m = self.mul_masks(s, t)
                row[self.index[m]] = c
                plane.append(row)
            table.append(plane)
        labels = tuple(_mask_label(m) for m in self.masks)
        return StructureAlgebra(self.field, labels, table, self.unit_coords())

    def top_mask(self) -> int:
        return (1 << self.n) - 1


class CliffordBimodule:
    """Odd-subset monomials with the two-sided even-algebra action."""

    def __init__(self, even: EvenClifford):
        self.even = even
        self.field = even.field
        self.n = even.n
        self.masks = _masks_by_parity(self.n, 1)
        self.index = {m: i for i, m in enumerate(self.masks)}
        self.dim = len(self.masks)

    def embed_vector(self, i: int):
        v = [self.field.zero()] * self.dim
        v[self.index[1 << i]] = self.field.one()
        return v

    def left_act(self, even_coords, odd_coords):
        """x * m with x in the even algebra."""
        out = [self.field.zero()] * self.dim
        for i, xi in enumerate(even_coords):
            if not xi:
                continue
            si = self.even.masks[i]
            for j, yj in enumerate(odd_coords):
                if not yj:
                    continue
                c, m = self.even.mul_masks(si, self.masks[j])
                out[self.index[m]] = out[self.index[m]] + xi * yj * c
        return out

    def right_act(self, odd_coords, even_coords):
        """m . x with x in the even algebra."""
        out = [self.field.zero()] * self.dim
        for j, yj in enumerate(odd_coords):
            if not yj:
                continue
            sj = self.masks[j]
            for i, xi in enumerate(even_coords):
                if not xi:
                    continue
                c, m = self.even.mul_masks(sj, self.even.masks[i])
                out[self.index[m]] = out[self.index[m]] + xi * yj * c
        return out

    def left_action_matrix(self, even_coords):
        cols = [self.left_act(even_coords, bv) for bv in _basis_vecs(self.dim, self.field)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def mult(self, x, y):
        """The pairing m: C1 x C1 -> C0 (value line trivialised)."""
        ev = self.even
        out = [self.field.zero()] * ev.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            si = self.masks[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c, m = ev.mul_masks(si, self.masks[j])
                out[ev.index[m]] = out[ev.index[m]] + xi * yj * c
        return out


def _basis_vecs(dim, field):
    for i in range(dim):
        v = [field.zero()] * dim
        v[i] = field.one()
        yield v


def even_clifford(form) -> EvenClifford:
    """Even Clifford algebra; non-diagonal input is diagonalised first."""
    if isinstance(form, QuadraticForm):
        form, _ = diagonalize(form)
    return EvenClifford(form)


def clifford_bimodule(form) -> CliffordBimodule:
    if isinstance(form, QuadraticForm):
        form, _ = diagonalize(form)
    return CliffordBimodule(EvenClifford(form))


def bimodule_mult(bimod: CliffordBimodule, x, y):
    return bimod.mult(x, y)


def canonical_involution(ec: EvenClifford):
    """Matrix of the word-reversal involution on the monomial basis."""
    zero, one = ec.field.zero(), ec.field.one()
    mat = [[zero] * ec.dim for _ in range(ec.dim)]
    for i, m in enumerate(ec.masks):
        k = m.bit_count()
        sign = one if (k * (k - 1) // 2) % 2 == 0 else -one
        mat[i][i] = sign
    return mat


@dataclass(frozen=True)
class DiscriminantAlgebra:
    """The centre of the even Clifford algebra of an even-rank form."""

    field: object
    delta: object
    split: bool

    def __repr__(self):
        return f"DiscriminantAlgebra(x^2 - ({self.delta}), split={self.split})"


def discriminant_algebra(form) -> DiscriminantAlgebra:
    """Centre presented as F[x]/(x^2 - delta), delta the signed discriminant."""
    if isinstance(form, QuadraticForm):
        form, _ = diagonalize(form)
    if form.rank % 2:
        raise ValueError("discriminant algebra needs even rank (odd rank has scalar centre)")
    ec = EvenClifford(form)
    delta = signed_det(form)
    # the top monomial squares to exactly the signed determinant
    c, m = ec.mul_masks(ec.top_mask(), ec.top_mask())
    if m != 0 or c != delta:
        raise CliffinvError("centre generator square disagrees with the discriminant")
    cen = center(ec.algebra, ec.generators())
    if len(cen) != 2:
        raise CliffinvError("centre of an even-rank even Clifford algebra must have dim 2")
    return DiscriminantAlgebra(form.field, delta, bool(form.field.is_square(delta)))


@dataclass
class SplitComponents:
    plus: StructureAlgebra
    minus: StructureAlgebra
    plus_basis: list
    minus_basis: list
    idempotent_plus: list
    idempotent_minus: list


def split_components(form_or_ec) -> SplitComponents:
    """Cut C0 into its two factors along the split centre.

    The labelling is deterministic: the plus factor contains the
    idempotent (1 + z)/2 where z is the top monomial scaled so z^2 = 1
    by the canonical square root (positive over Q, least residue over
    F_p).
    """
    ec = form_or_ec if isinstance(form_or_ec, EvenClifford) else even_clifford(form_or_ec)
    if ec.n % 2:
        raise ValueError("splitting needs even rank")
    delta = signed_det(ec.form)
    root = ec.field.sqrt(delta)
    if root is None or not root:
        raise CliffinvError("centre is nonsplit; discriminant is not a square")
    field = ec.field
    half = field.one() / field.from_int(2)
    zt_coeff = half / root
    e_plus = [field.zero()] * ec.dim
    e_plus[ec.index[0]] = half
    e_plus[ec.index[ec.top_mask()]] = zt_coeff
    e_minus = [u - v for u, v in zip(ec.unit_coords(), e_plus)]
    alg = ec.algebra
    comps = []
    bases = []
    for e in (e_plus, e_minus):
        vecs = [alg.mul(e, bv) for bv in _basis_vecs(ec.dim, field)]
        basis = linalg.column_space_basis(vecs, field)
        if len(basis) != ec.dim // 2:
            raise CliffinvError("component has unexpected dimension")
        express = linalg.coordinate_solver(basis, field)
        m = len(basis)
        zero = field.zero()
        table = []
        for i in range(m):
            plane = []
            for j in range(m):
                prod = alg.mul(basis[i], basis[j])
                coords = express(prod)
                if coords is None:
                    raise CliffinvError("component product escaped the component")
                plane.append(coords)
            table.append(plane)
        unit_coords = express(e)
        if unit_coords is None:
            raise CliffinvError("idempotent outside its own component")
        labels = tuple(f"c{i}" for i in range(m))
        comps.append(StructureAlgebra(field, labels, table, unit_coords))
        bases.append(basis)
    return SplitComponents(comps[0], comps[1], bases[0], bases[1], e_plus, e_minus)


def base_change(form: DiagonalForm, ring_map) -> DiagonalForm:
    """Entrywise image of the form under a ring map; kills nothing."""
    entries = []
    for a in form.entries:
        img = ring_map.apply(a)
        if not img:
            raise DegenerateFormError("base change sends an entry to zero")
        entries.append(img)
    return DiagonalForm(tuple(entries), ring_map.target)


@dataclass(frozen=True)
class RingMap:
    source: object
    target: object
    fn: object

    def apply(self, x):
        return self.fn(x)


def reduction_mod_p(p: int) -> RingMap:
    """Q -> F_p on p-integral rationals."""
    from .scalars import GF, QQ

    target = GF(p)

    def fn(x):
        from fractions import Fraction

        x = Fraction(x)
        if x.denominator % p == 0:
            raise DegenerateFormError(f"denominator not invertible mod {p}")
        return target.from_int(x.numerator) / target.from_int(x.denominator)

    return RingMap(QQ, target, fn)


def tables_commute(form: DiagonalForm, ring_map) -> bool:
    """Does the even Clifford table commute with the base change?"""
    ec = EvenClifford(form)
    ec2 = EvenClifford(base_change(form, ring_map))
    for s in ec.masks:
        for t in ec.masks:
            c, m = ec.mul_masks(s, t)
            c2, m2 = ec2.mul_masks(s, t)
            if m != m2 or ring_map.apply(c) != c2:
                return False
    return True


# ---------------------------------------------------------------------------
# Hyperbolic exterior model


def _contraction_matrix(i, masks, index, field):
    """Interior product by the i-th dual basis vector on the exterior algebra."""
    zero = field.zero()
    dim = len(masks)
    mat = [[zero] * dim for _ in range(dim)]
    for col, m in enumerate(masks):
        if m >> i & 1:
            pos = sum(1 for b in range(i) if m >> b & 1)
            sign = field.one() if pos % 2 == 0 else -field.one()
            mat[index[m ^ (1 << i)]][col] = sign
    return mat


def _wedge_matrix(i, masks, index, field):
    """Left exterior multiplication by the i-th basis vector."""
    zero = field.zero()
    dim = len(masks)
    mat = [[zero] * dim for _ in range(dim)]
    for col, m in enumerate(masks):
        if not (m >> i & 1):
            pos = sum(1 for b in range(i) if m >> b & 1)
            sign = field.one() if pos % 2 == 0 else -field.one()
            mat[index[m | (1 << i)]][col] = sign
    return mat


def exterior_operators(r: int, field):
    """Contraction and wedge matrices on the full exterior algebra.

    Returns (masks, contractions, wedges) with masks ordered by degree
    then value; operator index i refers to the i-th basis vector of the
    underlying rank-r module.
    """
    masks = sorted(range(1 << r), key=lambda m: (m.bit_count(), m))
    index = {m: i for i, m in enumerate(masks)}
    contract = [_contraction_matrix(i, masks, index, field) for i in range(r)]
    wedge = [_wedge_matrix(i, masks, index, field) for i in range(r)]
    return masks, contract, wedge


def product_algebra(a: StructureAlgebra, b: StructureAlgebra) -> StructureAlgebra:
    """Direct product A x B with componentwise multiplication."""
    if a.field != b.field:
        raise ValueError("product needs a common base field")
    field = a.field
    dim = a.dim + b.dim
    zero = field.zero()
    table = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            for k, c in enumerate(a.table[i][j]):
                if c:
                    table[i][j][k] = c
    for i in range(b.dim):
        for j in range(b.dim):
            for k, c in enumerate(b.table[i][j]):
                if c:
                    table[a.dim + i][a.dim + j][a.dim + k] = c
    labels = tuple(f"L.{x}" for x in a.labels) + tuple(f"R.{x}" for x in b.labels)
    unit = list(a.unit) + list(b.unit)
    return StructureAlgebra(field, labels, table, unit)


@dataclass
class HyperbolicModel:
    rank: int
    field: object
    form: QuadraticForm
    even: EvenClifford
    bimodule: CliffordBimodule
    plus_masks: tuple
    minus_masks: tuple
    clifford_ops: list  # operator matrices of the diagonalised generators
    phi0: AlgebraMorphism
    phi1_matrix: list
    target: StructureAlgebra


def hyperbolic_model(r: int, field=None) -> HyperbolicModel:
    """Even Clifford algebra of the rank-2r hyperbolic form as operators
    on the parity-graded exterior algebra, with the odd part as the two
    Hom blocks.

    The generator t_i + v_j acts by contraction plus left wedging, so
    squares match the hyperbolic pairing; the assembled map is certified
    to be a bijective algebra homomorphism before being returned.
    """
    from .scalars import QQ

    field = field or QQ
    if r < 1 or r > 4:
        raise ValueError("rank parameter r must be between 1 and 4")
    h = hyperbolic(r, field)
    diag, pmat = diagonalize(h)
    ec = EvenClifford(diag)
    bim = CliffordBimodule(ec)

    all_masks = sorted(range(1 << r), key=lambda m: (m.bit_count(), m))
    full_index = {m: i for i, m in enumerate(all_masks)}
    contract = [_contraction_matrix(i, all_masks, full_index, field) for i in range(r)]
    wedge = [_wedge_matrix(i, all_masks, full_index, field) for i in range(r)]

    n = 2 * r
    ops = []
    for k in range(n):
        acc = [[field.zero()] * (1 << r) for _ in range(1 << r)]
        for i in range(n):
            c = pmat[i][k]
            if not c:
                continue
            base = contract[i] if i < r else wedge[i - r]
            for rr in range(1 << r):
                row = base[rr]
                arow = acc[rr]
                for cc in range(1 << r):
                    if row[cc]:
                        arow[cc] = arow[cc] + c * row[cc]
        ops.append(acc)

    # Clifford relations for the operator assignment
    for k in range(n):
        sq = linalg.matmul(ops[k], ops[k], field)
        expect = diag.entries[k]
        for i in range(1 << r):
            for j in range(1 << r):
                want = expect if i == j else field.zero()
                if sq[i][j] != want:
                    raise CliffinvError("operator square violates the form")
    for k in range(n):
        for l in range(k + 1, n):
            anti = linalg.matmul(ops[k], ops[l], field)
            anti2 = linalg.matmul(ops[l], ops[k], field)
            for i in range(1 << r):
                for j in range(1 << r):
                    if anti[i][j] + anti2[i][j]:
                        raise CliffinvError("operators fail to anticommute")

    plus_masks = tuple(m for m in all_masks if m.bit_count() % 2 == 0)
    minus_masks = tuple(m for m in all_masks if m.bit_count() % 2 == 1)
    plus_pos = {m: i for i, m in enumerate(plus_masks)}
    minus_pos = {m: i for i, m in enumerate(minus_masks)}
    mdim = 1 << (r - 1)

    def op_product(mask):
        mat = linalg.identity(1 << r, field)
        for b in range(n):
            if mask >> b & 1:
                mat = linalg.matmul(mat, ops[b], field)
        return mat

    def even_blocks(mat):
        plus = [[mat[full_index[mi]][full_index[mj]] for mj in plus_masks] for mi in plus_masks]
        minus = [[mat[full_index[mi]][full_index[mj]] for mj in minus_masks] for mi in minus_masks]
        return plus, minus

    def odd_blocks(mat):
        to_minus = [[mat[full_index[mi]][full_index[mj]] for mj in plus_masks] for mi in minus_masks]
        to_plus = [[mat[full_index[mi]][full_index[mj]] for mj in minus_masks] for mi in plus_masks]
        return to_minus, to_plus

    from .algebras import matrix_algebra

    target = product_algebra(matrix_algebra(mdim, field), matrix_algebra(mdim, field))

    cols0 = []
    for m in ec.masks:
        mat = op_product(m)
        for mi in plus_masks:
            for mj in minus_masks:
                if mat[full_index[mi]][full_index[mj]] or mat[full_index[mj]][full_index[mi]]:
                    raise CliffinvError("even operator mixes parity blocks")
        plus, minus = even_blocks(mat)
        flat = [plus[i][j] for i in range(mdim) for j in range(mdim)]
        flat += [minus[i][j] for i in range(mdim) for j in range(mdim)]
        cols0.append(flat)
    phi0_matrix = [[cols0[j][i] for j in range(ec.dim)] for i in range(target.dim)]
    phi0 = AlgebraMorphism(ec.algebra, target, tuple(tuple(r_) for r_ in phi0_matrix))
    if not phi0.is_isomorphism():
        raise CliffinvError("hyperbolic model map failed certification")

    cols1 = []
    for m in bim.masks:
        mat = op_product(m)
        to_minus, to_plus = odd_blocks(mat)
        flat = [to_minus[i][j] for i in range(mdim) for j in range(mdim)]
        flat += [to_plus[i][j] for i in range(mdim) for j in range(mdim)]
        cols1.append(flat)
    phi1_matrix = [[cols1[j][i] for j in range(bim.dim)] for i in range(2 * mdim * mdim)]
    if linalg.rank(phi1_matrix, field) != bim.dim:
        raise CliffinvError("odd-part map is not bijective")

    model = HyperbolicModel(
        rank=r,
        field=field,
        form=h,
        even=ec,
        bimodule=bim,
        plus_masks=plus_masks,
        minus_masks=minus_masks,
        clifford_ops=ops,
        phi0=phi0,
        phi1_matrix=phi1_matrix,
        target=target,
    )
    _certify_phi1_equivariance(model)
    return model


def _phi1_apply(model: HyperbolicModel, odd_coords):
    field = model.field
    out = [field.zero()] * len(model.phi1_matrix)
    for j, c in enumerate(odd_coords):
        if c:
            for i in range(len(out)):
                if model.phi1_matrix[i][j]:
                    out[i] = out[i] + c * model.phi1_matrix[i][j]
    return out


def _certify_phi1_equivariance(model: HyperbolicModel):
    """phi1 of the module actions must match operator composition."""
    field = model.field
    mdim = 1 << (model.rank - 1)
    ec, bim = model.even, model.bimodule

    def unflatten(vec):
        to_minus = [vec[i * mdim : (i + 1) * mdim] for i in range(mdim)]
        off = mdim * mdim
        to_plus = [vec[off + i * mdim : off + (i + 1) * mdim] for i in range(mdim)]
        return to_minus, to_plus

    def phi0_blocks(even_coords):
        img = model.phi0.apply(even_coords)
        plus = [img[i * mdim : (i + 1) * mdim] for i in range(mdim)]
        off = mdim * mdim
        minus = [img[off + i * mdim : off + (i + 1) * mdim] for i in range(mdim)]
        return plus, minus

    for ei in range(ec.dim):
        e = [field.zero()] * ec.dim
        e[ei] = field.one()
        pb, mb = phi0_blocks(e)
        for oi in range(bim.dim):
            o = [field.zero()] * bim.dim
            o[oi] = field.one()
            tm, tp = unflatten(_phi1_apply(model, o))
            # left action: operators compose on the left
            lm, lp = unflatten(_phi1_apply(model, bim.left_act(e, o)))
            if lm != linalg.matmul(mb, tm, field) or lp != linalg.matmul(pb, tp, field):
                raise CliffinvError("odd map fails left equivariance")
            rm, rp = unflatten(_phi1_apply(model, bim.right_act(o, e)))
            if rm != linalg.matmul(tm, pb, field) or rp != linalg.matmul(tp, mb, field):
                raise CliffinvError("odd map fails right equivariance")


# ---------------------------------------------------------------------------
# Orthogonal sum isomorphism


@dataclass
class SumIsomorphism:
    morphism: AlgebraMorphism
    target: StructureAlgebra
    left: EvenClifford
    right: EvenClifford


def sum_isomorphism(q1: DiagonalForm, q2: DiagonalForm) -> SumIsomorphism:
    """The canonical map from C0 of an orthogonal sum onto
    C0 (x) C0' + C1 (x) C1', certified as a bijective homomorphism.

    The target multiplication uses the factor products on the even
    block, the bimodule actions between blocks, and the pairing with a
    sign on odd (x) odd times odd (x) odd.
    """
    if q1.field != q2.field:
        raise ValueError("summands must share a base field")
    field = q1.field
    n1, n2 = q1.rank, q2.rank
    total = DiagonalForm(q1.entries + q2.entries, field)
    ec = EvenClifford(total)

    e1, e2 = EvenClifford(q1), EvenClifford(q2)
    b1, b2 = CliffordBimodule(e1), CliffordBimodule(e2)

    # target basis: even (x) even block then odd (x) odd block
    block0 = [(s, t) for s in e1.masks for t in e2.masks]
    block1 = [(s, t) for s in b1.masks for t in b2.masks]
    dim0 = len(block0)
    dim = dim0 + len(block1)
    pos0 = {p: i for i, p in enumerate(block0)}
    pos1 = {p: dim0 + i for i, p in enumerate(block1)}
    zero = field.zero()

    def mul_basis(i, j):
        out = [zero] * dim
        li = block0[i] if i < dim0 else block1[i - dim0]
        lj = block0[j] if j < dim0 else block1[j - dim0]
        ei, oi = i < dim0, j < dim0
        c1, m1 = _mul_masks(li[0], lj[0], q1.entries, field)
        c2, m2 = _mul_masks(li[1], lj[1], q2.entries, field)
        c = c1 * c2
        if not ei and not oi:
            c = -c  # pairing of two odd (x) odd elements
        if ei == oi:
            out[pos0[(m1, m2)]] = c
        else:
            out[pos1[(m1, m2)]] = c
        return out

    table = [[mul_basis(i, j) for j in range(dim)] for i in range(dim)]
    unit = [zero] * dim
    unit[pos0[(0, 0)]] = field.one()
    labels = tuple(
        f"{_mask_label(s)}(x){_mask_label(t)}" for s, t in block0
    ) + tuple(f"{_mask_label(s)}(x){_mask_label(t)}'" for s, t in block1)
    target = StructureAlgebra(field, labels, table, unit)

    def gen_image(i, j):
        """Image of the generator e_i e_j (i < j) of the big algebra."""
        v = [zero] * dim
        if j < n1:
            v[pos0[((1 << i) | (1 << j), 0)]] = field.one()
        elif i >= n1:
            v[pos0[(0, (1 << (i - n1)) | (1 << (j - n1)))]] = field.one()
        else:
            v[pos1[(1 << i, 1 << (j - n1))]] = field.one()
        return v

    cols = []
    for m in ec.masks:
        idxs = [b for b in range(n1 + n2) if m >> b & 1]
        img = list(unit)
        for a, b in zip(idxs[0::2], idxs[1::2]):
            img = target.mul(img, gen_image(a, b))
        cols.append(img)
    matrix = tuple(tuple(cols[j][i] for j in range(ec.dim)) for i in range(dim))
    morphism = AlgebraMorphism(ec.algebra, target, matrix)
    return SumIsomorphism(morphism, target, e1, e2)
