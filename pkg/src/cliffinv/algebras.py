"""Finite-dimensional algebras given by exact structure constants.

The table convention is e_i e_j = sum_k table[i][j][k] e_k.  Dimension
is capped at 64, which is all the even Clifford algebras up to rank 7
need.  Isomorphism testing is deliberately not general: quaternions go
through ramification data, etale quadratic algebras through their
discriminant, split matrix algebras through explicit certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import CliffinvError, SearchExhausted, UnsupportedBase
from .forms import DiagonalForm, is_isotropic
from .scalars import PrimeField, RationalField

MAX_DIM = 64


class StructureAlgebra:
    def __init__(self, field, labels, table, unit, involution=None):
        self.field = field
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        if self.dim > MAX_DIM:
            raise ValueError(f"dimension {self.dim} exceeds cap {MAX_DIM}")
        self.table = tuple(tuple(tuple(row) for row in plane) for plane in table)
        self.unit = tuple(unit)
        self.involution = None if involution is None else tuple(tuple(r) for r in involution)

    def zero_vec(self):
        return [self.field.zero()] * self.dim

    def basis_vec(self, i):
        v = self.zero_vec()
        v[i] = self.field.one()
        return v

    def mul(self, x, y):
        out = self.zero_vec()
        for i, xi in enumerate(x):
            if not xi:
                continue
            ti = self.table[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, t in enumerate(ti[j]):
                    if t:
                        out[k] = out[k] + c * t
        return out

    def scalar_mul(self, c, x):
        return [c * v for v in x]

    def add(self, x, y):
        return [a + b for a, b in zip(x, y)]

    def sub(self, x, y):
        return [a - b for a, b in zip(x, y)]

    def left_mult_matrix(self, x):
        """Matrix of y -> x*y on the basis."""
        cols = [self.mul(x, self.basis_vec(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def apply_involution(self, x):
        if self.involution is None:
            raise CliffinvError("algebra carries no involution")
        return linalg.matvec([list(r) for r in self.involution], list(x), self.field)

    def is_scalar(self, x):
        """If x = c * unit return c, else None."""
        unit = self.unit
        pivot = next((i for i, u in enumerate(unit) if u), None)
        c = x[pivot] / unit[pivot]
        for a, u in zip(x, unit):
            if a != c * u:
                return None
        return c

    def validate_unit(self) -> bool:
        for i in range(self.dim):
            e = self.basis_vec(i)
            if self.mul(list(self.unit), e) != e or self.mul(e, list(self.unit)) != e:
                return False
        return True

    def __repr__(self):
        return f"StructureAlgebra(dim={self.dim}, field={self.field!r})"


@dataclass
class AlgebraMorphism:
    """Linear map between algebras, stored as target_dim x source_dim."""

    source: StructureAlgebra
    target: StructureAlgebra
    matrix: tuple

    def apply(self, x):
        return linalg.matvec([list(r) for r in self.matrix], list(x), self.source.field)

    def preserves_unit(self) -> bool:
        return self.apply(list(self.source.unit)) == list(self.target.unit)

    def is_multiplicative(self) -> bool:
        src = self.source
        for i in range(src.dim):
            fi = self.apply(src.basis_vec(i))
            for j in range(src.dim):
                lhs = self.apply(src.mul(src.basis_vec(i), src.basis_vec(j)))
                rhs = self.target.mul(fi, self.apply(src.basis_vec(j)))
                if lhs != rhs:
                    return False
        return True

    def is_bijective(self) -> bool:
        if self.source.dim != self.target.dim:
            return False
        return linalg.rank([list(r) for r in self.matrix], self.source.field) == self.source.dim

    def is_isomorphism(self) -> bool:
        return self.preserves_unit() and self.is_bijective() and self.is_multiplicative()


def check_associative(a: StructureAlgebra) -> bool:
    return associativity_witness(a) is None


def associativity_witness(a: StructureAlgebra):
    """First basis triple (i, j, k) violating associativity, or None."""
    for i in range(a.dim):
        for j in range(a.dim):
            ij = a.table[i][j]
            for k in range(a.dim):
                left = a.zero_vec()
                for m, c in enumerate(ij):
                    if c:
                        for s, t in enumerate(a.table[m][k]):
                            if t:
                                left[s] = left[s] + c * t
                right = a.zero_vec()
                for m, c in enumerate(a.table[j][k]):
                    if c:
                        for s, t in enumerate(a.table[i][m]):
                            if t:
                                right[s] = right[s] + c * t
                if left != right:
                    return (i, j, k)
    return None


def center(a: StructureAlgebra, generators=None):
    """Basis of the centre, solved as an exact linear system.

    With a generating set the commutation equations are only posed
    against those elements, which keeps Clifford-sized systems cheap.
    """
    gens = generators if generators is not None else [a.basis_vec(i) for i in range(a.dim)]
    rows = []
    for g in gens:
        # coefficient of x_t in coordinate s of [x, g]
        lm = {}
        for t in range(a.dim):
            prod_tg = a.mul(a.basis_vec(t), g)
            prod_gt = a.mul(g, a.basis_vec(t))
            for s in range(a.dim):
                c = prod_tg[s] - prod_gt[s]
                if c:
                    lm.setdefault(s, {})[t] = c
        rows.extend(lm.values())
    return linalg.nullspace_sparse(rows, a.dim, a.field)


def central_idempotents(a: StructureAlgebra, generators=None):
    """All solutions of z^2 = z in the centre (centre dimension <= 2).

    Split quadratic centre gives four idempotents, nonsplit gives just
    0 and 1.  Output order is deterministic.
    """
    c = center(a, generators)
    zero = a.zero_vec()
    unit = list(a.unit)
    if len(c) == 1:
        return [zero, unit]
    if len(c) != 2:
        raise UnsupportedBase(f"centre of dimension {len(c)} out of supported scope")
    z = c[0]
    if a.is_scalar(z) is not None:
        z = c[1]
    zsq = a.mul(z, z)
    coeffs = linalg.solve(
        [[unit[i], z[i]] for i in range(a.dim)], zsq, a.field
    )
    if coeffs is None:
        raise CliffinvError("centre element fails its own quadratic relation")
    s, t = coeffs
    disc = t * t + a.field.from_int(4) * s
    root = a.field.sqrt(disc)
    if root is None or not root:
        return [zero, unit]
    beta = a.field.one() / root
    half = a.field.one() / a.field.from_int(2)
    out = []
    for b in (beta, -beta):
        alpha = (a.field.one() - b * t) * half
        e = [alpha * u + b * zz for u, zz in zip(unit, z)]
        out.append(e)
    out.sort(key=lambda v: tuple(a.field.elt_to_str(x) for x in v))
    return [zero, unit] + out


def matrix_algebra(n: int, field) -> StructureAlgebra:
    labels = [f"E{i+1}{j+1}" for i in range(n) for j in range(n)]
    dim = n * n
    zero, one = field.zero(), field.one()
    table = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        table[i * n + j][k * n + l][i * n + l] = one
    unit = [one if i == j else zero for i in range(n) for j in range(n)]
    return StructureAlgebra(field, labels, table, unit)


def opposite(a: StructureAlgebra) -> StructureAlgebra:
    table = [
        [[a.table[j][i][k] for k in range(a.dim)] for j in range(a.dim)]
        for i in range(a.dim)
    ]
    return StructureAlgebra(a.field, a.labels, table, a.unit, a.involution)


def tensor(a: StructureAlgebra, b: StructureAlgebra) -> StructureAlgebra:
    if a.field != b.field:
        raise ValueError("tensor product needs a common base field")
    field = a.field
    dim = a.dim * b.dim
    labels = [f"{la}(x){lb}" for la in a.labels for lb in b.labels]
    zero = field.zero()
    table = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    for i1 in range(a.dim):
        for j1 in range(b.dim):
            r = i1 * b.dim + j1
            for i2 in range(a.dim):
                for j2 in range(b.dim):
                    s = i2 * b.dim + j2
                    row = table[r][s]
                    ta = a.table[i1][i2]
                    tb = b.table[j1][j2]
                    for m, ca in enumerate(ta):
                        if not ca:
                            continue
                        base = m * b.dim
                        for n2, cb in enumerate(tb):
                            if cb:
                                row[base + n2] = row[base + n2] + ca * cb
    unit = [zero] * dim
    for i, ua in enumerate(a.unit):
        if not ua:
            continue
        for j, ub in enumerate(b.unit):
            if ub:
                unit[i * b.dim + j] = ua * ub
    inv = None
    if a.involution is not None and b.involution is not None:
        inv = [[zero] * dim for _ in range(dim)]
        for i1 in range(a.dim):
            for j1 in range(b.dim):
                for i2 in range(a.dim):
                    for j2 in range(b.dim):
                        v = a.involution[i1][i2] * b.involution[j1][j2]
                        if v:
                            inv[i1 * b.dim + j1][i2 * b.dim + j2] = v
    return StructureAlgebra(field, labels, table, unit, inv)


def quaternion(a, b, field) -> StructureAlgebra:
    """The quaternion algebra (a, b) with its standard involution."""
    if not a or not b:
        raise ValueError("quaternion parameters must be nonzero")
    zero, one = field.zero(), field.one()
    dim = 4
    t = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]

    def put(i, j, k, c):
        t[i][j][k] = c

    # basis 1, i, j, k
    for m in range(4):
        put(0, m, m, one)
        put(m, 0, m, one)
    put(1, 1, 0, a)
    put(1, 2, 3, one)
    put(1, 3, 2, a)
    put(2, 1, 3, -one)
    put(2, 2, 0, b)
    put(2, 3, 1, -b)
    put(3, 1, 2, -a)
    put(3, 2, 1, b)
    put(3, 3, 0, -(a * b))
    unit = [one, zero, zero, zero]
    inv = [
        [one, zero, zero, zero],
        [zero, -one, zero, zero],
        [zero, zero, -one, zero],
        [zero, zero, zero, -one],
    ]
    alg = StructureAlgebra(field, ("1", "i", "j", "k"), t, unit, inv)
    alg.quaternion_params = (a, b)
    return alg


def reduced_trace(a: StructureAlgebra, x):
    """tr of left multiplication divided by the co-dimension factor 2.

    Valid for four-dimensional central simple algebras, where the left
    regular representation doubles the reduced trace.
    """
    m = a.left_mult_matrix(x)
    tr = a.field.zero()
    for i in range(a.dim):
        tr = tr + m[i][i]
    return tr / a.field.from_int(2)


def _ladder(dim, field, radius):
    """Deterministic small integer coefficient tuples, nonzero first."""
    from itertools import product

    scaled = sorted(
        (max(abs(c) for c in cs), cs)
        for cs in product(range(-radius, radius + 1), repeat=dim)
        if any(cs)
    )
    for _, cs in scaled:
        yield [field.from_int(c) for c in cs]


def find_quaternion_basis(a: StructureAlgebra, radius: int = 3):
    """Quaternion parameters (x^2, y^2) and a standard basis for a.

    Follows the trace-zero recipe: any trace-zero element squares to a
    scalar, so hunt for one with nonzero square, then solve the linear
    anticommutation condition for its partner.
    """
    if a.dim != 4:
        raise UnsupportedBase("quaternion basis extraction needs dimension 4")
    if len(center(a)) != 1:
        raise CliffinvError("algebra is not central")
    field = a.field
    trace_row = [reduced_trace(a, a.basis_vec(i)) for i in range(4)]
    a0 = linalg.nullspace([trace_row], 4, field)
    if len(a0) != 3:
        raise CliffinvError("trace-zero space has unexpected dimension")
    x = alpha = None
    for cs in _ladder(3, field, radius):
        cand = a.zero_vec()
        for c, bvec in zip(cs, a0):
            if c:
                cand = a.add(cand, a.scalar_mul(c, bvec))
        sq = a.mul(cand, cand)
        val = a.is_scalar(sq)
        if val is None:
            raise CliffinvError("trace-zero element with non-scalar square; not quaternion")
        if val:
            x, alpha = cand, val
            break
    if x is None:
        raise SearchExhausted("invertible trace-zero element", radius)
    # anticommutant of x inside the trace-zero space
    rows = []
    for s in range(4):
        row = []
        for bvec in a0:
            anti = a.add(a.mul(x, bvec), a.mul(bvec, x))
            row.append(anti[s])
        rows.append(row)
    w = linalg.nullspace(rows, 3, field)
    if len(w) != 2:
        raise CliffinvError("anticommutant has unexpected dimension")
    wbasis = []
    for coeffs in w:
        vec = a.zero_vec()
        for c, bvec in zip(coeffs, a0):
            if c:
                vec = a.add(vec, a.scalar_mul(c, bvec))
        wbasis.append(vec)
    y = beta = None
    for cs in _ladder(2, field, radius):
        cand = a.zero_vec()
        for c, bvec in zip(cs, wbasis):
            if c:
                cand = a.add(cand, a.scalar_mul(c, bvec))
        sq = a.mul(cand, cand)
        val = a.is_scalar(sq)
        if val is None:
            raise CliffinvError("anticommutant element with non-scalar square")
        if val:
            y, beta = cand, val
            break
    if y is None:
        raise SearchExhausted("anticommuting partner", radius)
    xy = a.mul(x, y)
    basis = [list(a.unit), x, y, xy]
    cols = [[basis[j][i] for j in range(4)] for i in range(4)]
    if linalg.rank(cols, field) != 4:
        raise CliffinvError("extracted quaternion basis is degenerate")
    return alpha, beta, cols


def is_split_quaternion(a: StructureAlgebra) -> bool:
    """True iff the norm form <1, -a, -b, ab> is isotropic."""
    field = a.field
    if isinstance(field, PrimeField):
        return True  # norm form has rank 4 >= 3 over a finite field
    params = getattr(a, "quaternion_params", None)
    if params is None:
        alpha, beta, _ = find_quaternion_basis(a)
        params = (alpha, beta)
    if not isinstance(field, RationalField):
        raise UnsupportedBase("splitness decision over Q and F_p only")
    x, y = params
    norm = DiagonalForm((field.one(), -x, -y, x * y), field)
    return is_isotropic(norm)
