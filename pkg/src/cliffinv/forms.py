"""Quadratic forms over a field: diagonalisation, isotropy, Witt theory.

Convention: the stored Gram matrix G is the matrix of the half-polarised
symmetric bilinear form, so q(x) = x^T G x, the polar form is
b_q(x, y) = 2 x^T G y, diagonal entries are the values q(e_i), and the
rank-one form <a> has Gram [a].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import DegenerateFormError, SearchExhausted, UnsupportedBase
from .scalars import (
    GF,
    QQ,
    Place,
    PrimeField,
    QuadraticNumberField,
    RationalField,
    SquareClass,
    hilbert_symbol,
    rational_sqrt,
    square_class,
    support_places,
)

TRIVIAL_LABEL = "trivial"


@dataclass(frozen=True)
class DiagonalForm:
    """<a_1, ..., a_n> with all entries nonzero."""

    entries: tuple
    field: object

    def __post_init__(self):
        for a in self.entries:
            if not a:
                raise DegenerateFormError("diagonal entry is zero")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def to_quadratic(self, value_label: str = TRIVIAL_LABEL) -> "QuadraticForm":
        z = self.field.zero()
        n = self.rank
        gram = tuple(
            tuple(self.entries[i] if i == j else z for j in range(n)) for i in range(n)
        )
        return QuadraticForm(gram, self.field, value_label)


@dataclass(frozen=True)
class QuadraticForm:
    """Symmetric Gram matrix plus the label of the value line."""

    gram: tuple
    field: object
    value_label: str = TRIVIAL_LABEL

    def __post_init__(self):
        n = len(self.gram)
        for row in self.gram:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self):
        return linalg.det([list(r) for r in self.gram], self.field)

    def is_regular(self) -> bool:
        return bool(self.det())


@dataclass(frozen=True)
class Alignment:
    """A square-class twist; over a field just a nonzero scale factor."""

    scale: object

    def __post_init__(self):
        if not self.scale:
            raise ValueError("alignment scale must be nonzero")


@dataclass(frozen=True)
class WittClass:
    """Anisotropic kernel entries plus the split-off hyperbolic count."""

    kernel: tuple
    index: int
    field: object

    @property
    def rank(self) -> int:
        return len(self.kernel) + 2 * self.index

    def is_trivial(self) -> bool:
        return not self.kernel

    def __eq__(self, other):
        if not isinstance(other, WittClass):
            return NotImplemented
        if self.field != other.field:
            return False
        if len(self.kernel) != len(other.kernel):
            return False
        if not self.kernel:
            return True
        return isometric_diagonal(self.kernel, other.kernel, self.field)

    def __hash__(self):
        return hash((self.field, len(self.kernel)))


def _gram_of(q) -> tuple:
    if isinstance(q, DiagonalForm):
        return q.to_quadratic().gram
    return q.gram


def _as_entries(q):
    """Diagonal entries of q, diagonalising first when necessary."""
    if isinstance(q, DiagonalForm):
        return q.entries
    d, _ = diagonalize(q)
    return d.entries


def diagonalize(q: QuadraticForm):
    """Diagonalise by congruence: returns (form, P) with P^T G P diagonal."""
    if isinstance(q, DiagonalForm):
        n = q.rank
        return q, linalg.identity(n, q.field)
    field = q.field
    n = q.rank
    g = [list(r) for r in q.gram]
    p = linalg.identity(n, field)  # columns are the new basis vectors
    cols = [[p[i][j] for i in range(n)] for j in range(n)]

    def add_col(dst, src, c):
        for i in range(n):
            cols[dst][i] = cols[dst][i] + c * cols[src][i]
        for i in range(n):
            g[i][dst] = g[i][dst] + c * g[i][src]
        for j in range(n):
            g[dst][j] = g[dst][j] + c * g[src][j]

    def swap_col(i, j):
        cols[i], cols[j] = cols[j], cols[i]
        for r in g:
            r[i], r[j] = r[j], r[i]
        g[i], g[j] = g[j], g[i]

    for k in range(n):
        if not g[k][k]:
            pivot = next((j for j in range(k + 1, n) if g[j][j]), None)
            if pivot is not None:
                swap_col(k, pivot)
            else:
                off = next((j for j in range(k + 1, n) if g[k][j]), None)
                if off is None:
                    raise DegenerateFormError("form is not regular")
                add_col(k, off, field.one())
        pivot_val = g[k][k]
        for j in range(k + 1, n):
            if g[k][j]:
                add_col(j, k, -(g[k][j] / pivot_val))
    entries = tuple(g[i][i] for i in range(n))
    pmat = [[cols[j][i] for j in range(n)] for i in range(n)]
    return DiagonalForm(entries, field), pmat


def orthogonal_sum(q, q2):
    """Block-diagonal sum; fields and value labels must match."""
    if isinstance(q, DiagonalForm) and isinstance(q2, DiagonalForm):
        if q.field != q2.field:
            raise ValueError("orthogonal sum needs a common base field")
        return DiagonalForm(q.entries + q2.entries, q.field)
    qa = q.to_quadratic() if isinstance(q, DiagonalForm) else q
    qb = q2.to_quadratic() if isinstance(q2, DiagonalForm) else q2
    if qa.field != qb.field:
        raise ValueError("orthogonal sum needs a common base field")
    if qa.value_label != qb.value_label:
        raise ValueError("orthogonal sum needs a common value label")
    z = qa.field.zero()
    n, m = qa.rank, qb.rank
    gram = []
    for i in range(n):
        gram.append(tuple(qa.gram[i]) + (z,) * m)
    for i in range(m):
        gram.append((z,) * n + tuple(qb.gram[i]))
    return QuadraticForm(tuple(gram), qa.field, qa.value_label)


def hyperbolic(r: int, field=QQ) -> QuadraticForm:
    """The rank-2r hyperbolic form on Hom(P, O) + P for free P of rank r."""
    if r < 1:
        raise ValueError("rank parameter must be >= 1")
    z = field.zero()
    half = field.one() / field.from_int(2)
    n = 2 * r
    gram = [[z] * n for _ in range(n)]
    for i in range(r):
        gram[i][r + i] = half
        gram[r + i][i] = half
    return QuadraticForm(tuple(tuple(row) for row in gram), field)


def twist(q, alignment) -> QuadraticForm | DiagonalForm:
    """Scale the form by the alignment's rank-one factor."""
    n = alignment.scale if isinstance(alignment, Alignment) else alignment
    if not n:
        raise ValueError("twist by zero")
    if isinstance(q, DiagonalForm):
        return DiagonalForm(tuple(n * a for a in q.entries), q.field)
    gram = tuple(tuple(n * x for x in row) for row in q.gram)
    return QuadraticForm(gram, q.field, q.value_label)


def signed_discriminant(q) -> SquareClass:
    """(-1)^(n(n-1)/2) det(G) as a square class."""
    return square_class(signed_det(q), _field_of(q))


def signed_det(q):
    """The signed determinant as a scalar (any base field)."""
    field = _field_of(q)
    if isinstance(q, DiagonalForm):
        d = field.one()
        for a in q.entries:
            d = d * a
        n = q.rank
    else:
        d = q.det()
        n = q.rank
    if not d:
        raise DegenerateFormError("form is not regular")
    if (n * (n - 1) // 2) % 2:
        d = -d
    return d


def _field_of(q):
    return q.field


# ---------------------------------------------------------------------------
# Local-global isotropy over Q, direct methods over F_p


def _squarefree_entries(entries):
    """Replace each rational entry by its signed squarefree part."""
    out = []
    scales = []
    for a in entries:
        a = Fraction(a)
        sf = square_class(a).rep
        s = rational_sqrt(a / sf)
        out.append(Fraction(sf))
        scales.append(s)
    return out, scales


def is_local_square(d: Fraction, v: Place) -> bool:
    if v.is_infinite:
        return d > 0
    p = v.p
    e = 0
    num, den = d.numerator, d.denominator
    while num % p == 0:
        num //= p
        e += 1
    while den % p == 0:
        den //= p
        e -= 1
    if e % 2:
        return False
    u = Fraction(num, den)
    if p == 2:
        return (u.numerator * pow(u.denominator, -1, 8)) % 8 == 1
    from .scalars import legendre

    return legendre(u.numerator, p) * legendre(u.denominator, p) == 1


def hasse_invariant(entries, v: Place) -> int:
    """Product of Hilbert symbols (a_i, a_j)_v over i < j."""
    out = 1
    es = [Fraction(a) for a in entries]
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            out *= hilbert_symbol(es[i], es[j], v)
    return out


def _isotropic_locally(entries, v: Place) -> bool:
    n = len(entries)
    if n <= 1:
        return False
    if v.is_infinite:
        return any(a > 0 for a in entries) and any(a < 0 for a in entries)
    d = Fraction(1)
    for a in entries:
        d *= a
    if n == 2:
        return is_local_square(-d, v)
    eps = hasse_invariant(entries, v)
    if n == 3:
        return hilbert_symbol(-1, -d, v) == eps
    if n == 4:
        return (not is_local_square(d, v)) or eps == hilbert_symbol(-1, -1, v)
    return True  # rank >= 5 at a finite place


def is_isotropic(q) -> bool:
    """Does the regular form represent zero nontrivially?

    Over F_p this is the rank/discriminant criterion; over Q it is the
    local-global principle with rank-by-rank local tests.
    """
    field = _field_of(q)
    entries = _as_entries(q)
    n = len(entries)
    if n <= 1:
        return False
    if isinstance(field, PrimeField):
        if n >= 3:
            return True
        return field.is_square(-entries[0] * entries[1])
    if isinstance(field, RationalField):
        sf, _ = _squarefree_entries(entries)
        if n == 2:
            return rational_sqrt(-sf[0] * sf[1]) is not None
        if n >= 5:
            return any(a > 0 for a in sf) and any(a < 0 for a in sf)
        prod = Fraction(1)
        for a in sf:
            prod *= a
        for v in support_places(*sf):
            if not _isotropic_locally(sf, v):
                return False
        return True
    raise UnsupportedBase(
        f"isotropy over {field!r} is not decided here; bounded searches live in dedekind"
    )


def isotropic_vector(q, height: int = 1000):
    """A nonzero vector with q(v) = 0, in the coordinates of q.

    Decision comes first via is_isotropic; the certificate is then found
    by exact square tests on pairs and bounded enumeration on triples.
    Raises SearchExhausted if isotropy holds but no witness appears
    within the height bound.
    """
    field = _field_of(q)
    if not is_isotropic(q):
        raise ValueError("form is anisotropic")
    diag, pmat = diagonalize(q) if not isinstance(q, DiagonalForm) else (q, None)
    entries = diag.entries
    n = len(entries)
    vec = _isotropic_vector_diag(entries, field, height)
    if pmat is not None:
        vec = linalg.matvec(pmat, vec, field)
    return vec


def _isotropic_vector_diag(entries, field, height):
    n = len(entries)
    zero, one = field.zero(), field.one()
    if isinstance(field, PrimeField):
        p = field.p
        for i in range(n):
            for j in range(i + 1, n):
                r = field.sqrt(-entries[i] / entries[j])
                if r is not None:
                    v = [zero] * n
                    v[i], v[j] = one, r
                    return v
        # rank >= 3: solve a x^2 + b y^2 + c = 0 with the third slot at 1
        a, b, c = entries[0], entries[1], entries[2]
        lhs = {}
        for x in range(p):
            fx = a * field.from_int(x) * field.from_int(x)
            lhs.setdefault(fx.v, x)
        for y in range(p):
            w = -(b * field.from_int(y) * field.from_int(y) + c)
            if w.v in lhs:
                v = [zero] * n
                v[0] = field.from_int(lhs[w.v])
                v[1] = field.from_int(y)
                v[2] = one
                return v
        raise SearchExhausted("isotropic vector mod p", p)
    if isinstance(field, RationalField):
        sf, scales = _squarefree_entries(entries)
        for i in range(n):
            for j in range(i + 1, n):
                r = rational_sqrt(-sf[i] / sf[j])
                if r is not None:
                    v = [zero] * n
                    v[i] = one / scales[i]
                    v[j] = r / scales[j]
                    return v
        for bound in (8, 32, 128):
            for i in range(n):
                for j in range(i + 1, n):
                    for k in range(j + 1, n):
                        hit = _ternary_search(sf[i], sf[j], sf[k], bound)
                        if hit is not None:
                            x, y, z = hit
                            v = [zero] * n
                            v[i] = x / scales[i]
                            v[j] = y / scales[j]
                            v[k] = z / scales[k]
                            return v
        hit = _split_search(sf, min(height, 24 if n >= 6 else height))
        if hit is not None:
            return [x / s for x, s in zip(hit, scales)]
        raise SearchExhausted("rational isotropic vector", height)
    raise UnsupportedBase(f"isotropic vectors over {field!r} unsupported")


def _split_search(entries, height):
    """Meet-in-the-middle zero search: split the diagonal in half, hash
    the values of one half over a box, scan the other half for the
    negative.  Finds witnesses that need every coordinate nonzero."""
    from itertools import product as iproduct

    n = len(entries)
    k = n // 2
    left, right = entries[:k], entries[k:]
    for bound in (4, 8, 16, height):
        if bound > height:
            break
        rng = range(-bound, bound + 1)
        seen = {}
        for vec in iproduct(rng, repeat=k):
            val = sum(a * x * x for a, x in zip(left, vec))
            seen.setdefault(val, vec)
        for vec in iproduct(rng, repeat=n - k):
            val = sum(a * x * x for a, x in zip(right, vec))
            other = seen.get(-val)
            if other is not None and (any(vec) or any(other)):
                return [Fraction(x) for x in other + vec]
        if bound >= height:
            break
    return None


def _ternary_search(a, b, c, bound):
    """Small solution of a x^2 + b y^2 + c z^2 = 0 with z = 1, then y = 1."""
    for y in range(bound + 1):
        for z in range(1 if y == 0 else 0, bound + 1):
            if y == 0 and z == 0:
                continue
            rhs = -(b * y * y + c * z * z)
            if rhs == 0:
                return (Fraction(0), Fraction(y), Fraction(z))
            val = rhs / a
            r = rational_sqrt(val)
            if r is not None:
                return (r, Fraction(y), Fraction(z))
    return None


def witt_decompose(q) -> WittClass:
    """Split off hyperbolic planes until the rest is anisotropic."""
    field = _field_of(q)
    if not isinstance(field, (RationalField, PrimeField)):
        raise UnsupportedBase("Witt decomposition over Q and F_p only")
    gram = [list(r) for r in _gram_of(q)]
    if not linalg.det(gram, field):
        raise DegenerateFormError("form is not regular")
    index = 0
    while True:
        n = len(gram)
        if n == 0:
            break
        current = QuadraticForm(tuple(tuple(r) for r in gram), field)
        diag, pmat = diagonalize(current)
        if not is_isotropic(diag):
            gram = None
            kernel = diag.entries
            return WittClass(kernel, index, field)
        w = _isotropic_vector_diag(diag.entries, field, 1000)
        v = linalg.matvec(pmat, w, field)
        gram = _split_hyperbolic(gram, v, field)
        index += 1
    return WittClass((), index, field)


def _split_hyperbolic(gram, v, field):
    """Remove the hyperbolic plane spanned by isotropic v and a partner."""
    n = len(gram)

    def bq(x, y):  # polar form
        acc = field.zero()
        for i in range(n):
            if x[i]:
                row = gram[i]
                for j in range(n):
                    if y[j] and row[j]:
                        acc = acc + x[i] * row[j] * y[j]
        return acc + acc

    def qval(x):
        acc = field.zero()
        for i in range(n):
            if x[i]:
                row = gram[i]
                for j in range(n):
                    if x[j] and row[j]:
                        acc = acc + x[i] * row[j] * x[j]
        return acc

    partner = None
    for j in range(n):
        e = [field.zero()] * n
        e[j] = field.one()
        s = bq(v, e)
        if s:
            partner = [x / s for x in e]
            break
    if partner is None:
        raise DegenerateFormError("isotropic vector pairs with nothing; form degenerate")
    u = [x - qval(partner) * y for x, y in zip(partner, v)]
    # complement of span(v, u): project the standard basis
    proj = []
    for j in range(n):
        e = [field.zero()] * n
        e[j] = field.one()
        c1, c2 = bq(e, u), bq(e, v)
        w = [x - c1 * a - c2 * b for x, a, b in zip(e, v, u)]
        proj.append(w)
    basis = linalg.column_space_basis(proj, field)
    m = len(basis)
    new_gram = [[field.zero()] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            val = bq(basis[i], basis[j])
            half = val / field.from_int(2)
            new_gram[i][j] = half
            new_gram[j][i] = half
    return new_gram


def witt_class_of(q) -> WittClass:
    return witt_decompose(q)


def signature(entries) -> int:
    """Signature over Q: positives minus negatives."""
    pos = sum(1 for a in entries if Fraction(a) > 0)
    return 2 * pos - len(entries)


def isometric_diagonal(e1, e2, field) -> bool:
    """Exact isometry test for regular diagonal forms over Q or F_p."""
    if len(e1) != len(e2):
        return False
    if not e1:
        return True
    if isinstance(field, PrimeField):
        d1 = field.one()
        for a in e1:
            d1 = d1 * a
        d2 = field.one()
        for a in e2:
            d2 = d2 * a
        return field.is_square(d1 / d2)
    if isinstance(field, RationalField):
        if signature(e1) != signature(e2):
            return False
        if square_class(Fraction(_prod(e1))) != square_class(Fraction(_prod(e2))):
            return False
        for v in support_places(*(list(e1) + list(e2))):
            if hasse_invariant(e1, v) != hasse_invariant(e2, v):
                return False
        return True
    raise UnsupportedBase("isometry test over Q and F_p only")


def _prod(entries):
    out = Fraction(1)
    for a in entries:
        out *= Fraction(a)
    return out


def random_regular_diagonal(rng, field, rank: int) -> DiagonalForm:
    return DiagonalForm(tuple(field.random_nonzero(rng) for _ in range(rank)), field)


def random_regular_gram(rng, field, rank: int) -> QuadraticForm:
    """A random regular form, produced as a congruence of a diagonal one."""
    diag = random_regular_diagonal(rng, field, rank)
    n = rank
    while True:
        p = [[field.from_int(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if linalg.det(p, field):
            break
    g = [[field.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = field.zero()
            for k in range(n):
                if p[k][i] and p[k][j]:
                    acc = acc + p[k][i] * diag.entries[k] * p[k][j]
            g[i][j] = acc
    return QuadraticForm(tuple(tuple(r) for r in g), field)
