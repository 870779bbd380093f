"""Exact linear algebra over any of the package's fields.

Elements only need +, -, *, /, unary -, and truthiness for a zero test,
so the same routines serve Fractions, prime fields, quadratic fields and
rational function fields.  Matrices are lists of lists, row major.
"""

from __future__ import annotations


def identity(n, field):
    one, zero = field.one(), field.zero()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a, b, field):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    zero = field.zero()
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if not c:
                continue
            bt = b[t]
            for j in range(m):
                if bt[j]:
                    oi[j] = oi[j] + c * bt[j]
    return out


def matvec(a, v, field):
    zero = field.zero()
    out = []
    for row in a:
        acc = zero
        for c, x in zip(row, v):
            if c and x:
                acc = acc + c * x
        out.append(acc)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def _eliminate(rows, ncols, field):
    """In-place Gaussian elimination over the field.

    Returns (pivots, rank) where pivots maps pivot column -> row index.
    Rows are reduced (pivot entries one, cleared above and below).
    """
    one = field.one()
    pivots = {}
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != one:
            inv = one / piv
            rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots[c] = r
        r += 1
        if r == len(rows):
            break
    return pivots, r


def rank(a, field):
    if not a:
        return 0
    rows = [list(r) for r in a]
    _, rk = _eliminate(rows, len(a[0]), field)
    return rk


def det(a, field):
    n = len(a)
    if n == 0:
        return field.one()
    m = [list(r) for r in a]
    sign = field.one()
    acc = field.one()
    for c in range(n):
        pr = None
        for i in range(c, n):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            return field.zero()
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        piv = m[c][c]
        acc = acc * piv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / piv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return acc * sign


def inverse(a, field):
    n = len(a)
    rows = [list(r) + row_id for r, row_id in zip(a, identity(n, field))]
    pivots, rk = _eliminate(rows, n, field)
    if rk != n:
        raise ZeroDivisionError("matrix not invertible")
    return [rows[pivots[c]][n:] for c in range(n)]


def solve(a, b, field):
    """One solution x of a x = b, or None if inconsistent."""
    n = len(a)
    m = len(a[0]) if a else 0
    rows = [list(r) + [bv] for r, bv in zip(a, b)]
    pivots, _ = _eliminate(rows, m, field)
    for row in rows:
        if row[-1] and not any(row[:-1]):
            return None
    x = [field.zero()] * m
    for c, r in pivots.items():
        x[c] = rows[r][-1]
    return x


def nullspace(a, ncols, field):
    """Basis of the right kernel of a (list of length-ncols vectors)."""
    rows = [list(r) for r in a]
    pivots, _ = _eliminate(rows, ncols, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    one = field.one()
    zero = field.zero()
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for c, r in pivots.items():
            v[c] = -rows[r][fc]
        basis.append(v)
    return basis


def nullspace_sparse(rows, ncols, field):
    """Right kernel from rows given as {col: coeff} dicts.

    Propagates singleton rows first, which makes the near-diagonal
    commutator systems from structure algebras cheap, then falls back to
    ordinary elimination on whatever is left.
    """
    forced_zero = set()
    work = [dict(r) for r in rows if r]
    changed = True
    while changed:
        changed = False
        rest = []
        for r in work:
            live = {c: v for c, v in r.items() if c not in forced_zero and v}
            if not live:
                continue
            if len(live) == 1:
                forced_zero.add(next(iter(live)))
                changed = True
            else:
                rest.append(live)
        work = rest
    keep = [c for c in range(ncols) if c not in forced_zero]
    if not keep:
        return []
    pos = {c: j for j, c in enumerate(keep)}
    dense = []
    zero = field.zero()
    for r in work:
        row = [zero] * len(keep)
        for c, v in r.items():
            row[pos[c]] = v
        dense.append(row)
    small = nullspace(dense, len(keep), field) if dense else [
        [field.one() if j == i else zero for j in range(len(keep))] for i in range(len(keep))
    ]
    out = []
    for v in small:
        full = [zero] * ncols
        for j, c in enumerate(keep):
            full[c] = v[j]
        out.append(full)
    return out


def column_space_basis(vectors, field):
    """Subset of the given vectors forming a basis of their span."""
    chosen = []
    rows = []
    pivots = {}
    ncols = len(vectors[0]) if vectors else 0
    for v in vectors:
        row = list(v)
        for c, r in pivots.items():
            if row[c]:
                f = row[c]
                row = [x - f * y for x, y in zip(row, rows[r])]
        pc = next((c for c in range(ncols) if row[c]), None)
        if pc is None:
            continue
        inv = field.one() / row[pc]
        row = [x * inv for x in row]
        pivots[pc] = len(rows)
        rows.append(row)
        chosen.append(v)
    return chosen


def coordinate_solver(columns, field):
    """Express vectors in the span of independent columns.

    Returns f with f(v) = coords such that sum coords_j * columns_j = v,
    or None when v lies outside the span.
    """
    m = len(columns)
    rows = [list(c) for c in columns]
    pivots, rk = _eliminate(rows, len(columns[0]), field)
    if rk != m:
        raise ValueError("columns are dependent")
    pivot_pos = sorted(pivots.keys())[:m]
    sub = [[columns[c][p] for c in range(m)] for p in pivot_pos]
    sub_inv = inverse(sub, field)

    def express(v):
        rhs = [v[p] for p in pivot_pos]
        coords = matvec(sub_inv, rhs, field)
        # confirm v really is in the span
        recon = [field.zero()] * len(v)
        for j, cj in enumerate(coords):
            if cj:
                col = columns[j]
                for i in range(len(v)):
                    if col[i]:
                        recon[i] = recon[i] + cj * col[i]
        return coords if recon == list(v) else None

    return express
