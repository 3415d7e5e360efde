"""Exact linear algebra over the integers.

Matrices are tuples of row tuples of Python ints, so all arithmetic is
arbitrary precision.  The Smith normal form routine returns the full
transform data (U, S, V with S = U*A*V and U, V unimodular), which is
what the module- and homomorphism-level code builds on.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b) -> Matrix:
    """Product of two matrices given as sequences of rows."""
    rows_a = len(a)
    inner = len(b)
    cols_b = len(b[0]) if inner else 0
    if rows_a and len(a[0]) != inner:
        raise ValueError("matrix shape mismatch in product")
    out = []
    for i in range(rows_a):
        row_a = a[i]
        out.append(tuple(
            sum(row_a[k] * b[k][j] for k in range(inner)) for j in range(cols_b)
        ))
    return tuple(out)


def mat_vec(a, v) -> Vector:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def freeze(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class SnfResult:
    """S = U * A * V with U, V unimodular and S diagonal.

    The diagonal entries are nonnegative and each divides the next.
    Uinv and Vinv are the exact integer inverses of U and V.
    """

    u: Matrix
    uinv: Matrix
    s: Matrix
    v: Matrix
    vinv: Matrix
    nrows: int
    ncols: int

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.s[i][i] for i in range(min(self.nrows, self.ncols)))


def smith_normal_form(a) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, S, V) with S = U*A*V in Smith normal form."""
    rows = freeze(a)
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    res = snf_data(rows, nrows, ncols)
    return res.u, res.s, res.v


def snf_data(a, nrows: int, ncols: int) -> SnfResult:
    s = [list(r) for r in a]
    if any(len(r) != ncols for r in s):
        raise ValueError("ragged matrix")
    u = identity_matrix(nrows)
    uinv = identity_matrix(nrows)
    v = identity_matrix(ncols)
    vinv = identity_matrix(ncols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def row_combine(t, i, x, y, p, q):
        # rows t, i <- (x*row_t + y*row_i, p*row_t + q*row_i); needs x*q - y*p == 1.
        # The inverse block [[q, -y], [-p, x]] right-multiplies uinv:
        # col_t <- q*col_t - p*col_i, col_i <- -y*col_t + x*col_i.
        for m in (s, u):
            rt, ri = m[t], m[i]
            for k in range(len(rt)):
                a_, b_ = rt[k], ri[k]
                rt[k] = x * a_ + y * b_
                ri[k] = p * a_ + q * b_
        for r in uinv:
            a_, b_ = r[t], r[i]
            r[t] = a_ * q - b_ * p
            r[i] = -a_ * y + b_ * x

    def col_combine(t, j, x, y, p, q):
        # cols t, j <- (x*col_t + y*col_j, p*col_t + q*col_j); needs x*q - y*p == 1.
        # The inverse block [[q, -p], [-y, x]] left-multiplies vinv:
        # row_t <- q*row_t - p*row_j, row_j <- -y*row_t + x*row_j.
        for m in (s, v):
            for r in m:
                a_, b_ = r[t], r[j]
                r[t] = x * a_ + y * b_
                r[j] = p * a_ + q * b_
        rt, rj = vinv[t], vinv[j]
        for k in range(len(rt)):
            a_, b_ = rt[k], rj[k]
            rt[k] = q * a_ - p * b_
            rj[k] = -y * a_ + x * b_

    def negate_row(t):
        s[t] = [-x for x in s[t]]
        u[t] = [-x for x in u[t]]
        for r in uinv:
            r[t] = -r[t]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # pick the nonzero entry of least magnitude as pivot
        piv = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                e = s[i][j]
                if e and (best is None or abs(e) < best):
                    piv, best = (i, j), abs(e)
        if piv is None:
            break
        if piv[0] != t:
            swap_rows(t, piv[0])
        if piv[1] != t:
            swap_cols(t, piv[1])
        while True:
            # clear column t, then row t; column work can refill the row
            changed = True
            while changed:
                changed = False
                for i in range(t + 1, nrows):
                    b = s[i][t]
                    if not b:
                        continue
                    a_ = s[t][t]
                    if b % a_ == 0:
                        q0 = b // a_
                        row_combine(t, i, 1, 0, -q0, 1)
                    else:
                        g, x, y = _xgcd(a_, b)
                        row_combine(t, i, x, y, -(b // g), a_ // g)
                    changed = True
                for j in range(t + 1, ncols):
                    b = s[t][j]
                    if not b:
                        continue
                    a_ = s[t][t]
                    if b % a_ == 0:
                        q0 = b // a_
                        col_combine(t, j, 1, 0, -q0, 1)
                    else:
                        g, x, y = _xgcd(a_, b)
                        col_combine(t, j, x, y, -(b // g), a_ // g)
                    changed = True
            # the pivot must divide every remaining entry before we move on,
            # otherwise the diagonal would not form a divisibility chain
            bad = None
            a_ = s[t][t]
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if s[i][j] % a_:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_combine(t, bad, 1, 1, 0, 1)
        if s[t][t] < 0:
            negate_row(t)
        t += 1

    return SnfResult(
        u=freeze(u), uinv=freeze(uinv), s=freeze(s),
        v=freeze(v), vinv=freeze(vinv), nrows=nrows, ncols=ncols,
    )


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) > 0 and x*a + y*b == g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def solve_integer(a, b, nrows: int, ncols: int):
    """One integer solution x of A*x = b, or None if there is none."""
    res = snf_data(freeze(a), nrows, ncols)
    c = mat_vec(res.u, tuple(b))
    diag = res.diagonal
    y = [0] * ncols
    for i in range(nrows):
        d = diag[i] if i < len(diag) else 0
        if d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i]:
            return None
    return mat_vec(res.v, tuple(y))


def kernel_generators(a, nrows: int, ncols: int) -> list[Vector]:
    """A basis of the integer kernel lattice {x : A*x = 0}."""
    res = snf_data(freeze(a), nrows, ncols)
    diag = res.diagonal
    out = []
    for j in range(ncols):
        if j >= len(diag) or diag[j] == 0:
            out.append(tuple(res.v[i][j] for i in range(ncols)))
    return out
