"""Small dense matrix helpers over a Field: products, inverses, ranks and
characteristic polynomials.  Everything is exact and desk-scale."""

from __future__ import annotations

from .ffpoly import Field, Poly

Matrix = tuple[tuple[int, ...], ...]


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(field: Field, a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    m = len(b[0])
    inner = len(b)
    if field.k == 1:
        p = field.p
        bt = list(zip(*b))
        return tuple(
            tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a
        )
    add, mul = field.add, field.mul
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = 0
            for t in range(inner):
                x = a[i][t]
                if x:
                    acc = add(acc, mul(x, b[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(field: Field, a: Matrix, v: tuple[int, ...]) -> tuple[int, ...]:
    if field.k == 1:
        p = field.p
        return tuple(sum(x * y for x, y in zip(row, v)) % p for row in a)
    add, mul = field.add, field.mul
    out = []
    for row in a:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = add(acc, mul(x, y))
        out.append(acc)
    return tuple(out)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def conj_transpose(field: Field, a: Matrix) -> Matrix:
    return tuple(tuple(field.conj(x) for x in col) for col in zip(*a))


def mat_inv(field: Field, a: Matrix) -> Matrix:
    """Gauss-Jordan inverse; raises on singular input."""
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = field.inv(aug[col][col])
        aug[col] = [field.mul(inv, x) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [field.sub(x, field.mul(c, y)) for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_rank(field: Field, a: Matrix) -> int:
    rows = [list(r) for r in a]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    rank = 0
    row = 0
    for col in range(n_cols):
        piv = next((r for r in range(row, n_rows) if rows[r][col]), None)
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        inv = field.inv(rows[row][col])
        rows[row] = [field.mul(inv, x) for x in rows[row]]
        for r in range(n_rows):
            if r != row and rows[r][col]:
                c = rows[r][col]
                rows[r] = [field.sub(x, field.mul(c, y)) for x, y in zip(rows[r], rows[row])]
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def eval_poly_at_matrix(field: Field, f: Poly, a: Matrix) -> Matrix:
    """f(A) by Horner's rule."""
    n = len(a)
    acc = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    for c in reversed(f.coeffs):
        acc = mat_mul(field, acc, a)
        if c:
            acc = tuple(
                tuple(field.add(x, c) if i == j else x for j, x in enumerate(row))
                for i, row in enumerate(acc)
            )
    return acc


def char_poly(field: Field, a: Matrix) -> Poly:
    """Characteristic polynomial det(xI - A), monic.

    The matrix is first conjugated to upper Hessenberg form, then the
    leading-minor recurrence produces the polynomial with O(n^3) field
    operations and no division by integers.
    """
    n = len(a)
    h = [list(row) for row in a]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = field.inv(h[j + 1][j])
        for i in range(j + 2, n):
            if h[i][j]:
                c = field.mul(h[i][j], inv)
                for col in range(n):
                    h[i][col] = field.sub(h[i][col], field.mul(c, h[j + 1][col]))
                for row in range(n):
                    h[row][j + 1] = field.add(h[row][j + 1], field.mul(c, h[row][i]))
    polys = [Poly(field, (1,))]
    for m in range(1, n + 1):
        pm = Poly(field, (field.neg(h[m - 1][m - 1]), 1)) * polys[m - 1]
        beta = 1
        for i in range(1, m):
            beta = field.mul(beta, h[m - i][m - i - 1])
            if beta == 0:
                break
            coef = field.mul(h[m - 1 - i][m - 1], beta)
            if coef:
                pm = pm - polys[m - 1 - i].scale(coef)
        polys.append(pm)
    return polys[n]


def matrix_order(field: Field, a: Matrix, bound: int = 10**6) -> int:
    """Multiplicative order by iterated squaring-free multiplication."""
    ident = identity_matrix(len(a))
    cur = a
    for k in range(1, bound + 1):
        if cur == ident:
            return k
        cur = mat_mul(field, cur, a)
    raise RuntimeError("order exceeds bound")
