"""Linear algebra over Z/p^n via Howell-style echelon forms.

Good enough for the tiny modules that arise here (free modules of rank at
most 32 with n <= 2).  Vectors are tuples of ints mod p^n.
"""

from __future__ import annotations


def _val(x, p, n):
    if x == 0:
        return n
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _unit_part_inv(x, p, n):
    v = _val(x, p, n)
    u = x // p ** v
    return pow(u, -1, p ** n), v


def howell(rows, p, n, width=None):
    """Echelon generating set of the row span, including torsion tails.

    Returns a list of (pivot_col, pivot_val, row).  Membership in the span
    can be tested by back-substitution against this list.
    """
    m = p ** n
    pool = [list(r) for r in rows if any(x % m for x in r)]
    if width is None:
        width = max((len(r) for r in pool), default=0)
    out = []
    for col in range(width):
        live = [r for r in pool if r[col] % m]
        if not live:
            continue
        piv = min(live, key=lambda r: _val(r[col], p, n))
        pool.remove(piv)
        uinv, a = _unit_part_inv(piv[col], p, n)
        piv = [(uinv * x) % m for x in piv]          # pivot entry p^a
        for r in pool:
            if r[col] % m:
                b = _val(r[col], p, n)
                c = (r[col] // p ** a) % m
                for i in range(width):
                    r[i] = (r[i] - c * piv[i]) % m
                assert r[col] % m == 0 or b >= a
        out.append((col, a, tuple(piv)))
        if a > 0:
            tail = [(p ** (n - a) * x) % m for x in piv]
            if any(tail):
                pool.append(tail)
        pool = [r for r in pool if any(x % m for x in r)]
    return out


def span_length(rows, p, n, width=None):
    """Length of the row span as a Z/p^n-module (Z/p composition factors)."""
    return sum(n - a for _, a, _ in howell(rows, p, n, width))


def span_contains(hw, vec, p, n):
    """Membership test against a howell() result."""
    m = p ** n
    v = [x % m for x in vec]
    for col, a, row in hw:
        if v[col] % m:
            if _val(v[col], p, n) < a:
                return False
            c = (v[col] // p ** a) % m
            for i in range(len(v)):
                v[i] = (v[i] - c * row[i]) % m
    return not any(v)


def kernel(mat, p, n):
    """Generators of {x : mat @ x = 0} over Z/p^n.

    mat is a list of rows; unknowns are indexed by columns.
    """
    m = p ** n
    ncols = len(mat[0]) if mat else 0
    nrows = len(mat)
    # rows of the augmented system: [A^T | I], reduce on the A^T part
    aug = []
    for j in range(ncols):
        aug.append([mat[i][j] % m for i in range(nrows)]
                   + [1 if t == j else 0 for t in range(ncols)])
    hw = howell(aug, p, n, width=nrows + ncols)
    gens = []
    for col, a, row in hw:
        if col >= nrows:
            gens.append(tuple(row[nrows:]))
        elif a > 0:
            tail = tuple((p ** (n - a) * x) % m for x in row[nrows:])
            if any(tail) and not any((p ** (n - a) * x) % m for x in row[:nrows]):
                gens.append(tail)
    return gens


def solve(mat, rhs, p, n):
    """One solution x of mat @ x = rhs over Z/p^n, or None."""
    m = p ** n
    ncols = len(mat[0]) if mat else 0
    nrows = len(mat)
    aug = []
    for j in range(ncols):
        aug.append([mat[i][j] % m for i in range(nrows)]
                   + [1 if t == j else 0 for t in range(ncols)])
    hw = howell(aug, p, n, width=nrows + ncols)
    v = [x % m for x in rhs] + [0] * ncols
    for col, a, row in hw:
        if col < nrows and v[col] % m:
            if _val(v[col], p, n) < a:
                return None
            c = (v[col] // p ** a) % m
            for i in range(len(v)):
                v[i] = (v[i] - c * row[i]) % m
    if any(v[:nrows]):
        return None
    return tuple((-x) % m for x in v[nrows:])
