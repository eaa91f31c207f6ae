"""Exact linear algebra over the rationals.

Small dense routines on lists of lists of Fractions. Nothing here ever
touches floats; callers that need numeric ranks at random points get them
by substituting exact rational coordinates first.
"""

from fractions import Fraction


def rref(rows):
    """Reduced row echelon form. Returns (matrix, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        p = None
        for i in range(r, nr):
            if m[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def solve(a, b):
    """Solve a @ x = b exactly (b a vector). Free variables are set to 0.

    Raises ValueError when the system is inconsistent.
    """
    nr = len(a)
    nc = len(a[0]) if nr else 0
    aug = [list(a[i]) + [b[i]] for i in range(nr)]
    m, pivots = rref(aug)
    if nc in pivots:
        raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * nc
    for r, c in enumerate(pivots):
        x[c] = m[r][nc]
    return x


def inverse(a):
    n = len(a)
    aug = [list(a[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in m[:n]]
