"""Split matrix realizations of the classical Lie algebras.

Builds A_n = sl(n+1), B_n = so(2n+1), C_n = sp(2n) and D_n = so(2n) with
integer matrices, enumerates their root systems in orthogonal coordinates,
and computes exact structure constants, the Killing form and the quadratic
Casimir. The realizations are chosen so that every negative root vector is
the transpose of the corresponding positive one; transposition is then an
anti-automorphism available on the whole basis (the "hat" map).

Basis order: Cartan elements h1..hn first, then positive root vectors
sorted by height, then their transposes in the same order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .linalg import inverse, solve

FAMILIES = ("A", "B", "C", "D")

_cache = {}


# ---------------------------------------------------------------------------
# small dense integer matrices


def _zero(m):
    return [[0] * m for _ in range(m)]


def _unit(m, i, j, c=1):
    x = _zero(m)
    x[i][j] = c
    return x


def _add(x, y):
    return [[a + b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def _scale(x, c):
    return [[c * a for a in row] for row in x]


def _mul(x, y):
    m = len(x)
    out = [[0] * m for _ in range(m)]
    for i in range(m):
        xi = x[i]
        oi = out[i]
        for k in range(m):
            c = xi[k]
            if c:
                yk = y[k]
                for j in range(m):
                    if yk[j]:
                        oi[j] += c * yk[j]
    return out


def _comm(x, y):
    return [[a - b for a, b in zip(rx, ry)] for rx, ry in zip(_mul(x, y), _mul(y, x))]


def _transpose(x):
    return [list(col) for col in zip(*x)]


def _freeze(x):
    return tuple(tuple(row) for row in x)


def _is_zero(x):
    return all(all(a == 0 for a in row) for row in x)


# ---------------------------------------------------------------------------
# realizations


def _diag_embed(n, size, d, extra=0):
    """diag(d, -d, 0...) padded to the given size."""
    x = _zero(size)
    for k in range(n):
        x[k][k] = d[k]
        x[n + k][n + k] = -d[k]
    return x


def _evec(n, *pairs):
    v = [0] * n
    for i, c in pairs:
        v[i] += c
    return tuple(v)


def _build_family(family, n):
    """Cartan matrices, positive (root, matrix) pairs and simple roots."""
    if family == "A":
        size = n + 1
        coords = n + 1
        cartans = [_add(_unit(size, i, i), _unit(size, i + 1, i + 1, -1)) for i in range(n)]
        positives = []
        for i in range(size):
            for j in range(i + 1, size):
                positives.append((_evec(coords, (i, 1), (j, -1)), _unit(size, i, j)))
        simple = [_evec(coords, (i, 1), (i + 1, -1)) for i in range(n)]
        return size, coords, cartans, positives, simple

    coords = n
    if family == "B":
        size = 2 * n + 1
    else:
        size = 2 * n
    cartans = []
    for i in range(n - 1):
        d = [0] * n
        d[i], d[i + 1] = 1, -1
        cartans.append(_diag_embed(n, size, d))
    d = [0] * n
    if family == "B":
        d[n - 1] = 2
    elif family == "C":
        d[n - 1] = 1
    else:
        d[n - 2], d[n - 1] = 1, 1
    cartans.append(_diag_embed(n, size, d))

    positives = []
    for i in range(n):
        for j in range(i + 1, n):
            m = _add(_unit(size, i, j), _unit(size, n + j, n + i, -1))
            positives.append((_evec(coords, (i, 1), (j, -1)), m))
    if family in ("B", "D"):
        for i in range(n):
            for j in range(i + 1, n):
                m = _add(_unit(size, i, n + j), _unit(size, j, n + i, -1))
                positives.append((_evec(coords, (i, 1), (j, 1)), m))
    if family == "C":
        for i in range(n):
            for j in range(i + 1, n):
                m = _add(_unit(size, i, n + j), _unit(size, j, n + i))
                positives.append((_evec(coords, (i, 1), (j, 1)), m))
        for i in range(n):
            positives.append((_evec(coords, (i, 2)), _unit(size, i, n + i)))
    if family == "B":
        for i in range(n):
            m = _add(_unit(size, i, 2 * n), _unit(size, 2 * n, n + i, -1))
            positives.append((_evec(coords, (i, 1)), m))

    simple = [_evec(coords, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    if family == "B":
        simple.append(_evec(coords, (n - 1, 1)))
    elif family == "C":
        simple.append(_evec(coords, (n - 1, 2)))
    else:
        simple.append(_evec(coords, (n - 2, 1), (n - 1, 1)))
    return size, coords, cartans, positives, simple


def root_name(root, hat_style="caret"):
    """Name a root vector: e12- for e_i - e_j, e12+ for e_i + e_j, e1 for
    the single-index roots (e_i in type B, 2e_i in type C). Negatives of
    the last two kinds carry a hat; the negative of e12- is just e21-."""
    nz = [(k, c) for k, c in enumerate(root) if c]
    if len(nz) == 2 and nz[0][1] * nz[1][1] < 0:
        i = nz[0][0] if nz[0][1] > 0 else nz[1][0]
        j = nz[0][0] if nz[0][1] < 0 else nz[1][0]
        return "e%d%d-" % (i + 1, j + 1)
    if len(nz) == 2:
        base = "e%d%d+" % (nz[0][0] + 1, nz[1][0] + 1)
    else:
        base = "e%d" % (nz[0][0] + 1)
    if all(c > 0 for _, c in nz):
        return base
    return "^" + base if hat_style == "caret" else base + "h"


@dataclass
class Algebra:
    """A classical Lie algebra with its root data and structure constants.

    Variables (coordinates on the dual) are indexed 0..dim-1 in basis
    order. `brackets` maps ordered index pairs (i < j) to tuples of
    (k, coefficient) with [X_i, X_j] = sum coefficient * X_k.
    """

    family: str
    rank: int
    dim: int
    coords: int
    matrix_size: int
    n_cartan: int
    names: tuple
    matrices: tuple
    roots: tuple            # pool aligned with variables n_cartan..dim-1
    positive: tuple
    simple: tuple
    heights: dict
    cartan_matrix: tuple
    brackets: dict
    weight_table: tuple     # weight_table[p][i], pool index p, cartan index i

    def __post_init__(self):
        self.index = {name: k for k, name in enumerate(self.names)}
        self.root_pool_index = {r: k for k, r in enumerate(self.roots)}
        self._neg = {}
        self._kappa = None
        self.pbw_caches = ({}, {}, {})

    def root_var(self, root):
        return self.n_cartan + self.root_pool_index[tuple(root)]

    def var_root(self, v):
        """Root of a non-Cartan variable, None for Cartan variables."""
        if v < self.n_cartan:
            return None
        return self.roots[v - self.n_cartan]

    def hat_var(self, v):
        """Index of the transposed basis element (Cartans are fixed)."""
        if v < self.n_cartan:
            return v
        p = v - self.n_cartan
        npos = len(self.positive)
        return self.n_cartan + (p + npos if p < npos else p - npos)

    def weight(self, root, i):
        """Eigenvalue of ad(h_{i+1}) on the root vector for `root`."""
        return self.weight_table[self.root_pool_index[tuple(root)]][i]

    def bracket(self, i, j):
        """[X_i, X_j] as a tuple of (index, coefficient), any order of i, j."""
        if i == j:
            return ()
        if i < j:
            return self.brackets.get((i, j), ())
        return tuple((k, -c) for k, c in self.brackets.get((j, i), ()))

    def killing_form(self):
        if self._kappa is None:
            ad = []
            for a in range(self.dim):
                col = {}
                for b in range(self.dim):
                    for k, c in self.bracket(a, b):
                        col.setdefault(b, {})[k] = c
                ad.append(col)
            kappa = [[Fraction(0)] * self.dim for _ in range(self.dim)]
            for a in range(self.dim):
                for b in range(a, self.dim):
                    s = Fraction(0)
                    for c, img in ad[a].items():
                        for d, x in img.items():
                            y = ad[b].get(d, {}).get(c)
                            if y:
                                s += x * y
                    kappa[a][b] = kappa[b][a] = s
            self._kappa = tuple(tuple(row) for row in kappa)
        return self._kappa


def build_algebra(family, rank):
    """Construct the algebra of the given family ('A'..'D') and rank.

    Rank must be at least 1 for A, B, C and at least 2 for D (so(2) is
    abelian and so(4) is the smallest interesting orthogonal case we
    treat through the D series)."""
    key = (family, rank)
    if key in _cache:
        return _cache[key]
    if family not in FAMILIES:
        raise ValueError("unknown family %r, expected one of %s" % (family, "/".join(FAMILIES)))
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise ValueError("rank must be an integer")
    if family == "D" and rank < 2:
        raise ValueError("type D needs rank >= 2")
    if rank < 1:
        raise ValueError("rank must be >= 1")

    size, coords, cartans, positives, simple = _build_family(family, rank)

    # heights: expand each positive root over the simple roots
    cols = [[Fraction(s[k]) for s in simple] for k in range(coords)]
    heights = {}
    for root, _ in positives:
        x = solve(cols, [Fraction(c) for c in root])
        assert all(v.denominator == 1 and v >= 0 for v in x), root
        heights[root] = int(sum(x))
    positives.sort(key=lambda rm: (heights[rm[0]], rm[0]))

    pool = [r for r, _ in positives]
    mats = cartans + [m for _, m in positives] + [_transpose(m) for _, m in positives]
    for root, _ in positives:
        neg = tuple(-c for c in root)
        heights[neg] = -heights[root]
        pool.append(neg)

    n_cartan = len(cartans)
    dim = len(mats)
    names = ["h%d" % (i + 1) for i in range(n_cartan)] + [root_name(r) for r in pool]

    # weights off the diagonal of the Cartan matrices
    weight_table = []
    for p, root in enumerate(pool):
        row = []
        for i, h in enumerate(cartans):
            w = sum(root[k] * h[k][k] for k in range(coords))
            row.append(w)
            got = _comm(h, mats[n_cartan + p])
            want = _scale(mats[n_cartan + p], w)
            assert got == want, ("cartan action mismatch", family, rank, root, i)
        weight_table.append(tuple(row))

    cartan_matrix = tuple(
        tuple(sum(s[k] * h[k][k] for k in range(coords)) for s in simple) for h in cartans
    )

    pool_index = {r: k for k, r in enumerate(pool)}
    cartan_diags = [[Fraction(h[k][k]) for h in cartans] for k in range(size)]

    brackets = {}
    for i in range(n_cartan):
        for p, root in enumerate(pool):
            w = weight_table[p][i]
            if w:
                brackets[(i, n_cartan + p)] = ((n_cartan + p, Fraction(w)),)
    for p in range(len(pool)):
        for q in range(p + 1, len(pool)):
            a, b = n_cartan + p, n_cartan + q
            c = _comm(mats[a], mats[b])
            s = tuple(x + y for x, y in zip(pool[p], pool[q]))
            if all(v == 0 for v in s):
                # lands in the Cartan subalgebra, expand over its diagonals
                assert all(c[r][t] == 0 for r in range(size) for t in range(size) if r != t)
                x = solve(cartan_diags, [Fraction(c[k][k]) for k in range(size)])
                entry = tuple((i, v) for i, v in enumerate(x) if v)
                check = _zero(size)
                for i, v in entry:
                    assert v.denominator in (1, 2)
                    check = _add(check, _scale(cartans[i], v))
                assert all(
                    Fraction(c[r][t]) == check[r][t] for r in range(size) for t in range(size)
                )
                if entry:
                    brackets[(a, b)] = entry
            elif s in pool_index:
                target = mats[n_cartan + pool_index[s]]
                ratio = None
                for r in range(size):
                    for t in range(size):
                        if target[r][t]:
                            ratio = Fraction(c[r][t], target[r][t])
                            break
                    if ratio is not None:
                        break
                assert _is_zero(_add(c, _scale(target, -ratio))), (pool[p], pool[q])
                if ratio:
                    brackets[(a, b)] = ((n_cartan + pool_index[s], ratio),)
            else:
                assert _is_zero(c), (pool[p], pool[q])

    alg = Algebra(
        family=family,
        rank=rank,
        dim=dim,
        coords=coords,
        matrix_size=size,
        n_cartan=n_cartan,
        names=tuple(names),
        matrices=tuple(_freeze(m) for m in mats),
        roots=tuple(pool),
        positive=tuple(r for r, _ in positives),
        simple=tuple(simple),
        heights=heights,
        cartan_matrix=cartan_matrix,
        brackets=brackets,
        weight_table=tuple(weight_table),
    )
    _cache[key] = alg
    return alg


# ---------------------------------------------------------------------------
# invariants


def casimir(alg):
    """Quadratic Casimir sum_{a,b} kappa^{ab} x_a x_b as a Polynomial."""
    from .polyalg import Polynomial

    kinv = inverse([list(row) for row in alg.killing_form()])
    terms = {}
    for a in range(alg.dim):
        for b in range(alg.dim):
            c = kinv[a][b]
            if c:
                mono = ((a, 2),) if a == b else ((min(a, b), 1), (max(a, b), 1))
                terms[mono] = terms.get(mono, Fraction(0)) + c
    return Polynomial({m: c for m, c in terms.items() if c})


def serre_check(alg):
    """(ad e_i)^(1 - a_ij) e_j = 0 for the simple root vectors."""
    simple_vars = [alg.root_var(s) for s in alg.simple]
    for i, vi in enumerate(simple_vars):
        for j, vj in enumerate(simple_vars):
            if i == j:
                continue
            a = alg.cartan_matrix[i][j]
            x = [list(r) for r in alg.matrices[vj]]
            e = [list(r) for r in alg.matrices[vi]]
            for _ in range(1 - a):
                x = _comm(e, x)
            if not _is_zero(x):
                return False
    return True


# ---------------------------------------------------------------------------
# serialization


def to_json_dict(alg):
    struct = []
    for (i, j), entry in sorted(alg.brackets.items()):
        for k, c in entry:
            struct.append({"i": i, "j": j, "k": k, "c": "%d/%d" % (c.numerator, c.denominator)})
    return {
        "type": alg.family,
        "rank": alg.rank,
        "names": list(alg.names),
        "roots": [list(r) for r in alg.roots],
        "cartan_matrix": [list(r) for r in alg.cartan_matrix],
        "structure": struct,
    }


def dumps(alg):
    return json.dumps(to_json_dict(alg), sort_keys=True, indent=2) + "\n"


def loads(text):
    """Rebuild an algebra from its serialized form, verifying the tables."""
    d = json.loads(text)
    alg = build_algebra(d["type"], d["rank"])
    if to_json_dict(alg) != d:
        raise ValueError("serialized algebra does not match its reconstruction")
    return alg
