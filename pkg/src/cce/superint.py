"""Superintegrability certificates over the commutant.

Functional independence is decided by exact Jacobian ranks at random
rational points (fresh points until two agree), the classical bound
N = dim g - rank of the Cartan adjoint rows caps every certified rank,
and the rank-3 dependency families among catalog generators are checked
as exact monomial identities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .commutant import build_catalog
from .linalg import rank as mat_rank
from .polyalg import Polynomial, poisson_bracket, poly_str


class CertificationError(Exception):
    def __init__(self, message, name=None):
        super().__init__(message)
        self.name = name


def _random_point(alg, rng):
    return tuple(
        Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 10**4))
        for _ in range(alg.dim)
    )


def _stable_rank(build_rows, alg, rng, retries=5):
    """Rank at a random point, confirmed by a second point; resamples on
    disagreement and errors out if no two consecutive samples agree."""
    prev = None
    for _ in range(retries):
        got = mat_rank(build_rows(_random_point(alg, rng)))
        if got == prev:
            return got
        prev = got
    raise CertificationError("rank did not stabilize after %d samples" % retries)


def independence_bound(alg, seed=0):
    """dim g minus the generic rank of the Cartan rows of ad, the maximal
    number of functionally independent commutant elements."""
    rng = random.Random(seed)

    def rows(point):
        out = []
        for i in range(alg.n_cartan):
            row = [Fraction(0)] * alg.dim
            for j in range(alg.dim):
                for l, c in alg.bracket(i, j):
                    row[j] += c * point[l]
            out.append(row)
        return out

    return alg.dim - _stable_rank(rows, alg, rng)


@dataclass
class IndependenceReport:
    jacobian_rank: int
    candidate_count: int
    certified_subset: list
    n_bound: int


def functional_rank(alg, named_polys, seed=0):
    """Exact Jacobian rank of the given polynomials, with a greedy
    full-rank subset. named_polys is a sequence of (name, Polynomial)."""
    named_polys = list(named_polys)
    if not named_polys:
        raise ValueError("functional_rank needs at least one polynomial")
    rng = random.Random(seed)
    grads = [
        [p.diff(v) for v in range(alg.dim)]
        for _, p in named_polys
    ]

    def rows(point):
        return [[g.eval(point) for g in row] for row in grads]

    total = _stable_rank(rows, alg, rng)

    point = _random_point(alg, rng)
    chosen = []
    chosen_rows = []
    for (name, _), row in zip(named_polys, rows(point)):
        if mat_rank(chosen_rows + [row]) > len(chosen):
            chosen.append(name)
            chosen_rows.append(row)
        if len(chosen) == total:
            break
    return IndependenceReport(
        jacobian_rank=total,
        candidate_count=len(named_polys),
        certified_subset=chosen,
        n_bound=independence_bound(alg, seed),
    )


# ---------------------------------------------------------------------------
# dependency relations among rank-3 catalog generators


def _perm(n, i, j):
    r = [0] * n
    r[i - 1], r[j - 1] = 1, -1
    return tuple(r)


def _plus(n, i, j, sign=1):
    r = [0] * n
    r[i - 1] = r[j - 1] = sign
    return tuple(r)


def check_relation(cat, lhs_names, rhs_names):
    """Exact identity check: product of lhs generators = product of rhs.

    Returns (ok, residue polynomial). Unknown names raise ValueError.
    """
    def product(names):
        p = Polynomial.constant(Fraction(1))
        for nm in names:
            g = cat.by_name.get(nm)
            if g is None:
                raise ValueError("unknown generator name %r" % nm)
            p = p * Polynomial.monomial(g.mono)
        return p

    residue = product(lhs_names) - product(rhs_names)
    return residue.is_zero(), residue


@dataclass
class DependencyReport:
    records: list               # (family, (i, j, k), lhs names, rhs names, ok)

    @property
    def ok(self):
        return all(r[4] for r in self.records)

    def failures(self):
        return [r for r in self.records if not r[4]]


def dependency_relations(cat):
    """The four families of product identities among rank-3 generators,
    instantiated over all ordered triples of distinct indices. Each entry
    is (family tag, triple, lhs root multisets, rhs root multisets)."""
    alg = cat.alg
    if alg.rank != 3 or alg.family not in ("B", "C", "D"):
        raise ValueError("dependency families are defined for rank-3 B, C, D")
    n = alg.coords
    P = lambda i, j: _perm(n, i, j)
    L = lambda i, j: _plus(n, i, j)
    Lh = lambda i, j: _plus(n, i, j, -1)

    out = []
    for i, j, k in (
        (i, j, k)
        for i in (1, 2, 3)
        for j in (1, 2, 3)
        for k in (1, 2, 3)
        if len({i, j, k}) == 3
    ):
        trip = (i, j, k)
        # two ways to pair three opposite permutation cycles
        out.append((
            "pairs-vs-cycles", trip,
            [[P(i, j), P(j, i)], [P(i, k), P(k, i)], [P(k, j), P(j, k)]],
            [[P(i, k), P(k, j), P(j, i)], [P(i, j), P(j, k), P(k, i)]],
        ))
        # mixed permutation-long factors against a longer chain
        out.append((
            "mixed-chain", trip,
            [[P(i, j), L(j, k), Lh(i, k)], [P(j, k), L(i, k), Lh(i, j)]],
            [[P(i, j), P(j, k), L(j, k), Lh(i, j)], [L(i, k), Lh(i, k)]],
        ))
        out.append((
            "mixed-cycle", trip,
            [[P(i, k), P(k, j), L(j, k), Lh(i, k)], [P(j, i), P(i, k), L(i, k), Lh(i, j)]],
            [[P(i, k), L(j, k), Lh(i, j)], [L(i, k), Lh(i, k)], [P(i, k), P(k, j), P(j, i)]],
        ))
        # opposite mixed factors splitting into invariant pairs
        out.append((
            "opposite-pairs", trip,
            [[P(j, k), L(i, k), Lh(i, j)], [P(k, j), L(i, j), Lh(i, k)]],
            [[P(k, j), P(j, k)], [L(i, j), Lh(i, j)], [L(i, k), Lh(i, k)]],
        ))
    return out


def verify_dependencies(cat):
    """Expand every dependency relation and compare the two sides exactly."""
    records = []
    for family, trip, lhs, rhs in dependency_relations(cat):
        lhs_names = [_lookup(cat, roots) for roots in lhs]
        rhs_names = [_lookup(cat, roots) for roots in rhs]
        ok, _ = check_relation(cat, lhs_names, rhs_names)
        records.append((family, trip, lhs_names, rhs_names, ok))
    return DependencyReport(records=records)


def _lookup(cat, roots):
    key = tuple(sorted(roots, key=cat.alg.root_pool_index.get))
    g = cat.by_roots.get(key)
    if g is None:
        raise ValueError("no catalog generator with roots %r" % (key,))
    return g.name


# ---------------------------------------------------------------------------
# certificates


def cartan_hamiltonian(alg, seed=0, degree=2):
    """Generic polynomial in the Cartan coordinates with seeded integer
    coefficients, total degree <= degree."""
    rng = random.Random(seed)
    terms = {(): Fraction(rng.randint(1, 9))}
    def extend(mono, start, left):
        if left == 0:
            return
        for v in range(start, alg.n_cartan):
            m = dict(mono)
            m[v] = m.get(v, 0) + 1
            key = tuple(sorted(m.items()))
            terms[key] = Fraction(rng.randint(1, 9))
            extend(m, v, left - 1)
    extend({}, 0, degree)
    return Polynomial(terms)


def certify_system(alg, gens=None, hamiltonian=None, seed=0):
    """Certificate that the catalog (or a chosen subset) forms a
    (super)integrable system under a Cartan Hamiltonian.

    Checks {H, p} = 0 exactly for every integral, computes both the rank
    of the integrals alone and with H adjoined, and compares against the
    bounds N = dim - rank(ad Cartan rows) and dim - n_cartan - 1.
    """
    cat = build_catalog(alg)
    if gens is None:
        gens = [(g.name, Polynomial.monomial(g.mono)) for g in cat.generators]
    else:
        gens = list(gens)
    if hamiltonian is None:
        hamiltonian = cartan_hamiltonian(alg, seed)

    for name, p in gens:
        br = poisson_bracket(alg, hamiltonian, p)
        if not br.is_zero():
            raise CertificationError(
                "integral %s does not commute with the Hamiltonian" % name, name=name
            )

    report = functional_rank(alg, gens, seed=seed)
    with_h = functional_rank(alg, [("H", hamiltonian)] + gens, seed=seed)
    bound = report.n_bound
    r_bound = alg.dim - alg.n_cartan - 1
    besides_h = with_h.jacobian_rank - 1
    if report.jacobian_rank > bound or besides_h > r_bound:
        raise CertificationError("independence rank exceeds the classical bound")

    return {
        "type": alg.family,
        "rank": report.jacobian_rank,
        "bound": bound,
        "hamiltonian": poly_str(hamiltonian, alg.names),
        "integrals": [name for name, _ in gens],
        "commute": "all-zero",
        "rank_with_hamiltonian": with_h.jacobian_rank,
        "independent_besides_hamiltonian": besides_h,
        "superintegrable_bound": r_bound,
        "certified_subset": report.certified_subset,
        "seed": seed,
    }
