"""Poisson closure of a generator catalog.

Any bracket of catalog members is a polynomial whose monomials split into a
Cartan part and a zero-sum root multiset; the multiset factors into catalog
members because every zero-sum multiset decomposes into indecomposable
pieces. The canonical rewriting extracts factors greedily, smallest degree
first and in layer order within a degree, which is deterministic and always
succeeds on a complete catalog. The closure table keeps every pairwise
bracket in that form; the algebra degree is the largest number of
non-Cartan factors in any stored term (an exhaustive maximum over all
factorizations is available separately for cross-checking).
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .commutant import build_catalog
from .linalg import solve
from .polyalg import Polynomial, bracket_monomials, mono_mul, poisson_bracket


class ClosureError(Exception):
    """A bracket term could not be rewritten over the catalog."""

    def __init__(self, message, pair=None, residue=None):
        super().__init__(message)
        self.pair = pair
        self.residue = residue


class GenExpr:
    """Sum of products of named generators with rational coefficients.

    Term keys are name tuples sorted in catalog order, Cartan names
    included; the zero expression has no terms.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[k] = c

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, GenExpr) and self.terms == other.terms

    def __neg__(self):
        out = GenExpr()
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def expand(self, cat):
        """Multiply the named monomials back out to a Polynomial."""
        out = Polynomial()
        for names, c in self.terms.items():
            mono = ()
            for nm in names:
                mono = mono_mul(mono, cat.by_name[nm].mono)
            out = out + Polynomial.monomial(mono, c)
        return out

    def max_factors(self, cat):
        """Largest count of non-Cartan factors over the terms."""
        best = 0
        for names in self.terms:
            best = max(best, sum(1 for nm in names if cat.by_name[nm].case != "h"))
        return best

    def ordered_terms(self, cat):
        idx = _gen_index(cat)
        return sorted(self.terms.items(), key=lambda kc: (len(kc[0]), [idx[n] for n in kc[0]]))

    def __str__(self):
        bits = []
        for names, c in sorted(self.terms.items(), key=lambda kc: (len(kc[0]), kc[0])):
            prod = " ".join(names)
            bits.append(("%s %s" % (c, prod)) if abs(c) != 1 else ("-" + prod if c < 0 else prod))
        return " + ".join(bits) if bits else "0"

    __repr__ = __str__


def _gen_index(cat):
    idx = getattr(cat, "_gen_index", None)
    if idx is None:
        idx = {g.name: k for k, g in enumerate(cat.generators)}
        cat._gen_index = idx
    return idx


def _root_counters(cat):
    rc = getattr(cat, "_root_counters", None)
    if rc is None:
        rc = [(g, Counter(g.roots)) for g in cat.generators if g.case != "h"]
        cat._root_counters = rc
    return rc


def factor_roots(cat, roots):
    """Canonical factorization of a zero-sum root multiset into catalog
    generator names: repeatedly extract the first catalog member (layers
    ascending, canonical order within a layer) whose roots all fit."""
    memo = getattr(cat, "_factor_memo", None)
    if memo is None:
        memo = cat._factor_memo = {}
    key = tuple(sorted(roots, key=cat.alg.root_pool_index.get))
    if key in memo:
        return memo[key]
    names = []
    remaining = Counter(key)
    size = len(key)
    while size:
        for g, gc in _root_counters(cat):
            if g.degree <= size and all(remaining[r] >= e for r, e in gc.items()):
                names.append(g.name)
                for r, e in gc.items():
                    remaining[r] -= e
                size -= g.degree
                break
        else:
            residue = tuple(sorted(remaining.elements()))
            raise ClosureError(
                "root multiset %r has no factor in the catalog" % (residue,),
                residue=residue,
            )
    memo[key] = tuple(names)
    return memo[key]


def max_factorization(cat, roots):
    """Largest part count over all factorizations of a zero-sum multiset.

    Exhaustive: the part containing the pool-first root is enumerated over
    all catalog members, the rest recursively. Intended for rank <= 3.
    """
    memo = getattr(cat, "_maxfac_memo", None)
    if memo is None:
        memo = cat._maxfac_memo = {}

    def rec(key):
        if not key:
            return 0
        if key in memo:
            return memo[key]
        remaining = Counter(key)
        first = key[0]
        best = None
        for g, gc in _root_counters(cat):
            if gc[first] and all(remaining[r] >= e for r, e in gc.items()):
                rest = remaining - gc
                sub = rec(tuple(sorted(rest.elements(), key=cat.alg.root_pool_index.get)))
                if sub is not None and (best is None or 1 + sub > best):
                    best = 1 + sub
        memo[key] = best
        return best

    key = tuple(sorted(roots, key=cat.alg.root_pool_index.get))
    out = rec(key)
    if out is None:
        raise ClosureError("root multiset %r cannot be factored" % (key,), residue=key)
    return out


def rewrite_in_generators(cat, poly):
    """Rewrite a polynomial whose monomials are all zero-weight as a
    GenExpr over the catalog (Cartan variables pass through as h factors)."""
    alg = cat.alg
    idx = _gen_index(cat)
    out = {}
    for mono, coeff in poly.terms.items():
        names = []
        roots = []
        for v, e in mono:
            if v < alg.n_cartan:
                names.extend(["h%d" % (v + 1)] * e)
            else:
                roots.extend([alg.roots[v - alg.n_cartan]] * e)
        try:
            names.extend(factor_roots(cat, tuple(roots)))
        except ClosureError as err:
            raise ClosureError(
                "monomial %r is not a product of catalog generators" % (mono,),
                residue=err.residue,
            ) from None
        key = tuple(sorted(names, key=idx.get))
        s = out.get(key, 0) + coeff
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    expr = GenExpr()
    expr.terms = out
    return expr


# ---------------------------------------------------------------------------
# the closure table


@dataclass
class Closure:
    catalog: object
    table: dict                 # (name_i, name_j) i < j in catalog order -> GenExpr
    degree: int                 # canonical reading of the algebra degree
    _exhaustive: int = field(default=None, repr=False)

    def entry(self, a, b):
        if (a, b) in self.table:
            return self.table[(a, b)]
        if (b, a) in self.table:
            return -self.table[(b, a)]
        return GenExpr()

    def exhaustive_degree(self):
        """Algebra degree maximized over every factorization of every term."""
        if self._exhaustive is None:
            cat = self.catalog
            best = 0
            for expr in self.table.values():
                for names in expr.terms:
                    roots = []
                    for nm in names:
                        roots.extend(cat.by_name[nm].roots)
                    if roots:
                        best = max(best, max_factorization(cat, roots))
            self._exhaustive = best
        return self._exhaustive

    def degree_profile(self):
        """Schematic of which layer products feed each bracket layer pair.

        Keys are (degree_left, degree_right); values are sorted tuples of
        factor-degree signatures, a signature being the sorted degrees of
        one term's factors (1 for Cartan factors)."""
        cat = self.catalog
        out = {}
        for (a, b), expr in self.table.items():
            ga, gb = cat.by_name[a], cat.by_name[b]
            key = tuple(sorted((ga.degree, gb.degree)))
            sigs = out.setdefault(key, set())
            for names in expr.terms:
                sigs.add(tuple(sorted(cat.by_name[nm].degree for nm in names)))
        return {k: tuple(sorted(v)) for k, v in sorted(out.items())}


def close_catalog(cat, verify=True, threads=None):
    """Bracket every catalog pair and rewrite over the catalog.

    With verify=True each rewritten entry is multiplied back out and
    compared against the raw bracket. Honors CCE_THREADS (or the threads
    argument) for splitting the pair loop.
    """
    alg = cat.alg
    gens = cat.generators
    if threads is None:
        threads = int(os.environ.get("CCE_THREADS", "1") or 1)
    pairs = [
        (i, j)
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    ]

    def work(chunk):
        got = []
        for i, j in chunk:
            p, q = gens[i], gens[j]
            br = bracket_monomials(alg, p.mono, q.mono)
            if br.is_zero():
                continue
            try:
                expr = rewrite_in_generators(cat, br)
            except ClosureError as err:
                raise ClosureError(
                    "bracket {%s, %s} left the catalog: %s" % (p.name, q.name, err),
                    pair=(p.name, q.name),
                    residue=err.residue,
                ) from None
            if verify and expr.expand(cat) != br:
                raise ClosureError(
                    "rewrite of {%s, %s} does not expand back to the bracket"
                    % (p.name, q.name),
                    pair=(p.name, q.name),
                )
            got.append(((p.name, q.name), expr))
        return got

    if threads > 1 and len(pairs) > 64:
        idx = _gen_index(cat)
        chunks = [pairs[k::threads] for k in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = []
            for part in pool.map(work, chunks):
                results.extend(part)
        results.sort(key=lambda kv: (idx[kv[0][0]], idx[kv[0][1]]))
        table = dict(results)
    else:
        table = dict(work(pairs))

    degree = 0
    for expr in table.values():
        degree = max(degree, expr.max_factors(cat))
    return Closure(catalog=cat, table=table, degree=degree)


def closure_json_dict(cl):
    cat = cl.catalog
    entries = []
    for (a, b), expr in cl.table.items():
        entries.append(
            {
                "left": a,
                "right": b,
                "terms": [
                    {"c": "%d/%d" % (c.numerator, c.denominator), "gens": list(names)}
                    for names, c in expr.ordered_terms(cat)
                ],
            }
        )
    return {
        "type": cat.alg.family,
        "rank": cat.alg.rank,
        "degree": cl.degree,
        "entries": entries,
    }


# ---------------------------------------------------------------------------
# embeddings


class EmbeddingError(ValueError):
    pass


@dataclass
class EmbeddingReport:
    sub: object
    sup: object
    root_map: dict
    cartan_images: list         # rows over sup Cartan coordinates
    gen_map: dict               # sub generator name -> sup generator name
    pairs_checked: int

    def describe(self):
        return "%s%d into %s%d: %d generators mapped, %d bracket pairs checked" % (
            self.sub.family, self.sub.rank, self.sup.family, self.sup.rank,
            len(self.gen_map), self.pairs_checked,
        )


def standard_root_map(sub, sup):
    """Identity on orthogonal coordinates, padded with trailing zeros."""
    if sub.coords > sup.coords:
        raise EmbeddingError("no room: %d coordinates into %d" % (sub.coords, sup.coords))
    out = {}
    pool = set(sup.roots)
    for r in sub.roots:
        img = r + (0,) * (sup.coords - sub.coords)
        if img not in pool:
            raise EmbeddingError("image %r is not a root of the larger algebra" % (img,))
        out[r] = img
    return out


def verify_embedding(sub_alg, sup_alg, root_map=None):
    """Check that mapping root coordinates along root_map (plus the induced
    Cartan map) is a bracket-preserving injection, and that every catalog
    generator lands on a catalog generator. Returns an EmbeddingReport."""
    if root_map is None:
        root_map = standard_root_map(sub_alg, sup_alg)

    if len(set(root_map.values())) != len(root_map) or set(root_map) != set(sub_alg.roots):
        raise EmbeddingError("root map must be an injection defined on every root")
    for r, img in root_map.items():
        neg = tuple(-c for c in r)
        if tuple(-c for c in img) != root_map[neg]:
            raise EmbeddingError("root map does not commute with negation at %r" % (r,))
    for a in sub_alg.roots:
        for b in sub_alg.roots:
            s = tuple(x + y for x, y in zip(a, b))
            if s in sub_alg.root_pool_index:
                simg = tuple(x + y for x, y in zip(root_map[a], root_map[b]))
                if simg != root_map[s]:
                    raise EmbeddingError("root map is not additive on %r + %r" % (a, b))

    # Cartan images from [E_b, E_-b] matching on both sides
    rows = []
    rhs_cols = [[] for _ in range(sup_alg.n_cartan)]
    for beta in sub_alg.positive:
        i = sub_alg.root_var(beta)
        j = sub_alg.root_var(tuple(-c for c in beta))
        lhs = dict(sub_alg.bracket(i, j))
        rows.append([lhs.get(k, Fraction(0)) for k in range(sub_alg.n_cartan)])
        si = sup_alg.root_var(root_map[beta])
        sj = sup_alg.root_var(tuple(-c for c in root_map[beta]))
        rhs = dict(sup_alg.bracket(si, sj))
        for k in range(sup_alg.n_cartan):
            rhs_cols[k].append(rhs.get(k, Fraction(0)))
    cartan_images = [[None] * sup_alg.n_cartan for _ in range(sub_alg.n_cartan)]
    for k in range(sup_alg.n_cartan):
        col = solve(rows, rhs_cols[k])
        for i in range(sub_alg.n_cartan):
            cartan_images[i][k] = col[i]

    # coordinate images
    images = {}
    for i in range(sub_alg.n_cartan):
        images[i] = Polynomial(
            {((k, 1),): c for k, c in enumerate(cartan_images[i]) if c}
        )
    for r in sub_alg.roots:
        images[sub_alg.root_var(r)] = Polynomial.variable(sup_alg.root_var(root_map[r]))

    # bracket compatibility on every coordinate pair
    for i in range(sub_alg.dim):
        for j in range(i + 1, sub_alg.dim):
            want = Polynomial(
                {((k, 1),): c for k, c in sub_alg.bracket(i, j)}
            ).substitute(images)
            got = poisson_bracket(sup_alg, images[i], images[j])
            if want != got:
                raise EmbeddingError(
                    "bracket of %s and %s is not preserved"
                    % (sub_alg.names[i], sub_alg.names[j])
                )

    # catalog generators land on catalog generators
    sub_cat = build_catalog(sub_alg)
    sup_cat = build_catalog(sup_alg)
    gen_map = {}
    for g in sub_cat.generators:
        if g.case == "h":
            continue
        img_roots = tuple(
            sorted((root_map[r] for r in g.roots), key=sup_alg.root_pool_index.get)
        )
        target = sup_cat.by_roots.get(img_roots)
        if target is None:
            raise EmbeddingError("image of %s is decomposable upstairs" % g.name)
        gen_map[g.name] = target.name

    # and the induced map respects generator brackets
    pairs = 0
    sub_gens = sub_cat.generators
    for a in range(len(sub_gens)):
        for b in range(a + 1, len(sub_gens)):
            p, q = sub_gens[a], sub_gens[b]
            br = bracket_monomials(sub_alg, p.mono, q.mono)
            lhs = br.substitute(images)
            rhs = poisson_bracket(
                sup_alg,
                Polynomial.monomial(p.mono).substitute(images),
                Polynomial.monomial(q.mono).substitute(images),
            )
            if lhs != rhs:
                raise EmbeddingError(
                    "generator bracket {%s, %s} not preserved" % (p.name, q.name)
                )
            pairs += 1

    return EmbeddingReport(
        sub=sub_alg,
        sup=sup_alg,
        root_map=root_map,
        cartan_images=cartan_images,
        gen_map=gen_map,
        pairs_checked=pairs,
    )


# ---------------------------------------------------------------------------
# Jacobi sampling


@dataclass
class JacobiReport:
    checked: int
    failures: list

    @property
    def ok(self):
        return not self.failures


def jacobi_spot_check(cat, triples=200, seed=0, exhaustive=False):
    """{{p,q},r} + {{q,r},p} + {{r,p},q} = 0 on catalog generators.

    Exhaustive over all unordered triples, or on a seeded random sample.
    """
    import random

    alg = cat.alg
    gens = [g for g in cat.generators]
    polys = {g.name: Polynomial.monomial(g.mono) for g in gens}

    def defect(p, q, r):
        return (
            poisson_bracket(alg, poisson_bracket(alg, polys[p], polys[q]), polys[r])
            + poisson_bracket(alg, poisson_bracket(alg, polys[q], polys[r]), polys[p])
            + poisson_bracket(alg, poisson_bracket(alg, polys[r], polys[p]), polys[q])
        )

    failures = []
    checked = 0
    if exhaustive:
        n = len(gens)
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    names = (gens[a].name, gens[b].name, gens[c].name)
                    if not defect(*names).is_zero():
                        failures.append(names)
                    checked += 1
    else:
        rng = random.Random(seed)
        for _ in range(triples):
            names = tuple(rng.choice(gens).name for _ in range(3))
            if not defect(*names).is_zero():
                failures.append(names)
            checked += 1
    return JacobiReport(checked=checked, failures=failures)
