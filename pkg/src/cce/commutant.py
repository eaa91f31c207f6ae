"""Indecomposable zero-weight monomials over the root variables.

The commutant of the Cartan subalgebra inside the symmetric algebra is
spanned by monomials in the root coordinates whose root multiset sums to
zero. The indecomposable ones (those with no proper zero-sum sub-multiset)
generate everything; together with the Cartan coordinates they form the
catalog this module builds. Equivalently they are the Hilbert basis of the
monoid {x in N^Phi : sum_r x_r r = 0}, which we enumerate with the
Contejean-Devie completion procedure: grow candidates from unit vectors,
only ever adding a root with negative scalar product against the current
weight, and prune anything dominated by a solution already found. Every
minimal solution is reachable along such a path, so the search is complete,
and it terminates on its own; the 2 |Phi^+| degree bound is asserted, never
relied on.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations

_SECTION_ORDER = ("perm", "long", "short")

_CASE_BY_SECTIONS = {
    frozenset(("perm",)): "a",
    frozenset(("long",)): "a",
    frozenset(("short",)): "a",
    frozenset(("perm", "long")): "b",
    frozenset(("perm", "short")): "c",
    frozenset(("long", "short")): "d",
    frozenset(("perm", "long", "short")): "e",
}

_ALLOWED_SECTIONS = {
    "A": {"perm"},
    "D": {"perm", "long"},
    "B": {"perm", "long", "short"},
    "C": {"perm", "long", "short"},
}


def root_section(root):
    """perm for e_i - e_j, long for +-(e_i + e_j), short for the
    single-index roots (e_i in type B, 2 e_i in type C)."""
    nz = [c for c in root if c]
    if len(nz) == 1:
        return "short"
    return "perm" if nz[0] * nz[1] < 0 else "long"


def case_for(family, roots):
    """Section profile tag (a)-(e) of a root multiset."""
    secs = frozenset(root_section(r) for r in roots)
    case = _CASE_BY_SECTIONS.get(secs)
    if case is None:
        raise ValueError("no section profile fits the root multiset %r" % (roots,))
    bad = secs - _ALLOWED_SECTIONS[family]
    if bad:
        raise ValueError(
            "type %s has no %s roots but the multiset %r uses them"
            % (family, "/".join(sorted(bad)), roots)
        )
    return case


def is_indecomposable(roots):
    """True when the roots sum to zero and no proper nonempty sub-multiset
    does. The n Cartan directions are degree-1 generators handled apart,
    so the empty multiset is not accepted here."""
    roots = tuple(roots)
    if not roots:
        return False
    coords = len(roots[0])
    zero = (0,) * coords
    if tuple(map(sum, zip(*roots))) != zero:
        return False
    items = sorted(Counter(roots).items())
    total = len(roots)

    def proper_zero(idx, taken, acc):
        if acc == zero and 0 < taken < total:
            return True
        if idx == len(items):
            return False
        root, mult = items[idx]
        cur = acc
        for k in range(mult + 1):
            if k:
                cur = tuple(a + b for a, b in zip(cur, root))
            if proper_zero(idx + 1, taken + k, cur):
                return True
        return False

    # scan sub-multisets; the check above fires before the full set is taken
    return not proper_zero(0, 0, zero)


def hilbert_basis(roots, degree_cap, stop_degree=None):
    """Minimal nonzero natural solutions of sum_j x_j roots[j] = 0.

    Returns (solutions, complete). With stop_degree the search is cut off
    after recording solutions of that degree and complete may be False.
    """
    m = len(roots)
    coords = len(roots[0])
    zero = (0,) * coords
    sols = []
    masks = []
    frontier = {}
    for j, r in enumerate(roots):
        x = [0] * m
        x[j] = 1
        frontier[tuple(x)] = (r, 1 << j)
    degree = 1
    while frontier:
        if degree > degree_cap:
            raise RuntimeError(
                "zero-weight frontier still alive past the safe degree bound %d" % degree_cap
            )
        rest = []
        for x, (s, xm) in frontier.items():
            if s == zero:
                for sx, sm in zip(sols, masks):
                    if sm & xm == sm and all(a <= b for a, b in zip(sx, x)):
                        break
                else:
                    sols.append(x)
                    masks.append(xm)
            else:
                rest.append((x, s, xm))
        if stop_degree is not None and degree >= stop_degree:
            return sols, not rest
        nxt = {}
        for x, s, xm in rest:
            for j, r in enumerate(roots):
                d = 0
                for a, b in zip(s, r):
                    d += a * b
                if d >= 0:
                    continue
                child = x[:j] + (x[j] + 1,) + x[j + 1 :]
                if child in nxt:
                    continue
                cm = xm | (1 << j)
                dominated = False
                for sx, sm in zip(sols, masks):
                    if sm & cm == sm and all(a <= b for a, b in zip(sx, child)):
                        dominated = True
                        break
                if not dominated:
                    nxt[child] = (tuple(a + b for a, b in zip(s, r)), cm)
        frontier = nxt
        degree += 1
    return sols, True


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class Generator:
    """One catalog member: a monomial with zero total weight.

    roots is the sorted root multiset (empty for Cartan members), mono the
    polynomial monomial over the algebra variables, case the section
    profile tag, with "h" marking the Cartan coordinates themselves.
    """

    name: str
    degree: int
    roots: tuple
    mono: tuple
    case: str


def _token(root):
    """(sort key, text) for one root: hatless tokens first, then by index."""
    sec = root_section(root)
    nz = [(k, c) for k, c in enumerate(root) if c]
    if sec == "perm":
        i = next(k for k, c in nz if c > 0)
        j = next(k for k, c in nz if c < 0)
        return (0, i, j), "%d%d-" % (i + 1, j + 1)
    if sec == "long":
        body = "%d%d+" % (nz[0][0] + 1, nz[1][0] + 1)
    else:
        body = "%d" % (nz[0][0] + 1)
    if nz[0][1] > 0:
        return (0,) + tuple(k for k, _ in nz), body
    return (1,) + tuple(k for k, _ in nz), "^" + body


def generator_name(alg, roots):
    """p_{...} with the three sections (permutation; long; short) separated
    by semicolons, powers marked with ^k."""
    counts = Counter(roots)
    sections = {s: [] for s in _SECTION_ORDER}
    for root, e in counts.items():
        key, t = _token(root)
        sections[root_section(root)].append((key, t if e == 1 else "%s^%d" % (t, e)))
    parts = [
        ",".join(t for _, t in sorted(sections[s])) for s in _SECTION_ORDER if sections[s]
    ]
    return "p_{%s}" % ";".join(parts)


class Catalog:
    """Layered catalog of commutant generators for one algebra."""

    def __init__(self, alg, layer_map, complete):
        self.alg = alg
        self.complete = complete
        self.cartan = tuple(
            Generator("h%d" % (i + 1), 1, (), ((i, 1),), "h") for i in range(alg.n_cartan)
        )
        self.layers = {
            d: tuple(sorted(members, key=lambda g: g.mono))
            for d, members in sorted(layer_map.items())
        }
        self.zeta = max(self.layers) if self.layers else 1
        self.generators = self.cartan + tuple(
            g for d in sorted(self.layers) for g in self.layers[d]
        )
        self.by_name = {g.name: g for g in self.generators}
        self.by_roots = {g.roots: g for g in self.generators}

    def layer(self, degree):
        return self.layers.get(degree, ())

    def counts(self):
        return {d: len(self.layers[d]) for d in sorted(self.layers)}

    def dim_fl(self):
        """Number of generators counted as plain monomials, Cartans included."""
        return len(self.generators)

    def __repr__(self):
        return "Catalog(%s%d, zeta=%d, dim_fl=%d)" % (
            self.alg.family,
            self.alg.rank,
            self.zeta,
            self.dim_fl(),
        )


_cache = {}


def _generator(alg, exps):
    mono = tuple((alg.n_cartan + j, e) for j, e in enumerate(exps) if e)
    roots = []
    for j, e in enumerate(exps):
        roots.extend([alg.roots[j]] * e)
    roots = tuple(roots)
    return Generator(
        name=generator_name(alg, roots),
        degree=sum(exps),
        roots=roots,
        mono=mono,
        case=case_for(alg.family, roots),
    )


def build_catalog(alg, max_degree=None):
    """Full generator catalog, or the part up to max_degree (>= 2)."""
    if max_degree is not None and max_degree < 2:
        raise ValueError("max_degree must be at least 2, the smallest generator degree")
    key = (alg.family, alg.rank)
    if key not in _cache:
        cap = 2 * len(alg.positive)
        sols, complete = hilbert_basis(alg.roots, cap, stop_degree=max_degree)
        layer_map = {}
        for exps in sols:
            g = _generator(alg, exps)
            layer_map.setdefault(g.degree, []).append(g)
        cat = Catalog(alg, layer_map, complete)
        if not complete:
            return cat
        _cache[key] = cat
    cat = _cache[key]
    if max_degree is None or max_degree >= cat.zeta:
        return cat
    return Catalog(alg, {d: list(m) for d, m in cat.layers.items() if d <= max_degree}, False)


def enumerate_layer(alg, degree):
    """All indecomposable zero-weight monomials of the given degree."""
    return build_catalog(alg).layer(degree)


def classify(catalog):
    """Re-derive the tag of every non-Cartan generator; raises when a root
    multiset fits no profile or one that its family cannot carry."""
    out = {}
    for g in catalog.generators:
        if g.case == "h":
            continue
        case = case_for(catalog.alg.family, g.roots)
        assert case == g.case
        out[g.name] = case
    return out


def expand_class(alg, i, j):
    """Members of the permutation class [eps_ij^-] (1-based indices): the
    chain products eps_{i k1}^- ... eps_{kt j}^- over distinct
    intermediate indices, the plain root being the empty chain."""
    coords = alg.coords
    if not (1 <= i <= coords and 1 <= j <= coords) or i == j:
        raise ValueError("class indices must be distinct and within 1..%d" % coords)
    others = [k for k in range(1, coords + 1) if k not in (i, j)]
    out = []
    for t in range(len(others) + 1):
        for mid in permutations(others, t):
            path = (i, *mid, j)
            roots = []
            for a, b in zip(path, path[1:]):
                v = [0] * coords
                v[a - 1] = 1
                v[b - 1] = -1
                roots.append(tuple(v))
            out.append(tuple(sorted(roots, key=alg.root_pool_index.get)))
    out.sort(key=lambda rs: (len(rs), tuple(alg.root_pool_index[r] for r in rs)))
    return tuple(out)


def catalog_json_dict(cat):
    layers = {}
    for d in sorted(cat.layers):
        layers[str(d)] = [
            {"name": g.name, "case": g.case, "roots": [list(r) for r in g.roots]}
            for g in cat.layers[d]
        ]
    return {
        "type": cat.alg.family,
        "rank": cat.alg.rank,
        "zeta": cat.zeta,
        "complete": cat.complete,
        "counts": {str(d): len(cat.layers[d]) for d in sorted(cat.layers)},
        "dim_fl": cat.dim_fl(),
        "layers": layers,
    }
