"""PBW normal ordering in the enveloping algebra and the symmetrization map.

Basis words are non-decreasing tuples of variable indices in the algebra's
coordinate order (Cartan, then positive root vectors by height, then their
negatives). Out-of-order adjacent letters straighten through
X Y = Y X + [X, Y]; the recursion terminates because every nontrivial
sub-call shortens the word, and results are memoized on the algebra.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations_with_replacement

from .polyalg import Polynomial


class PBWElement:
    """Exact linear combination of normal-ordered basis words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[w] = c

    @classmethod
    def from_word(cls, word, coeff=1):
        word = tuple(word)
        if any(word[k] > word[k + 1] for k in range(len(word) - 1)):
            raise ValueError("basis words must be non-decreasing: %r" % (word,))
        return cls({word: Fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, PBWElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            elif w in out:
                del out[w]
        r = PBWElement()
        r.terms = out
        return r

    def __neg__(self):
        r = PBWElement()
        r.terms = {w: -c for w, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        r = PBWElement()
        if c:
            r.terms = {w: c * x for w, x in self.terms.items()}
        return r

    def degree(self):
        """Filtration degree; -1 for the zero element."""
        return max((len(w) for w in self.terms), default=-1)

    def component(self, k):
        r = PBWElement()
        r.terms = {w: c for w, c in self.terms.items() if len(w) == k}
        return r

    def symbol(self):
        """Commutative image: each word becomes a monomial, order forgotten."""
        out = {}
        for w, c in self.terms.items():
            mono = []
            for v in w:
                if mono and mono[-1][0] == v:
                    mono[-1] = (v, mono[-1][1] + 1)
                else:
                    mono.append((v, 1))
            key = tuple(mono)
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return Polynomial(out)

    def top_symbol(self):
        return self.component(self.degree()).symbol() if self.terms else Polynomial()

    def __repr__(self):
        return "PBWElement(%d terms, degree %d)" % (len(self.terms), self.degree())


def _letter_word(alg, x, word):
    """Normal form of X_x * (word) as a {word: coefficient} dict."""
    cache = alg.pbw_caches[0]
    key = (x, word)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if not word or x <= word[0]:
        out = {(x,) + word: Fraction(1)}
    else:
        head, rest = word[0], word[1:]
        out = {}
        for w, c in _letter_word(alg, x, rest).items():
            for w2, c2 in _letter_word(alg, head, w).items():
                s = out.get(w2, 0) + c * c2
                if s:
                    out[w2] = s
                elif w2 in out:
                    del out[w2]
        for k, c in alg.bracket(x, head):
            for w2, c2 in _letter_word(alg, k, rest).items():
                s = out.get(w2, 0) + c * c2
                if s:
                    out[w2] = s
                elif w2 in out:
                    del out[w2]
    cache[key] = out
    return out


def normalize(alg, letters, coeff=1):
    """Normal-order an arbitrary product of coordinate letters."""
    out = {(): Fraction(coeff)}
    for x in reversed(tuple(letters)):
        nxt = {}
        for w, c in out.items():
            for w2, c2 in _letter_word(alg, x, w).items():
                s = nxt.get(w2, 0) + c * c2
                if s:
                    nxt[w2] = s
                elif w2 in nxt:
                    del nxt[w2]
        out = nxt
    el = PBWElement()
    el.terms = {w: c for w, c in out.items() if c}
    return el


def _word_mul(alg, wa, wb):
    cache = alg.pbw_caches[1]
    key = (wa, wb)
    hit = cache.get(key)
    if hit is not None:
        return hit
    out = {wb: Fraction(1)}
    for x in reversed(wa):
        nxt = {}
        for w, c in out.items():
            for w2, c2 in _letter_word(alg, x, w).items():
                s = nxt.get(w2, 0) + c * c2
                if s:
                    nxt[w2] = s
                elif w2 in nxt:
                    del nxt[w2]
        out = nxt
    cache[key] = out
    return out


def nc_multiply(alg, a, b):
    out = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            f = ca * cb
            for w, c in _word_mul(alg, wa, wb).items():
                s = out.get(w, 0) + f * c
                if s:
                    out[w] = s
                elif w in out:
                    del out[w]
    el = PBWElement()
    el.terms = out
    return el


def nc_commutator(alg, a, b):
    return nc_multiply(alg, a, b) - nc_multiply(alg, b, a)


def _sym_word(alg, word):
    """Average of all orderings of the letters of word, normal-ordered."""
    cache = alg.pbw_caches[2]
    hit = cache.get(word)
    if hit is not None:
        return hit
    if len(word) <= 1:
        out = {word: Fraction(1)}
    else:
        k = len(word)
        out = {}
        for i, v in enumerate(word):
            if i and word[i - 1] == v:
                continue
            weight = Fraction(word.count(v), k)
            sub = _sym_word(alg, word[:i] + word[i + 1:])
            for w, c in sub.items():
                for w2, c2 in _letter_word(alg, v, w).items():
                    s = out.get(w2, 0) + weight * c * c2
                    if s:
                        out[w2] = s
                    elif w2 in out:
                        del out[w2]
    cache[word] = out
    return out


def symmetrize(alg, p):
    """The linear map sending a monomial to the mean of its factor words."""
    out = {}
    for mono, coeff in p.terms.items():
        word = tuple(v for v, e in mono for _ in range(e))
        for w, c in _sym_word(alg, word).items():
            s = out.get(w, 0) + coeff * c
            if s:
                out[w] = s
            elif w in out:
                del out[w]
    el = PBWElement()
    el.terms = out
    return el


def filtration_dim(alg, k):
    """Number of degree-k basis words, binom(dim + k - 1, k)."""
    if k < 0:
        raise ValueError("filtration degree must be nonnegative")
    return math.comb(alg.dim + k - 1, k)


def count_words(alg, k):
    """The same count by direct enumeration; a cross-check for small k."""
    return sum(1 for _ in combinations_with_replacement(range(alg.dim), k))


def pbw_str(alg, el):
    if el.is_zero():
        return "0"
    bits = []
    for w, c in sorted(el.terms.items(), key=lambda wc: (len(wc[0]), wc[0])):
        prod = " ".join(alg.names[v] for v in w) if w else "1"
        if c == 1 and w:
            bits.append(prod)
        elif c == -1 and w:
            bits.append("-" + prod)
        else:
            bits.append("%s %s" % (c, prod) if w else str(c))
    return " + ".join(bits)


def cartan_commutant_check(alg, cat):
    """[H_i, symmetrize(p)] for every Cartan i and catalog generator p.

    Returns the list of (cartan name, generator name) pairs with a nonzero
    commutator; empty means the symmetrized catalog is a quantum commutant.
    """
    bad = []
    cartans = [PBWElement.from_word((i,)) for i in range(alg.n_cartan)]
    for g in cat.generators:
        if g.case == "h":
            continue
        lam = symmetrize(alg, Polynomial.monomial(g.mono))
        for i, h in enumerate(cartans):
            if not nc_commutator(alg, h, lam).is_zero():
                bad.append((alg.names[i], g.name))
    return bad


def correction_profile(alg, cat, pairs=None):
    """Degrees of [Lam(p), Lam(q)] - Lam({p,q}) across generator pairs.

    Each record is (p, q, classical top degree, correction degree); the
    correction is expected at least two steps down the filtration.
    """
    from .polyalg import bracket_monomials

    gens = [g for g in cat.generators if g.case != "h"]
    if pairs is None:
        pairs = [(a, b) for a in range(len(gens)) for b in range(a + 1, len(gens))]
    out = []
    for a, b in pairs:
        p, q = gens[a], gens[b]
        lp = symmetrize(alg, Polynomial.monomial(p.mono))
        lq = symmetrize(alg, Polynomial.monomial(q.mono))
        classical = bracket_monomials(alg, p.mono, q.mono)
        diff = nc_commutator(alg, lp, lq) - symmetrize(alg, classical)
        out.append((p.name, q.name, p.degree + q.degree - 1, diff.degree()))
    return out
