"""Sparse polynomial algebra over the rationals with the Poisson-Lie bracket.

Monomials are tuples of (variable index, exponent) pairs sorted by index;
polynomials map monomials to nonzero Fractions. Variable indices refer to
the basis order of an Algebra, so the linear coordinate functions satisfy
{x_i, x_j} = sum_k C_ij^k x_k with the structure constants of the algebra.
"""

from __future__ import annotations

from fractions import Fraction


def mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m):
    return sum(e for _, e in m)


def mono_pow(m, k):
    return tuple((v, e * k) for v, e in m)


def _mono_dec(m, var):
    """Divide a monomial by one power of var (var must be present)."""
    out = []
    for v, e in m:
        if v == var:
            if e > 1:
                out.append((v, e - 1))
        else:
            out.append((v, e))
    return tuple(out)


def _grlex_key(m, nvars):
    exps = [0] * nvars
    for v, e in m:
        exps[v] = e
    return (mono_degree(m), tuple(exps))


class Polynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[m] = c

    @classmethod
    def variable(cls, v):
        return cls({((v, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, m, c=1):
        return cls({tuple(m): Fraction(c)})

    @classmethod
    def constant(cls, c):
        c = Fraction(c)
        return cls({(): c}) if c else cls()

    def is_zero(self):
        return not self.terms

    def support(self):
        s = set()
        for m in self.terms:
            for v, _ in m:
                s.add(v)
        return s

    def degree(self):
        return max((mono_degree(m) for m in self.terms), default=0)

    def homogeneous_degree(self):
        """Common degree of all terms, or None (0 for the zero polynomial)."""
        degs = {mono_degree(m) for m in self.terms}
        if not degs:
            return 0
        if len(degs) == 1:
            return degs.pop()
        return None

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        p = Polynomial()
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = Polynomial()
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial()
            p = Polynomial()
            p.terms = {m: c * other for m, c in self.terms.items()}
            return p
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        p = Polynomial()
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Polynomial.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, var):
        out = {}
        for m, c in self.terms.items():
            for v, e in m:
                if v == var:
                    out[_mono_dec(m, var)] = c * e
                    break
        p = Polynomial()
        p.terms = out
        return p

    def eval(self, point):
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for var, e in m:
                v *= point[var] ** e
            total += v
        return total

    def substitute(self, images):
        """Map variables through images (dict var -> Polynomial)."""
        out = Polynomial()
        for m, c in self.terms.items():
            t = Polynomial.constant(c)
            for v, e in m:
                t = t * (images[v] ** e)
            out = out + t
        return out

    def ordered_terms(self):
        """Terms in descending graded lexicographic order."""
        if not self.terms:
            return []
        nvars = 1 + max(v for m in self.terms for v, _ in m)
        return sorted(
            self.terms.items(), key=lambda mc: _grlex_key(mc[0], nvars), reverse=True
        )

    def __repr__(self):
        return "Polynomial(%d terms, degree %d)" % (len(self.terms), self.degree())


# ---------------------------------------------------------------------------
# brackets


def poisson_bracket(alg, p, q):
    """{p, q} = sum C_jk^l x_l (dp/dx_j)(dq/dx_k)."""
    sp = p.support()
    sq = q.support()
    dp, dq = {}, {}

    def d(poly, cache, v):
        if v not in cache:
            cache[v] = poly.diff(v)
        return cache[v]

    out = Polynomial()
    for (i, j), entry in alg.brackets.items():
        if not ((i in sp and j in sq) or (j in sp and i in sq)):
            continue
        a = d(p, dp, i) * d(q, dq, j) - d(p, dp, j) * d(q, dq, i)
        if a.is_zero():
            continue
        lin = Polynomial({((k, 1),): c for k, c in entry})
        out = out + a * lin
    return out


def bracket_monomials(alg, m1, m2):
    """{m1, m2} for plain monomials, expanded by the Leibniz rule."""
    out = {}
    for a, ea in m1:
        for b, eb in m2:
            entry = alg.bracket(a, b)
            if not entry:
                continue
            coef = Fraction(ea * eb)
            base = mono_mul(_mono_dec(m1, a), _mono_dec(m2, b))
            for k, c in entry:
                m = mono_mul(base, ((k, 1),))
                s = out.get(m, 0) + coef * c
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
    p = Polynomial()
    p.terms = out
    return p


def leibniz_expand(alg, ps, qs):
    """{p_1...p_r, q_1...q_s} expanded factor by factor.

    Equivalent to poisson_bracket on the products; used to cross-check it.
    """
    out = Polynomial()
    for i in range(len(ps)):
        rest_p = Polynomial.constant(1)
        for i2, f in enumerate(ps):
            if i2 != i:
                rest_p = rest_p * f
        for j in range(len(qs)):
            br = poisson_bracket(alg, ps[i], qs[j])
            if br.is_zero():
                continue
            rest = rest_p
            for j2, f in enumerate(qs):
                if j2 != j:
                    rest = rest * f
            out = out + rest * br
    return out


def derivation_action(alg, i, p):
    """{h_{i+1}, p}: each monomial is scaled by its total weight."""
    out = {}
    for m, c in p.terms.items():
        w = 0
        for v, e in m:
            if v >= alg.n_cartan:
                w += e * alg.weight_table[v - alg.n_cartan][i]
        if w:
            out[m] = c * w
    q = Polynomial()
    q.terms = out
    return q


def hat_poly(alg, p):
    """Apply the transpose anti-automorphism to every variable."""
    out = {}
    for m, c in p.terms.items():
        hm = tuple(sorted((alg.hat_var(v), e) for v, e in m))
        out[hm] = out.get(hm, 0) + c
    return Polynomial(out)


# ---------------------------------------------------------------------------
# rendering


def format_coeff(c):
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def mono_str(m, names):
    if not m:
        return "1"
    parts = []
    for v, e in m:
        parts.append(names[v] if e == 1 else "%s^%d" % (names[v], e))
    return " ".join(parts)


def poly_str(p, names):
    if p.is_zero():
        return "0"
    bits = []
    for m, c in p.ordered_terms():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not m:
            body = format_coeff(a)
        elif a == 1:
            body = mono_str(m, names)
        else:
            body = "%s %s" % (format_coeff(a), mono_str(m, names))
        bits.append((sign, body))
    first_sign, first_body = bits[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in bits[1:]:
        text += " %s %s" % (sign, body)
    return text


def poly_json(p, names):
    return [
        {"c": format_coeff(c), "m": [[names[v], e] for v, e in m]}
        for m, c in p.ordered_terms()
    ]
