"""Monomial orders, Buchberger's algorithm, normal forms, and ideal
operations: weight initial ideals, equality, membership, elimination,
intersection, and saturation.

Weight preorders are refined by graded reverse lexicographic order on the
input variable order; elimination uses a block order with the discarded
variables in the leading block.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegreeBoundExceeded, NotMonomialBinomialInput
from .ring import Monomial


class Order:
    """A monomial order: optional weight vector refined by degrevlex, with
    an optional leading elimination block of variables."""

    __slots__ = ("nvars", "weight", "elim", "_rest", "_memo")

    def __init__(self, nvars, weight=None, elim=()):
        self.nvars = int(nvars)
        if weight is not None:
            weight = tuple(int(w) for w in weight)
            if len(weight) != self.nvars:
                raise ValueError("weight length must match the variable count")
            if any(w < 0 for w in weight):
                raise ValueError("weight entries must be nonnegative")
        self.weight = weight
        self.elim = tuple(elim)
        eset = set(self.elim)
        self._rest = tuple(i for i in range(self.nvars) if i not in eset)
        self._memo = {}

    def key(self, m):
        k = self._memo.get(m)
        if k is None:
            parts = []
            if self.elim:
                parts.append(sum(m[i] for i in self.elim))
                parts.extend(-m[i] for i in reversed(self.elim))
            if self.weight is not None:
                parts.append(sum(w * e for w, e in zip(self.weight, m)))
            parts.append(sum(m[i] for i in self._rest))
            parts.extend(-m[i] for i in reversed(self._rest))
            k = tuple(parts)
            self._memo[m] = k
        return k

    def max_monomial(self, monomials):
        return max(monomials, key=self.key)

    def sort_desc(self, monomials):
        return sorted(monomials, key=self.key, reverse=True)


class Polynomial:
    """Polynomial over Q as a map monomial -> nonzero coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self.terms[Monomial(m)] = c

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def is_binomial(self):
        return len(self.terms) == 2

    def num_terms(self):
        return len(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) - c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return Polynomial._raw({})
        return Polynomial._raw({m: c * v for m, v in self.terms.items()})

    def term_mul(self, coeff, mono):
        coeff = Fraction(coeff)
        if coeff == 0:
            return Polynomial._raw({})
        return Polynomial._raw(
            {m.mul(mono): c * coeff for m, c in self.terms.items()}
        )

    def mul(self, other):
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1.mul(m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    def leading(self, order):
        m = order.max_monomial(self.terms)
        return m, self.terms[m]

    def monic(self, order):
        _, c = self.leading(order)
        if c == 1:
            return self
        return Polynomial._raw({m: v / c for m, v in self.terms.items()})

    def sorted_terms(self, order):
        return [(m, self.terms[m]) for m in order.sort_desc(self.terms)]

    def vanishes_at_one(self):
        return sum(self.terms.values()) == 0

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "Polynomial(0)"
        items = sorted(self.terms.items())
        return "Polynomial(" + ", ".join(f"{tuple(m)}: {c}" for m, c in items) + ")"


def w_degree(m, w):
    """Weight degree of a monomial: the scalar product with w."""
    return sum(int(a) * int(b) for a, b in zip(m, w))


def initial_component(f, w):
    """The w-homogeneous component of highest degree (0 for the zero poly)."""
    if f.is_zero():
        return f
    top = max(w_degree(m, w) for m in f.terms)
    return Polynomial._raw(
        {m: c for m, c in f.terms.items() if w_degree(m, w) == top}
    )


def normal_form(f, gb, order):
    """Remainder of full multivariate division of f by the basis."""
    lead = [(g.leading(order)[0], g.leading(order)[1], g) for g in gb if not g.is_zero()]
    work = dict(f.terms)
    rem = {}
    key = order.key
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = None
        for lm, lc, g in lead:
            if lm.divides(m):
                hit = (lm, lc, g)
                break
        if hit is None:
            rem[m] = c
            continue
        lm, lc, g = hit
        q = c / lc
        shift = m.div(lm)
        for gm, gc in g.terms.items():
            if gm == lm:
                continue
            t = gm.mul(shift)
            v = work.get(t, 0) - q * gc
            if v:
                work[t] = v
            else:
                work.pop(t, None)
    return Polynomial._raw(rem)


def _spoly(f, g, order):
    fm, fc = f.leading(order)
    gm, gc = g.leading(order)
    l = fm.lcm(gm)
    return f.term_mul(Fraction(1, 1) / fc, l.div(fm)) - g.term_mul(
        Fraction(1, 1) / gc, l.div(gm)
    )


def buchberger(gens, order, degree_bound=None):
    """The reduced Groebner basis of the given generators.

    S-pair processing uses the Buchberger product and chain criteria with a
    minimal-lcm selection strategy; the basis is fully inter-reduced at the
    end, so the output is canonical for the order.
    """
    basis = []
    for f in gens:
        if isinstance(f, dict):
            f = Polynomial(f)
        if not f.is_zero():
            basis.append(f.monic(order))
    if not basis:
        return []
    lead = [g.leading(order)[0] for g in basis]
    pairs = set()
    for i in range(len(basis)):
        for j in range(i):
            pairs.add((j, i))
    key = order.key
    while pairs:
        best = min(pairs, key=lambda p: (key(lead[p[0]].lcm(lead[p[1]])), p))
        pairs.remove(best)
        i, j = best
        li, lj = lead[i], lead[j]
        if li.coprime(lj):
            continue
        l = li.lcm(lj)
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if lead[k].divides(l):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        if degree_bound is not None and l.degree > degree_bound:
            raise DegreeBoundExceeded(
                f"S-pair lcm degree {l.degree} exceeds bound {degree_bound}",
                degree_bound,
            )
        s = _spoly(basis[i], basis[j], order)
        r = normal_form(s, basis, order)
        if r.is_zero():
            continue
        r = r.monic(order)
        basis.append(r)
        lead.append(r.leading(order)[0])
        new = len(basis) - 1
        for k in range(new):
            pairs.add((k, new))
    return _reduce_basis(basis, order)


def _reduce_basis(basis, order):
    # minimalize: drop elements whose leading monomial is divisible by
    # another's (ascending leading monomials: divisors come first)
    basis = sorted(
        (g for g in basis if not g.is_zero()),
        key=lambda g: order.key(g.leading(order)[0]),
    )
    minimal = []
    lead = []
    for g in basis:
        lm = g.leading(order)[0]
        if any(l.divides(lm) for l in lead):
            continue
        minimal.append(g)
        lead.append(lm)
    # inter-reduce tails until stable
    cur = list(minimal)
    for _ in range(len(cur) + 1):
        changed = False
        for i in range(len(cur)):
            others = cur[:i] + cur[i + 1 :]
            r = normal_form(cur[i], others, order).monic(order)
            if r.terms != cur[i].terms:
                cur[i] = r
                changed = True
        if not changed:
            break
    return sorted(cur, key=lambda g: order.key(g.leading(order)[0]))


def reduced_groebner(gens, order, degree_bound=None):
    return buchberger(gens, order, degree_bound=degree_bound)


def ideal_equal(gens_a, gens_b, nvars):
    """Equality via identical reduced Groebner bases under the fixed
    degrevlex order."""
    order = Order(nvars)
    return buchberger(gens_a, order) == buchberger(gens_b, order)


def ideal_member(f, gens, nvars):
    """Membership via a zero normal form."""
    order = Order(nvars)
    gb = buchberger(gens, order)
    return normal_form(f, gb, order).is_zero()


def eliminate(gens, keep, nvars):
    """Generators of the elimination ideal keeping only the given variables.

    A block order puts the discarded variables first; the returned
    generators still carry exponents over all nvars (zero on the discarded
    block).
    """
    keep = set(keep)
    drop = tuple(i for i in range(nvars) if i not in keep)
    if not drop:
        return buchberger(gens, Order(nvars))
    order = Order(nvars, elim=drop)
    gb = buchberger(gens, order)
    out = []
    for g in gb:
        if all(all(m[i] == 0 for i in drop) for m in g.terms):
            out.append(g)
    return out


def _append_var(poly, t_exp_map):
    """Lift a polynomial in n vars to n+1 vars with t-exponent per term."""
    terms = {}
    for m, c in poly.terms.items():
        terms[Monomial(tuple(m) + (t_exp_map,))] = c
    return Polynomial._raw(terms)


def _strip_var(poly):
    terms = {}
    for m, c in poly.terms.items():
        terms[Monomial(tuple(m)[:-1])] = c
    return Polynomial._raw(terms)


def intersect(gens_a, gens_b, nvars):
    """Generators of the intersection, by elimination of an auxiliary t:
    I ∩ J = (t·I + (1-t)·J) ∩ K[x]."""
    lifted = []
    for f in gens_a:
        lifted.append(_append_var(f, 1))
    for g in gens_b:
        one_minus_t = Polynomial(
            {Monomial((0,) * nvars + (0,)): 1, Monomial((0,) * nvars + (1,)): -1}
        )
        lifted.append(one_minus_t.mul(_append_var(g, 0)))
    kept = eliminate(lifted, tuple(range(nvars)), nvars + 1)
    return [_strip_var(g) for g in kept]


def saturate(gens, var_idxs, nvars, degree_bound=None):
    """Saturation by the product of the given variables via the t-trick:
    (I : (prod x_i)^inf) = (I + (t·prod x_i - 1)) ∩ K[x]."""
    lifted = [_append_var(f, 0) for f in gens]
    prod = [0] * (nvars + 1)
    for i in var_idxs:
        prod[i] = 1
    prod[nvars] = 1
    lifted.append(
        Polynomial({Monomial(tuple(prod)): 1, Monomial((0,) * (nvars + 1)): -1})
    )
    drop = (nvars,)
    order = Order(nvars + 1, elim=drop)
    gb = buchberger(lifted, order, degree_bound=degree_bound)
    out = []
    for g in gb:
        if all(m[nvars] == 0 for m in g.terms):
            out.append(_strip_var(g))
    return out


def initial_ideal_weight(gens, w):
    """Generators of the w-initial ideal: the w-initial components of the
    reduced Groebner basis under w refined by degrevlex.

    The input must consist of monomials and binomials; every returned
    element is again a monomial or a binomial.
    """
    polys = []
    for f in gens:
        if isinstance(f, dict):
            f = Polynomial(f)
        if f.is_zero():
            continue
        if f.num_terms() > 2:
            raise NotMonomialBinomialInput(
                "initial_ideal_weight requires monomial and binomial generators"
            )
        polys.append(f)
    if not polys:
        return []
    nvars = len(next(iter(polys[0].terms)))
    w = tuple(int(x) for x in w)
    order = Order(nvars, weight=w)
    gb = buchberger(polys, order)
    out = []
    for g in gb:
        ini = initial_component(g, w)
        assert ini.num_terms() <= 2, "initial component of a GB element has >2 terms"
        out.append(ini)
    return out
