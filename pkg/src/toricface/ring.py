"""Presentation ideals of toric face rings.

The ideal splits as a squarefree monomial part (minimal non-faces of the
generator covering) plus a binomial part (per-facet toric relations,
obtained from an integer kernel basis saturated by the product of the face
variables).  Face prime ideals and the structural decomposition checks
live here as well.
"""

from __future__ import annotations

from itertools import combinations

from . import exact
from .errors import ClassOverflow, UnknownFace


class Monomial(tuple):
    """Exponent vector indexed by the generator family E."""

    __slots__ = ()

    def __new__(cls, exps):
        return super().__new__(cls, (int(e) for e in exps))

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    @classmethod
    def variable(cls, n, i):
        return cls(tuple(1 if j == i else 0 for j in range(n)))

    @classmethod
    def from_support(cls, n, idxs):
        s = set(idxs)
        return cls(tuple(1 if j in s else 0 for j in range(n)))

    @property
    def degree(self):
        return sum(self)

    def mul(self, other):
        return Monomial(a + b for a, b in zip(self, other))

    def divides(self, other):
        return all(a <= b for a, b in zip(self, other))

    def div(self, other):
        return Monomial(a - b for a, b in zip(self, other))

    def lcm(self, other):
        return Monomial(max(a, b) for a, b in zip(self, other))

    def gcd(self, other):
        return Monomial(min(a, b) for a, b in zip(self, other))

    def coprime(self, other):
        return all(a == 0 or b == 0 for a, b in zip(self, other))

    def support(self):
        return tuple(i for i, e in enumerate(self) if e > 0)

    def is_squarefree(self):
        return all(e <= 1 for e in self)

    def is_zero(self):
        return not any(self)


class Binomial:
    """Pure difference of two distinct monomials, lhs - rhs."""

    __slots__ = ("lhs", "rhs")

    def __init__(self, lhs, rhs):
        lhs, rhs = Monomial(lhs), Monomial(rhs)
        if lhs == rhs:
            raise ValueError("binomial sides must differ")
        self.lhs = lhs
        self.rhs = rhs

    @classmethod
    def checked(cls, mc, lhs, rhs):
        """Construct and verify both sides land in a common face's monoid
        with equal image there."""
        b = cls(lhs, rhs)
        names = mc.names
        sup = set(names[i] for i in b.lhs.support()) | set(
            names[i] for i in b.rhs.support()
        )
        for fid in mc.facet_ids:
            face = mc.face(fid)
            if not sup <= set(face.gens):
                continue
            vecs = mc.gen_vectors(fid)
            dim = len(next(iter(vecs.values()))) if vecs else 0
            li = [
                sum(b.lhs[i] * vecs[names[i]][k] for i in b.lhs.support())
                for k in range(dim)
            ]
            ri = [
                sum(b.rhs[i] * vecs[names[i]][k] for i in b.rhs.support())
                for k in range(dim)
            ]
            if li == ri:
                return b
        raise ValueError(
            f"binomial sides {tuple(b.lhs)} / {tuple(b.rhs)} do not share a face "
            "with equal image"
        )

    def canonical(self):
        """Sides ordered deterministically (larger by (degree, lex) first)."""
        a, b = self.lhs, self.rhs
        if (a.degree, tuple(a)) < (b.degree, tuple(b)):
            a, b = b, a
        return (a, b)

    def __eq__(self, other):
        return isinstance(other, Binomial) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"Binomial({tuple(self.lhs)}, {tuple(self.rhs)})"


class PresentedIdeal:
    """Monomial part A plus binomial part B of a presentation ideal."""

    __slots__ = ("names", "monomial_gens", "binomial_gens", "saturation_bound")

    def __init__(self, names, monomial_gens, binomial_gens, saturation_bound=None):
        self.names = tuple(names)
        for m in monomial_gens:
            if not Monomial(m).is_squarefree():
                raise ValueError("monomial generators must be squarefree")
        monos = sorted(set(Monomial(m) for m in monomial_gens))
        bins = sorted(set(binomial_gens), key=lambda b: b.canonical())
        mono_set = set(monos)
        for b in bins:
            if b.lhs in mono_set or b.rhs in mono_set:
                raise ValueError("a binomial generator has a side in the monomial part")
        self.monomial_gens = tuple(monos)
        self.binomial_gens = tuple(bins)
        self.saturation_bound = saturation_bound

    def polynomials(self):
        from . import grobner

        out = [grobner.Polynomial({m: 1}) for m in self.monomial_gens]
        out.extend(
            grobner.Polynomial({b.lhs: 1, b.rhs: -1}) for b in self.binomial_gens
        )
        return out

    def __repr__(self):
        return (
            f"PresentedIdeal(monomials={len(self.monomial_gens)}, "
            f"binomials={len(self.binomial_gens)})"
        )


def _facet_cover_sets(mc):
    return [frozenset(mc.face(fid).gens) for fid in mc.facet_ids]


def _minimal_nonfaces(mc):
    names = mc.names
    n = len(names)
    covers = _facet_cover_sets(mc)
    found = []
    for size in range(1, n + 1):
        for comb in combinations(range(n), size):
            nm = frozenset(names[i] for i in comb)
            if any(nm <= cov for cov in covers):
                continue
            if any(set(prev) <= set(comb) for prev in found):
                continue
            found.append(comb)
    return [Monomial.from_support(n, comb) for comb in found]


def _facet_binomials(mc, fid, degree_bound):
    """Generators of the toric ideal of one facet's monoid, over full E."""
    from . import grobner

    face = mc.face(fid)
    names = mc.names
    gens_set = set(face.gens)
    local = [i for i, nm in enumerate(names) if nm in gens_set]
    if not local:
        return []
    vecs = mc.gen_vectors(fid)
    dim = len(next(iter(vecs.values())))
    a = exact.IntMatrix.from_rows(
        [[vecs[names[i]][k] for i in local] for k in range(dim)], cols=len(local)
    )
    kernel = exact.kernel_basis(a)
    if not kernel:
        return []
    nloc = len(local)
    seed = []
    for v in kernel:
        plus = Monomial(tuple(max(x, 0) for x in v))
        minus = Monomial(tuple(max(-x, 0) for x in v))
        if plus != minus:
            seed.append(grobner.Polynomial({plus: 1, minus: -1}))
    sat = grobner.saturate(seed, tuple(range(nloc)), nloc, degree_bound=degree_bound)
    out = []
    n = len(names)
    for p in sat:
        terms = p.sorted_terms(grobner.Order(nloc))
        assert len(terms) == 2, "toric ideal basis element is not a binomial"
        (m1, c1), (m2, c2) = terms
        assert c1 == 1 and c2 == -1
        emb1 = [0] * n
        emb2 = [0] * n
        for j, i in enumerate(local):
            emb1[i] = m1[j]
            emb2[i] = m2[j]
        out.append(Binomial(emb1, emb2))
    return out


def presentation_ideal(mc, degree_bound=12):
    """The presentation ideal I = A + B of the toric face ring.

    A: minimal squarefree monomials whose generator support lies in no
    single face.  B: per-facet toric relations among the face generators,
    deduplicated across facets.  The saturation step is capped at the given
    total degree; the bound used is recorded on the result.
    """
    mc.require_valid()
    key = ("presentation_ideal", degree_bound)
    if key in mc._cache:
        return mc._cache[key]
    monos = _minimal_nonfaces(mc)
    bins = []
    seen = set()
    for fid in mc.facet_ids:
        for b in _facet_binomials(mc, fid, degree_bound):
            ck = b.canonical()
            if ck not in seen:
                seen.add(ck)
                bins.append(b)
    ideal = PresentedIdeal(mc.names, monos, bins, saturation_bound=degree_bound)
    mc._cache[key] = ideal
    return ideal


def monomial_in_ideal(mc, m):
    """True iff the generator support of the monomial lies in no single face."""
    mc.require_valid()
    m = Monomial(m)
    names = mc.names
    sup = frozenset(names[i] for i in m.support())
    return not any(sup <= cov for cov in _facet_cover_sets(mc))


def face_prime(mc, c):
    """Generators of the prime p_c: the variables whose generator is off the
    face, plus the binomial part of the presentation ideal."""
    mc.require_valid()
    if c not in mc.faces:
        raise UnknownFace(c)
    face = mc.face(c)
    names = mc.names
    n = len(names)
    ideal = presentation_ideal(mc)
    gens_set = set(face.gens)
    monos = [Monomial.variable(n, i) for i, nm in enumerate(names) if nm not in gens_set]
    return PresentedIdeal(names, monos, ideal.binomial_gens)


def class_members(binomials, h, cap):
    """Closure of {h} under two-sided rewriting by the given binomials.

    Breadth-first; members come back sorted lexicographically.  Raises
    ClassOverflow past the cap.
    """
    h = Monomial(h)
    moves = []
    for b in binomials:
        moves.append((b.lhs, b.rhs))
        moves.append((b.rhs, b.lhs))
    seen = {h}
    frontier = [h]
    while frontier:
        nxt = []
        for m in frontier:
            for src, dst in moves:
                if src.divides(m):
                    m2 = m.div(src).mul(dst)
                    if m2 not in seen:
                        seen.add(m2)
                        if len(seen) > cap:
                            raise ClassOverflow(
                                f"congruence class of {tuple(h)} exceeds cap {cap}"
                            )
                        nxt.append(m2)
        frontier = nxt
    return sorted(seen)


def _monomials_up_to_degree(n, d):
    out = []

    def rec(prefix, left):
        if len(prefix) == n:
            out.append(Monomial(prefix))
            return
        for v in range(left + 1):
            rec(prefix + [v], left - v)

    rec([], d)
    return out


def check_prime_identities(mc, probe_degree=None, class_cap=100000):
    """Verify the prime-ideal identities for all face pairs and triples:

    (i)   p_c + p_d = p_{c meet d}
    (ii)  p_c ∩ (p_d + p_e) = p_c ∩ p_d + p_c ∩ p_e
    (iii) p_c + p_d ∩ p_e = (p_c + p_d) ∩ (p_c + p_e)

    Every ideal involved is spanned by monomial congruence classes modulo
    the binomial part, and each graded component of the class monoid
    algebra is one-dimensional, so sums become unions and intersections
    become intersections of membership sets.  Memberships are tabulated by
    class enumeration on all monomials up to the probe degree (2 x the
    maximal generator degree, which covers every generator of both sides
    of (i)).  Identity (i) is additionally certified by reduced Groebner
    basis equality on every pair, and (ii)/(iii) are cross-checked by
    actual Groebner intersections on all facet triples.

    Returns True, or (False, (condition, witness)).
    """
    from . import grobner

    mc.require_valid()
    ideal = presentation_ideal(mc)
    names = mc.names
    n = len(names)
    bins = ideal.binomial_gens
    maxdeg = max([1] + [max(b.lhs.degree, b.rhs.degree) for b in bins])
    d = probe_degree if probe_degree is not None else 2 * maxdeg
    universe = _monomials_up_to_degree(n, d)
    classes = [class_members(bins, m, class_cap) for m in universe]

    face_ids = mc.face_ids
    complements = {}
    for fid in face_ids:
        gens = set(mc.face(fid).gens)
        complements[fid] = tuple(i for i, nm in enumerate(names) if nm not in gens)

    member = {}
    for fid in face_ids:
        comp = complements[fid]
        bits = 0
        for idx, cls in enumerate(classes):
            if any(any(m[i] > 0 for i in comp) for m in cls):
                bits |= 1 << idx
        member[fid] = bits

    bpolys = [grobner.Polynomial({b.lhs: 1, b.rhs: -1}) for b in bins]

    def prime_polys(fid):
        out = [grobner.Polynomial({Monomial.variable(n, i): 1}) for i in complements[fid]]
        return out + bpolys

    for a, b in combinations(face_ids, 2):
        m = mc.meet(a, b)
        if (member[a] | member[b]) != member[m]:
            return False, ("i", (a, b))
        if not grobner.ideal_equal(prime_polys(a) + prime_polys(b), prime_polys(m), n):
            return False, ("i-groebner", (a, b))

    for c in face_ids:
        bc = member[c]
        for d1, e1 in combinations(face_ids, 2):
            bd, be = member[d1], member[e1]
            if bc & (bd | be) != (bc & bd) | (bc & be):
                return False, ("ii", (c, d1, e1))
            if bc | (bd & be) != (bc | bd) & (bc | be):
                return False, ("iii", (c, d1, e1))

    facets = mc.facet_ids
    for c in facets:
        pc = prime_polys(c)
        for d1 in facets:
            for e1 in facets:
                pd, pe = prime_polys(d1), prime_polys(e1)
                lhs2 = grobner.intersect(pc, pd + pe, n)
                rhs2 = grobner.intersect(pc, pd, n) + grobner.intersect(pc, pe, n)
                if not grobner.ideal_equal(lhs2, rhs2, n):
                    return False, ("ii-groebner", (c, d1, e1))
                lhs3 = pc + grobner.intersect(pd, pe, n)
                rhs3 = grobner.intersect(pc + pd, pc + pe, n)
                if not grobner.ideal_equal(lhs3, rhs3, n):
                    return False, ("iii-groebner", (c, d1, e1))
    return True


def intersection_of_face_primes(mc):
    """Generators of the intersection of all face primes.  Facets suffice:
    primes of subfaces contain the primes of the faces above them."""
    from . import grobner

    mc.require_valid()
    n = len(mc.names)
    facets = mc.facet_ids
    cur = face_prime(mc, facets[0]).polynomials()
    for fid in facets[1:]:
        cur = grobner.intersect(cur, face_prime(mc, fid).polynomials(), n)
    return cur


def decompose_check(mc):
    """Check I = A + sum of extended facet ideals, and that eliminating the
    variables off each face from I recovers that face's presentation ideal."""
    from . import grobner

    mc.require_valid()
    names = mc.names
    n = len(names)
    ideal = presentation_ideal(mc)
    ipolys = ideal.polynomials()

    parts = [grobner.Polynomial({m: 1}) for m in _minimal_nonfaces(mc)]
    for fid in mc.facet_ids:
        parts.extend(_restricted_ideal_polys(mc, fid))
    if not grobner.ideal_equal(ipolys, parts, n):
        return False

    for fid in mc.face_ids:
        keep = tuple(i for i, nm in enumerate(names) if nm in set(mc.face(fid).gens))
        elim = grobner.eliminate(ipolys, keep, n)
        expected = _restricted_ideal_polys(mc, fid)
        if not keep:
            # proper ideals meet the constants in 0
            if elim or expected:
                return False
            continue
        proj_a = [_project(p, keep) for p in elim]
        proj_b = [_project(p, keep) for p in expected]
        if not grobner.ideal_equal(proj_a, proj_b, len(keep)):
            return False
    return True


def _restricted_ideal_polys(mc, fid):
    """Presentation ideal of the subcomplex below fid, with exponents over
    the full family E."""
    from . import grobner

    sub = mc.restrict(fid)
    subideal = presentation_ideal(sub)
    names = mc.names
    n = len(names)
    pos = {nm: i for i, nm in enumerate(names)}
    out = []

    def embed(m):
        exps = [0] * n
        for j, e in enumerate(m):
            if e:
                exps[pos[sub.names[j]]] = e
        return Monomial(exps)

    for m in subideal.monomial_gens:
        out.append(grobner.Polynomial({embed(m): 1}))
    for b in subideal.binomial_gens:
        out.append(grobner.Polynomial({embed(b.lhs): 1, embed(b.rhs): -1}))
    return out


def _project(poly, keep):
    from . import grobner

    terms = {}
    for m, c in poly.terms.items():
        terms[Monomial(tuple(m[i] for i in keep))] = c
    return grobner.Polynomial(terms)
