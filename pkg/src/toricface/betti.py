"""Grading classes, squarefree divisor complexes, simplicial homology, and
graded Betti numbers.

The grading monoid is N^E modulo the congruence generated by the binomial
part of the presentation ideal; classes are enumerated breadth-first.  Betti
numbers come from two routes: relative homology of the squarefree divisor
complex pair (exact for embedded fans) and the homology of the degree
component of the Koszul complex (exact always); disagreements between the
two are reported, not hidden.
"""

from __future__ import annotations

from itertools import combinations

from . import exact, grobner, ring
from .errors import NotSubcomplex
from .ring import Monomial


class HClass:
    """A congruence class of exponent vectors with its canonical
    (lexicographically minimal) representative."""

    __slots__ = ("representative", "members")

    def __init__(self, members):
        members = tuple(sorted(Monomial(m) for m in members))
        self.members = members
        self.representative = members[0]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __repr__(self):
        return f"HClass({tuple(self.representative)}, size={len(self.members)})"


class SimplicialComplexOnE:
    """Downward-closed family of subsets of the generator family.

    Faces are frozensets of vertex indices.  The void complex (no faces at
    all) is allowed and distinct from the complex {∅}.
    """

    __slots__ = ("vertices", "faces")

    def __init__(self, vertices, faces):
        self.vertices = tuple(vertices)
        fs = set(frozenset(f) for f in faces)
        for f in fs:
            for v in f:
                if not frozenset(f - {v}) in fs:
                    raise ValueError("face family is not downward closed")
        if fs and frozenset() not in fs:
            raise ValueError("a nonvoid complex must contain the empty face")
        self.faces = frozenset(fs)

    @classmethod
    def from_facets(cls, vertices, facets):
        faces = set()
        for f in facets:
            f = tuple(f)
            for k in range(len(f) + 1):
                for sub in combinations(f, k):
                    faces.add(frozenset(sub))
        return cls(vertices, faces)

    @classmethod
    def on_ground_set(cls, n, facets):
        """Complex on vertices 1..n given by 1-based facets."""
        return cls.from_facets(
            tuple(str(i) for i in range(1, n + 1)),
            [tuple(v - 1 for v in f) for f in facets],
        )

    @property
    def dim(self):
        if not self.faces:
            return -2
        return max(len(f) for f in self.faces) - 1

    def faces_of_dim(self, d):
        return sorted(
            (f for f in self.faces if len(f) == d + 1), key=lambda f: tuple(sorted(f))
        )

    def is_subcomplex_of(self, other):
        return self.faces <= other.faces

    def restriction(self, vertex_idxs):
        keep = frozenset(vertex_idxs)
        return SimplicialComplexOnE(
            self.vertices, [f for f in self.faces if f <= keep]
        )

    def __repr__(self):
        return f"SimplicialComplexOnE(|V|={len(self.vertices)}, faces={len(self.faces)})"


class ChainComplexOverField:
    """Graded sequence of exact matrices; homology dimensions by rank."""

    __slots__ = ("dims", "boundaries")

    def __init__(self, dims, boundaries):
        self.dims = dict(dims)
        self.boundaries = dict(boundaries)
        for i, m in self.boundaries.items():
            nxt = self.boundaries.get(i + 1)
            if nxt is not None and m.cols and nxt.cols:
                prod = m.mul(nxt)
                if any(prod.entries):
                    raise ValueError("boundary maps do not compose to zero")

    def rank(self, i, p=None):
        m = self.boundaries.get(i)
        if m is None or m.rows == 0 or m.cols == 0:
            return 0
        return exact.rank_mod_p(m, p) if p else exact.rank_over_field(m)

    def homology(self, p=None):
        out = {}
        for i, d in self.dims.items():
            out[i] = d - self.rank(i, p) - self.rank(i + 1, p)
        return out


def _sign_removal(face_sorted, k):
    # removing the k-th smallest vertex carries sign (-1)^k
    return -1 if k % 2 else 1


def relative_chain(delta, delta_sub):
    """The relative augmented oriented chain complex of a complex pair."""
    if not delta_sub.is_subcomplex_of(delta):
        raise NotSubcomplex("second complex is not a subcomplex of the first")
    excluded = delta_sub.faces
    basis = {}
    lo = -1
    hi = delta.dim
    for i in range(lo, hi + 1):
        basis[i] = [f for f in delta.faces_of_dim(i) if f not in excluded]
    index = {
        i: {f: j for j, f in enumerate(basis[i])} for i in basis
    }
    dims = {i: len(basis[i]) for i in basis}
    boundaries = {}
    for i in range(lo + 1, hi + 1):
        rows = dims.get(i - 1, 0)
        cols = dims.get(i, 0)
        entries = [0] * (rows * cols)
        for j, f in enumerate(basis[i]):
            fsorted = sorted(f)
            for k, v in enumerate(fsorted):
                sub = frozenset(f - {v})
                r = index.get(i - 1, {}).get(sub)
                if r is not None:
                    entries[r * cols + j] = _sign_removal(fsorted, k)
        boundaries[i] = exact.IntMatrix(rows, cols, entries).to_rational()
    return ChainComplexOverField(dims, boundaries)


def relative_homology(delta, delta_sub, p=None):
    """Dimensions of the relative reduced homology of the pair, as a list
    of (degree, dimension) from degree -1 up."""
    chain = relative_chain(delta, delta_sub)
    hom = chain.homology(p)
    return sorted(hom.items())


def class_enumerate(mc, h, cap=100000):
    """The congruence class of an exponent vector under the binomial part
    of the presentation ideal."""
    pres = ring.presentation_ideal(mc)
    return HClass(ring.class_members(pres.binomial_gens, Monomial(h), cap))


def _class_rep_cache(mc, cap):
    pres = ring.presentation_ideal(mc)
    bins = pres.binomial_gens
    cache = {}

    def rep(m):
        m = Monomial(m)
        r = cache.get(m)
        if r is None:
            members = ring.class_members(bins, m, cap)
            r = members[0]
            for mm in members:
                cache[mm] = r
        return r

    return rep


def divisor_complexes(mc, h, cap=100000):
    """The squarefree divisor complex of the class of h and the subcomplex
    of faces admitting a witness inside the presentation ideal."""
    mc.require_valid()
    cls = class_enumerate(mc, h, cap)
    n = len(mc.names)
    faces = set()
    faces_sub = set()
    for m in cls.members:
        sup = m.support()
        for k in range(len(sup) + 1):
            for f in combinations(sup, k):
                fs = frozenset(f)
                faces.add(fs)
                if fs not in faces_sub:
                    g = m.div(Monomial.from_support(n, f))
                    if ring.monomial_in_ideal(mc, g):
                        faces_sub.add(fs)
    delta = SimplicialComplexOnE(mc.names, faces)
    delta_sub = SimplicialComplexOnE(mc.names, faces_sub)
    return delta, delta_sub


class KoszulComponent:
    """Degree component of the Koszul complex: basis labels, dimensions per
    homological degree, boundary matrices, and homology dimensions."""

    __slots__ = ("basis", "dims", "boundaries", "betti")

    def __init__(self, basis, dims, boundaries, betti):
        self.basis = basis
        self.dims = dims
        self.boundaries = boundaries
        self.betti = betti


def koszul_component(mc, h, cap=100000, p=None):
    """Basis and homology of the degree-h component of the Koszul complex.

    Basis elements in homological degree i are pairs (F, class) with |F|=i
    and a witness class whose monomial stays out of the presentation ideal;
    the boundary drops one vertex at a time with alternating signs and
    kills moves whose witness monomial falls into the ideal.
    """
    mc.require_valid()
    n = len(mc.names)
    rep = _class_rep_cache(mc, cap)
    cls = class_enumerate(mc, h, cap)

    basis = {}
    for m in cls.members:
        sup = m.support()
        for k in range(len(sup) + 1):
            for f in combinations(sup, k):
                g = m.div(Monomial.from_support(n, f))
                grep = rep(g)
                if ring.monomial_in_ideal(mc, grep):
                    continue
                basis.setdefault(k, set()).add((frozenset(f), grep))
    basis = {
        i: sorted(elems, key=lambda t: (tuple(sorted(t[0])), t[1]))
        for i, elems in basis.items()
    }
    dims = {i: len(basis.get(i, ())) for i in range(0, n + 1)}
    index = {
        i: {lab: j for j, lab in enumerate(basis.get(i, ()))} for i in range(n + 1)
    }
    boundaries = {}
    for i in range(1, n + 1):
        rows, cols = dims.get(i - 1, 0), dims.get(i, 0)
        entries = [0] * (rows * cols)
        for j, (f, grep) in enumerate(basis.get(i, ())):
            fsorted = sorted(f)
            for k, v in enumerate(fsorted):
                g2 = rep(grep.mul(Monomial.variable(n, v)))
                if ring.monomial_in_ideal(mc, g2):
                    continue
                target = (frozenset(f - {v}), g2)
                r = index[i - 1].get(target)
                assert r is not None, "Koszul boundary target missing from basis"
                entries[r * cols + j] = _sign_removal(fsorted, k)
        boundaries[i] = exact.IntMatrix(rows, cols, entries).to_rational()
    chain = ChainComplexOverField(dims, boundaries)
    betti = chain.homology(p)
    return KoszulComponent(basis, dims, boundaries, betti)


class GradedBettiResult:
    """Graded Betti numbers in one degree, with the method tag and, when
    both routes run, the relative-homology table and disagreement flags."""

    __slots__ = ("method", "table", "relative_table", "disagreements")

    def __init__(self, method, table, relative_table=None, disagreements=None):
        self.method = method
        self.table = table
        self.relative_table = relative_table
        self.disagreements = disagreements

    def nonzero(self):
        return {i: b for i, b in self.table.items() if b}

    def __repr__(self):
        return f"GradedBettiResult({self.method!r}, {self.nonzero()!r})"


def _hochster_table(mc, h, cap, p=None):
    delta, delta_sub = divisor_complexes(mc, h, cap)
    hom = dict(relative_homology(delta, delta_sub, p))
    n = len(mc.names)
    return {i: hom.get(i - 1, 0) for i in range(0, n + 1)}


def graded_betti(mc, h, cap=100000, p=None):
    """Graded Betti numbers at the class of h.

    Embedded fans use the divisor-complex formula (tag "hochster").  For
    abstract complexes both the relative-homology numbers and the Koszul
    homology are computed; the Koszul numbers are returned (tag "koszul")
    with any disagreeing index flagged.
    """
    mc.require_valid()
    if mc.mode == "embedded":
        table = _hochster_table(mc, h, cap, p)
        return GradedBettiResult("hochster", table)
    koszul = koszul_component(mc, h, cap, p)
    table = {i: koszul.betti.get(i, 0) for i in range(0, len(mc.names) + 1)}
    rel = _hochster_table(mc, h, cap, p)
    disagreements = {
        i: (table[i], rel[i]) for i in table if table[i] != rel.get(i, 0)
    }
    return GradedBettiResult("koszul", table, rel, disagreements)


def hochster_sr(delta, w_subset, p=None):
    """Stanley-Reisner Betti numbers in a squarefree degree, by reduced
    homology of the vertex restriction.

    ``delta`` is a SimplicialComplexOnE; ``w_subset`` is a collection of
    1-based vertex numbers.  The empty subset reports the all-zero table:
    the trivial unit in homological degree 0 is reported only at the zero
    degree by graded_betti, never as homology of an empty restriction.
    """
    w = sorted(set(int(v) for v in w_subset))
    size = len(w)
    if size == 0:
        return {0: 0}
    restriction = delta.restriction([v - 1 for v in w])
    void = SimplicialComplexOnE(delta.vertices, [])
    hom = dict(relative_homology(restriction, void, p))
    return {i: hom.get(size - i - 1, 0) for i in range(0, size + 1)}


class CancelReport:
    __slots__ = ("ok", "witness", "checked")

    def __init__(self, ok, witness, checked):
        self.ok = ok
        self.witness = witness
        self.checked = checked

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return f"CancelReport(pass, checked={self.checked})"
        return f"CancelReport(violation={self.witness})"


def check_cancel(mc, degree=3, cap=100000):
    """Search for a cancellation failure of the grading monoid.

    Scans all triples (i, j, k) of exponent vectors of total degree at most
    ``degree``: whenever the classes of i+j and i+k agree, the binomial
    X^j - X^k must lie in the presentation ideal.  Embedded fans always
    pass; the witness of the first failure is reported.
    """
    mc.require_valid()
    n = len(mc.names)
    pres = ring.presentation_ideal(mc)
    rep = _class_rep_cache(mc, cap)
    universe = ring._monomials_up_to_degree(n, degree)
    nuniv = len(universe)
    in_ideal = [ring.monomial_in_ideal(mc, m) for m in universe]
    reps = [rep(m) for m in universe]
    sum_rep = [[rep(universe[a].mul(universe[b])) for b in range(nuniv)]
               for a in range(nuniv)]

    order = grobner.Order(n)
    gb = None
    checked = 0
    for ii in range(nuniv):
        row = sum_rep[ii]
        for jj in range(nuniv):
            rij = row[jj]
            for kk in range(jj + 1, nuniv):
                checked += 1
                if rij != row[kk]:
                    continue
                if reps[jj] == reps[kk]:
                    continue  # X^j - X^k is in the binomial part
                if in_ideal[jj] and in_ideal[kk]:
                    continue  # both monomials are in the ideal
                j, k = universe[jj], universe[kk]
                if gb is None:
                    gb = grobner.buchberger(pres.polynomials(), order)
                diff = grobner.Polynomial({j: 1}) - grobner.Polynomial({k: 1})
                if not grobner.normal_form(diff, gb, order).is_zero():
                    return CancelReport(False, (universe[ii], j, k), checked)
    return CancelReport(True, None, checked)
