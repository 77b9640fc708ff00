"""Exact rational polyhedral cones.

Dual descriptions by the double description method, face lattices,
extreme generators with respect to a lattice, and unimodularity tests.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

from . import exact
from .errors import DimensionMismatch, NotPointed, NotSimplicial


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _neg(v):
    return tuple(-x for x in v)


def _clear_vector(v):
    """Scale a rational vector to a primitive integer vector."""
    den = 1
    for e in v:
        f = Fraction(e)
        den = den * f.denominator // gcd(den, f.denominator)
    w = tuple(int(Fraction(e) * den) for e in v)
    return exact.primitive(w)


def double_description(rows, dim):
    """Extreme rays and lineality basis of {y in R^dim : r . y >= 0 for r in rows}.

    Incremental double description: start from all of R^dim and cut with one
    halfspace at a time (lexicographic insertion order), maintaining extreme
    rays modulo the lineality space; adjacency is decided by a rank test on
    the common tight constraints.
    """
    lin = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays = []
    processed = []

    def adjacent(r1, r2):
        tight = [p for p in processed if _dot(p, r1) == 0 and _dot(p, r2) == 0]
        need = dim - len(lin) - 2
        if need < 0:
            return False
        if not tight:
            return need == 0
        return exact.rank_over_field(exact.IntMatrix.from_rows(
            [list(t) for t in tight], cols=dim)) == need

    for a in sorted(set(tuple(int(x) for x in r) for r in rows)):
        if not any(a):
            continue
        pivot = next((b for b in lin if _dot(a, b) != 0), None)
        if pivot is not None:
            if _dot(a, pivot) < 0:
                pivot = _neg(pivot)
            pa = _dot(a, pivot)
            new_lin = []
            for b in lin:
                if b == pivot or b == _neg(pivot):
                    continue
                ab = _dot(a, b)
                if ab != 0:
                    b = tuple(pa * x - ab * y for x, y in zip(b, pivot))
                    b = exact.primitive(b)
                new_lin.append(b)
            new_rays = []
            for r in rays:
                ar = _dot(a, r)
                if ar != 0:
                    r = exact.primitive(
                        tuple(pa * x - ar * y for x, y in zip(r, pivot))
                    )
                if any(r) and r not in new_rays:
                    new_rays.append(r)
            if pivot not in new_rays:
                new_rays.append(pivot)
            lin = new_lin
            rays = new_rays
        else:
            plus = [r for r in rays if _dot(a, r) > 0]
            zero = [r for r in rays if _dot(a, r) == 0]
            minus = [r for r in rays if _dot(a, r) < 0]
            if minus:
                new = []
                for rp in plus:
                    arp = _dot(a, rp)
                    for rm in minus:
                        if not adjacent(rp, rm):
                            continue
                        arm = _dot(a, rm)
                        rn = exact.primitive(
                            tuple(arp * x - arm * y for x, y in zip(rm, rp))
                        )
                        if any(rn) and rn not in new:
                            new.append(rn)
                rays = plus + zero + new
        processed.append(a)

    rays = sorted(set(rays))
    lin = sorted(set(lin))
    return rays, lin


class Cone:
    """Rational polyhedral cone R_+ g_1 + ... + R_+ g_n in Z^ambient_dim.

    Rational generators are cleared to primitive integer vectors on
    ingestion.  The inequality description is computed lazily by the double
    description method and then sealed; instances are immutable afterwards.
    """

    __slots__ = ("ambient_dim", "generators", "_facets", "_span_equations", "_extreme")

    def __init__(self, generators, ambient_dim):
        self.ambient_dim = int(ambient_dim)
        if self.ambient_dim < 1:
            raise DimensionMismatch("ambient dimension must be >= 1")
        gens = []
        for g in generators:
            if len(g) != self.ambient_dim:
                raise DimensionMismatch(
                    f"generator {tuple(g)} has length {len(g)}, expected {self.ambient_dim}"
                )
            v = _clear_vector(g)
            if any(v) and v not in gens:
                gens.append(v)
        self.generators = tuple(sorted(gens))
        self._facets = None
        self._span_equations = None
        self._extreme = None

    def _seal(self):
        if self._facets is None:
            rays, lin = double_description(self.generators, self.ambient_dim)
            facets = rays
            # drop inequalities implied by the span equations alone: they are
            # already irredundant extreme rays of the dual, keep as computed
            self._facets = tuple(facets)
            self._span_equations = tuple(lin)

    @property
    def facets(self):
        """Primitive inward facet normals (relative to the cone's span)."""
        self._seal()
        return self._facets

    @property
    def span_equations(self):
        """Integer equations cutting out the linear span of the cone."""
        self._seal()
        return self._span_equations

    @property
    def inequalities(self):
        """Complete irredundant inequality list; equations appear as +-pairs."""
        out = list(self.facets)
        for e in self.span_equations:
            out.append(e)
            out.append(_neg(e))
        return tuple(out)

    @property
    def dim(self):
        self._seal()
        return self.ambient_dim - len(self._span_equations)

    def contains(self, v):
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("point has wrong length")
        return all(_dot(f, v) >= 0 for f in self.facets) and all(
            _dot(e, v) == 0 for e in self.span_equations
        )

    def interior_point(self):
        """A point in the relative interior (sum of the generators)."""
        if not self.generators:
            return tuple(0 for _ in range(self.ambient_dim))
        return tuple(sum(c) for c in zip(*self.generators))

    @property
    def lineality_basis(self):
        """Z-basis of the largest linear subspace contained in the cone."""
        rows = list(self.facets) + list(self.span_equations)
        if not rows:
            return [tuple(1 if i == j else 0 for j in range(self.ambient_dim))
                    for i in range(self.ambient_dim)]
        m = exact.IntMatrix.from_rows([list(r) for r in rows], cols=self.ambient_dim)
        return [tuple(v) for v in exact.kernel_basis(m)]

    @property
    def is_pointed(self):
        rows = list(self.facets) + list(self.span_equations)
        if not rows:
            return self.ambient_dim == 0
        m = exact.IntMatrix.from_rows([list(r) for r in rows], cols=self.ambient_dim)
        return exact.rank_over_field(m) == self.ambient_dim

    @property
    def extreme_rays(self):
        """Primitive representatives of the extreme rays."""
        if self._extreme is None:
            self._seal()
            d = self.dim
            eqs = [list(e) for e in self.span_equations]
            rk_eq = (
                exact.rank_over_field(
                    exact.IntMatrix.from_rows(eqs, cols=self.ambient_dim)
                )
                if eqs
                else 0
            )
            out = []
            for g in self.generators:
                rows = [list(f) for f in self.facets if _dot(f, g) == 0] + eqs
                rk = (
                    exact.rank_over_field(
                        exact.IntMatrix.from_rows(rows, cols=self.ambient_dim)
                    )
                    if rows
                    else 0
                )
                if rk - rk_eq == d - 1:
                    p = exact.primitive(g)
                    if p not in out:
                        out.append(p)
            self._extreme = tuple(sorted(out))
        return self._extreme

    def is_simplicial(self):
        return len(self.extreme_rays) == self.dim

    def generating_rays(self):
        """A generating set: extreme rays plus +-(lineality basis)."""
        out = list(self.extreme_rays)
        for b in self.lineality_basis:
            out.append(tuple(b))
            out.append(_neg(b))
        return out

    def canonical_key(self):
        """Hashable key identifying the cone as a point set."""
        lin = tuple(sorted(exact.primitive(b) for b in self.lineality_basis))
        return (self.ambient_dim, self.extreme_rays, lin)

    def same_cone(self, other):
        return self.canonical_key() == other.canonical_key()

    def contains_cone(self, other):
        return all(self.contains(g) for g in other.generators)

    def __repr__(self):
        return f"Cone({list(self.generators)!r}, dim={self.ambient_dim})"


def dual_description(generators, ambient_dim):
    """Cone with a complete irredundant inequality list for R_+ generators."""
    c = Cone(generators, ambient_dim)
    c._seal()
    return c


class FaceLattice:
    """All faces of a cone with the inclusion partial order."""

    def __init__(self, faces, leq):
        self.faces = faces  # list of Cone, sorted by (dim, extreme rays)
        self.leq = leq  # set of (i, j) with faces[i] subseteq faces[j]

    def __len__(self):
        return len(self.faces)

    def maximal(self):
        n = len(self.faces)
        return [
            i
            for i in range(n)
            if not any(j != i and (i, j) in self.leq for j in range(n))
        ]


def face_lattice(c):
    """Every face of the cone (including {0} and the cone itself).

    Faces are realized as subsets of tight facet inequalities; duplicates are
    removed and the inclusion order is returned alongside.
    """
    facets = c.facets
    lin = [b for b in c.lineality_basis]
    lin_gens = []
    for b in lin:
        lin_gens.append(b)
        lin_gens.append(_neg(b))
    ext = c.extreme_rays
    seen = {}
    for k in range(len(facets) + 1):
        for sub in combinations(range(len(facets)), k):
            tight_ext = tuple(
                g for g in ext if all(_dot(facets[i], g) == 0 for i in sub)
            )
            if tight_ext not in seen:
                gens = list(tight_ext) + lin_gens
                seen[tight_ext] = Cone(gens, c.ambient_dim)
    faces = sorted(seen.values(), key=lambda f: (f.dim, f.extreme_rays))
    leq = set()
    for i, fi in enumerate(faces):
        ei = set(fi.extreme_rays)
        for j, fj in enumerate(faces):
            if ei <= set(fj.extreme_rays):
                leq.add((i, j))
    return FaceLattice(faces, leq)


class Lattice:
    """Sublattice of Z^ambient_dim spanned by independent integer rows."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, basis):
        self.ambient_dim = int(ambient_dim)
        rows = [tuple(int(x) for x in b) for b in basis]
        for r in rows:
            if len(r) != self.ambient_dim:
                raise DimensionMismatch("basis vector has wrong length")
        if rows:
            m = exact.IntMatrix.from_rows([list(r) for r in rows],
                                          cols=self.ambient_dim)
            if exact.rank_over_field(m) != len(rows):
                raise ValueError("basis rows are linearly dependent")
        self.basis = tuple(rows)

    @classmethod
    def standard(cls, n):
        return cls(n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_generators(cls, vectors, ambient_dim):
        """The lattice generated by arbitrary integer vectors."""
        return cls(ambient_dim, exact.row_lattice_basis(vectors, ambient_dim))

    @property
    def rank(self):
        return len(self.basis)

    def coordinates(self, v):
        """Rational coordinates of v in the basis, or None if v is off-span."""
        if not self.basis:
            return None if any(v) else ()
        cols = [[self.basis[j][i] for j in range(self.rank)]
                for i in range(self.ambient_dim)]
        return exact.solve_rational(cols, list(v), self.rank)

    def contains(self, v):
        coords = self.coordinates(v)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def from_coordinates(self, coords):
        return tuple(
            sum(int(coords[j]) * self.basis[j][i] for j in range(self.rank))
            for i in range(self.ambient_dim)
        )


def extreme_generators(c, lattice):
    """For each extreme ray R of the cone, the unique generator of R ∩ L."""
    if not c.is_pointed:
        raise NotPointed("extreme generators require a pointed cone")
    out = []
    for r in c.extreme_rays:
        coords = lattice.coordinates(r)
        if coords is None:
            raise ValueError(f"ray {r} does not lie in the span of the lattice")
        den = 1
        for e in coords:
            den = den * e.denominator // gcd(den, e.denominator)
        ints = [int(e * den) for e in coords]
        prim = exact.primitive(ints)
        out.append(lattice.from_coordinates(prim))
    return sorted(out)


def is_unimodular(c, lattice):
    """True iff the extreme generators span a direct summand of the lattice.

    Tested by the Smith normal form of the matrix expressing the extreme
    generators in the lattice basis: all elementary divisors must be 1.
    """
    if not c.is_pointed:
        raise NotPointed("unimodularity requires a pointed cone")
    if not c.is_simplicial():
        raise NotSimplicial("unimodularity requires a simplicial cone")
    gens = extreme_generators(c, lattice)
    if not gens:
        return True
    rows = []
    for g in gens:
        coords = lattice.coordinates(g)
        rows.append([int(e) for e in coords])
    m = exact.IntMatrix.from_rows(rows, cols=lattice.rank)
    divisors = exact.elementary_divisors(m)
    return len(divisors) == len(gens) and all(d == 1 for d in divisors)
