"""Monoidal complexes: embedded fans and abstract glued complexes.

A complex is a family of faces, each a pointed rational cone carrying the
monoid generated by the family generators assigned to it.  Faces live in
coordinate charts: an embedded complex has one chart for all faces, an
abstract complex has one chart per listed face, with explicit integer
gluing matrices identifying shared faces.  Construction closes the face
set under taking faces, identifies faces across charts, and propagates
generator coordinates through the gluings; mathematical violations are
collected for validate() rather than raised.
"""

from __future__ import annotations

from itertools import combinations

from . import exact, geom
from .errors import DimensionMismatch, DocumentError, InvalidComplex, UnknownFace


class Gluing:
    """Identification of a shared face between two charts.

    Chart_a coordinates map to chart_b coordinates by v_b = matrix . v_a.
    The shared region is the cone spanned by ``domain_names`` (defaulting
    to the generators declared on both sides).  ``strict`` gluings are the
    document-level ones and get the full condition-(2) validation; the
    non-strict ones are internal identifications (used for subdivision
    complexes, whose validity is inherited).
    """

    __slots__ = ("face_a", "face_b", "matrix", "domain_names", "strict")

    def __init__(self, face_a, face_b, matrix, domain_names=None, strict=True):
        self.face_a = face_a
        self.face_b = face_b
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        self.domain_names = tuple(domain_names) if domain_names is not None else None
        self.strict = strict

    def apply(self, v):
        return tuple(sum(r[i] * v[i] for i in range(len(v))) for r in self.matrix)

    def __repr__(self):
        return f"Gluing({self.face_a!r} -> {self.face_b!r})"


class Face:
    """One face of the complex, held in its canonical chart."""

    __slots__ = ("id", "chart", "cone", "gens")

    def __init__(self, fid, chart, cone, gens):
        self.id = fid
        self.chart = chart
        self.cone = cone
        self.gens = tuple(gens)

    @property
    def delta(self):
        return self.cone.dim

    def __repr__(self):
        return f"Face({self.id!r}, dim={self.cone.dim}, gens={list(self.gens)})"


class ValidationReport:
    def __init__(self, ok, condition=None, message="", witness=None, warnings=()):
        self.ok = ok
        self.condition = condition
        self.message = message
        self.witness = witness
        self.warnings = list(warnings)

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "ValidationReport(pass)"
        return (
            f"ValidationReport(fail, condition={self.condition}, "
            f"message={self.message!r})"
        )


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            p = self.find(p)
            self.parent[x] = p
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


class MonoidalComplex:
    """Faces, cones, monoid generators, and gluing data of a monoidal
    complex, closed under taking faces."""

    def __init__(self, mode, charts, listed, generators, gluings=(), weights=None):
        """
        mode:       "embedded" or "abstract"
        charts:     dict chart id -> dimension of its coordinate space
        listed:     list of (face_id, chart_id, cone_generators, gen_names)
        generators: ordered list of (name, host_chart, vector or None)
        gluings:    list of Gluing
        weights:    optional dict name -> nonnegative int
        """
        self.mode = mode
        self.charts = dict(charts)
        self.names = tuple(name for name, _, _ in generators)
        if len(set(self.names)) != len(self.names):
            raise DocumentError("generator names must be unique")
        self.index = {nm: i for i, nm in enumerate(self.names)}
        self.weights = dict(weights) if weights else {}
        self._defects = []
        self._warnings = []
        self._cache = {}
        self._validated = None

        self.coords = {nm: {} for nm in self.names}
        for name, chart, vec in generators:
            if vec is not None:
                if chart not in self.charts:
                    raise DocumentError(
                        f"unknown chart {chart!r} for generator {name!r}"
                    )
                if len(vec) != self.charts[chart]:
                    raise DocumentError(f"generator {name!r} vector has wrong length")
                if not any(vec):
                    raise DocumentError(f"generator {name!r} has the zero vector")
                self.coords[name][chart] = tuple(int(x) for x in vec)

        self._listed = []
        for fid, chart, cgens, gnames in listed:
            if chart not in self.charts:
                raise DocumentError(f"unknown chart {chart!r} for face {fid!r}")
            dim = self.charts[chart]
            cone = geom.Cone(cgens, dim)
            for nm in gnames:
                if nm not in self.index:
                    raise DocumentError(f"face {fid!r} lists unknown generator {nm!r}")
            self._listed.append((fid, chart, cone, tuple(gnames)))
        self._declared = {fid: set(g) for fid, _, _, g in self._listed}

        self.gluings = []
        for g in gluings:
            if g.face_a not in self.charts or g.face_b not in self.charts:
                raise DocumentError(f"gluing references unknown chart: {g!r}")
            if g.domain_names is None:
                if g.face_a not in self._declared or g.face_b not in self._declared:
                    raise DocumentError(
                        f"gluing between non-listed faces needs explicit "
                        f"domain names: {g!r}"
                    )
                shared = sorted(
                    self._declared[g.face_a] & self._declared[g.face_b],
                    key=lambda nm: self.index[nm],
                )
                g = Gluing(g.face_a, g.face_b, g.matrix, shared, strict=g.strict)
            rows = g.matrix
            if len(rows) != self.charts[g.face_b] or any(
                len(r) != self.charts[g.face_a] for r in rows
            ):
                raise DocumentError(f"gluing matrix has wrong shape: {g!r}")
            self.gluings.append(g)
        self.gluings = tuple(self.gluings)

        self._propagate_coordinates()
        self._complete()

    # -- construction ------------------------------------------------------

    def _domain_vectors(self, g):
        va = [self.coords[nm].get(g.face_a) for nm in g.domain_names]
        vb = [self.coords[nm].get(g.face_b) for nm in g.domain_names]
        return va, vb

    def _propagate_coordinates(self):
        changed = True
        while changed:
            changed = False
            for g in self.gluings:
                for nm in g.domain_names:
                    ca = self.coords[nm].get(g.face_a)
                    cb = self.coords[nm].get(g.face_b)
                    if ca is not None and cb is None:
                        self.coords[nm][g.face_b] = g.apply(ca)
                        changed = True
                    elif cb is not None and ca is None:
                        back = self._pullback(g, cb)
                        if back is not None:
                            self.coords[nm][g.face_a] = back
                            changed = True
        for fid, chart, _, gnames in self._listed:
            for nm in gnames:
                if self.coords[nm].get(chart) is None:
                    self._defects.append(
                        (
                            2,
                            f"generator {nm!r} of face {fid!r} has no coordinates "
                            "in its chart (underdetermined gluing data)",
                            nm,
                        )
                    )

    def _pullback(self, g, v_b):
        """Solve matrix . x = v_b; prefer the unique solution when the matrix
        is injective, else constrain x to the span of the known domain
        vectors."""
        da = self.charts[g.face_a]
        rows = [list(r) for r in g.matrix]
        mat = exact.IntMatrix.from_rows(rows, cols=da)
        if not exact.kernel_basis(mat):
            x = exact.solve_rational(rows, v_b, da)
            if x is None or any(e.denominator != 1 for e in x):
                return None
            x = tuple(int(e) for e in x)
            return x if g.apply(x) == tuple(v_b) else None
        va, _ = self._domain_vectors(g)
        known = [w for w in va if w is not None]
        if not known:
            return None
        basis = exact.row_lattice_basis(known, da)
        if not basis:
            return None
        cols = [g.apply(b) for b in basis]
        srows = [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))]
        lam = exact.solve_rational(srows, v_b, len(basis))
        if lam is None:
            return None
        x = tuple(
            sum(lam[j] * basis[j][i] for j in range(len(basis))) for i in range(da)
        )
        if any(e.denominator != 1 for e in x):
            return None
        x = tuple(int(e) for e in x)
        return x if g.apply(x) == tuple(v_b) else None

    def _complete(self):
        nodes = {}
        listed_key = {}
        for fid, chart, cone, _ in self._listed:
            lat = geom.face_lattice(cone)
            for f in lat.faces:
                key = (chart, f.canonical_key())
                nodes.setdefault(key, f)
            listed_key[fid] = (chart, cone.canonical_key())

        uf = _UnionFind()
        for key in sorted(nodes):
            uf.find(key)

        zero_keys = sorted(k for k, f in nodes.items() if f.dim == 0)
        for k in zero_keys[1:]:
            uf.union(zero_keys[0], k)

        for g in self.gluings:
            va, _ = self._domain_vectors(g)
            if any(v is None for v in va):
                self._defects.append(
                    (
                        2,
                        f"gluing {g.face_a}->{g.face_b} has generators without "
                        "coordinates",
                        g,
                    )
                )
                continue
            da = self.charts[g.face_a]
            db = self.charts[g.face_b]
            dom_a = geom.Cone(va, da) if va else geom.Cone([], da)
            for key in sorted(nodes):
                chart, _ck = key
                if chart != g.face_a:
                    continue
                f = nodes[key]
                rays = f.generating_rays()
                if not all(dom_a.contains(r) for r in rays):
                    continue
                img = geom.Cone([g.apply(r) for r in rays], db)
                img_key = (g.face_b, img.canonical_key())
                if img_key not in nodes:
                    nodes[img_key] = img
                    self._defects.append(
                        (
                            2,
                            f"gluing {g.face_a}->{g.face_b} maps a face outside "
                            "the face lattice of the target",
                            key,
                        )
                    )
                uf.union(key, img_key)

        classes = {}
        for key in nodes:
            classes.setdefault(uf.find(key), []).append(key)
        class_list = sorted((sorted(v) for v in classes.values()), key=lambda m: m[0])

        face_entries = []
        for members in class_list:
            gen_names = []
            for nm in self.names:
                for chart, ck in members:
                    v = self.coords[nm].get(chart)
                    if v is not None and nodes[(chart, ck)].contains(v):
                        gen_names.append(nm)
                        break
            face_entries.append((members, tuple(gen_names)))

        id_of_root = {}
        for fid in sorted(listed_key):
            root = uf.find(listed_key[fid])
            if root in id_of_root:
                keep = min(id_of_root[root], fid)
                self._warnings.append(
                    f"listed faces {id_of_root[root]!r} and {fid!r} coincide; "
                    f"keeping {keep!r}"
                )
                id_of_root[root] = keep
            else:
                id_of_root[root] = fid

        self.faces = {}
        self._members = {}
        used = set(id_of_root.values())
        for members, gen_names in face_entries:
            root = uf.find(members[0])
            fid = id_of_root.get(root)
            if fid is None:
                fid = "[" + ",".join(gen_names) + "]"
                while fid in used:
                    fid += "'"
                used.add(fid)
            chart, ck = members[0]
            self.faces[fid] = Face(fid, chart, nodes[(chart, ck)], gen_names)
            self._members[fid] = members

        ids = sorted(self.faces)
        leq = {(a, a) for a in ids}
        chart_entries = {}
        for fid in ids:
            for chart, ck in self._members[fid]:
                chart_entries.setdefault(chart, []).append((fid, nodes[(chart, ck)]))
        for chart, entries in chart_entries.items():
            for (fa, ca), (fb, cb) in combinations(entries, 2):
                if all(cb.contains(r) for r in ca.generating_rays()):
                    leq.add((fa, fb))
                if all(ca.contains(r) for r in cb.generating_rays()):
                    leq.add((fb, fa))
        changed = True
        while changed:
            changed = False
            for a, b in list(leq):
                for c in ids:
                    if (b, c) in leq and (a, c) not in leq:
                        leq.add((a, c))
                        changed = True
        self._leq = leq
        self.face_ids = sorted(ids, key=lambda f: (self.faces[f].cone.dim, f))
        self.facet_ids = sorted(
            f for f in ids if not any(g != f and (f, g) in leq for g in ids)
        )
        self._nodes = nodes

    # -- queries -----------------------------------------------------------

    def face(self, fid):
        if fid not in self.faces:
            raise UnknownFace(fid)
        return self.faces[fid]

    def leq(self, a, b):
        return (a, b) in self._leq

    def subfaces(self, fid):
        return [f for f in self.face_ids if self.leq(f, fid)]

    def meet(self, a, b):
        """The unique maximal common subface of two faces."""
        self.face(a)
        self.face(b)
        lower = [f for f in self.face_ids if self.leq(f, a) and self.leq(f, b)]
        maximal = [
            f for f in lower if not any(g != f and self.leq(f, g) for g in lower)
        ]
        if len(maximal) != 1:
            raise InvalidComplex(
                f"faces {a!r}, {b!r} have no unique maximal common face"
            )
        return maximal[0]

    def gen_vectors(self, fid):
        """Coordinates of the face's generators in its canonical chart."""
        face = self.face(fid)
        out = {}
        for nm in face.gens:
            v = self.coords[nm].get(face.chart)
            if v is None:
                raise InvalidComplex(
                    f"generator {nm!r} has no coordinates in chart {face.chart!r}"
                )
            out[nm] = v
        return out

    # -- validation ----------------------------------------------------------

    def validate(self):
        """Check the complex conditions; violations become report entries,
        never exceptions."""
        for cond, msg, wit in self._defects:
            return ValidationReport(False, cond, msg, wit, self._warnings)

        keyset = set()
        for members in self._members.values():
            keyset.update(members)
        for fid in self.face_ids:
            face = self.faces[fid]
            for sub in geom.face_lattice(face.cone).faces:
                if (face.chart, sub.canonical_key()) not in keyset:
                    return ValidationReport(
                        False,
                        1,
                        f"a face of {fid!r} is missing from the complex",
                        sub,
                        self._warnings,
                    )

        if self.mode == "embedded":
            for a, b in combinations(self.face_ids, 2):
                fa, fb = self.faces[a], self.faces[b]
                if fa.chart != fb.chart:
                    continue
                dim = self.charts[fa.chart]
                rows = list(fa.cone.inequalities) + list(fb.cone.inequalities)
                rays, lin = geom.double_description(rows, dim)
                inter = geom.Cone(
                    list(rays) + list(lin) + [tuple(-x for x in l) for l in lin],
                    dim,
                )
                try:
                    m = self.meet(a, b)
                except InvalidComplex as exc:
                    return ValidationReport(False, 2, str(exc), (a, b), self._warnings)
                if not inter.same_cone(self.faces[m].cone):
                    return ValidationReport(
                        False,
                        2,
                        f"intersection of {a!r} and {b!r} is not a common face",
                        (a, b),
                        self._warnings,
                    )
        else:
            for g in self.gluings:
                if not g.strict:
                    continue
                report = self._check_gluing(g)
                if report is not None:
                    return report
            for a, b in combinations(self.face_ids, 2):
                try:
                    self.meet(a, b)
                except InvalidComplex as exc:
                    return ValidationReport(False, 2, str(exc), (a, b), self._warnings)

        for fid in self.face_ids:
            face = self.faces[fid]
            try:
                vecs = self.gen_vectors(fid)
            except InvalidComplex as exc:
                return ValidationReport(False, 3, str(exc), fid, self._warnings)
            dim = self.charts[face.chart]
            span = geom.Cone(list(vecs.values()), dim)
            if not span.same_cone(face.cone):
                return ValidationReport(
                    False,
                    3,
                    f"generators of {fid!r} do not span its cone",
                    fid,
                    self._warnings,
                )
            if fid in self._declared and self._declared[fid] != set(face.gens):
                return ValidationReport(
                    False,
                    3,
                    f"declared generators of {fid!r} disagree with the geometric "
                    "assignment",
                    (sorted(self._declared[fid]), sorted(face.gens)),
                    self._warnings,
                )

        for fid in self.face_ids:
            if not self.faces[fid].cone.is_pointed:
                return ValidationReport(
                    False,
                    4,
                    f"cone of {fid!r} is not pointed",
                    fid,
                    self._warnings,
                )
        return ValidationReport(True, warnings=self._warnings)

    def _check_gluing(self, g):
        va, vb = self._domain_vectors(g)
        da, db = self.charts[g.face_a], self.charts[g.face_b]
        if any(v is None for v in va) or any(v is None for v in vb):
            return ValidationReport(
                False, 2, "gluing with unresolvable coordinates", g, self._warnings
            )
        for nm, x, y in zip(g.domain_names, va, vb):
            if g.apply(x) != y:
                return ValidationReport(
                    False,
                    2,
                    f"gluing {g.face_a}->{g.face_b} moves generator {nm!r} off "
                    "its declared image",
                    nm,
                    self._warnings,
                )
        dom_a = geom.Cone(va, da) if va else geom.Cone([], da)
        dom_b = geom.Cone(vb, db) if vb else geom.Cone([], db)
        cone_a = next(c for f, _, c, _ in self._listed if f == g.face_a)
        cone_b = next(c for f, _, c, _ in self._listed if f == g.face_b)
        keys_a = {f.canonical_key() for f in geom.face_lattice(cone_a).faces}
        keys_b = {f.canonical_key() for f in geom.face_lattice(cone_b).faces}
        if dom_a.canonical_key() not in keys_a or dom_b.canonical_key() not in keys_b:
            return ValidationReport(
                False,
                2,
                f"shared cone of gluing {g.face_a}->{g.face_b} is not a face of "
                "both cones",
                g,
                self._warnings,
            )
        on_a = {
            nm
            for nm in self._declared[g.face_a]
            if self.coords[nm].get(g.face_a) is not None
            and dom_a.contains(self.coords[nm][g.face_a])
        }
        on_b = {
            nm
            for nm in self._declared[g.face_b]
            if self.coords[nm].get(g.face_b) is not None
            and dom_b.contains(self.coords[nm][g.face_b])
        }
        if on_a != set(g.domain_names) or on_b != set(g.domain_names):
            return ValidationReport(
                False,
                2,
                f"gluing {g.face_a}->{g.face_b} does not carry monoid generators "
                "bijectively",
                (sorted(on_a), sorted(g.domain_names), sorted(on_b)),
                self._warnings,
            )
        if va:
            if dom_a.dim != dom_b.dim:
                return ValidationReport(
                    False,
                    2,
                    f"gluing {g.face_a}->{g.face_b} is not a cone isomorphism",
                    g,
                    self._warnings,
                )
            span_a = _saturated_span_basis(va, da)
            span_b = _saturated_span_basis(vb, db)
            lat_b = geom.Lattice(db, span_b)
            rows = []
            for bvec in span_a:
                coords = lat_b.coordinates(g.apply(bvec))
                if coords is None:
                    return ValidationReport(
                        False,
                        2,
                        f"gluing {g.face_a}->{g.face_b} image leaves the shared "
                        "span",
                        g,
                        self._warnings,
                    )
                if any(c.denominator != 1 for c in coords):
                    return ValidationReport(
                        False,
                        2,
                        f"gluing {g.face_a}->{g.face_b} is not a lattice map on "
                        "the shared face",
                        g,
                        self._warnings,
                    )
                rows.append([int(c) for c in coords])
            m = exact.IntMatrix.from_rows(rows, cols=len(span_b))
            divisors = exact.elementary_divisors(m)
            if len(divisors) != len(rows) or any(d != 1 for d in divisors):
                return ValidationReport(
                    False,
                    2,
                    f"gluing {g.face_a}->{g.face_b} is not unimodular on the "
                    "shared face",
                    divisors,
                    self._warnings,
                )
        return None

    def require_valid(self):
        if self._validated is None:
            self._validated = self.validate()
        if not self._validated.ok:
            raise InvalidComplex(self._validated.message)
        return self._validated

    # -- derived complexes ---------------------------------------------------

    def restrict(self, fid):
        """The subcomplex of all faces contained in the given face, as an
        embedded complex in that face's chart."""
        face = self.face(fid)
        vecs = self.gen_vectors(fid)
        dim = self.charts[face.chart]
        sub_names = [nm for nm in self.names if nm in set(face.gens)]
        gens = [(nm, "ambient", vecs[nm]) for nm in sub_names]
        if not gens:
            gens = []
        listed = [(fid, "ambient", [list(vecs[nm]) for nm in sub_names], sub_names)]
        weights = {nm: self.weights[nm] for nm in sub_names if nm in self.weights}
        return MonoidalComplex(
            "embedded", {"ambient": dim}, listed, gens, weights=weights
        )


def _saturated_span_basis(vectors, dim):
    """Basis of span(vectors) ∩ Z^dim (the saturated span lattice)."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    m = exact.IntMatrix.from_rows([list(v) for v in vectors], cols=dim)
    normals = exact.kernel_basis(m)
    if not normals:
        return [
            tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)
        ]
    nm = exact.IntMatrix.from_rows([list(v) for v in normals], cols=dim)
    return [tuple(v) for v in exact.kernel_basis(nm)]


def from_simplicial_complex(facets, n):
    """Embedded complex of the cones over the faces of a simplicial complex
    on {1..n}: free monoids generated by the unit vectors."""
    if n < 1:
        raise DimensionMismatch("need at least one vertex")
    names = [str(i) for i in range(1, n + 1)]
    gens = [
        (names[i], "ambient", tuple(1 if j == i else 0 for j in range(n)))
        for i in range(n)
    ]
    listed = []
    seen = set()
    for f in facets:
        fs = tuple(sorted(set(int(v) for v in f)))
        if not fs or fs in seen:
            continue
        seen.add(fs)
        if fs[0] < 1 or fs[-1] > n:
            raise DocumentError(f"facet {fs} is not within 1..{n}")
        fid = "f" + "_".join(str(v) for v in fs)
        cone_gens = [tuple(1 if j == v - 1 else 0 for j in range(n)) for v in fs]
        listed.append((fid, "ambient", cone_gens, tuple(names[v - 1] for v in fs)))
    if not listed:
        listed = [("[]", "ambient", [], ())]
        bare = [(names[i], "ambient", None) for i in range(n)]
        return MonoidalComplex("embedded", {"ambient": n}, listed, bare)
    return MonoidalComplex("embedded", {"ambient": n}, listed, gens)
