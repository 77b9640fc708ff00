"""Weight-induced regular subdivisions and initial-ideal classification.

A weight vector lifts each face cone by the generator weights; the lower
hull of the lifted cone projects to a subdivision of the face, the
bottom-touching generators span the cell monoids, and the presentation
ideal of the resulting complex is the radical of the weight-initial ideal.
"""

from __future__ import annotations

from fractions import Fraction

from . import exact, geom, grobner, ring
from .errors import (
    CapExceeded,
    InvalidComplex,
    PointOutsideSupport,
    RadicalCapExceeded,
)
from .complexes import Gluing, MonoidalComplex
from .ring import Monomial


def _normalize_weights(mc, w):
    if isinstance(w, dict):
        missing = [nm for nm in mc.names if nm not in w]
        if missing:
            raise ValueError(f"weights missing for generators {missing}")
        wd = {nm: int(w[nm]) for nm in mc.names}
    else:
        w = list(w)
        if len(w) != len(mc.names):
            raise ValueError("weight vector length must match the generator family")
        wd = {nm: int(x) for nm, x in zip(mc.names, w)}
    for nm, x in wd.items():
        if x < 0:
            raise ValueError(f"weight of {nm!r} is negative")
    return wd


class HeightFunction:
    """Lifted cone of one face with its lower facets.

    The height of a point is the least last coordinate among its lifts,
    i.e. the maximum of the affine forms attached to the lower facets.
    """

    __slots__ = ("face_id", "chart", "dim", "lifted", "lower_facets")

    def __init__(self, face_id, chart, dim, lifted):
        self.face_id = face_id
        self.chart = chart
        self.dim = dim
        self.lifted = lifted
        self.lower_facets = tuple(n for n in lifted.facets if n[-1] > 0)

    def height_at(self, point):
        point = tuple(Fraction(x) for x in point)
        if len(point) != self.dim:
            raise PointOutsideSupport("point has wrong dimension")
        fixed = None
        for e in self.lifted.span_equations:
            ea = sum(Fraction(a) * b for a, b in zip(e[:-1], point))
            if e[-1] != 0:
                h0 = -ea / e[-1]
                if fixed is None:
                    fixed = h0
                elif fixed != h0:
                    raise PointOutsideSupport("point outside the lifted span")
            elif ea != 0:
                raise PointOutsideSupport("point outside the lifted span")
        lows = []
        for n in self.lifted.facets:
            na = sum(Fraction(a) * b for a, b in zip(n[:-1], point))
            if n[-1] > 0:
                lows.append(-na / n[-1])
            elif n[-1] == 0 and na < 0:
                raise PointOutsideSupport("point outside the face")
        if fixed is not None:
            return fixed
        if not lows:
            if not self.lifted.generators:
                return Fraction(0)
            raise PointOutsideSupport("height undefined for this point")
        return max(lows)


def _height_function_in_chart(mc, fid, wd, chart):
    face = mc.face(fid)
    d = mc.charts[chart]
    lifted = []
    for nm in face.gens:
        v = mc.coords[nm].get(chart)
        if v is None:
            raise InvalidComplex(
                f"generator {nm!r} lacks coordinates in chart {chart!r}"
            )
        lifted.append(tuple(v) + (wd[nm],))
    cone = geom.Cone(lifted, d + 1)
    return HeightFunction(fid, chart, d, cone)


def _cone_in_chart(mc, fid, chart):
    for ch, ck in mc._members[fid]:
        if ch == chart:
            return mc._nodes[(ch, ck)]
    return None


def height(mc, w, a, face=None):
    """Height of a point of the support: min{h : (a, h) in C'_c} for the
    minimal face c containing the point.

    For abstract complexes the hosting face must be named and the point is
    given in that face's chart coordinates.
    """
    mc.require_valid()
    wd = _normalize_weights(mc, w)
    a = tuple(Fraction(x) for x in a)
    if not any(a):
        return Fraction(0)
    if face is None:
        if mc.mode != "embedded":
            raise PointOutsideSupport(
                "abstract complexes need the hosting face to locate a point"
            )
        chart_for = "ambient"
        containing = [
            fid
            for fid in mc.face_ids
            if len(a) == mc.charts[mc.face(fid).chart]
            and mc.face(fid).cone.contains(a)
        ]
    else:
        host = mc.face(face)
        chart_for = host.chart
        containing = []
        for fid in mc.subfaces(face):
            cone = _cone_in_chart(mc, fid, chart_for)
            if cone is not None and cone.contains(a):
                containing.append(fid)
    if not containing:
        raise PointOutsideSupport(f"point {tuple(a)} lies outside the support")
    minimal = [
        f for f in containing if not any(g != f and mc.leq(g, f) for g in containing)
    ]
    hf = _height_function_in_chart(mc, minimal[0], wd, chart_for)
    return hf.height_at(a)


class SubdivisionCell:
    __slots__ = ("id", "facet", "chart", "cone", "touching")

    def __init__(self, cid, facet, chart, cone, touching):
        self.id = cid
        self.facet = facet
        self.chart = chart
        self.cone = cone
        self.touching = tuple(touching)

    def __repr__(self):
        return f"SubdivisionCell({self.id!r}, facet={self.facet!r})"


class WeightedSubdivision:
    """The subdivision induced by a weight vector, with per-cell monoids.

    ``complex`` is the subdivision as a monoidal complex over the touching
    generators; ``vanishing`` lists the generators whose lift stays above
    the bottom; ``heights`` maps each generator to its height value.
    """

    def __init__(self, mc, weights, cells, complex_, vanishing, heights, lift_data):
        self.mc = mc
        self.weights = weights
        self.cells = cells
        self.complex = complex_
        self.vanishing = vanishing
        self.heights = heights
        self.lift_data = lift_data

    @property
    def cell_ids(self):
        return [c.id for c in self.cells]

    def cell(self, cid):
        return next(c for c in self.cells if c.id == cid)

    def smallest_original_face(self, cell_id):
        """Minimal face of the original complex containing the cell."""
        cell = self.cell(cell_id)
        candidates = []
        for fid in self.mc.subfaces(cell.facet):
            cone = _cone_in_chart(self.mc, fid, cell.chart)
            if cone is not None and all(
                cone.contains(g) for g in cell.cone.generators
            ):
                candidates.append(fid)
        minimal = [
            f
            for f in candidates
            if not any(g != f and self.mc.leq(g, f) for g in candidates)
        ]
        return minimal[0]


def subdivision(mc, w):
    """The regular subdivision of the complex induced by the weights.

    Per facet: lift the generators, take the lower hull of the lifted cone,
    and project its maximal faces; cells from different facets are glued
    along the original identifications.  Cell monoids are spanned by the
    bottom-touching generators.
    """
    mc.require_valid()
    wd = _normalize_weights(mc, w)

    raw_cells = []
    touching_all = set()
    lift_data = {}
    for fid in mc.facet_ids:
        face = mc.face(fid)
        chart = face.chart
        d = mc.charts[chart]
        hf = _height_function_in_chart(mc, fid, wd, chart)
        lift_data[fid] = hf
        if not face.gens:
            continue
        vecs = mc.gen_vectors(fid)
        lat = geom.face_lattice(hf.lifted)
        bottom = []
        for f in lat.faces:
            if f.dim == 0:
                continue
            bary = tuple(sum(c) for c in zip(*f.extreme_rays))
            if hf.height_at(bary[:-1]) == Fraction(bary[-1]):
                bottom.append(f)
        maximal = [
            f
            for f in bottom
            if not any(
                g is not f and set(f.extreme_rays) < set(g.extreme_rays)
                for g in bottom
            )
        ]
        for f in maximal:
            assert f.dim == face.cone.dim, "bottom facet projects with a dim drop"
            touching = [
                nm for nm in face.gens if f.contains(tuple(vecs[nm]) + (wd[nm],))
            ]
            proj = geom.Cone([r[:-1] for r in f.extreme_rays], d)
            raw_cells.append((fid, chart, proj, tuple(touching)))
            touching_all.update(touching)

    raw_cells.sort(key=lambda t: (t[0], t[2].canonical_key()))
    cells = [
        SubdivisionCell(f"d{i}", fid, chart, cone, touching)
        for i, (fid, chart, cone, touching) in enumerate(raw_cells)
    ]

    survivors = [nm for nm in mc.names if nm in touching_all]
    vanishing = tuple(nm for nm in mc.names if nm not in touching_all)
    heights = {}
    for nm in mc.names:
        for cell in cells:
            v = mc.coords[nm].get(cell.chart)
            if v is not None and cell.cone.contains(v):
                heights[nm] = lift_data[cell.facet].height_at(v)
                break

    if mc.mode == "embedded":
        charts = {"ambient": mc.charts["ambient"]}
        listed = [
            (
                c.id,
                "ambient",
                [list(mc.coords[nm]["ambient"]) for nm in c.touching],
                c.touching,
            )
            for c in cells
        ]
        gens = [(nm, "ambient", mc.coords[nm]["ambient"]) for nm in survivors]
        gluings = ()
        mode = "embedded"
    else:
        charts = {c.chart: mc.charts[c.chart] for c in cells}
        listed = [
            (
                c.id,
                c.chart,
                [list(mc.coords[nm][c.chart]) for nm in c.touching],
                c.touching,
            )
            for c in cells
        ]
        hosts = {
            nm: sorted(ch for ch in mc.coords[nm] if ch in charts)[0]
            for nm in survivors
        }
        gens = [(nm, hosts[nm], mc.coords[nm][hosts[nm]]) for nm in survivors]
        gluings = []
        for g in mc.gluings:
            if g.face_a not in charts or g.face_b not in charts:
                continue
            dom = tuple(nm for nm in g.domain_names if nm in touching_all)
            gluings.append(Gluing(g.face_a, g.face_b, g.matrix, dom, strict=False))
        mode = "abstract"

    weights = {nm: wd[nm] for nm in survivors}
    m_w = MonoidalComplex(mode, charts, listed, gens, gluings, weights)
    m_w.require_valid()
    return WeightedSubdivision(mc, wd, cells, m_w, vanishing, heights, lift_data)


def j_ideal(sub):
    """Presentation ideal of the subdivision complex over the full variable
    family: the vanishing variables plus the presentation of the touching
    part."""
    names = sub.mc.names
    n = len(names)
    pos = {nm: i for i, nm in enumerate(names)}
    monos = [Monomial.variable(n, pos[nm]) for nm in sub.vanishing]
    subpres = ring.presentation_ideal(sub.complex)

    def embed(m):
        exps = [0] * n
        for j, e in enumerate(m):
            if e:
                exps[pos[sub.complex.names[j]]] = e
        return Monomial(exps)

    monos.extend(embed(m) for m in subpres.monomial_gens)
    bins = [ring.Binomial(embed(b.lhs), embed(b.rhs)) for b in subpres.binomial_gens]
    return ring.PresentedIdeal(names, monos, bins)


class InitialClassification:
    """Classification of a weight-initial ideal against its subdivision."""

    def __init__(self):
        self.is_monomial = False
        self.is_radical = False
        self.is_triangulation = False
        self.is_unimodular = False
        self.is_free = False
        self.certificates = {}
        self.notes = []
        self.sturm1_inclusion = None
        self.sturm1_max_power = None
        self.strad_check = None
        self.initial_gens = []
        self.j_gens = []

    def as_dict(self):
        return {
            "monomial": self.is_monomial,
            "radical": self.is_radical,
            "triangulation": self.is_triangulation,
            "unimodular": self.is_unimodular,
            "free": self.is_free,
        }

    def __repr__(self):
        return f"InitialClassification({self.as_dict()!r})"


def classify(mc, w, radical_cap=20, class_cap=100000, enum_factor=6):
    """Initial-ideal classification for a weight vector.

    is_monomial inspects the canonical generators of the initial ideal;
    is_radical compares the initial ideal with the subdivision ideal (its
    radical); the combinatorial cell-monoid criterion is enumerated up to
    a bound as a cross-check, the algebraic test staying authoritative.
    The triangulation flag asks for simplicial cells whose monoids are
    generated by their extreme lattice generators; freeness asks the
    bottom generators of every cell to be linearly independent.
    """
    mc.require_valid()
    wd = _normalize_weights(mc, w)
    names = mc.names
    n = len(names)
    wvec = tuple(wd[nm] for nm in names)

    pres = ring.presentation_ideal(mc)
    ini = grobner.initial_ideal_weight(pres.polynomials(), wvec)
    sub = subdivision(mc, wd)
    jp = j_ideal(sub).polynomials()

    out = InitialClassification()
    out.initial_gens = ini
    out.j_gens = jp
    out.is_monomial = all(g.is_monomial() for g in ini)
    out.is_radical = grobner.ideal_equal(ini, jp, n)

    order = grobner.Order(n)
    gb_j = grobner.buchberger(jp, order)
    out.sturm1_inclusion = all(
        grobner.normal_form(g, gb_j, order).is_zero() for g in ini
    )
    if not out.sturm1_inclusion:
        out.certificates["sturm1"] = "initial ideal not inside the subdivision ideal"
    gb_ini = grobner.buchberger(ini, order)
    max_power = 0
    for g in jp:
        power = g
        found = None
        for k in range(1, radical_cap + 1):
            if grobner.normal_form(power, gb_ini, order).is_zero():
                found = k
                break
            power = power.mul(g)
        if found is None:
            raise RadicalCapExceeded(
                f"no power up to {radical_cap} of a subdivision-ideal generator "
                "lies in the initial ideal",
                generator=g,
                cap=radical_cap,
            )
        max_power = max(max_power, found)
    out.sturm1_max_power = max_power

    bound = enum_factor * max(
        sum(abs(x) for x in v) for nm in names for v in mc.coords[nm].values()
    )
    solve_cap = 4 * bound + 4
    combinatorial = True
    witness = None
    inconclusive = False
    for cell in sub.cells:
        small = sub.smallest_original_face(cell.id)
        svecs = _vectors_in_chart(mc, small, cell.chart)
        tvecs = [mc.coords[nm][cell.chart] for nm in cell.touching]
        d = mc.charts[cell.chart]
        a_small = _cols_matrix(svecs, d)
        a_touch = _cols_matrix(tvecs, d)
        for b in _lattice_points_in_cone(cell.cone, bound):
            try:
                if not exact.solve_nonneg(a_small, b, solve_cap):
                    continue
                if not exact.solve_nonneg(a_touch, b, solve_cap):
                    combinatorial = False
                    witness = (cell.id, b)
                    break
            except CapExceeded:
                inconclusive = True
                continue
        if not combinatorial:
            break
    if not combinatorial:
        out.strad_check = f"discrepancy at {witness[0]}: point {witness[1]}"
        out.certificates.setdefault("radical", witness)
        if out.is_radical:
            raise InvalidComplex(
                "combinatorial radical criterion contradicts the algebraic test"
            )
    else:
        out.strad_check = (
            "consistent at bound" if not inconclusive else "inconclusive at bound"
        )
    if not out.is_radical and "radical" not in out.certificates:
        out.certificates["radical"] = "algebraic test (ideal comparison)"

    triang = True
    unimod = True
    free = True
    for cell in sub.cells:
        d = mc.charts[cell.chart]
        small = sub.smallest_original_face(cell.id)
        svecs = _vectors_in_chart(mc, small, cell.chart)
        lattice = geom.Lattice.from_generators(svecs, d)
        tvecs = [mc.coords[nm][cell.chart] for nm in cell.touching]
        rank = exact.rank_over_field(
            exact.IntMatrix.from_rows([list(v) for v in tvecs], cols=d)
        )
        if rank != len(tvecs):
            if free:
                out.certificates["free"] = (cell.id, "dependent bottom generators")
            free = False
        if not cell.cone.is_simplicial():
            if triang:
                out.certificates["triangulation"] = (cell.id, "non-simplicial cell")
            if unimod:
                out.certificates["unimodular"] = (cell.id, "non-simplicial cell")
            triang = False
            unimod = False
            continue
        ext = geom.extreme_generators(cell.cone, lattice)
        a_touch = _cols_matrix(tvecs, d)
        a_ext = _cols_matrix(ext, d)
        gens_ok = all(
            exact.solve_nonneg(a_touch, gvec, solve_cap) for gvec in ext
        ) and all(exact.solve_nonneg(a_ext, tvec, solve_cap) for tvec in tvecs)
        if not gens_ok:
            if triang:
                out.certificates["triangulation"] = (
                    cell.id,
                    "extreme generators do not generate the cell monoid",
                )
            triang = False
        if not geom.is_unimodular(cell.cone, lattice):
            if unimod:
                out.certificates["unimodular"] = (cell.id, "elementary divisor > 1")
            unimod = False
    out.is_triangulation = triang
    out.is_unimodular = unimod
    out.is_free = free

    if out.is_monomial and out.is_radical:
        out.notes.append("certifies normality of all face monoids")
    return out


def _vectors_in_chart(mc, fid, chart):
    out = []
    for nm in mc.face(fid).gens:
        v = mc.coords[nm].get(chart)
        if v is None:
            raise InvalidComplex(
                f"generator {nm!r} lacks coordinates in chart {chart!r}"
            )
        out.append(v)
    return out


def _cols_matrix(vectors, dim):
    if not vectors:
        return exact.IntMatrix.zero(dim, 1)
    return exact.IntMatrix.from_rows(
        [[v[i] for v in vectors] for i in range(dim)], cols=len(vectors)
    )


def _lattice_points_in_cone(cone, bound):
    """Integer points of the cone with 1-norm at most the bound, except 0."""
    d = cone.ambient_dim
    out = []

    def rec(prefix, left):
        if len(prefix) == d:
            if any(prefix) and cone.contains(tuple(prefix)):
                out.append(tuple(prefix))
            return
        for v in range(-left, left + 1):
            rec(prefix + [v], left - abs(v))

    rec([], bound)
    return out
