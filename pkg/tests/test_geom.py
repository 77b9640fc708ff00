import random
from itertools import combinations

import pytest

from toricface import exact
from toricface.errors import NotSimplicial
from toricface.geom import (
    Cone,
    Lattice,
    dual_description,
    extreme_generators,
    face_lattice,
    is_unimodular,
)


def brute_force_facets(gens, dim):
    """Independent facet oracle: candidate normals from all (dim-1)-subsets
    of the generators, kept when they support the cone with every generator
    on the nonnegative side and touch a (dim-1)-dimensional generator set."""
    # span handling: restrict to full-dimensional cones (all oracle uses are)
    out = set()
    for sub in combinations(gens, dim - 1):
        rows = [list(g) for g in sub]
        m = exact.IntMatrix.from_rows(rows, cols=dim) if rows else None
        normals = exact.kernel_basis(m) if rows else []
        if len(normals) != 1:
            continue
        n = exact.primitive(normals[0])
        pos = [g for g in gens if sum(a * b for a, b in zip(n, g)) > 0]
        neg = [g for g in gens if sum(a * b for a, b in zip(n, g)) < 0]
        if pos and neg:
            continue
        if neg:
            n = tuple(-x for x in n)
        tight = [g for g in gens if sum(a * b for a, b in zip(n, g)) == 0]
        tm = exact.IntMatrix.from_rows([list(g) for g in tight], cols=dim)
        if exact.rank_over_field(tm) == dim - 1:
            out.add(n)
    return out


def test_dual_description_orthant():
    c = dual_description([(1, 0), (0, 1)], 2)
    assert set(c.facets) == {(1, 0), (0, 1)}
    assert c.span_equations == ()


def test_dual_description_slanted():
    c = dual_description([(1, 0), (1, 2)], 2)
    assert set(c.facets) == {(0, 1), (2, -1)}


def test_dual_description_3d_against_brute_force():
    gens = [(1, 0, 0), (1, 1, 1), (1, 2, 0)]
    c = dual_description(gens, 3)
    expected = brute_force_facets(gens, 3)
    assert len(c.facets) == 3
    assert set(c.facets) == expected
    # frozen oracle output; (0, 0, 1) is the lower facet h >= 0
    assert expected == {(0, 0, 1), (0, 1, -1), (2, -1, -1)}


def test_dual_description_lower_dimensional():
    c = dual_description([(2, 4)], 2)
    assert c.dim == 1
    assert c.contains((1, 2))
    assert not c.contains((1, 3))
    assert not c.contains((-1, -2))


def test_dual_description_solution_set_equals_cone():
    # round trip: regenerate the cone from its own inequality system and
    # check mutual containment, both ways through exact inequality tests
    rng = random.Random(3)
    for _ in range(40):
        d = rng.randint(1, 4)
        gens = [
            tuple(rng.randint(-3, 3) for _ in range(d))
            for _ in range(rng.randint(1, 5))
        ]
        c = dual_description(gens, d)
        for g in c.generators:
            assert c.contains(g)
        from toricface.geom import double_description

        rays, lin = double_description(c.inequalities, d)
        recovered = Cone(
            list(rays) + list(lin) + [tuple(-x for x in b) for b in lin], d
        )
        for g in c.generators:
            assert recovered.contains(g)
        for g in recovered.generators:
            assert c.contains(g)


def test_face_lattice_orthant():
    c = dual_description([(1, 0), (0, 1)], 2)
    fl = face_lattice(c)
    assert len(fl) == 4
    dims = sorted(f.dim for f in fl.faces)
    assert dims == [0, 1, 1, 2]


def test_face_lattice_slanted():
    c = dual_description([(1, 0), (1, 2)], 2)
    assert len(face_lattice(c)) == 4


def test_face_lattice_square_cone():
    gens = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    c = dual_description(gens, 3)
    fl = face_lattice(c)
    assert len(fl) == 10
    dims = [f.dim for f in fl.faces]
    assert dims.count(0) == 1 and dims.count(1) == 4
    assert dims.count(2) == 4 and dims.count(3) == 1


def test_face_lattice_round_trip():
    gens = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    c = dual_description(gens, 3)
    for f in face_lattice(c).faces:
        again = dual_description(f.generators or [(0, 0, 0)], 3)
        assert again.same_cone(f)


def test_simplicial_pointed_face_count_power_of_two():
    rng = random.Random(11)
    for _ in range(20):
        d = rng.randint(1, 3)
        # build a simplicial pointed cone from independent generators
        while True:
            gens = [tuple(rng.randint(0, 3) for _ in range(d)) for _ in range(d)]
            m = exact.IntMatrix.from_rows([list(g) for g in gens], cols=d)
            if exact.rank_over_field(m) == d:
                break
        c = dual_description(gens, d)
        assert len(face_lattice(c)) == 2**d


def test_extreme_generators_trivial_lattice():
    c = dual_description([(1, 0), (1, 1)], 2)
    gens = extreme_generators(c, Lattice.standard(2))
    assert gens == [(1, 0), (1, 1)]
    assert is_unimodular(c, Lattice.standard(2))


def test_extreme_generators_non_unimodular():
    c = dual_description([(1, 0), (1, 2)], 2)
    gens = extreme_generators(c, Lattice.standard(2))
    assert gens == [(1, 0), (1, 2)]
    assert not is_unimodular(c, Lattice.standard(2))


def test_extreme_generator_primitive_from_multiple():
    c = dual_description([(2, 4)], 2)
    gens = extreme_generators(c, Lattice.standard(2))
    assert gens == [(1, 2)]


def test_extreme_generators_primitive_in_lattice():
    lat = Lattice(2, [(2, 0), (0, 3)])
    c = dual_description([(2, 0), (2, 3)], 2)
    gens = extreme_generators(c, lat)
    for g in gens:
        coords = lat.coordinates(g)
        ints = [int(x) for x in coords]
        assert exact.vector_gcd(ints) == 1


def test_is_unimodular_requires_simplicial():
    gens = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    c = dual_description(gens, 3)
    with pytest.raises(NotSimplicial):
        is_unimodular(c, Lattice.standard(3))


def test_pointedness():
    assert dual_description([(1, 0), (0, 1)], 2).is_pointed
    assert not dual_description([(1, 0), (-1, 0)], 2).is_pointed
