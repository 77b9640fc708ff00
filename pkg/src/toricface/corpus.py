"""Built-in example complexes.

e1: a single monoid in Z^2 with generators (1,0), (1,1), (1,2); its
    presentation ideal is one quadratic binomial.
e2: a fan of two quadrants in Z^2 sharing a ray; a squarefree monomial
    relation and free face monoids.
moebius: three unit-square cones glued into a Moebius strip; the smallest
    abstract complex whose grading monoid fails cancellation.
fourcycle: the Stanley-Reisner complex of the 4-cycle on vertices 1..4.
"""

from __future__ import annotations

from . import documents
from .complexes import from_simplicial_complex


def e1_document():
    return {
        "mode": "embedded",
        "ambient_dim": 2,
        "faces": [
            {
                "id": "c",
                "dim": 2,
                "cone_generators": [[1, 0], [1, 2]],
                "monoid_generators": ["1", "2", "3"],
            }
        ],
        "generators": [
            {"name": "1", "vector": [1, 0]},
            {"name": "2", "vector": [1, 1]},
            {"name": "3", "vector": [1, 2]},
        ],
    }


def e2_document():
    return {
        "mode": "embedded",
        "ambient_dim": 2,
        "faces": [
            {
                "id": "c1",
                "dim": 2,
                "cone_generators": [[1, 0], [0, 1]],
                "monoid_generators": ["1", "2"],
            },
            {
                "id": "c2",
                "dim": 2,
                "cone_generators": [[0, 1], [-1, 0]],
                "monoid_generators": ["2", "3"],
            },
        ],
        "generators": [
            {"name": "1", "vector": [1, 0]},
            {"name": "2", "vector": [0, 1]},
            {"name": "3", "vector": [-1, 0]},
        ],
    }


_SQUARE = [[0, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 1]]


def moebius_document():
    """Moebius strip of three unit squares.

    Labels follow the diagonal pairs {x,z},{u,w} in Q1; {y,w},{v,z} in Q2;
    {x,v},{u,y} in Q3, with shared edges Q1∩Q2 = {z,w}, Q2∩Q3 = {y,v},
    Q3∩Q1 = {x,u}.  The square relations are X_x X_z - X_u X_w,
    X_y X_w - X_v X_z and X_x X_v - X_u X_y.
    """
    return {
        "mode": "abstract",
        "faces": [
            {
                "id": "Q1",
                "dim": 3,
                "cone_generators": _SQUARE,
                "monoid_generators": ["x", "u", "w", "z"],
            },
            {
                "id": "Q2",
                "dim": 3,
                "cone_generators": _SQUARE,
                "monoid_generators": ["y", "v", "z", "w"],
            },
            {
                "id": "Q3",
                "dim": 3,
                "cone_generators": _SQUARE,
                "monoid_generators": ["x", "u", "y", "v"],
            },
        ],
        "generators": [
            {"name": "u", "face": "Q1", "vector": [1, 0, 1]},
            {"name": "v", "face": "Q2", "vector": [1, 0, 1]},
            {"name": "w", "face": "Q1", "vector": [0, 1, 1]},
            {"name": "x", "face": "Q1", "vector": [0, 0, 1]},
            {"name": "y", "face": "Q2", "vector": [0, 0, 1]},
            {"name": "z", "face": "Q1", "vector": [1, 1, 1]},
        ],
        "gluings": [
            {
                "face_a": "Q1",
                "face_b": "Q2",
                "matrix": [[-1, 1, 0], [0, 1, 0], [0, 0, 1]],
            },
            {
                "face_a": "Q2",
                "face_b": "Q3",
                "matrix": [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
            },
            {
                "face_a": "Q3",
                "face_b": "Q1",
                "matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            },
        ],
    }


def fourcycle_document():
    mc = from_simplicial_complex([(1, 2), (2, 3), (3, 4), (1, 4)], 4)
    return documents.complex_to_document(mc)


def e1():
    return documents.parse_document(e1_document())


def e2():
    return documents.parse_document(e2_document())


def moebius():
    return documents.parse_document(moebius_document())


def fourcycle():
    return from_simplicial_complex([(1, 2), (2, 3), (3, 4), (1, 4)], 4)
