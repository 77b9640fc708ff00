"""Complex document codec: the JSON input format of the command line tool.

Embedded form:

    {"mode": "embedded", "ambient_dim": n,
     "faces": [{"id", "dim", "cone_generators": [[int]],
                "monoid_generators": [names]}],
     "generators": [{"name", "vector": [int], "weight"?: nat}]}

Abstract form replaces ambient_dim with per-face charts (each listed face
spans its own Z^dim) and adds gluings:

    {"mode": "abstract",
     "faces": [...as above...],
     "generators": [{"name", "face", "vector": [int], "weight"?: nat}],
     "gluings": [{"face_a", "face_b", "matrix": [[int]]}]}

A gluing matrix maps face_a coordinates to face_b coordinates; the shared
face is spanned by the generators listed on both sides.  Names must be
unique, referenced faces must exist, and weights, when present, must cover
every generator.
"""

from __future__ import annotations

import json

from .complexes import Gluing, MonoidalComplex
from .errors import DocumentError


def _require(cond, msg):
    if not cond:
        raise DocumentError(msg)


def parse_document(doc):
    """Build a MonoidalComplex from a complex document (a parsed JSON dict)."""
    _require(isinstance(doc, dict), "document must be an object")
    mode = doc.get("mode")
    _require(mode in ("embedded", "abstract"), "mode must be embedded or abstract")
    faces = doc.get("faces")
    _require(isinstance(faces, list) and faces, "faces must be a nonempty list")
    gens = doc.get("generators")
    _require(isinstance(gens, list), "generators must be a list")

    face_ids = []
    for f in faces:
        _require(isinstance(f, dict) and "id" in f, "each face needs an id")
        _require(f["id"] not in face_ids, f"duplicate face id {f['id']!r}")
        face_ids.append(f["id"])

    if mode == "embedded":
        n = doc.get("ambient_dim")
        _require(isinstance(n, int) and n >= 1, "embedded mode needs ambient_dim >= 1")
        charts = {"ambient": n}
    else:
        charts = {}
        for f in faces:
            d = f.get("dim")
            _require(isinstance(d, int) and d >= 1, f"face {f['id']!r} needs dim >= 1")
            charts[f["id"]] = d

    listed = []
    for f in faces:
        chart = "ambient" if mode == "embedded" else f["id"]
        cgs = f.get("cone_generators", [])
        _require(isinstance(cgs, list), "cone_generators must be a list")
        for v in cgs:
            _require(
                isinstance(v, list) and len(v) == charts[chart],
                f"cone generator of face {f['id']!r} has wrong length",
            )
        mgs = f.get("monoid_generators", [])
        _require(isinstance(mgs, list), "monoid_generators must be a list")
        listed.append((f["id"], chart, [tuple(v) for v in cgs], tuple(mgs)))

    names = []
    gen_entries = []
    weights = {}
    weighted = 0
    for g in gens:
        _require(isinstance(g, dict) and "name" in g, "each generator needs a name")
        nm = g["name"]
        _require(nm not in names, f"duplicate generator name {nm!r}")
        names.append(nm)
        vec = g.get("vector")
        _require(isinstance(vec, list), f"generator {nm!r} needs a vector")
        if mode == "embedded":
            chart = "ambient"
        else:
            chart = g.get("face")
            _require(
                chart in charts, f"generator {nm!r} needs a listed host face"
            )
        gen_entries.append((nm, chart, tuple(vec)))
        if "weight" in g:
            w = g["weight"]
            _require(
                isinstance(w, int) and w >= 0,
                f"weight of {nm!r} must be a nonnegative integer",
            )
            weights[nm] = w
            weighted += 1
    _require(
        weighted in (0, len(names)), "weights, when present, must cover all generators"
    )

    gluings = []
    for gl in doc.get("gluings", []) or []:
        _require(
            isinstance(gl, dict)
            and gl.get("face_a") in face_ids
            and gl.get("face_b") in face_ids,
            "gluing must reference listed faces",
        )
        _require(mode == "abstract", "gluings are only allowed in abstract mode")
        matrix = gl.get("matrix")
        _require(isinstance(matrix, list) and matrix, "gluing needs a matrix")
        gluings.append(Gluing(gl["face_a"], gl["face_b"], matrix))

    try:
        mc = MonoidalComplex(mode, charts, listed, gen_entries, gluings, weights)
    except DocumentError:
        raise
    except Exception as exc:  # structural impossibility at parse level
        raise DocumentError(str(exc)) from exc

    # declared face dims must match the actual cone dimensions
    for f in faces:
        fid = f["id"]
        if "dim" in f and fid in mc.faces:
            if mc.faces[fid].cone.dim != f["dim"]:
                raise DocumentError(
                    f"face {fid!r} declares dim {f['dim']} but its cone has "
                    f"dimension {mc.faces[fid].cone.dim}"
                )
    return mc


def complex_to_document(mc):
    """Serialize the listed data of a complex back to a document dict."""
    faces = []
    for fid, chart, cone, gnames in mc._listed:
        faces.append(
            {
                "id": fid,
                "dim": cone.dim,
                "cone_generators": [list(v) for v in cone.generators],
                "monoid_generators": list(gnames),
            }
        )
    gens = []
    for nm in mc.names:
        entry = {"name": nm}
        if mc.mode == "embedded":
            entry["vector"] = list(mc.coords[nm].get("ambient", ()))
        else:
            host = sorted(mc.coords[nm])[0]
            entry["face"] = host
            entry["vector"] = list(mc.coords[nm][host])
        if nm in mc.weights:
            entry["weight"] = mc.weights[nm]
        gens.append(entry)
    doc = {"mode": mc.mode, "faces": faces, "generators": gens}
    if mc.mode == "embedded":
        doc["ambient_dim"] = mc.charts["ambient"]
    else:
        doc["gluings"] = [
            {"face_a": g.face_a, "face_b": g.face_b, "matrix": [list(r) for r in g.matrix]}
            for g in mc.gluings
        ]
    return doc


def load_document(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read complex document: {exc}") from exc
    return doc


def dump_document(doc, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
