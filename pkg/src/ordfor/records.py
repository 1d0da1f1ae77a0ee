"""JSON records for forests, surjections, matrices and the linear objects.

Matrices are lists of rows of ``"p/q"`` strings; their shape always comes
from the enclosing record, so empty matrices round-trip.  Malformed input
raises :class:`MalformedInput` carrying a JSON-path style position.
"""

from __future__ import annotations

import json
from fractions import Fraction

from ordfor.errors import InvalidSurjection, MalformedInput
from ordfor.forest import OrderedForest, validate
from ordfor.kan import PresheafMap, TruncatedPresheaf
from ordfor.linalg import ChainComplex, Matrix, format_rational, parse_rational
from ordfor.morphism import ForestMorphism
from ordfor.normalization import EpiFunctor, EpiMap, SemisimplicialModule, SSMap
from ordfor.shadow import Injection, Surjection

__all__ = [
    "load",
    "loads",
    "dump",
    "to_jsonable",
    "forest_record",
    "parse_forest",
    "parse_morphism",
    "surjection_record",
    "parse_surjection",
    "matrix_record",
    "parse_matrix",
    "complex_record",
    "parse_complex",
    "ssm_record",
    "parse_ssm",
    "ssm_map_record",
    "parse_ssm_map",
    "epi_functor_record",
    "parse_epi_functor",
    "epi_map_record",
    "parse_epi_map",
    "presheaf_record",
    "parse_presheaf",
    "presheaf_map_record",
    "parse_presheaf_map",
]


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None


def load(path: str):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2)


def _field(obj, key, where):
    if not isinstance(obj, dict):
        raise MalformedInput("expected an object", where or "$")
    if key not in obj:
        raise MalformedInput(f"missing field {key!r}", where or "$")
    return obj[key]


def _int(v, where) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise MalformedInput(f"expected an integer, got {v!r}", where)
    return v


def _int_list(v, where) -> list[int]:
    if not isinstance(v, list):
        raise MalformedInput("expected a list", where)
    return [_int(x, f"{where}[{i}]") for i, x in enumerate(v)]


# forests

def forest_record(F) -> dict:
    if isinstance(F, ForestMorphism):
        F = F.forest
    return {"size": F.size, "covers": [list(c) for c in F.covers]}


def parse_forest(obj, where: str = "$") -> OrderedForest:
    size = _int(_field(obj, "size", where), f"{where}.size")
    raw = _field(obj, "covers", where)
    if not isinstance(raw, list):
        raise MalformedInput("covers must be a list", f"{where}.covers")
    covers = []
    for i, c in enumerate(raw):
        pair = _int_list(c, f"{where}.covers[{i}]")
        if len(pair) != 2:
            raise MalformedInput("a cover is a pair [child, parent]", f"{where}.covers[{i}]")
        covers.append(tuple(pair))
    return validate(size, covers)


def parse_morphism(obj, where: str = "$") -> ForestMorphism:
    return ForestMorphism(parse_forest(obj, where))


def _morphism_key(f: ForestMorphism) -> str:
    return json.dumps(forest_record(f), sort_keys=True, separators=(",", ":"))


# surjections

def surjection_record(s: Surjection) -> dict:
    return {"n": s.n, "m": s.m, "values": list(s.values)}


def parse_surjection(obj, where: str = "$") -> Surjection:
    n = _int(_field(obj, "n", where), f"{where}.n")
    m = _int(_field(obj, "m", where), f"{where}.m")
    values = _int_list(_field(obj, "values", where), f"{where}.values")
    try:
        return Surjection(n, m, tuple(values))
    except InvalidSurjection as exc:
        raise MalformedInput(str(exc), f"{where}.values") from None


# matrices and complexes

def matrix_record(M: Matrix) -> list[list[str]]:
    return M.to_lists()


def parse_matrix(obj, rows: int, cols: int, where: str = "$") -> Matrix:
    if not isinstance(obj, list) or len(obj) != rows:
        raise MalformedInput(f"expected {rows} rows", where)
    entries = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise MalformedInput(f"expected {cols} entries", f"{where}[{i}]")
        out = []
        for j, x in enumerate(row):
            try:
                out.append(parse_rational(x))
            except MalformedInput as exc:
                raise MalformedInput(str(exc), f"{where}[{i}][{j}]") from None
        entries.append(tuple(out))
    return Matrix(rows, cols, tuple(entries))


def _dims(obj, where) -> tuple[int, ...]:
    dims = _int_list(_field(obj, "dims", where), f"{where}.dims")
    if not dims or any(d < 0 for d in dims):
        raise MalformedInput("dims must be a nonempty list of nonnegative integers", f"{where}.dims")
    return tuple(dims)


def complex_record(C: ChainComplex) -> dict:
    return {"dims": list(C.dims), "differentials": [matrix_record(d) for d in C.differentials]}


def parse_complex(obj, where: str = "$") -> ChainComplex:
    dims = _dims(obj, where)
    raw = _field(obj, "differentials", where)
    if not isinstance(raw, list) or len(raw) != len(dims) - 1:
        raise MalformedInput(f"expected {len(dims) - 1} differentials", f"{where}.differentials")
    ds = tuple(parse_matrix(m, dims[n], dims[n + 1], f"{where}.differentials[{n}]")
               for n, m in enumerate(raw))
    return ChainComplex(dims, ds)


def ssm_record(X: SemisimplicialModule) -> dict:
    rec = {
        "N": X.top,
        "dims": list(X.dims),
        "faces": {f"{n},{i}": matrix_record(M) for (n, i), M in sorted(X.faces.items())},
    }
    if X.aug_dim:
        rec["augmentation"] = {"dim": X.aug_dim, "map": matrix_record(X.augmentation)}
    return rec


def parse_ssm(obj, where: str = "$") -> SemisimplicialModule:
    dims = _dims(obj, where)
    if "N" in obj and _int(obj["N"], f"{where}.N") != len(dims) - 1:
        raise MalformedInput("N disagrees with dims", f"{where}.N")
    raw = _field(obj, "faces", where)
    if not isinstance(raw, dict):
        raise MalformedInput("faces must be an object", f"{where}.faces")
    faces = {}
    for key, M in raw.items():
        pos = f"{where}.faces[{key!r}]"
        try:
            n, i = (int(p) for p in key.split(","))
        except ValueError:
            raise MalformedInput("face keys look like 'n,i'", pos) from None
        if not (1 <= n < len(dims) and 0 <= i <= n):
            raise MalformedInput("face index out of range", pos)
        faces[(n, i)] = parse_matrix(M, dims[n - 1], dims[n], pos)
    aug_dim, aug = 0, None
    if "augmentation" in obj:
        a = obj["augmentation"]
        aug_dim = _int(_field(a, "dim", f"{where}.augmentation"), f"{where}.augmentation.dim")
        aug = parse_matrix(_field(a, "map", f"{where}.augmentation"), aug_dim, dims[0],
                           f"{where}.augmentation.map")
    return SemisimplicialModule(dims, faces, aug_dim, aug)


def _components(obj, src_dims, tgt_dims, where):
    raw = _field(obj, "components", where)
    if not isinstance(raw, list) or len(raw) != len(src_dims):
        raise MalformedInput(f"expected {len(src_dims)} components", f"{where}.components")
    return tuple(parse_matrix(M, tgt_dims[n], src_dims[n], f"{where}.components[{n}]")
                 for n, M in enumerate(raw))


def ssm_map_record(f: SSMap) -> dict:
    rec = {"source": ssm_record(f.source), "target": ssm_record(f.target),
           "components": [matrix_record(M) for M in f.components]}
    if f.augmentation is not None:
        rec["augmentation"] = matrix_record(f.augmentation)
    return rec


def parse_ssm_map(obj, where: str = "$") -> SSMap:
    X = parse_ssm(_field(obj, "source", where), f"{where}.source")
    Y = parse_ssm(_field(obj, "target", where), f"{where}.target")
    comps = _components(obj, X.dims, Y.dims, where)
    aug = None
    if "augmentation" in obj:
        aug = parse_matrix(obj["augmentation"], Y.aug_dim, X.aug_dim, f"{where}.augmentation")
    return SSMap(X, Y, comps, aug)


# functors on surjections and presheaves on forests

def _surjection_key(s: Surjection) -> str:
    return ",".join(map(str, s.values))


def epi_functor_record(A: EpiFunctor) -> dict:
    items = sorted(A.maps.items(), key=lambda kv: (kv[0].n, kv[0].values))
    return {"N": A.truncation, "dims": list(A.dims),
            "maps": {_surjection_key(s): matrix_record(M) for s, M in items}}


def parse_epi_functor(obj, where: str = "$") -> EpiFunctor:
    dims = _dims(obj, where)
    raw = _field(obj, "maps", where)
    if not isinstance(raw, dict):
        raise MalformedInput("maps must be an object", f"{where}.maps")
    maps = {}
    for key, M in raw.items():
        pos = f"{where}.maps[{key!r}]"
        try:
            values = tuple(int(v) for v in key.split(","))
            s = Surjection(len(values) - 1, max(values), values)
        except (ValueError, ArithmeticError) as exc:
            raise MalformedInput(f"bad surjection key: {exc}", pos) from None
        if s.n >= len(dims):
            raise MalformedInput("surjection exceeds the truncation", pos)
        maps[s] = parse_matrix(M, dims[s.m], dims[s.n], pos)
    return EpiFunctor(dims, maps)


def epi_map_record(u: EpiMap) -> dict:
    return {"source": epi_functor_record(u.source), "target": epi_functor_record(u.target),
            "components": [matrix_record(M) for M in u.components]}


def parse_epi_map(obj, where: str = "$") -> EpiMap:
    A = parse_epi_functor(_field(obj, "source", where), f"{where}.source")
    B = parse_epi_functor(_field(obj, "target", where), f"{where}.target")
    return EpiMap(A, B, _components(obj, A.dims, B.dims, where))


def presheaf_record(X: TruncatedPresheaf) -> dict:
    items = sorted(X.maps.items(), key=lambda kv: (kv[0].dom, kv[0].cod, kv[0].size, kv[0].forest.covers))
    return {"N": X.truncation, "dims": list(X.dims),
            "maps": {_morphism_key(F): matrix_record(M) for F, M in items}}


def parse_presheaf(obj, where: str = "$") -> TruncatedPresheaf:
    dims = _dims(obj, where)
    raw = _field(obj, "maps", where)
    if not isinstance(raw, dict):
        raise MalformedInput("maps must be an object", f"{where}.maps")
    maps = {}
    for key, M in raw.items():
        pos = f"{where}.maps[{key!r}]"
        F = parse_morphism(loads(key), pos)
        if max(F.dom, F.cod) >= len(dims):
            raise MalformedInput("morphism exceeds the truncation", pos)
        maps[F] = parse_matrix(M, dims[F.dom], dims[F.cod], pos)
    return TruncatedPresheaf(dims, maps)


def presheaf_map_record(f: PresheafMap) -> dict:
    return {"source": presheaf_record(f.source), "target": presheaf_record(f.target),
            "components": [matrix_record(M) for M in f.components]}


def parse_presheaf_map(obj, where: str = "$") -> PresheafMap:
    X = parse_presheaf(_field(obj, "source", where), f"{where}.source")
    Y = parse_presheaf(_field(obj, "target", where), f"{where}.target")
    return PresheafMap(X, Y, _components(obj, X.dims, Y.dims, where))


def to_jsonable(obj):
    """Best-effort conversion of report payloads to plain JSON values."""
    if isinstance(obj, (OrderedForest, ForestMorphism)):
        return forest_record(obj)
    if isinstance(obj, Surjection):
        return surjection_record(obj)
    if isinstance(obj, Injection):
        return {"m": obj.m, "n": obj.n, "values": list(obj.values)}
    if isinstance(obj, Matrix):
        return matrix_record(obj)
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, ChainComplex):
        return complex_record(obj)
    if isinstance(obj, SemisimplicialModule):
        return ssm_record(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return repr(obj)
