# ABOUTME: Canonical file formats for groups, braces, solutions, racks and construction specs
# ABOUTME: Emits byte-stable JSON or a text report and loads JSON back with full re-validation

import json
import logging
from typing import Any, Dict, List, Union

import numpy as np

from .braces import SkewBrace, brace_from_tables
from .constructor import ConstructionSpec, make_spec
from .groups import FiniteGroup, group_from_table
from .involutive import InvolutiveSpec, make_involutive_spec
from .permutations import cycle_notation
from .racks import RackTable
from .solutions import Solution, is_involutive, is_nondegenerate, is_square_free

logger = logging.getLogger(__name__)

FORMATS = ("json", "text")

Loadable = Union[FiniteGroup, SkewBrace, Solution, RackTable, ConstructionSpec, InvolutiveSpec]


class FormatError(ValueError):
    pass


def _rows(table: np.ndarray) -> List[List[int]]:
    return np.asarray(table).tolist()


def _spec_document(kind: str, spec) -> Dict[str, Any]:
    return {
        "kind": kind,
        "brace": to_document(spec.brace),
        "orbits": [
            {"rep": int(rep), "subgroups": [list(K.elements) for K in fam]}
            for rep, fam in zip(spec.reps, spec.families)
        ],
    }


def to_document(obj: Loadable) -> Dict[str, Any]:
    """Plain dict with "kind" first and a fixed key order per kind."""
    if isinstance(obj, FiniteGroup):
        return {"kind": "group", "order": obj.order, "table": _rows(obj.table)}
    if isinstance(obj, SkewBrace):
        return {"kind": "skew_brace", "order": obj.order, "star": _rows(obj.star.table), "dot": _rows(obj.dot.table)}
    if isinstance(obj, Solution):
        return {"kind": "solution", "size": obj.size, "f": _rows(obj.F), "g": _rows(obj.Gt)}
    if isinstance(obj, RackTable):
        return {"kind": "rack", "size": obj.size, "circ": _rows(obj.circ)}
    if isinstance(obj, ConstructionSpec):
        return _spec_document("construction_spec", obj)
    if isinstance(obj, InvolutiveSpec):
        return _spec_document("involutive_spec", obj)
    raise TypeError(f"Cannot serialise {type(obj).__name__}")


def _require(doc: Dict[str, Any], *keys: str) -> None:
    missing = [k for k in keys if k not in doc]
    if missing:
        raise FormatError(f"{doc.get('kind', 'document')} is missing keys: {', '.join(missing)}")


def _square(doc: Dict[str, Any], key: str, n: int) -> List[List[int]]:
    table = doc[key]
    if (
        not isinstance(table, list)
        or len(table) != n
        or any(not isinstance(row, list) or len(row) != n for row in table)
        or any(not isinstance(v, int) or isinstance(v, bool) for row in table for v in row)
    ):
        raise FormatError(f"'{key}' must be a {n}×{n} integer matrix")
    return table


def _int(doc: Dict[str, Any], key: str) -> int:
    value = doc[key]
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise FormatError(f"'{key}' must be a non-negative integer")
    return value


def _spec_parts(doc: Dict[str, Any]):
    _require(doc, "brace", "orbits")
    brace = from_document(doc["brace"])
    if not isinstance(brace, SkewBrace):
        raise FormatError("'brace' must be a skew_brace document")
    orbits = doc["orbits"]
    if not isinstance(orbits, list):
        raise FormatError("'orbits' must be a list")
    reps, families = [], []
    for entry in orbits:
        if not isinstance(entry, dict):
            raise FormatError("each orbit entry must be an object")
        _require(entry, "rep", "subgroups")
        reps.append(_int(entry, "rep"))
        families.append(entry["subgroups"])
    return brace, reps, families


def from_document(doc: Any) -> Loadable:
    """
    Rebuild and re-validate an object from its document.

    Raises:
        FormatError: Unknown kind, missing keys or malformed matrices
    """
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError("Document must be an object with a 'kind' key")
    kind = doc["kind"]
    if kind == "group":
        _require(doc, "order", "table")
        return group_from_table(_square(doc, "table", _int(doc, "order")))
    if kind == "skew_brace":
        _require(doc, "order", "star", "dot")
        n = _int(doc, "order")
        return brace_from_tables(_square(doc, "star", n), _square(doc, "dot", n))
    if kind == "solution":
        _require(doc, "size", "f", "g")
        n = _int(doc, "size")
        return Solution(_square(doc, "f", n), _square(doc, "g", n))
    if kind == "rack":
        _require(doc, "size", "circ")
        return RackTable(np.asarray(_square(doc, "circ", _int(doc, "size"))))
    if kind == "construction_spec":
        return make_spec(*_spec_parts(doc))
    if kind == "involutive_spec":
        return make_involutive_spec(*_spec_parts(doc))
    raise FormatError(f"Unknown kind: {kind!r}")


def _is_matrix(value: Any) -> bool:
    return isinstance(value, list) and bool(value) and all(isinstance(row, list) for row in value)


def _render(value: Any, depth: int) -> str:
    pad = "  " * (depth + 1)
    end = "  " * depth
    if isinstance(value, dict):
        items = [f"{pad}{json.dumps(k)}: {_render(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if _is_matrix(value) or (isinstance(value, list) and value and isinstance(value[0], dict)):
        if all(isinstance(v, list) and all(isinstance(x, int) for x in v) for v in value):
            items = [pad + json.dumps(row) for row in value]
        else:
            items = [pad + _render(v, depth + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return json.dumps(value)


def _text_table(label: str, table: np.ndarray) -> List[str]:
    return [f"{label}_{k}: {' '.join(str(v) for v in row)}" for k, row in enumerate(np.asarray(table).tolist())]


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _text_lines(obj: Loadable) -> List[str]:
    if isinstance(obj, FiniteGroup):
        return ["kind: group", f"order: {obj.order}", f"abelian: {_yes(obj.is_abelian)}"] + _text_table(
            "row", obj.table
        )
    if isinstance(obj, SkewBrace):
        lines = ["kind: skew_brace", f"order: {obj.order}", f"left: {_yes(obj.is_left)}"]
        return lines + _text_table("star", obj.star.table) + _text_table("dot", obj.dot.table)
    if isinstance(obj, Solution):
        lines = [
            "kind: solution",
            f"size: {obj.size}",
            f"nondegenerate: {_yes(is_nondegenerate(obj))}",
            f"involutive: {_yes(is_involutive(obj))}",
            f"square-free: {_yes(is_square_free(obj))}",
        ]
        lines += [f"f_{x}: {cycle_notation(obj.f(x))}" for x in range(obj.size)]
        lines += [f"g_{y}: {cycle_notation(obj.g(y))}" for y in range(obj.size)]
        return lines
    if isinstance(obj, RackTable):
        lines = ["kind: rack", f"size: {obj.size}", f"quandle: {_yes(obj.is_quandle)}"]
        return lines + [f"circ_{y}: {cycle_notation(row)}" for y, row in enumerate(obj.circ.tolist())]
    if isinstance(obj, (ConstructionSpec, InvolutiveSpec)):
        kind = "construction_spec" if isinstance(obj, ConstructionSpec) else "involutive_spec"
        lines = [f"kind: {kind}", f"brace_order: {obj.brace.order}", f"size: {obj.size}"]
        for i, (rep, fam) in enumerate(zip(obj.reps, obj.families)):
            orders = ", ".join(str(K.order) for K in fam)
            lines.append(f"orbit_{i}: rep {rep}, subgroup orders [{orders}]")
        return lines
    raise TypeError(f"Cannot serialise {type(obj).__name__}")


def emit(obj: Loadable, fmt: str = "json") -> bytes:
    """
    Canonical bytes for obj: JSON with a fixed key order and one matrix row per line, or a
    line-oriented text report (cycle notation for solutions and racks). LF line endings.
    """
    if fmt == "json":
        text = _render(to_document(obj), 0)
    elif fmt == "text":
        text = "\n".join(_text_lines(obj))
    else:
        raise FormatError(f"Unknown format: {fmt!r}")
    return (text + "\n").encode("utf-8")


def load(data: Union[bytes, str]) -> Loadable:
    """
    Parse JSON bytes produced by emit (or hand-written in the same schema) and re-validate.

    Raises:
        FormatError: If the data is not JSON or does not match a known kind
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise FormatError(f"Not a JSON document: {e}") from e
    obj = from_document(doc)
    logger.debug(f"Loaded a {doc['kind']} document")
    return obj


def load_file(path: str) -> Loadable:
    with open(path, "rb") as f:
        return load(f.read())


def write_file(path: str, obj: Loadable, fmt: str = "json") -> None:
    with open(path, "wb") as f:
        f.write(emit(obj, fmt))
