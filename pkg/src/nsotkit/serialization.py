"""File formats and deterministic report emission.

Tensor files are JSON objects ``{"output_axes": [{"name", "size"}...],
"input_axes": [...], "values": [...]}`` where values is a flat row-major
list with outputs varying fastest (inputs slowest).  Box files add a
``party_structure`` field, channel files a ``kind`` field.  Tolerance is
runtime configuration and never serialized.

Reports are emitted through a small canonical JSON/CSV writer: object
keys keep insertion order and every float is rendered with 12
significant digits, so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from typing import Any

import numpy as np

from .boxes import AnyBox, BipartiteBox, TripartiteBcBox, TripartiteMacBox
from .channels import KINDS, Channel
from .errors import ValidationError
from .probability import Alphabet, ConditionalPmf, DEFAULT_TOLERANCE

PARTY_STRUCTURES = {
    "bipartite": BipartiteBox,
    "tripartite_mac": TripartiteMacBox,
    "tripartite_bc": TripartiteBcBox,
}


# ----------------------------------------------------------------------
# canonical emission
# ----------------------------------------------------------------------

def format_float(x: float) -> str:
    """Shortest-ish decimal with 12 significant digits, stable across runs."""
    if math.isnan(x) or math.isinf(x):
        raise ValidationError(f"cannot serialize non-finite value {x}")
    if x == int(x) and abs(x) < 1e15:
        return format(x, ".1f")
    return format(x, ".12g")


def _emit(obj: Any, out: list[str]):
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for idx, (k, v) in enumerate(obj.items()):
            if idx:
                out.append(", ")
            out.append(json.dumps(str(k)))
            out.append(": ")
            _emit(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for idx, v in enumerate(obj):
            if idx:
                out.append(", ")
            _emit(v, out)
        out.append("]")
    else:
        raise ValidationError(f"cannot serialize {type(obj).__name__}")


def canonical_json(obj: Any) -> str:
    out: list[str] = []
    _emit(obj, out)
    out.append("\n")
    return "".join(out)


def canonical_csv(rows: list[list[Any]]) -> str:
    lines = []
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, (float, np.floating)):
                cells.append(format_float(float(cell)))
            elif isinstance(cell, (int, np.integer, str)):
                cells.append(str(cell))
            elif isinstance(cell, bool):
                cells.append(str(cell).lower())
            else:
                cells.append(json.dumps(cell))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_atomically(path: str, content: str):
    """Write via a sibling temp file and rename, so failures leave no
    partial output behind."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".nsotkit-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ----------------------------------------------------------------------
# tensors, boxes, channels
# ----------------------------------------------------------------------

def tensor_to_dict(pmf: ConditionalPmf) -> dict:
    n_out = len(pmf.output_axes)
    n_in = len(pmf.input_axes)
    # flat list with inputs slowest, outputs fastest
    order = tuple(range(n_out, n_out + n_in)) + tuple(range(n_out))
    flat = pmf.values.transpose(order).ravel(order="C")
    return {
        "output_axes": [{"name": a.name, "size": a.size} for a in pmf.output_axes],
        "input_axes": [{"name": a.name, "size": a.size} for a in pmf.input_axes],
        "values": [float(v) for v in flat],
    }


def tensor_from_dict(data: dict, tolerance: float = DEFAULT_TOLERANCE) -> ConditionalPmf:
    try:
        out_axes = tuple(Alphabet(a["name"], int(a["size"])) for a in data["output_axes"])
        in_axes = tuple(Alphabet(a["name"], int(a["size"])) for a in data["input_axes"])
        flat = np.asarray(data["values"], dtype=np.float64)
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed tensor object: missing {exc}") from exc
    shape_io = tuple(a.size for a in in_axes) + tuple(a.size for a in out_axes)
    if flat.size != int(np.prod(shape_io)):
        raise ValidationError(
            f"tensor has {flat.size} values, axes imply {int(np.prod(shape_io))}"
        )
    arr = flat.reshape(shape_io)
    n_in = len(in_axes)
    n_out = len(out_axes)
    order = tuple(range(n_in, n_in + n_out)) + tuple(range(n_in))
    return ConditionalPmf(out_axes, in_axes, arr.transpose(order), tolerance)


def box_to_dict(box: AnyBox) -> dict:
    structure = next(k for k, cls in PARTY_STRUCTURES.items() if isinstance(box, cls))
    data = tensor_to_dict(box.box)
    data["party_structure"] = structure
    return data


def box_from_dict(data: dict, tolerance: float = DEFAULT_TOLERANCE) -> AnyBox:
    structure = data.get("party_structure")
    if structure not in PARTY_STRUCTURES:
        raise ValidationError(
            f"box file needs party_structure in {sorted(PARTY_STRUCTURES)}, got {structure!r}"
        )
    return PARTY_STRUCTURES[structure](tensor_from_dict(data, tolerance))


def channel_to_dict(channel: Channel) -> dict:
    data = tensor_to_dict(channel.law)
    data["kind"] = channel.kind
    return data


def channel_from_dict(data: dict, tolerance: float = DEFAULT_TOLERANCE) -> Channel:
    kind = data.get("kind")
    if kind not in KINDS:
        raise ValidationError(f"channel file needs kind in {KINDS}, got {kind!r}")
    return Channel(kind, tensor_from_dict(data, tolerance))


def load_json_file(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path!r} is not valid JSON: {exc}") from exc
