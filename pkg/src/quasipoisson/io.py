"""JSON files holding quasi-Lie bialgebra structure constants.

Layout: ``{"dim": d, "mu": [...], "gamma": [...], "psi": [...]}`` with each
tensor a d x d x d nested list in row-major order.  Floats are written with
17 significant digits so a save/load cycle is bit-exact.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .bialgebra import MAX_DIM, BialgebraSpec
from .errors import InvalidInput, MalformedInput

__all__ = ["load_bialgebra", "save_bialgebra", "spec_from_dict", "spec_to_dict", "dumps_bialgebra"]

_TENSORS = ("mu", "gamma", "psi")


def _float17(x: float) -> str:
    return format(float(x), ".17g")


def _encode(t: np.ndarray, indent: int) -> str:
    pad = " " * indent
    planes = []
    for plane in t:
        rows = ", ".join("[" + ", ".join(_float17(v) for v in row) + "]" for row in plane)
        planes.append(f"{pad}  [{rows}]")
    return "[\n" + ",\n".join(planes) + f"\n{pad}]"


def spec_to_dict(spec: BialgebraSpec) -> dict:
    return {"dim": spec.dim, **{k: getattr(spec, k).tolist() for k in _TENSORS}}


def dumps_bialgebra(spec: BialgebraSpec) -> str:
    body = ",\n".join(f'  "{k}": {_encode(getattr(spec, k), 2)}' for k in _TENSORS)
    return '{\n  "dim": ' + str(spec.dim) + ",\n" + body + "\n}\n"


def save_bialgebra(spec: BialgebraSpec, path) -> None:
    Path(path).write_text(dumps_bialgebra(spec), encoding="utf-8")


def _shape_of(value, where: str) -> tuple:
    """Shape of a rectangular nested list of numbers, or MalformedInput."""
    if isinstance(value, bool):
        raise MalformedInput(f"{where}: expected a number, got a boolean")
    if isinstance(value, (int, float)):
        if not math.isfinite(value):
            raise MalformedInput(f"{where}: non-finite value {value!r}")
        return ()
    if not isinstance(value, list):
        raise MalformedInput(f"{where}: expected a number or list, got {type(value).__name__}")
    if not value:
        return (0,)
    shapes = [_shape_of(v, f"{where}[{i}]") for i, v in enumerate(value)]
    for i, s in enumerate(shapes):
        if s != shapes[0]:
            raise MalformedInput(f"{where}: ragged array, {where}[0] has shape {shapes[0]} but {where}[{i}] has {s}")
    return (len(value),) + shapes[0]


def spec_from_dict(data, source: str = "<input>") -> BialgebraSpec:
    if not isinstance(data, dict):
        raise MalformedInput(f"{source}: top level must be an object with keys dim, mu, gamma, psi")
    missing = [k for k in ("dim",) + _TENSORS if k not in data]
    if missing:
        raise MalformedInput(f"{source}: missing key(s) {', '.join(missing)}")
    extra = sorted(set(data) - {"dim", *_TENSORS})
    if extra:
        raise MalformedInput(f"{source}: unknown key(s) {', '.join(extra)}")
    dim = data["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or not 1 <= dim <= MAX_DIM:
        raise MalformedInput(f"{source}: dim must be an integer in 1..{MAX_DIM}, got {dim!r}")
    shapes = {k: _shape_of(data[k], f"{source}: {k}") for k in _TENSORS}
    if len(set(shapes.values())) > 1:
        detail = ", ".join(f"{k} has shape {s}" for k, s in shapes.items())
        raise MalformedInput(f"{source}: tensor shapes disagree ({detail})")
    want = (dim, dim, dim)
    for k, s in shapes.items():
        if s != want:
            raise MalformedInput(f"{source}: {k} has shape {s}, expected {want} for dim {dim}")
    try:
        return BialgebraSpec(dim, *(np.array(data[k], dtype=float) for k in _TENSORS))
    except InvalidInput as exc:
        raise MalformedInput(f"{source}: {exc}") from exc


def load_bialgebra(path) -> BialgebraSpec:
    """Read and validate a spec file; antisymmetry violations are rejected, not repaired."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from exc
    return spec_from_dict(data, str(path))
