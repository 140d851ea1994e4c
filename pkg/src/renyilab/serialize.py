"""JSON wire formats for matrices, states, vectors, and channels.

Schemas (field names are fixed for CLI interchange):

* matrix: ``{"dim": n, "re": [[...]], "im": [[...]]}`` — ``re``/``im`` are
  row-major real and imaginary parts; rectangular matrices carry their row
  count in ``dim``.
* state: ``{"density": <matrix>, "normalized": <bool>}``
* vector: ``{"n": left_dim, "m": right_dim, "M": <matrix>}``
* channel: ``{"kraus": [<matrix>, ...], "convention": "heisenberg"|"schrodinger"}``

Channel conventions: ``schrodinger`` entries are the trace-preserving Kraus
operators acting as ``D -> sum K D K^dag`` and are stored as-is;
``heisenberg`` entries are given in the adjoint orientation
(``a -> sum B a B^dag`` on the output algebra) and are converted by taking
adjoints.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .channels import Channel
from .exceptions import ConfigError
from .states import StateFunctional, VectorState

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "state_to_json",
    "state_from_json",
    "vector_to_json",
    "vector_from_json",
    "channel_to_json",
    "channel_from_json",
    "load_json_file",
]


def matrix_to_json(a: np.ndarray) -> dict[str, Any]:
    a = np.asarray(a, dtype=complex)
    return {
        "dim": int(a.shape[0]),
        "re": a.real.tolist(),
        "im": a.imag.tolist(),
    }


def matrix_from_json(obj: dict[str, Any]) -> np.ndarray:
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad matrix object: {exc}") from exc
    if re.shape != im.shape or re.ndim != 2:
        raise ConfigError(
            f"matrix re/im parts must be equal-shape 2-d arrays, "
            f"got {re.shape} and {im.shape}"
        )
    if "dim" in obj and int(obj["dim"]) != re.shape[0]:
        raise ConfigError(
            f"matrix dim field {obj['dim']} does not match rows {re.shape[0]}"
        )
    return re + 1j * im


def state_to_json(state: StateFunctional) -> dict[str, Any]:
    return {"density": matrix_to_json(state.density),
            "normalized": bool(state.normalized)}


def state_from_json(obj: dict[str, Any]) -> StateFunctional:
    if "density" not in obj:
        raise ConfigError("state object needs a 'density' field")
    return StateFunctional.from_density(matrix_from_json(obj["density"]))


def vector_to_json(xi: VectorState) -> dict[str, Any]:
    return {"n": xi.left_dim, "m": xi.right_dim,
            "M": matrix_to_json(xi.matrix)}


def vector_from_json(obj: dict[str, Any]) -> VectorState:
    try:
        n, m = int(obj["n"]), int(obj["m"])
        mat = matrix_from_json(obj["M"])
    except KeyError as exc:
        raise ConfigError(f"vector object missing field {exc}") from exc
    if mat.shape != (n, m):
        raise ConfigError(f"vector matrix shape {mat.shape} != ({n}, {m})")
    return VectorState.from_matrix(mat)


def channel_to_json(ch: Channel, convention: str = "schrodinger") -> dict[str, Any]:
    if convention == "schrodinger":
        ops = ch.kraus
    elif convention == "heisenberg":
        ops = [k.conj().T for k in ch.kraus]
    else:
        raise ConfigError(f"unknown channel convention {convention!r}")
    return {"kraus": [matrix_to_json(k) for k in ops], "convention": convention}


def channel_from_json(obj: dict[str, Any]) -> Channel:
    if "kraus" not in obj or not isinstance(obj["kraus"], list):
        raise ConfigError("channel object needs a 'kraus' list")
    convention = obj.get("convention", "schrodinger")
    ops = [matrix_from_json(k) for k in obj["kraus"]]
    if convention == "heisenberg":
        ops = [k.conj().T for k in ops]
    elif convention != "schrodinger":
        raise ConfigError(f"unknown channel convention {convention!r}")
    return Channel.from_kraus(ops)


def load_json_file(path: str) -> Any:
    """Parse a JSON file, reporting the line and column on failure."""
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"
        ) from exc
