"""JSON documents for trees, weights and vectors.

Tree file::

    {"kind": "rooted", "builtin": "nadic", "params": {"N": 2}}
    {"kind": "rooted", "arity": {"default": 2, "table": {"1.1": 3}}}
    {"kind": "unrooted", "arity": {"default": 2},
     "spine": {"levels": [[2, 1]], "default": [1, 1]}}

Weight file (``tree`` is optional: a path relative to the weight file, or an
inline tree document)::

    {"builtin": "rolewicz", "params": {"lambda": [2, 0]}}
    {"builtin": "table", "default": [1, 0], "table": {"1.2": [0.5, 0]}}

Complex numbers are ``[re, im]`` pairs (plain numbers are accepted too);
vectors are lists of ``[address, re, im]`` triples.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Optional, Tuple

from .errors import InvalidArgument
from .trees import TreeSpec
from .vectors import SparseVector
from . import weights as W


def parse_complex(x) -> complex:
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise InvalidArgument(f"complex numbers are [re, im] pairs, got {x!r}")
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, str):
        return complex(x.replace(" ", "").replace("i", "j"))
    return complex(x)


def tree_from_dict(data: dict) -> TreeSpec:
    try:
        return TreeSpec.from_dict(data)
    except (TypeError, KeyError) as exc:
        raise InvalidArgument(f"malformed tree document: {exc}") from exc


def load_tree(path) -> TreeSpec:
    return tree_from_dict(_read(path))


def save_tree(spec: TreeSpec, path) -> None:
    _write(spec.to_dict(), path)


def weights_from_dict(data: dict, spec: TreeSpec) -> W.WeightFamily:
    tag = data.get("builtin", "table")
    params = data.get("params", {})
    if tag == "rolewicz":
        return W.make_rolewicz(parse_complex(params["lambda"]))
    if tag == "table":
        return W.make_table({k: parse_complex(z) for k, z in data.get("table", {}).items()},
                            parse_complex(data.get("default", 1)))
    if tag == "symmetric":
        return W.make_symmetric({int(g): parse_complex(z) for g, z in data.get("table", {}).items()},
                                parse_complex(data.get("default", 1)))
    if tag == "dyadic-counterexample":
        return W.make_dyadic_counterexample(float(params.get("p", 2)), params.get("m0"),
                                            params.get("alpha"))
    if tag == "menthe":
        return W.make_menthe_geometric(**{k: float(v) for k, v in params.items()})
    if tag == "fertile-no-algebra":
        return W.make_fertile_no_algebra(spec, float(params["p"]))
    if tag == "bilateral-rolewicz":
        middle = {int(g): parse_complex(z) for g, z in params.get("middle", {}).items()}
        return W.make_bilateral_rolewicz(spec, parse_complex(params["lambda"]),
                                         int(params["n_lo"]), int(params["n_hi"]), middle)
    raise InvalidArgument(f"unknown weight builtin {tag!r}")


def load_weights(path, spec: Optional[TreeSpec] = None) -> Tuple[W.WeightFamily, TreeSpec]:
    """Read a weight file; the tree comes from ``spec`` or the file's ``tree`` field."""
    data = _read(path)
    if spec is None:
        ref = data.get("tree")
        if ref is None:
            raise InvalidArgument(f"{path} names no tree and none was given")
        spec = tree_from_dict(ref) if isinstance(ref, dict) else \
            load_tree(Path(path).parent / ref)
    return weights_from_dict(data, spec), spec


def save_weights(w: W.WeightFamily, path, tree=None) -> None:
    data = w.to_dict()
    if tree is not None:
        data["tree"] = tree.to_dict() if isinstance(tree, TreeSpec) else str(tree)
    _write(data, path)


def parse_vector(text) -> SparseVector:
    """A vector literal: JSON list of ``[address, re, im]`` triples (or a file path)."""
    if isinstance(text, SparseVector):
        return text
    if isinstance(text, str):
        if os.path.exists(text):
            text = Path(text).read_text()
        try:
            text = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidArgument(f"vector literal is not JSON: {exc}") from exc
    try:
        return SparseVector.from_triples(text)
    except (TypeError, ValueError) as exc:
        raise InvalidArgument(f"malformed vector literal: {exc}") from exc


def parse_exponents(text):
    """``"1,2"`` or a JSON list such as ``"[[1,0],[0,1]]"``."""
    text = text.strip()
    if text.startswith("["):
        return json.loads(text)
    return [int(x) for x in text.split(",") if x.strip()]


def _read(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{path}: not valid JSON ({exc})") from exc


def _write(data, path) -> None:
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
