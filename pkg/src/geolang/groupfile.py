"""Group description files.

A group file is JSON with the following schema (see also README):

    {
      "kind": "free" | "abelian" | "raag" | "free_product" | "direct_product"
              | "finite",
      "generators": ["a", "b"],              # free / abelian / raag
      "commuting": [["a", "b"]],             # raag commutation graph
      "factors": [ <group description>, .. ],# products
      "elements": ["r0", "r1", ...],         # finite
      "identity": "r0",                      # finite
      "product": [[ ... row-major names ]],  # finite multiplication table
      "generator_map": {"a": "r1"},          # finite: symbol -> element
      "involutions": ["t"],                  # finite: self-inverse symbols
      "order": ["a", "A", "b", "B"],         # optional total symbol order
      "subgroups": {
        "axis": {"kind": "cyclic", "word": "a", "distortion": 3},
        "flat": {"kind": "factor", "generators": ["a", "b"]},
        "diag": {"kind": "generated", "words": ["ab"], "distortion": 3}
      }
    }

Generators must be single lowercase characters; the inverse of "a" is "A".
``load_group`` also accepts ``builtin:<name>`` for the models shipped with
the package.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import GroupFileError
from .groups import (
    DirectProduct,
    FiniteGroup,
    FreeAbelianGroup,
    FreeGroup,
    FreeProduct,
    Raag,
)
from .subgroups import CyclicSubgroup, FactorSubgroup, GeneratedSubgroup
from .words import parse_word


def model_from_dict(data):
    kind = data.get("kind")
    order = data.get("order")
    if kind == "free":
        return FreeGroup(data["generators"], order=order)
    if kind == "abelian":
        return FreeAbelianGroup(data["generators"], order=order)
    if kind == "raag":
        return Raag(data["generators"], data.get("commuting", []), order=order)
    if kind == "free_product":
        return FreeProduct([model_from_dict(f) for f in data["factors"]], order=order)
    if kind == "direct_product":
        return DirectProduct([model_from_dict(f) for f in data["factors"]], order=order)
    if kind == "finite":
        return FiniteGroup(
            data["elements"],
            data["identity"],
            data["product"],
            data["generator_map"],
            involutions=tuple(data.get("involutions", [])),
            order=order,
        )
    raise GroupFileError(f"unknown group kind {kind!r}")


def subgroup_from_dict(model, data):
    kind = data.get("kind")
    distortion = int(data.get("distortion", 3))
    if kind == "cyclic":
        return CyclicSubgroup(model, parse_word(data["word"], model.alphabet), distortion)
    if kind == "factor":
        return FactorSubgroup(model, data["generators"])
    if kind == "generated":
        words = [parse_word(w, model.alphabet) for w in data["words"]]
        return GeneratedSubgroup(model, words, distortion)
    raise GroupFileError(f"unknown subgroup kind {kind!r}")


class GroupSpec:
    """A loaded group description: model plus named subgroups."""

    def __init__(self, name, data):
        self.name = name
        self.data = data
        self.model = model_from_dict(data)
        self._subgroup_data = data.get("subgroups", {})

    def subgroup(self, name):
        try:
            entry = self._subgroup_data[name]
        except KeyError:
            raise GroupFileError(
                f"no subgroup {name!r} in group {self.name!r}; "
                f"available: {sorted(self._subgroup_data)}"
            ) from None
        return subgroup_from_dict(self.model, entry)

    @property
    def subgroup_names(self):
        return sorted(self._subgroup_data)


def _builtin_descriptions():
    z2xz_factors = [
        {"kind": "abelian", "generators": ["a", "b"]},
        {"kind": "free", "generators": ["c"]},
    ]
    c6 = {
        "kind": "finite",
        "elements": [f"r{i}" for i in range(6)],
        "identity": "r0",
        "product": [[f"r{(i + j) % 6}" for j in range(6)] for i in range(6)],
        "generator_map": {"a": "r1"},
    }
    return {
        "f2": {
            "kind": "free",
            "generators": ["a", "b"],
            "subgroups": {
                "a-axis": {"kind": "cyclic", "word": "a", "distortion": 1},
                "a-squared": {"kind": "cyclic", "word": "a^2", "distortion": 2},
                "ab-diagonal": {"kind": "cyclic", "word": "ab", "distortion": 1},
            },
        },
        "z2": {
            "kind": "abelian",
            "generators": ["x", "y"],
            "subgroups": {
                "x-axis": {"kind": "cyclic", "word": "x", "distortion": 1},
            },
        },
        "z2xz": {
            "kind": "raag",
            "generators": ["a", "b", "c"],
            "commuting": [["a", "b"]],
            "subgroups": {
                "ab-diagonal": {"kind": "cyclic", "word": "ab", "distortion": 1},
                "flat": {"kind": "factor", "generators": ["a", "b"]},
                "c-axis": {"kind": "cyclic", "word": "c", "distortion": 1},
            },
        },
        "z2xz-fp": {
            "kind": "free_product",
            "factors": z2xz_factors,
            "subgroups": {
                "ab-diagonal": {"kind": "cyclic", "word": "ab", "distortion": 1},
            },
        },
        "z2-direct": {
            "kind": "direct_product",
            "factors": [
                {"kind": "free", "generators": ["x"]},
                {"kind": "free", "generators": ["y"]},
            ],
        },
        "p3-raag": {
            "kind": "raag",
            "generators": ["a", "b", "c"],
            "commuting": [["a", "b"], ["b", "c"]],
        },
        "c6": c6,
        "d-infinity": {
            "kind": "free_product",
            "factors": [
                {
                    "kind": "finite",
                    "elements": ["e", "s"],
                    "identity": "e",
                    "product": [["e", "s"], ["s", "e"]],
                    "generator_map": {"s": "s"},
                    "involutions": ["s"],
                },
                {
                    "kind": "finite",
                    "elements": ["e2", "t2"],
                    "identity": "e2",
                    "product": [["e2", "t2"], ["t2", "e2"]],
                    "generator_map": {"t": "t2"},
                    "involutions": ["t"],
                },
            ],
        },
    }


BUILTIN_NAMES = tuple(sorted(_builtin_descriptions()))


def load_group(source):
    """Load a group from a JSON file path or a ``builtin:<name>`` tag."""
    text = str(source)
    if text.startswith("builtin:"):
        name = text.split(":", 1)[1]
        builtins = _builtin_descriptions()
        if name not in builtins:
            raise GroupFileError(
                f"unknown builtin group {name!r}; available: {BUILTIN_NAMES}"
            )
        return GroupSpec(name, builtins[name])
    path = Path(text)
    if not path.exists():
        raise GroupFileError(f"group file {text!r} does not exist")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as err:
        raise GroupFileError(f"bad JSON in {text!r}: {err}") from None
    return GroupSpec(path.stem, data)


def builtin_model(name):
    return load_group(f"builtin:{name}").model


def dump_builtin(name, path):
    """Write a builtin description to a JSON file (used to ship examples)."""
    builtins = _builtin_descriptions()
    if name not in builtins:
        raise GroupFileError(f"unknown builtin group {name!r}")
    Path(path).write_text(json.dumps(builtins[name], indent=2) + "\n")
