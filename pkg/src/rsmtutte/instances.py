"""JSON instance format.

An instance file is a JSON object:

    {
      "name": "k3",
      "representation": {"kind": "graph", "vertices": 3,
                         "edges": [[0, 1], [1, 2], [0, 2]]},
      "multiplicity": {"kind": "trivial"},
      "probabilities": ["1/2", "1/3", "1/4"]      # optional
    }

Representation kinds: graph, vectors, abelian, explicit.  Multiplicity
kinds: trivial, arithmetic, lie_group, explicit.  Explicit tables are
keyed by comma-joined sorted element indices ("" for the empty set).
Rationals may be written as ints or "num/den" strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .construct import (
    AbelianGroupSpec,
    GraphSpec,
    LieGroupSpec,
    MultiplicitySpec,
    VectorListSpec,
    rsm_explicit,
    rsm_from_abelian,
    rsm_from_graph,
    rsm_from_vectors,
)
from .exactlinalg import InputError
from .rsm import Rsm


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational {value!r}: {exc}") from None
    raise InputError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    return str(value)


def _subset_key_to_mask(key: str, n: int) -> int:
    if key == "":
        return 0
    mask = 0
    for part in key.split(","):
        try:
            e = int(part)
        except ValueError:
            raise InputError(f"bad subset key {key!r}") from None
        if not 0 <= e < n:
            raise InputError(f"element {e} out of range in key {key!r}")
        if mask >> e & 1:
            raise InputError(f"repeated element in key {key!r}")
        mask |= 1 << e
    return mask


def mask_to_subset_key(mask: int) -> str:
    return ",".join(str(e) for e in range(mask.bit_length()) if mask >> e & 1)


def _parse_table(obj: dict, n: int, parse) -> dict[int, object]:
    table = {}
    for key, value in obj.items():
        table[_subset_key_to_mask(key, n)] = parse(value)
    if len(table) != 1 << n:
        raise InputError(
            f"table has {len(table)} entries, expected {1 << n}"
        )
    return table


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise InputError(f"missing {key!r} in {where}")
    return obj[key]


def _parse_multiplicity(obj, n: int) -> MultiplicitySpec:
    """Parse a multiplicity object; n is the ground set size, needed to
    convert explicit subset-keyed tables to bitmask keys."""
    if not isinstance(obj, dict):
        raise InputError("multiplicity must be an object")
    kind = _require(obj, "kind", "multiplicity")
    if kind == "trivial":
        return MultiplicitySpec.trivial()
    if kind == "arithmetic":
        return MultiplicitySpec.arithmetic()
    if kind == "lie_group":
        group = LieGroupSpec(
            a=int(obj.get("a", 0)),
            b=int(obj.get("b", 0)),
            finite=tuple(int(f) for f in obj.get("finite", [])),
        )
        return MultiplicitySpec.lie_group(group)
    if kind == "explicit":
        raw = _require(obj, "table", "multiplicity")
        table = _parse_table(raw, n, parse_rational)
        return MultiplicitySpec.explicit(table)
    raise InputError(f"unknown multiplicity kind {kind!r}")


def instance_from_dict(obj: dict) -> Rsm:
    if not isinstance(obj, dict):
        raise InputError("instance must be a JSON object")
    name = obj.get("name", "")
    rep = _require(obj, "representation", "instance")
    if not isinstance(rep, dict):
        raise InputError("representation must be an object")
    kind = _require(rep, "kind", "representation")
    mult_obj = _require(obj, "multiplicity", "instance")

    if kind == "graph":
        vertices = int(_require(rep, "vertices", "graph representation"))
        edges = tuple(
            (int(a), int(b))
            for a, b in _require(rep, "edges", "graph representation")
        )
        mult = _parse_multiplicity(mult_obj, len(edges))
        M = rsm_from_graph(GraphSpec(vertices, edges), mult, name=name)
    elif kind == "vectors":
        dim = int(_require(rep, "dim", "vector representation"))
        vectors = tuple(
            tuple(int(x) for x in v)
            for v in _require(rep, "vectors", "vector representation")
        )
        mult = _parse_multiplicity(mult_obj, len(vectors))
        M = rsm_from_vectors(VectorListSpec(dim, vectors), mult, name=name)
    elif kind == "abelian":
        free_rank = int(_require(rep, "free_rank", "abelian representation"))
        torsion = tuple(int(d) for d in rep.get("torsion", []))
        elements = tuple(
            tuple(int(x) for x in e)
            for e in _require(rep, "elements", "abelian representation")
        )
        mult = _parse_multiplicity(mult_obj, len(elements))
        M = rsm_from_abelian(
            AbelianGroupSpec(free_rank, torsion, elements), mult, name=name
        )
    elif kind == "explicit":
        n = int(_require(rep, "n", "explicit representation"))
        rank_table = _parse_table(
            _require(rep, "rank", "explicit representation"), n, int
        )
        mult = _parse_multiplicity(mult_obj, n)
        if mult.kind != "explicit":
            raise InputError(
                "explicit representations need an explicit multiplicity"
            )
        ambient = rep.get("ambient_rank")
        M = rsm_explicit(
            rank_table, mult.table, n,
            ambient_rank=None if ambient is None else int(ambient),
            name=name,
        )
    else:
        raise InputError(f"unknown representation kind {kind!r}")

    probs = obj.get("probabilities")
    if probs is not None:
        if len(probs) != M.n:
            raise InputError(
                f"{len(probs)} probabilities for {M.n} elements"
            )
        M.default_probabilities = [parse_rational(x) for x in probs]
    return M


def load_instance(path: str) -> Rsm:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON in {path}: {exc}") from None
    return instance_from_dict(obj)


def corpus_names() -> list[str]:
    root = resources.files("rsmtutte") / "corpus"
    return sorted(
        p.name[:-5] for p in root.iterdir() if p.name.endswith(".json")
    )


def load_corpus_instance(name: str) -> Rsm:
    path = resources.files("rsmtutte") / "corpus" / f"{name}.json"
    if not path.is_file():
        raise InputError(f"no corpus instance named {name!r}")
    return instance_from_dict(json.loads(path.read_text()))


def load_corpus() -> list[tuple[str, Rsm]]:
    return [(name, load_corpus_instance(name)) for name in corpus_names()]
