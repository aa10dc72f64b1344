"""Regenerate the bundled instance corpus (src/rsmtutte/corpus/*.json).

Deterministic: explicit multiplicity tables come from a fixed-seed rng.
Run from the repository root:  python scripts/make_corpus.py
"""

import json
import pathlib
import random

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "rsmtutte" / "corpus"


def subset_key(mask, n):
    return ",".join(str(e) for e in range(n) if mask >> e & 1)


def uniform_rank_table(k, n):
    return {
        subset_key(mask, n): min(bin(mask).count("1"), k)
        for mask in range(1 << n)
    }


def random_mult_table(n, rng, low=1, high=7):
    return {
        subset_key(mask, n): rng.randint(low, high) for mask in range(1 << n)
    }


def write(name, obj):
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240917)

    write("k3", {
        "name": "k3",
        "representation": {
            "kind": "graph", "vertices": 3,
            "edges": [[0, 1], [1, 2], [0, 2]],
        },
        "multiplicity": {"kind": "trivial"},
    })

    write("path3", {
        "name": "path3",
        "representation": {
            "kind": "graph", "vertices": 3,
            "edges": [[0, 1], [1, 2]],
        },
        "multiplicity": {"kind": "trivial"},
    })

    write("k4", {
        "name": "k4",
        "representation": {
            "kind": "graph", "vertices": 4,
            "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
        },
        "multiplicity": {"kind": "trivial"},
    })

    # cycle with a loop and a multi-edge, explicit rational multiplicities
    n = 5
    table = random_mult_table(n, rng)
    table[subset_key(3, n)] = "3/2"
    table[subset_key(21, n)] = "5/3"
    write("c4_decorated", {
        "name": "c4_decorated",
        "representation": {
            "kind": "graph", "vertices": 4,
            "edges": [[0, 1], [1, 2], [2, 3], [3, 0], [1, 1]],
        },
        "multiplicity": {"kind": "explicit", "table": table},
    })

    write("u25", {
        "name": "u25",
        "representation": {
            "kind": "explicit", "n": 5, "ambient_rank": 2,
            "rank": uniform_rank_table(2, 5),
        },
        "multiplicity": {
            "kind": "explicit", "table": random_mult_table(5, rng),
        },
    })

    write("u13", {
        "name": "u13",
        "representation": {
            "kind": "explicit", "n": 3, "ambient_rank": 1,
            "rank": uniform_rank_table(1, 3),
        },
        "multiplicity": {
            "kind": "explicit", "table": random_mult_table(3, rng),
        },
    })

    write("u34", {
        "name": "u34",
        "representation": {
            "kind": "explicit", "n": 4, "ambient_rank": 3,
            "rank": uniform_rank_table(3, 4),
        },
        "multiplicity": {
            "kind": "explicit", "table": random_mult_table(4, rng),
        },
    })

    write("vec_boolean2", {
        "name": "vec_boolean2",
        "representation": {
            "kind": "vectors", "dim": 2, "vectors": [[1, 0], [0, 1]],
        },
        "multiplicity": {"kind": "arithmetic"},
    })

    write("vec_diag23", {
        "name": "vec_diag23",
        "representation": {
            "kind": "vectors", "dim": 2, "vectors": [[2, 0], [0, 3]],
        },
        "multiplicity": {"kind": "arithmetic"},
    })

    write("vec_triple", {
        "name": "vec_triple",
        "representation": {
            "kind": "vectors", "dim": 2,
            "vectors": [[1, 0], [0, 1], [1, 1]],
        },
        "multiplicity": {"kind": "arithmetic"},
    })

    write("vec_coloop2", {
        "name": "vec_coloop2",
        "representation": {
            "kind": "vectors", "dim": 1, "vectors": [[2]],
        },
        "multiplicity": {"kind": "arithmetic"},
    })

    write("ab_z_double", {
        "name": "ab_z_double",
        "representation": {
            "kind": "abelian", "free_rank": 1, "torsion": [],
            "elements": [[2], [3]],
        },
        "multiplicity": {"kind": "arithmetic"},
    })

    write("ab_z4_mix", {
        "name": "ab_z4_mix",
        "representation": {
            "kind": "abelian", "free_rank": 1, "torsion": [4],
            "elements": [[1, 0], [0, 2], [2, 1]],
        },
        "multiplicity": {"kind": "arithmetic"},
    })

    write("ab_torsion_loops", {
        "name": "ab_torsion_loops",
        "representation": {
            "kind": "abelian", "free_rank": 0, "torsion": [6],
            "elements": [[2], [3]],
        },
        "multiplicity": {"kind": "arithmetic"},
    })

    write("lie_mixed", {
        "name": "lie_mixed",
        "representation": {
            "kind": "abelian", "free_rank": 2, "torsion": [],
            "elements": [[1, 0], [0, 1], [1, 1], [2, 0]],
        },
        "multiplicity": {"kind": "lie_group", "a": 1, "b": 1, "finite": [2]},
    })

    write("lie_finite", {
        "name": "lie_finite",
        "representation": {
            "kind": "abelian", "free_rank": 2, "torsion": [],
            "elements": [[2, 0], [0, 2], [1, 1]],
        },
        "multiplicity": {"kind": "lie_group", "a": 0, "b": 0, "finite": [4]},
    })

    write("shifted_rank", {
        "name": "shifted_rank",
        "representation": {
            "kind": "explicit", "n": 2, "ambient_rank": 3,
            "rank": {"": 1, "0": 1, "1": 2, "0,1": 2},
        },
        "multiplicity": {
            "kind": "explicit",
            "table": {"": 1, "0": 2, "1": "1/2", "0,1": 3},
        },
    })


if __name__ == "__main__":
    main()
