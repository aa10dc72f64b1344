"""Command line interface.

Subcommands: poly, expect, verify, sample, ehrhart.  Exact rationals on
the command line are written "num/den"; only `sample` takes floats.
Exit codes: 0 success, 2 input error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import invariants
from .exactlinalg import InputError
from .expect import (
    REGISTRY,
    InapplicableIdentity,
    UnknownIdentity,
    closed_form,
    expectation_value,
    monte_carlo,
    verify_corpus,
    verify_identity,
)
from .geometry import ehrhart_closed, lattice_points_half_open
from .instances import load_corpus, load_instance, parse_rational
from .poly import PoleError, Poly, VarRegistry
from .rsm import MissingMetadata

POLY_BUILDERS = {
    "Z": invariants.multivariate_tutte,
    "SC": invariants.subset_corank,
    "W": invariants.rank_nullity,
    "T": invariants.tutte,
    "F": invariants.flow,
    "P": invariants.characteristic,
    "chi": invariants.chromatic,
    "X": invariants.rank_monomial,
    "Y": invariants.set_monomial,
    "ehr": invariants.ehrhart_multivariate,
}

SAMPLE_INVARIANTS = {
    "Z": lambda child, b: invariants.z_num(
        child, b["q"], [b.get("v", Fraction(1))] * child.n),
    "T": lambda child, b: invariants.tutte_num(child, b["x"], b["y"]),
    "F": lambda child, b: invariants.flow_num(child, b["t"]),
    "P": lambda child, b: invariants.characteristic_num(child, b["t"]),
    "chi": lambda child, b: invariants.chromatic_num(child, b["t"]),
}


def _parse_at(pairs: list[str]) -> dict[str, Fraction]:
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise InputError(f"--at expects var=value, got {pair!r}")
        var, _, val = pair.partition("=")
        out[var.strip()] = parse_rational(val.strip())
    return out


def _parse_p(text: str, n: int) -> list[Fraction]:
    parts = [s for s in text.split(",") if s != ""]
    vals = [parse_rational(s) for s in parts]
    if len(vals) == 1:
        return vals * n
    if len(vals) != n:
        raise InputError(f"{len(vals)} probabilities for {n} elements")
    return vals


def _cmd_poly(args) -> int:
    M = load_instance(args.file)
    builder = POLY_BUILDERS.get(args.which)
    if builder is None:
        raise InputError(f"unknown polynomial {args.which!r}")
    reg = VarRegistry()
    poly = builder(M, reg)
    if args.uniform:
        merged = {}
        for name in sorted(poly.variables()):
            if name[0] in "vt" and name[1:].isdigit():
                merged[name] = Poly.var(reg, name[0])
        if merged:
            poly = poly.substitute(merged)
    print(poly.canonical_string())
    return 0


def _cmd_expect(args) -> int:
    M = load_instance(args.file)
    record = REGISTRY.get(args.id)
    if record is None:
        raise InputError(f"unknown identity id {args.id!r}")
    if record.model is not None and args.model != record.model:
        raise InputError(
            f"{args.id} is a {record.model}-model identity, not {args.model}"
        )
    p = _parse_p(args.p, M.n)
    at = _parse_at(args.at)
    bindings: dict = {}
    for name in record.params:
        if name not in at:
            raise InputError(f"{args.id} needs --at {name}=<rational>")
        bindings[name] = at[name]
    for name in record.elem_params + record.int_elem_params:
        if name in at:
            bindings[name] = [at[name]] * M.n
        else:
            bindings[name] = [Fraction(1)] * M.n
    try:
        value = closed_form(args.id, M, p, bindings)
    except PoleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.brute_force:
        value = expectation_value(args.id, M, p, bindings)
    if isinstance(value, tuple):
        print(" ".join(str(v) for v in value))
    else:
        print(value)
    return 0


def _cmd_verify(args) -> int:
    if args.corpus:
        instances = load_corpus()
    elif args.file:
        M = load_instance(args.file)
        instances = [(M.name or args.file, M)]
    else:
        raise InputError("verify needs an instance file or --corpus")
    if args.all or not args.id:
        ids = None
    else:
        for identity_id in args.id:
            if identity_id not in REGISTRY:
                raise InputError(f"unknown identity id {identity_id!r}")
        ids = args.id
    lines = verify_corpus(instances, ids, trials=args.trials, seed=args.seed)
    for line in lines:
        print(line)
    failed = sum(1 for line in lines if line.startswith("FAIL"))
    print(f"{len(lines) - failed} passed, {failed} failed")
    return 3 if failed else 0


def _cmd_sample(args) -> int:
    M = load_instance(args.file)
    f_num = SAMPLE_INVARIANTS.get(args.f)
    if f_num is None:
        raise InputError(
            f"unknown invariant {args.f!r}; choices: "
            + ", ".join(sorted(SAMPLE_INVARIANTS))
        )
    at = _parse_at(args.at)
    parts = [float(Fraction(s)) for s in args.p.split(",") if s != ""]
    p = parts * M.n if len(parts) == 1 else parts
    if len(p) != M.n:
        raise InputError(f"{len(p)} probabilities for {M.n} elements")
    report = monte_carlo(
        M, args.model, lambda child: f_num(child, at), p, args.n, args.seed
    )
    print(f"estimate {report.estimate!r} stderr {report.stderr!r} "
          f"n {report.n} seed {report.seed}")
    return 0


def _cmd_ehrhart(args) -> int:
    M = load_instance(args.file)
    if args.half_open:
        prov = M.provenance
        from .construct import VectorProvenance

        if not isinstance(prov, VectorProvenance):
            raise InputError("half-open counts need a vector representation")
        ks = [int(s) for s in args.k.split(",") if s != ""]
        if len(ks) == 1:
            ks = ks * M.n
        if len(ks) != M.n:
            raise InputError(f"{len(ks)} scalings for {M.n} generators")
        print(lattice_points_half_open(list(prov.vectors), ks))
    else:
        k = parse_rational(args.k)
        print(ehrhart_closed(M, k))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsmtutte",
        description="exact Tutte-type invariants and expectation "
                    "identities for ranked sets with multiplicity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="print an invariant polynomial")
    p.add_argument("file")
    p.add_argument("--which", required=True, choices=sorted(POLY_BUILDERS))
    p.add_argument("--uniform", action="store_true",
                   help="merge per-element variables into one")
    p.set_defaults(fn=_cmd_poly)

    p = sub.add_parser("expect", help="closed-form expectation value")
    p.add_argument("file")
    p.add_argument("--model", required=True,
                   choices=["restriction", "contraction"])
    p.add_argument("--id", required=True)
    p.add_argument("--p", required=True,
                   help="rational or comma-separated list")
    p.add_argument("--at", action="append", metavar="VAR=VAL")
    p.add_argument("--brute-force", action="store_true",
                   help="use the brute-force side instead")
    p.set_defaults(fn=_cmd_expect)

    p = sub.add_parser("verify", help="check identities exactly")
    p.add_argument("file", nargs="?")
    p.add_argument("--corpus", action="store_true")
    p.add_argument("--id", action="append")
    p.add_argument("--all", action="store_true")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("sample", help="Monte Carlo estimate")
    p.add_argument("file")
    p.add_argument("--model", default="restriction",
                   choices=["restriction", "contraction"])
    p.add_argument("--f", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--at", action="append", metavar="VAR=VAL")
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("ehrhart", help="lattice point counts")
    p.add_argument("file")
    p.add_argument("--k", required=True, help="dilation (int or int list)")
    p.add_argument("--half-open", action="store_true")
    p.set_defaults(fn=_cmd_ehrhart)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, InapplicableIdentity, UnknownIdentity,
            MissingMetadata, PoleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
