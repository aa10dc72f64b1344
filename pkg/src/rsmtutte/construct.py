"""Build rsms from graphs, integer vector lists, and finitely generated
abelian groups, with trivial / arithmetic / Lie-group / explicit
multiplicities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .exactlinalg import (
    InputError,
    QuotientStructure,
    quotient_structure,
    rational_rank,
)
from .rsm import Rsm, bits


@dataclass(frozen=True)
class GraphSpec:
    """Multigraph: vertex count + edge list (loops and multi-edges fine)."""

    vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for i, j in self.edges:
            if not (0 <= i < self.vertices and 0 <= j < self.vertices):
                raise InputError(f"edge ({i},{j}) out of range")


@dataclass(frozen=True)
class VectorListSpec:
    dim: int
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for v in self.vectors:
            if len(v) != self.dim:
                raise InputError("vector length != ambient dimension")


@dataclass(frozen=True)
class AbelianGroupSpec:
    """Gamma = Z^free_rank + Z/d_1 + ... + Z/d_n with a list of elements.

    Each element: free_rank free coordinates followed by one coordinate
    per torsion factor, stored reduced mod d_i.
    """

    free_rank: int
    torsion: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for d in self.torsion:
            if d <= 1:
                raise InputError("torsion moduli must be > 1")
        width = self.free_rank + len(self.torsion)
        reduced = []
        for el in self.elements:
            if len(el) != width:
                raise InputError(
                    f"element width {len(el)}, expected {width}"
                )
            free = el[: self.free_rank]
            tor = tuple(
                c % d for c, d in zip(el[self.free_rank :], self.torsion)
            )
            reduced.append(free + tor)
        object.__setattr__(self, "elements", tuple(reduced))


@dataclass(frozen=True)
class LieGroupSpec:
    """G = (S^1)^a x R^b x F, F a finite abelian group (invariant factors)."""

    a: int = 0
    b: int = 0
    finite: tuple[int, ...] = ()

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise InputError("factor counts must be >= 0")
        for f in self.finite:
            if f <= 1:
                raise InputError("finite factors must be > 1")

    @property
    def finite_order(self) -> int:
        n = 1
        for f in self.finite:
            n *= f
        return n


CIRCLE = LieGroupSpec(a=1)
REAL_LINE = LieGroupSpec(b=1)
TRIVIAL_GROUP = LieGroupSpec()


@dataclass(frozen=True)
class MultiplicitySpec:
    kind: str  # trivial | arithmetic | lie_group | explicit
    group: LieGroupSpec | None = None
    table: dict | None = field(default=None, hash=False)

    @classmethod
    def trivial(cls):
        return cls("trivial")

    @classmethod
    def arithmetic(cls):
        return cls("arithmetic")

    @classmethod
    def lie_group(cls, group: LieGroupSpec):
        return cls("lie_group", group=group)

    @classmethod
    def explicit(cls, table: dict[int, Fraction]):
        return cls("explicit", table=dict(table))


@dataclass(frozen=True)
class GroupProvenance:
    """Representation data retained on a constructed rsm: the ambient
    group and the element list (as coordinates in that group)."""

    spec: AbelianGroupSpec
    mult: MultiplicitySpec

    def restrict(self, elems: tuple[int, ...]) -> "GroupProvenance":
        sub = AbelianGroupSpec(
            self.spec.free_rank,
            self.spec.torsion,
            tuple(self.spec.elements[e] for e in elems),
        )
        return GroupProvenance(sub, self.mult)


@dataclass(frozen=True)
class VectorProvenance:
    """Vector-list representation data: ambient dim + the vectors."""

    dim: int
    vectors: tuple[tuple[int, ...], ...]
    arithmetic: bool  # multiplicity is the arithmetic one

    def restrict(self, elems: tuple[int, ...]) -> "VectorProvenance":
        return VectorProvenance(
            self.dim, tuple(self.vectors[e] for e in elems), self.arithmetic
        )


def hom_count(source: tuple[int, ...], target: tuple[int, ...]) -> int:
    """|Hom(H, F)| for finite abelian groups given by factor lists."""
    out = 1
    for h in source:
        for f in target:
            out *= gcd(h, f)
    return out


def torsion_part_order(group: LieGroupSpec, order: int) -> int:
    """|G[d]| restricted to the finite factor: |F[d]| = prod gcd(d, f_j)."""
    out = 1
    for f in group.finite:
        out *= gcd(order, f)
    return out


def lie_multiplicity(quotient: QuotientStructure, group: LieGroupSpec) -> int:
    """|Hom((Gamma/<A>)_tor, G)| for G = (S^1)^a x R^b x F.

    Each torsion factor Z/e contributes |F[e]| * e^a: the d-torsion of
    S^1 is Z/d, and R is torsion-free.
    """
    out = 1
    for e in quotient.torsion:
        out *= torsion_part_order(group, e) * e ** group.a
    return out


def euler_char(group: LieGroupSpec) -> int:
    """Homotopy Euler characteristic of G: 0 if any circle factor, else |F|."""
    return 0 if group.a > 0 else group.finite_order


def _mult_oracle(spec: AbelianGroupSpec, mult: MultiplicitySpec, quotients):
    if mult.kind == "trivial":
        return lambda mask: Fraction(1)
    if mult.kind == "arithmetic":
        return lambda mask: Fraction(quotients(mask).torsion_order)
    if mult.kind == "lie_group":
        group = mult.group
        return lambda mask: Fraction(lie_multiplicity(quotients(mask), group))
    if mult.kind == "explicit":
        table = mult.table
        return lambda mask: Fraction(table[mask])
    raise InputError(f"unknown multiplicity kind {mult.kind!r}")


def rsm_from_abelian(
    spec: AbelianGroupSpec, mult: MultiplicitySpec, name: str = ""
) -> Rsm:
    """rank(A) = free rank of <A>; multiplicities from Gamma/<A>."""
    memo: dict[int, QuotientStructure] = {}

    def quotients(mask: int) -> QuotientStructure:
        q = memo.get(mask)
        if q is None:
            q = quotient_structure(
                spec.free_rank,
                list(spec.torsion),
                [list(spec.elements[e]) for e in bits(mask)],
            )
            memo[mask] = q
        return q

    def rank(mask: int) -> int:
        return spec.free_rank - quotients(mask).free_rank

    return Rsm(
        len(spec.elements),
        rank,
        _mult_oracle(spec, mult, quotients),
        ambient_rank=spec.free_rank,
        provenance=GroupProvenance(spec, mult),
        name=name,
    )


def rsm_from_vectors(
    spec: VectorListSpec, mult: MultiplicitySpec, name: str = ""
) -> Rsm:
    """rank(A) = rank over Q of A's vectors; ambient rank = dimension."""
    gspec = AbelianGroupSpec(spec.dim, (), spec.vectors)
    rsm = rsm_from_abelian(gspec, mult, name=name)
    rsm.provenance = VectorProvenance(
        spec.dim, spec.vectors, arithmetic=mult.kind == "arithmetic"
    )

    def rank(mask: int) -> int:
        vecs = [list(spec.vectors[e]) for e in bits(mask)]
        return rational_rank(vecs) if vecs else 0

    rsm._rank_fn = rank  # cheaper than the SNF route, same values
    return rsm


def incidence_vectors(graph: GraphSpec) -> VectorListSpec:
    """Signed incidence vector of edge (i, j): +1 at j, -1 at i."""
    vecs = []
    for i, j in graph.edges:
        v = [0] * graph.vertices
        v[j] += 1
        v[i] -= 1
        vecs.append(tuple(v))
    return VectorListSpec(graph.vertices, tuple(vecs))


def rsm_from_graph(
    graph: GraphSpec, mult: MultiplicitySpec, name: str = ""
) -> Rsm:
    """Graphic rsm; ambient rank = vertex count (classical chromatic
    polynomial convention)."""
    return rsm_from_vectors(incidence_vectors(graph), mult, name=name)


def rsm_explicit(
    rank_table: dict[int, int],
    mult_table: dict[int, Fraction] | None = None,
    n: int | None = None,
    ambient_rank: int | None = None,
    name: str = "",
) -> Rsm:
    """rsm from explicit tables keyed by bitmask; tables must be total."""
    if n is None:
        n = max(rank_table).bit_length()
    full = (1 << n) - 1
    for mask in range(full + 1):
        if mask not in rank_table:
            raise InputError(f"rank table missing subset mask {mask}")
        if mult_table is not None and mask not in mult_table:
            raise InputError(f"multiplicity table missing subset mask {mask}")
    if mult_table is None:
        mult_fn = lambda mask: Fraction(1)
    else:
        mult_fn = lambda mask: Fraction(mult_table[mask])
    return Rsm(
        n,
        lambda mask: rank_table[mask],
        mult_fn,
        ambient_rank=ambient_rank,
        name=name,
    )


def uniform_matroid(k: int, n: int, mult_table=None, name: str = "") -> Rsm:
    """U_{k,n}: rank(A) = min(|A|, k)."""
    full = (1 << n) - 1
    ranks = {mask: min(bin(mask).count("1"), k) for mask in range(full + 1)}
    return rsm_explicit(ranks, mult_table, n=n, name=name or f"U_{k}_{n}")


def finite_group_elements(factors: tuple[int, ...]):
    """All elements of Z/f_1 + ... + Z/f_k as coordinate tuples."""
    return itertools.product(*(range(f) for f in factors))


def enumerate_homs(spec: AbelianGroupSpec, target: tuple[int, ...]):
    """All homomorphisms Gamma -> F as generator-image tuples.

    A hom is determined by free images (arbitrary) and torsion images
    x_i with d_i * x_i = 0.  Yields tuples of elements of F (coordinate
    tuples), one per generator of Gamma.
    """
    felems = list(finite_group_elements(target))
    free_choices = [felems] * spec.free_rank
    torsion_choices = []
    for d in spec.torsion:
        torsion_choices.append(
            [
                x
                for x in felems
                if all((d * c) % f == 0 for c, f in zip(x, target))
            ]
        )
    yield from itertools.product(*free_choices, *torsion_choices)


def hom_image(
    spec: AbelianGroupSpec,
    gen_images,
    element: tuple[int, ...],
    target: tuple[int, ...],
) -> tuple[int, ...]:
    """Image of a Gamma-element under the hom given by generator images."""
    out = [0] * len(target)
    for coord, img in zip(element, gen_images):
        for i, (c, f) in enumerate(zip(img, target)):
            out[i] = (out[i] + coord * c) % f
    return tuple(out)
