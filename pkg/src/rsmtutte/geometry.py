"""Zonotope lattice-point counting (full and half-open), Ehrhart closed
forms, layer counts of abelian Lie-group arrangements, and the
hyperplane-arrangement flat identities.

The full-zonotope counter is the deliberately dumb geometric oracle:
Fourier-Motzkin projection of the lift {x = sum lambda_e (k e),
0 <= lambda <= 1} followed by bounding-box enumeration.  The half-open
counter instead solves for the unique lambda (independent generators)
and accepts lambda in [0, 1)^E.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .construct import GroupProvenance, lie_multiplicity
from .exactlinalg import (
    InputError,
    fourier_motzkin_eliminate,
    make_ineq,
    rational_rank,
    satisfies,
    solve_exact,
)
from .invariants import _fpow, characteristic, characteristic_num
from .poly import VarRegistry
from .rsm import MissingMetadata, NotAMatroid, Rsm, bits, popcount


class ScaleExceeded(ValueError):
    """Input is beyond the honest range of the brute-force oracle."""


@dataclass(frozen=True)
class Zonotope:
    dim: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.dim:
                raise InputError("generator length != ambient dimension")


def _bounding_box(generators) -> tuple[list[int], list[int]]:
    dim = len(generators[0]) if generators else 0
    lo = [0] * dim
    hi = [0] * dim
    for g in generators:
        for i, c in enumerate(g):
            if c > 0:
                hi[i] += c
            else:
                lo[i] += c
    return lo, hi


def lattice_points_zonotope(z: Zonotope, k: int = 1) -> int:
    """|kZ(E) cap Z^n| by Fourier-Motzkin projection + box enumeration.

    Oracle scale only: n <= 3, |E| <= 4, k <= 3.
    """
    if z.dim > 3 or len(z.generators) > 4 or k > 3 or k < 1:
        raise ScaleExceeded("oracle accepts n <= 3, |E| <= 4, 1 <= k <= 3")
    scaled = [tuple(k * c for c in g) for g in z.generators]
    n, m = z.dim, len(scaled)
    # variables: x_0..x_{n-1}, lambda_0..lambda_{m-1}
    nvars = n + m
    system = []
    for j in range(m):
        row = [0] * nvars
        row[n + j] = 1
        system.append(make_ineq(row, 1))  # lambda_j <= 1
        row = [0] * nvars
        row[n + j] = -1
        system.append(make_ineq(row, 0))  # -lambda_j <= 0
    for i in range(n):
        row = [Fraction(0)] * nvars
        row[i] = Fraction(1)
        for j in range(m):
            row[n + j] = Fraction(-scaled[j][i])
        system.append(make_ineq(row, 0))  # x_i - sum lambda_j g_ji <= 0
        system.append(make_ineq([-c for c in row], 0))
    for j in range(m):
        system = fourier_motzkin_eliminate(system, n + j)
    lo, hi = _bounding_box(scaled)
    count = 0
    for point in itertools.product(
        *(range(lo[i], hi[i] + 1) for i in range(n))
    ):
        full = [Fraction(c) for c in point] + [Fraction(0)] * m
        if satisfies(system, full):
            count += 1
    return count


def lattice_points_half_open(
    generators: list[tuple[int, ...]], scaling: list[int]
) -> int:
    """|Z(k.E)^half-open cap Z^n| for independent generators.

    Solves the unique lambda for each box point and accepts iff every
    coordinate lies in [0, 1).
    """
    if not generators:
        return 1  # only the origin
    dim = len(generators[0])
    if rational_rank([list(g) for g in generators]) != len(generators):
        raise InputError("generators must be linearly independent")
    for k in scaling:
        if k < 1:
            raise InputError("scaling factors must be positive integers")
    scaled = [
        tuple(k * c for c in g) for g, k in zip(generators, scaling)
    ]
    matrix = [[g[i] for g in scaled] for i in range(dim)]
    lo, hi = _bounding_box(scaled)
    count = 0
    for point in itertools.product(
        *(range(lo[i], hi[i] + 1) for i in range(dim))
    ):
        lam = solve_exact(matrix, [Fraction(c) for c in point])
        if lam is not None and all(0 <= x < 1 for x in lam):
            count += 1
    return count


def ehrhart_closed(M: Rsm, k: Fraction) -> Fraction:
    """Ehrhart value k^r(E) T_M(1 + 1/k, 1) of the zonotope of M's vectors.

    Expanded, this is the sum of m(A) k^r(A) over independent A, which is
    also how Ehr(0) = 1 is returned without hitting the 1/k pole.
    """
    k = Fraction(k)
    total = Fraction(0)
    for mask in range(M.full + 1):
        if M.rank(mask) == popcount(mask):
            total += M.mult(mask) * _fpow(k, M.rank(mask))
    return total


def layer_count(M: Rsm, mask: int) -> int:
    """Number of layers (connected components) of the intersection of the
    G-hyperplanes indexed by ``mask``: m^G(A) |F|^(r(Gamma) - r(A))."""
    prov = M.provenance
    if not isinstance(prov, GroupProvenance) or prov.mult.kind != "lie_group":
        raise MissingMetadata("layer counts need Lie-group multiplicity")
    group = prov.mult.group
    m = int(M.mult(mask))
    return m * group.finite_order ** (M.ambient_rank - M.rank(mask))


def flats_sum_applicable(M: Rsm) -> bool:
    """True when restricting the subset sums to flats is harmless: every
    non-flat contraction has identically zero characteristic polynomial.
    Always true with trivial multiplicity; checked subset by subset
    otherwise.  Cached on the instance."""
    flag = getattr(M, "_flats_sum_ok", None)
    if flag is not None:
        return flag
    if not M.check_matroid():
        M._flats_sum_ok = False
        return False
    flats = set(M.flats())
    flag = True
    for mask in range(M.full + 1):
        if mask in flats:
            continue
        if not characteristic(M.contraction(mask), VarRegistry()).is_zero():
            flag = False
            break
    M._flats_sum_ok = flag
    return flag


def arrangement_flat_identities(M: Rsm, t: Fraction) -> list[dict]:
    """For each flat Y of a vector-represented matroid, compare
    sum over flats X containing Y of t^(l - r(E)) P_{M/X}(t)
    against t^(l - r(Y)); the essentialized form of the classical
    sum-over-subflats identity.

    With a nontrivial multiplicity the expected value picks up the
    factor m(Y); the sum over flats only (rather than all supersets)
    additionally needs the characteristic polynomials of non-flat
    contractions to vanish, which the caller should ensure (true for
    trivial multiplicity; see flats_sum_applicable).

    Returns one record per flat with both values and a match flag.
    """
    prov = M.provenance
    ell = getattr(prov, "dim", None)
    if ell is None:
        ell = M.ambient_rank
    if ell is None:
        raise MissingMetadata("need an ambient dimension")
    if not M.check_matroid():
        raise NotAMatroid("flat identities need a matroid")
    flats = M.flats()
    re = M.rank_total()
    out = []
    for y in flats:
        lhs = sum(
            _fpow(t, ell - re) * characteristic_num(M.contraction(x), t)
            for x in flats
            if x & y == y
        )
        rhs = M.mult(y) * _fpow(t, ell - M.rank(y))
        out.append(
            {
                "flat": y,
                "sum": lhs,
                "expected": rhs,
                "ok": lhs == rhs,
            }
        )
    return out
