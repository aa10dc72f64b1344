"""Expectations of invariants of random restrictions/contractions.

Ingredients:

* ``brute_force_expectation``: the universal oracle, a literal sum of
  f(M|A) (or f(M/A)) against the subset probabilities.
* the identity registry: one record per closed-form identity, with exact
  lhs/rhs evaluators, pole metadata, and (where the single-probability
  bivariate form exists) a uniform-p variant.
* ``verify_identity`` / ``verify_corpus``: exact equality checks at
  random rational points avoiding the poles.
* ``monte_carlo``: the only floating-point surface of the library.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .construct import GroupProvenance, VectorProvenance, euler_char, hom_count
from .exactlinalg import quotient_structure
from .geometry import (
    ScaleExceeded,
    flats_sum_applicable,
    lattice_points_half_open,
)
from .invariants import (
    _fpow,
    characteristic_num,
    chromatic_num,
    ehrhart_multivariate_num,
    flow_num,
    potts_direct,
    tutte_num,
    w_num,
    z_num,
)
from .poly import PoleError
from .rsm import Rsm, bits, popcount

HALF = Fraction(1, 2)
ONE = Fraction(1)
ZERO = Fraction(0)


class InapplicableIdentity(ValueError):
    pass


class UnknownIdentity(KeyError):
    pass


def subset_probability(p: list[Fraction], mask: int, n: int) -> Fraction:
    out = ONE
    for e in range(n):
        out *= p[e] if mask >> e & 1 else 1 - p[e]
    return out


def _cached_minor(M: Rsm, model: str, mask: int) -> Rsm:
    cache = getattr(M, "_minor_cache", None)
    if cache is None:
        cache = {}
        M._minor_cache = cache
    key = (model, mask)
    child = cache.get(key)
    if child is None:
        child = M.restriction(mask) if model == "restriction" else M.contraction(mask)
        cache[key] = child
    return child


def brute_force_expectation(
    M: Rsm, model: str, f: Callable[[Rsm], object], p: list[Fraction]
):
    """Sum of f(minor at A) * Pr(E_p = A) over all A; exact.

    ``model`` is "restriction" or "contraction"; f may return Fractions
    or Polys (anything closed under + and * by Fraction).
    """
    if M.n > 20:
        raise ValueError("brute force capped at n = 20")
    total = None
    for mask in range(M.full + 1):
        w = subset_probability(p, mask, M.n)
        if w == 0:
            continue
        term = f(_cached_minor(M, model, mask)) * w
        total = term if total is None else total + term
    return total if total is not None else ZERO


def _local(arr: list[Fraction], child: Rsm) -> list[Fraction]:
    """Pull a root-indexed per-element array back to a minor's elements."""
    return [arr[j] for j in child.index_map]


# ---------------------------------------------------------------------------
# identity registry
# ---------------------------------------------------------------------------

@dataclass
class EvalContext:
    """One (instance, probabilities, bindings) evaluation point."""

    M: Rsm
    p: list[Fraction]
    b: dict
    rng: random.Random
    _tables: dict = field(default_factory=dict)

    def restrict(self, mask: int) -> Rsm:
        return _cached_minor(self.M, "restriction", mask)

    def contract(self, mask: int) -> Rsm:
        return _cached_minor(self.M, "contraction", mask)

    def table(self, key: str, maker):
        val = self._tables.get(key)
        if val is None:
            val = maker(self.rng)
            self._tables[key] = val
        return val

    def random_mult_table(self, key: str) -> list[Fraction]:
        return self.table(
            key,
            lambda rng: [
                Fraction(rng.randint(1, 6)) for _ in range(self.M.full + 1)
            ],
        )

    def with_mult(self, table: list[Fraction]) -> Rsm:
        M = self.M
        return Rsm(M.n, M.rank, lambda mask: table[mask])

    def product_mult(self, t1, t2) -> Rsm:
        M = self.M
        return Rsm(M.n, M.rank, lambda mask: t1[mask] * t2[mask])


@dataclass
class IdentityRecord:
    """A verifiable identity: builders for both sides plus metadata."""

    id: str
    description: str
    kind: str  # "expectation" or "pure"
    model: str | None  # restriction | contraction | None
    lhs: Callable[[EvalContext], object]
    rhs: Callable[[EvalContext], object]
    params: tuple[str, ...] = ()
    elem_params: tuple[str, ...] = ()
    int_elem_params: tuple[str, ...] = ()
    applicable: Callable[[Rsm], bool] = lambda M: True
    pole: Callable[[list[Fraction], dict], bool] = lambda p, b: False
    rhs_uniform: Callable[[EvalContext, Fraction], object] | None = None
    uniform_pole: Callable[[Fraction, dict], bool] = lambda p, b: False
    uniform_only: bool = False
    branch_value: Fraction | None = None


def _has_ambient(M: Rsm) -> bool:
    return M.ambient_rank is not None


def _group_prov(M: Rsm) -> GroupProvenance | None:
    prov = M.provenance
    return prov if isinstance(prov, GroupProvenance) else None


def _is_lie(M: Rsm) -> bool:
    prov = _group_prov(M)
    return (
        prov is not None
        and prov.mult.kind == "lie_group"
        and M.ambient_rank is not None
    )


def _is_finite_group_mult(M: Rsm) -> bool:
    prov = _group_prov(M)
    return (
        _is_lie(M)
        and prov.mult.group.a == 0
        and prov.mult.group.b == 0
    )


def _is_subcardinal(M: Rsm) -> bool:
    flag = getattr(M, "_subcardinal", None)
    if flag is None:
        flag = all(
            0 <= M.rank(mask) <= popcount(mask) for mask in range(M.full + 1)
        )
        M._subcardinal = flag
    return flag


def _is_coloops_only(M: Rsm) -> bool:
    return all(M.rank(mask) == popcount(mask) for mask in range(M.full + 1))


def _is_independent_vectors(M: Rsm) -> bool:
    prov = M.provenance
    return (
        isinstance(prov, VectorProvenance)
        and prov.arithmetic
        and M.rank_total() == M.n
        and prov.dim <= 3
        and M.n <= 4
    )


def _is_vector_matroid(M: Rsm) -> bool:
    return (
        isinstance(M.provenance, VectorProvenance)
        and M.check_matroid()
        and flats_sum_applicable(M)
    )


def build_registry() -> dict[str, IdentityRecord]:
    R: dict[str, IdentityRecord] = {}

    def add(record: IdentityRecord):
        if record.id in R:
            raise ValueError(f"duplicate identity id {record.id}")
        R[record.id] = record

    # -- convolution model ---------------------------------------------

    def _wang_tables(ctx):
        def maker(rng):
            return [
                Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                for _ in range(ctx.M.full + 1)
            ]
        return ctx.table("wang_f", maker), ctx.table("wang_g", maker)

    def wang_lhs(ctx):
        M = ctx.M
        f, g = _wang_tables(ctx)
        return sum(
            (-1) ** popcount(t) * f[t] * g[t] for t in range(M.full + 1)
        )

    def wang_rhs(ctx):
        M = ctx.M
        f, g = _wang_tables(ctx)
        full = M.full
        total = ZERO
        for a in range(full + 1):
            inner_f = ZERO
            sub = a
            while True:
                inner_f += (-1) ** popcount(sub) * f[sub]
                if sub == 0:
                    break
                sub = (sub - 1) & a
            inner_g = ZERO
            comp = full & ~a
            sub = comp
            while True:
                t = a | sub
                inner_g += (-1) ** popcount(t & ~a) * g[t]
                if sub == 0:
                    break
                sub = (sub - 1) & comp
            total += inner_f * inner_g
        return total

    add(IdentityRecord(
        id="WANG",
        description="convolution formula model for arbitrary functions",
        kind="pure", model=None,
        lhs=wang_lhs, rhs=wang_rhs,
    ))

    def convz_lhs(ctx):
        m1 = ctx.random_mult_table("conv_m1")
        m2 = ctx.random_mult_table("conv_m2")
        b = ctx.b
        uv = [a * c for a, c in zip(b["u"], b["v"])]
        return z_num(ctx.product_mult(m1, m2), b["t"] * b["s"], uv)

    def convz_rhs(ctx):
        M = ctx.M
        m1 = ctx.random_mult_table("conv_m1")
        m2 = ctx.random_mult_table("conv_m2")
        M1 = ctx.with_mult(m1)
        M2 = ctx.with_mult(m2)
        b = ctx.b
        t, s, u, v = b["t"], b["s"], b["u"], b["v"]
        total = ZERO
        for a in range(M.full + 1):
            left = M1.restriction(a)
            right = M2.contraction(a)
            term = _fpow(s, -M.rank(a))
            for e in bits(a):
                term *= -v[e]
            term *= z_num(left, t, [-x for x in _local(u, left)])
            term *= z_num(right, s, _local(v, right))
            total += term
        return total

    add(IdentityRecord(
        id="CONV-Z",
        description="convolution of multivariate Tutte polynomials over "
                    "two multiplicities",
        kind="pure", model=None,
        lhs=convz_lhs, rhs=convz_rhs,
        params=("t", "s"), elem_params=("u", "v"),
        pole=lambda p, b: b["t"] == 0 or b["s"] == 0,
    ))

    def convt_lhs(ctx):
        m1 = ctx.random_mult_table("conv_m1")
        m2 = ctx.random_mult_table("conv_m2")
        b = ctx.b
        return tutte_num(
            ctx.product_mult(m1, m2), 1 - b["a"] * b["b"], 1 - b["c"] * b["d"]
        )

    def convt_rhs(ctx):
        M = ctx.M
        m1 = ctx.random_mult_table("conv_m1")
        m2 = ctx.random_mult_table("conv_m2")
        M1 = ctx.with_mult(m1)
        M2 = ctx.with_mult(m2)
        b = ctx.b
        a_, b_, c_, d_ = b["a"], b["b"], b["c"], b["d"]
        re = M.rank_total()
        total = ZERO
        for a in range(M.full + 1):
            r = M.rank(a)
            term = _fpow(a_, re - r) * _fpow(d_, popcount(a) - r)
            term *= tutte_num(M1.restriction(a), 1 - a_, 1 - c_)
            term *= tutte_num(M2.contraction(a), 1 - b_, 1 - d_)
            total += term
        return total

    add(IdentityRecord(
        id="CONV-T",
        description="Tutte-polynomial convolution over two multiplicities",
        kind="pure", model=None,
        lhs=convt_lhs, rhs=convt_rhs,
        params=("a", "b", "c", "d"),
        pole=lambda p, b: 0 in (b["a"], b["b"], b["c"], b["d"]),
    ))

    def dual_lhs(ctx):
        M, p, b = ctx.M, ctx.p, ctx.b
        x, y, t = b["x"], b["y"], b["t"]
        vals = []
        for mask in range(M.full + 1):
            child = ctx.contract(mask)
            w = subset_probability(p, mask, M.n)
            vals.append((
                w * tutte_num(child, x, y),
                w * characteristic_num(child, t),
                w * flow_num(child, t),
                w * z_num(child, t, _local(b["v"], child)),
            ))
        return tuple(sum(col) for col in zip(*vals))

    def dual_rhs(ctx):
        M, p, b = ctx.M, ctx.p, ctx.b
        x, y, t = b["x"], b["y"], b["t"]
        Mstar = ctx.table("dual_star", lambda rng: M.dual())
        q = [1 - pe for pe in p]
        vals = []
        for mask in range(Mstar.full + 1):
            child = Mstar.restriction(mask)
            w = subset_probability(q, mask, M.n)
            vals.append((
                w * tutte_num(child, y, x),
                w * flow_num(child, t),
                w * characteristic_num(child, t),
                w * z_num(child.dual(), t, _local(b["v"], child)),
            ))
        return tuple(sum(col) for col in zip(*vals))

    add(IdentityRecord(
        id="DUAL-EXP",
        description="duality: contraction expectations equal dual "
                    "restriction expectations for T, P, F, Z",
        kind="pure", model=None,
        lhs=dual_lhs, rhs=dual_rhs,
        params=("x", "y", "t"), elem_params=("v",),
        pole=lambda p, b: b["x"] == 1 or b["y"] == 1 or b["t"] == 0,
    ))

    # -- restriction-model expectations ----------------------------------

    def expectation(f):
        def lhs(ctx):
            return brute_force_expectation(ctx.M, "restriction",
                                           lambda child: f(ctx, child), ctx.p)
        return lhs

    def con_expectation(f):
        def lhs(ctx):
            return brute_force_expectation(ctx.M, "contraction",
                                           lambda child: f(ctx, child), ctx.p)
        return lhs

    add(IdentityRecord(
        id="E-Z",
        description="expectation of the multivariate Tutte polynomial of "
                    "a random restriction",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        z_num(child, ctx.b["t"], _local(ctx.b["u"], child))),
        rhs=lambda ctx: z_num(
            ctx.M, ctx.b["t"],
            [pe * ue for pe, ue in zip(ctx.p, ctx.b["u"])]),
        params=("t",), elem_params=("u",),
        pole=lambda p, b: b["t"] == 0,
    ))

    add(IdentityRecord(
        id="E-W",
        description="expectation of the rank-nullity polynomial",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        w_num(child, ctx.b["x"], ctx.b["y"])),
        rhs=lambda ctx: z_num(
            ctx.M, ctx.b["y"] / ctx.b["x"],
            [pe * ctx.b["y"] for pe in ctx.p]),
        params=("x", "y"),
        pole=lambda p, b: b["x"] == 0 or b["y"] == 0,
    ))

    def xmono_uniform(ctx, ps):
        M, t = ctx.M, ctx.b["t"]
        re = M.rank_total()
        return (
            _fpow(ps, re) * _fpow(1 - ps, M.n - re) * _fpow(t, -re)
            * tutte_num(M, 1 + t * (1 - ps) / ps, 1 / (1 - ps))
        )

    add(IdentityRecord(
        id="E-XMONO",
        description="expectation of the rank monomial",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        child.mult(child.full)
                        * _fpow(ctx.b["t"], -child.rank_total())),
        rhs=lambda ctx: math.prod(1 - pe for pe in ctx.p) * z_num(
            ctx.M, ctx.b["t"],
            [pe / (1 - pe) for pe in ctx.p]),
        params=("t",),
        pole=lambda p, b: b["t"] == 0 or any(pe == 1 for pe in p),
        rhs_uniform=xmono_uniform,
        uniform_pole=lambda ps, b: ps <= 0 or ps >= 1,
    ))

    def ymono_uniform(ctx, ps):
        M = ctx.M
        t = ctx.b["tvec"][0]
        re = M.rank_total()
        return (
            _fpow(ps, re) * _fpow(1 - ps, M.n - re) * _fpow(t, re)
            * tutte_num(M, 1 + (1 - ps) / (t * ps), 1 + t * ps / (1 - ps))
        )

    add(IdentityRecord(
        id="E-YMONO",
        description="expectation of the set monomial",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        child.mult(child.full)
                        * math.prod(_local(ctx.b["tvec"], child), start=ONE)),
        rhs=lambda ctx: math.prod(1 - pe for pe in ctx.p) * z_num(
            ctx.M, ONE,
            [te * pe / (1 - pe) for te, pe in zip(ctx.b["tvec"], ctx.p)]),
        elem_params=("tvec",),
        pole=lambda p, b: any(pe == 1 for pe in p),
        rhs_uniform=ymono_uniform,
        uniform_pole=lambda ps, b: ps <= 0 or ps >= 1 or b["tvec"][0] == 0,
    ))

    def cc_layers(ctx, child):
        group = _group_prov(ctx.M).mult.group
        return child.mult(child.full) * Fraction(
            group.finite_order
        ) ** (child.ambient_rank - child.rank_total())

    def cc_rhs(ctx):
        M = ctx.M
        group = _group_prov(M).mult.group
        q = Fraction(group.finite_order)
        return (
            _fpow(q, M.ambient_rank)
            * math.prod(1 - pe for pe in ctx.p)
            * z_num(M, q, [pe / (1 - pe) for pe in ctx.p])
        )

    add(IdentityRecord(
        id="E-CC",
        description="expected number of layers of a random intersection "
                    "in an abelian Lie group arrangement",
        kind="expectation", model="restriction",
        lhs=expectation(cc_layers),
        rhs=cc_rhs,
        applicable=_is_lie,
        pole=lambda p, b: any(pe == 1 for pe in p),
    ))

    def hom_lhs_f(ctx, child):
        prov = _group_prov(child)
        spec = prov.spec
        target = prov.mult.group.finite
        q = quotient_structure(
            spec.free_rank, list(spec.torsion), [list(e) for e in spec.elements]
        )
        order = prov.mult.group.finite_order
        return Fraction(
            order ** q.free_rank * hom_count(q.torsion, target)
        )

    def hom_rhs(ctx):
        M = ctx.M
        group = _group_prov(M).mult.group
        q = Fraction(group.finite_order)
        ps = ctx.p[0]
        re = M.rank_total()
        return (
            _fpow(q, M.ambient_rank - re)
            * _fpow(ps, re) * _fpow(1 - ps, M.n - re)
            * tutte_num(M, 1 + q * (1 - ps) / ps, 1 / (1 - ps))
        )

    add(IdentityRecord(
        id="E-HOM",
        description="expected number of homomorphisms from a random "
                    "quotient to a finite abelian group",
        kind="expectation", model="restriction",
        lhs=expectation(hom_lhs_f),
        rhs=hom_rhs,
        applicable=_is_finite_group_mult,
        pole=lambda p, b: any(pe in (0, 1) for pe in p)
                          or len(set(p)) != 1,
        uniform_only=True,
    ))

    def half_lhs_f(ctx, child):
        prov = child.provenance
        k = [int(x) for x in _local(ctx.b["k"], child)]
        gens = [tuple(v) for v in prov.vectors]
        try:
            return Fraction(lattice_points_half_open(gens, k))
        except ScaleExceeded:
            return child.mult(child.full) * math.prod(k, start=1)

    add(IdentityRecord(
        id="E-HALF",
        description="expected number of lattice points in a random "
                    "half-open zonotope",
        kind="expectation", model="restriction",
        lhs=expectation(half_lhs_f),
        rhs=lambda ctx: math.prod(1 - pe for pe in ctx.p) * z_num(
            ctx.M, ONE,
            [ke * pe / (1 - pe) for ke, pe in zip(ctx.b["k"], ctx.p)]),
        int_elem_params=("k",),
        applicable=_is_independent_vectors,
        pole=lambda p, b: any(pe == 1 for pe in p),
    ))

    add(IdentityRecord(
        id="E-EHR-MULTI",
        description="expectation of the multivariate Ehrhart polynomial",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        ehrhart_multivariate_num(
                            child, _local(ctx.b["v"], child))),
        rhs=lambda ctx: ehrhart_multivariate_num(
            ctx.M, [pe * ve for pe, ve in zip(ctx.p, ctx.b["v"])]),
        elem_params=("v",),
        applicable=_is_subcardinal,
    ))

    def ehr_uniform(ctx, ps):
        M, t = ctx.M, ctx.b["t"]
        pt = ps * t
        re = M.rank_total()
        return _fpow(pt, re) * tutte_num(M, 1 + 1 / pt, ONE)

    add(IdentityRecord(
        id="E-EHR",
        description="expectation of the Ehrhart polynomial of a random "
                    "zonotope",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        ehrhart_multivariate_num(
                            child, [ctx.b["t"]] * child.n)),
        rhs=lambda ctx: ehrhart_multivariate_num(
            ctx.M, [pe * ctx.b["t"] for pe in ctx.p]),
        params=("t",),
        applicable=_is_subcardinal,
        rhs_uniform=ehr_uniform,
        uniform_pole=lambda ps, b: ps * b["t"] == 0,
    ))

    def convzono_rhs(ctx):
        M, p, v = ctx.M, ctx.p, ctx.b["v"]
        total = ZERO
        for a in range(M.full + 1):
            child = ctx.restrict(a)
            term = ehrhart_multivariate_num(child, _local(v, child))
            for e in bits(a):
                term *= p[e]
            for e in bits(M.full & ~a):
                term *= 1 - p[e]
            total += term
        return total

    add(IdentityRecord(
        id="CONV-ZONO",
        description="convolution-like identity for multivariate Ehrhart "
                    "polynomials (unit-cube factor on the complement)",
        kind="pure", model=None,
        lhs=lambda ctx: ehrhart_multivariate_num(
            ctx.M, [pe * ve for pe, ve in zip(ctx.p, ctx.b["v"])]),
        rhs=convzono_rhs,
        elem_params=("v",),
        applicable=_is_subcardinal,
    ))

    def potts_lhs_f(ctx, child):
        vloc = _local(ctx.b["v"], child)
        direct = potts_direct(child, vloc)
        if direct is not None:
            return direct
        group = _group_prov(child).mult.group
        q = Fraction(group.finite_order)
        return _fpow(q, child.ambient_rank) * z_num(child, q, vloc)

    def potts_rhs(ctx):
        M = ctx.M
        group = _group_prov(M).mult.group
        q = Fraction(group.finite_order)
        return _fpow(q, M.ambient_rank) * z_num(
            M, q, [pe * ve for pe, ve in zip(ctx.p, ctx.b["v"])]
        )

    add(IdentityRecord(
        id="E-POTTS",
        description="expectation of the Potts-model partition function",
        kind="expectation", model="restriction",
        lhs=expectation(potts_lhs_f),
        rhs=potts_rhs,
        elem_params=("v",),
        applicable=_is_finite_group_mult,
    ))

    def chi_res_uniform(ctx, ps):
        M, t = ctx.M, ctx.b["t"]
        re = M.rank_total()
        return (
            _fpow(-ps, re) * _fpow(t, M.ambient_rank - re)
            * tutte_num(M, 1 - t / ps, 1 - ps)
        )

    add(IdentityRecord(
        id="E-CHI-RES",
        description="expectation of the chromatic polynomial of a random "
                    "restriction",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        chromatic_num(child, ctx.b["t"])),
        rhs=lambda ctx: _fpow(ctx.b["t"], ctx.M.ambient_rank) * z_num(
            ctx.M, ctx.b["t"], [-pe for pe in ctx.p]),
        params=("t",),
        applicable=_has_ambient,
        pole=lambda p, b: b["t"] == 0,
        rhs_uniform=chi_res_uniform,
        uniform_pole=lambda ps, b: ps == 0,
    ))

    def euler_lhs_f(ctx, child):
        group = _group_prov(ctx.M).mult.group
        psi = Fraction(euler_char(group))
        sgn = (-1) ** (group.a + group.b)
        return sgn ** ctx.M.ambient_rank * chromatic_num(child, sgn * psi)

    def euler_rhs(ctx):
        M = ctx.M
        group = _group_prov(M).mult.group
        psi = Fraction(euler_char(group))
        sgn = (-1) ** (group.a + group.b)
        total = ZERO
        for mask in range(M.full + 1):
            term = M.mult(mask) * sgn ** M.rank(mask) * _fpow(
                psi, M.ambient_rank - M.rank(mask)
            )
            for e in bits(mask):
                term *= -ctx.p[e]
            total += term
        return total

    add(IdentityRecord(
        id="E-EULER",
        description="expected Euler characteristic of a random abelian "
                    "Lie group arrangement",
        kind="expectation", model="restriction",
        lhs=expectation(euler_lhs_f),
        rhs=euler_rhs,
        applicable=_is_lie,
    ))

    def flow_rhs(ctx):
        M, p, t = ctx.M, ctx.p, ctx.b["t"]
        bmask = 0
        for e in range(M.n):
            if p[e] == HALF:
                bmask |= 1 << e
        if bmask == M.full:
            return (
                HALF ** M.n * _fpow(t, M.n - M.rank_total()) * M.mult(M.full)
            )
        child = ctx.contract(bmask)
        rb = M.rank(bmask)
        term = HALF ** popcount(bmask) * _fpow(t, popcount(bmask) - rb)
        for e in bits(M.full & ~bmask):
            term *= 1 - 2 * p[e]
        vloc = [t * p[j] / (1 - 2 * p[j]) for j in child.index_map]
        return term * z_num(child, t, vloc)

    def flow_uniform(ctx, ps):
        M, t = ctx.M, ctx.b["t"]
        if ps == HALF:
            return flow_rhs(ctx)
        re = M.rank_total()
        return (
            _fpow(ps, re) * _fpow(1 - 2 * ps, M.n - re)
            * tutte_num(M, (1 - ps) / ps, 1 + t * ps / (1 - 2 * ps))
        )

    add(IdentityRecord(
        id="E-FLOW",
        description="expectation of the flow polynomial, with the "
                    "piecewise p = 1/2 branch",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child: flow_num(child, ctx.b["t"])),
        rhs=flow_rhs,
        params=("t",),
        pole=lambda p, b: b["t"] == 0,
        rhs_uniform=flow_uniform,
        uniform_pole=lambda ps, b: ps == 0,
        branch_value=HALF,
    ))

    def prop_t1_rhs(ctx):
        M, b = ctx.M, ctx.b
        s, u, v = b["s"], b["u"], b["v"]
        total = ZERO
        for a in range(M.full + 1):
            child = ctx.contract(a)
            term = _fpow(s, -M.rank(a))
            for e in bits(a):
                term *= -v[e] * (1 - u[e])
            term *= z_num(child, s, _local(v, child))
            total += term
        return total

    add(IdentityRecord(
        id="PROP-T1",
        description="contraction-side convolution with trivial first "
                    "multiplicity",
        kind="pure", model=None,
        lhs=lambda ctx: z_num(
            ctx.M, ctx.b["s"],
            [ue * ve for ue, ve in zip(ctx.b["u"], ctx.b["v"])]),
        rhs=prop_t1_rhs,
        params=("s",), elem_params=("u", "v"),
        pole=lambda p, b: b["s"] == 0,
    ))

    add(IdentityRecord(
        id="COR-T1V",
        description="characteristic polynomials of contractions sum to "
                    "the multivariate Tutte polynomial",
        kind="pure", model=None,
        lhs=lambda ctx: _fpow(ctx.b["s"], ctx.M.rank_total()) * z_num(
            ctx.M, ctx.b["s"], [-ue for ue in ctx.b["u"]]),
        rhs=lambda ctx: sum(
            math.prod(
                (1 - ctx.b["u"][e] for e in bits(a)), start=ONE
            ) * characteristic_num(ctx.contract(a), ctx.b["s"])
            for a in range(ctx.M.full + 1)
        ),
        params=("s",), elem_params=("u",),
        pole=lambda p, b: b["s"] == 0,
    ))

    def pcon_rhs(ctx):
        M, p, s = ctx.M, ctx.p, ctx.b["s"]
        cmask = 0
        for e in range(M.n):
            if p[e] == 1:
                cmask |= 1 << e
        if cmask == M.full:
            return M.mult(M.full)
        child = ctx.contract(cmask)
        term = _fpow(s, M.rank_total() - M.rank(cmask))
        for e in bits(M.full & ~cmask):
            term *= 1 - p[e]
        vloc = [(2 * p[j] - 1) / (1 - p[j]) for j in child.index_map]
        return term * z_num(child, s, vloc)

    def pcon_uniform(ctx, ps):
        M, s = ctx.M, ctx.b["s"]
        if ps == 1:
            return pcon_rhs(ctx)
        re = M.rank_total()
        return (
            _fpow(2 * ps - 1, re) * _fpow(1 - ps, M.n - re)
            * tutte_num(M, 1 + s * (1 - ps) / (2 * ps - 1), ps / (1 - ps))
        )

    add(IdentityRecord(
        id="E-P-CON",
        description="expectation of the characteristic polynomial of a "
                    "random contraction, with the p = 1 branch",
        kind="expectation", model="contraction",
        lhs=con_expectation(lambda ctx, child:
                            characteristic_num(child, ctx.b["s"])),
        rhs=pcon_rhs,
        params=("s",),
        pole=lambda p, b: b["s"] == 0,
        rhs_uniform=pcon_uniform,
        uniform_pole=lambda ps, b: ps == HALF,
        branch_value=ONE,
    ))

    add(IdentityRecord(
        id="E-CHI-CON",
        description="expectation of the chromatic polynomial of a random "
                    "contraction",
        kind="expectation", model="contraction",
        lhs=con_expectation(lambda ctx, child:
                            chromatic_num(child, ctx.b["s"])),
        rhs=lambda ctx: _fpow(ctx.b["s"], ctx.M.ambient_rank)
        * math.prod(1 - pe for pe in ctx.p)
        * z_num(ctx.M, ctx.b["s"],
                [(2 * pe - 1) / (1 - pe) for pe in ctx.p]),
        params=("s",),
        applicable=_has_ambient,
        pole=lambda p, b: b["s"] == 0 or any(pe == 1 for pe in p),
    ))

    def eqmb_sides(ctx):
        M, b = ctx.M, ctx.b
        t, u = b["t"], b["u"]
        lhs_vals, rhs_vals = [], []
        for bmask in range(M.full + 1):
            child = ctx.contract(bmask)
            lhs_vals.append(
                _fpow(t, M.rank_total() - M.rank(bmask))
                * z_num(child, t, [-u[j] for j in child.index_map])
            )
            total = ZERO
            comp = M.full & ~bmask
            sub = comp
            while True:
                tmask = bmask | sub
                term = characteristic_num(ctx.contract(tmask), t)
                for e in bits(tmask & ~bmask):
                    term *= 1 - u[e]
                total += term
                if sub == 0:
                    break
                sub = (sub - 1) & comp
            rhs_vals.append(total)
        return lhs_vals, rhs_vals

    add(IdentityRecord(
        id="EQ-MB",
        description="restricted contraction identity over all fixed "
                    "subsets B",
        kind="pure", model=None,
        lhs=lambda ctx: tuple(
            ctx.table("eqmb", lambda rng: eqmb_sides(ctx))[0]),
        rhs=lambda ctx: tuple(
            ctx.table("eqmb", lambda rng: eqmb_sides(ctx))[1]),
        params=("t",), elem_params=("u",),
        pole=lambda p, b: b["t"] == 0,
    ))

    def eqbb_sides(ctx):
        M, b = ctx.M, ctx.b
        t, u = b["t"], b["u"]
        prov = M.provenance
        ell = prov.dim
        re = M.rank_total()
        flats = ctx.table("flats", lambda rng: M.flats())
        lhs_vals, rhs_vals = [], []
        for y in flats:
            child = ctx.contract(y)
            lhs_vals.append(
                _fpow(t, ell - M.rank(y))
                * z_num(child, t, [-u[j] for j in child.index_map])
            )
            total = ZERO
            for x in flats:
                if x & y != y:
                    continue
                term = _fpow(t, ell - re) * characteristic_num(
                    ctx.contract(x), t
                )
                for e in bits(x & ~y):
                    term *= 1 - u[e]
                total += term
            rhs_vals.append(total)
        return lhs_vals, rhs_vals

    add(IdentityRecord(
        id="EQ-BB",
        description="flats-only contraction identity for central "
                    "arrangements",
        kind="pure", model=None,
        lhs=lambda ctx: tuple(
            ctx.table("eqbb", lambda rng: eqbb_sides(ctx))[0]),
        rhs=lambda ctx: tuple(
            ctx.table("eqbb", lambda rng: eqbb_sides(ctx))[1]),
        params=("t",), elem_params=("u",),
        applicable=_is_vector_matroid,
        pole=lambda p, b: b["t"] == 0,
    ))

    def os83_sides(ctx):
        M, t = ctx.M, ctx.b["t"]
        prov = M.provenance
        ell = prov.dim
        re = M.rank_total()
        flats = ctx.table("flats", lambda rng: M.flats())
        lhs_vals, rhs_vals = [], []
        for y in flats:
            total = sum(
                _fpow(t, ell - re) * characteristic_num(ctx.contract(x), t)
                for x in flats
                if x & y == y
            )
            lhs_vals.append(total)
            rhs_vals.append(M.mult(y) * _fpow(t, ell - M.rank(y)))
        return lhs_vals, rhs_vals

    add(IdentityRecord(
        id="OS83",
        description="characteristic polynomials of sub-flats sum to a "
                    "power of t",
        kind="pure", model=None,
        lhs=lambda ctx: tuple(
            ctx.table("os83", lambda rng: os83_sides(ctx))[0]),
        rhs=lambda ctx: tuple(
            ctx.table("os83", lambda rng: os83_sides(ctx))[1]),
        params=("t",),
        applicable=_is_vector_matroid,
        pole=lambda p, b: b["t"] == 0,
    ))

    # -- modified polynomials ---------------------------------------------

    def modt_uniform(ctx, ps):
        M, b = ctx.M, ctx.b
        x, y = b["x"], b["y"]
        re = M.rank_total()
        return _fpow(ps / (x - 1), re) * tutte_num(
            M, 1 + (x - 1) / ps, 1 + ps * (y - 1)
        )

    add(IdentityRecord(
        id="MOD-T",
        description="expectation of the rank-modified Tutte polynomial "
                    "of a random restriction",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        _fpow(ctx.b["x"] - 1, -child.rank_total())
                        * tutte_num(child, ctx.b["x"], ctx.b["y"])),
        rhs=lambda ctx: z_num(
            ctx.M, (ctx.b["x"] - 1) * (ctx.b["y"] - 1),
            [pe * (ctx.b["y"] - 1) for pe in ctx.p]),
        params=("x", "y"),
        pole=lambda p, b: b["x"] == 1 or b["y"] == 1,
        rhs_uniform=modt_uniform,
        uniform_pole=lambda ps, b: ps == 0,
    ))

    def t2y_uniform(ctx, ps):
        M, y = ctx.M, ctx.b["y"]
        return _fpow(ps, M.rank_total()) * tutte_num(
            M, 1 + 1 / ps, 1 + ps * (y - 1)
        )

    add(IdentityRecord(
        id="E-T2Y",
        description="expectation of the Tutte polynomial at x = 2 of a "
                    "random restriction",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        tutte_num(child, Fraction(2), ctx.b["y"])),
        rhs=lambda ctx: z_num(
            ctx.M, ctx.b["y"] - 1,
            [pe * (ctx.b["y"] - 1) for pe in ctx.p]),
        params=("y",),
        pole=lambda p, b: b["y"] == 1,
        rhs_uniform=t2y_uniform,
        uniform_pole=lambda ps, b: ps == 0,
    ))

    def tx2_uniform(ctx, ps):
        M, x = ctx.M, ctx.b["x"]
        re = M.rank_total()
        return _fpow(1 - ps, M.n - re) * tutte_num(
            M, 1 + (1 - ps) * (x - 1), (2 - ps) / (1 - ps)
        )

    add(IdentityRecord(
        id="E-TX2",
        description="expectation of the Tutte polynomial at y = 2 of a "
                    "random contraction",
        kind="expectation", model="contraction",
        lhs=con_expectation(lambda ctx, child:
                            tutte_num(child, ctx.b["x"], Fraction(2))),
        rhs=lambda ctx: _fpow(ctx.b["x"] - 1, ctx.M.rank_total())
        * math.prod(1 - pe for pe in ctx.p)
        * z_num(ctx.M, ctx.b["x"] - 1, [1 / (1 - pe) for pe in ctx.p]),
        params=("x",),
        pole=lambda p, b: b["x"] == 1 or any(pe == 1 for pe in p),
        rhs_uniform=tx2_uniform,
        uniform_pole=lambda ps, b: ps == 1,
    ))

    add(IdentityRecord(
        id="MOD-P",
        description="expectation of the rank-modified characteristic "
                    "polynomial of a random restriction",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        _fpow(ctx.b["t"], -child.rank_total())
                        * characteristic_num(child, ctx.b["t"])),
        rhs=lambda ctx: z_num(ctx.M, ctx.b["t"], [-pe for pe in ctx.p]),
        params=("t",),
        pole=lambda p, b: b["t"] == 0,
    ))

    add(IdentityRecord(
        id="MOD-F",
        description="expectation of the sign-modified flow polynomial of "
                    "a random restriction",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        (-1) ** child.n * flow_num(child, ctx.b["t"])),
        rhs=lambda ctx: z_num(
            ctx.M, ctx.b["t"], [-ctx.b["t"] * pe for pe in ctx.p]),
        params=("t",),
        pole=lambda p, b: b["t"] == 0,
    ))

    add(IdentityRecord(
        id="MOD-Z-RES",
        description="expectation of the sign-modified multivariate Tutte "
                    "polynomial of a random restriction",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        (-1) ** child.n
                        * z_num(child, ctx.b["t"],
                                _local(ctx.b["u"], child))),
        rhs=lambda ctx: math.prod(1 - 2 * pe for pe in ctx.p) * z_num(
            ctx.M, ctx.b["t"],
            [ue * pe / (2 * pe - 1)
             for ue, pe in zip(ctx.b["u"], ctx.p)]),
        params=("t",), elem_params=("u",),
        pole=lambda p, b: b["t"] == 0 or any(pe == HALF for pe in p),
    ))

    def modt2_uniform(ctx, ps):
        M, b = ctx.M, ctx.b
        x, y = b["x"], b["y"]
        re = M.rank_total()
        return (
            _fpow(1 - 2 * ps, M.n - re) * _fpow(-ps, re)
            * _fpow(x - 1, -re)
            * tutte_num(M, 1 + (x - 1) * (2 * ps - 1) / ps,
                        1 + ps * (y - 1) / (2 * ps - 1))
        )

    add(IdentityRecord(
        id="MOD-T2",
        description="expectation of the sign- and rank-modified Tutte "
                    "polynomial of a random restriction",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        (-1) ** child.n
                        * _fpow(ctx.b["x"] - 1, -child.rank_total())
                        * tutte_num(child, ctx.b["x"], ctx.b["y"])),
        rhs=lambda ctx: math.prod(1 - 2 * pe for pe in ctx.p) * z_num(
            ctx.M, (ctx.b["x"] - 1) * (ctx.b["y"] - 1),
            [(ctx.b["y"] - 1) * pe / (2 * pe - 1) for pe in ctx.p]),
        params=("x", "y"),
        pole=lambda p, b: b["x"] == 1 or b["y"] == 1
                          or any(pe == HALF for pe in p),
        rhs_uniform=modt2_uniform,
        uniform_pole=lambda ps, b: ps in (0, HALF),
    ))

    def modp2_uniform(ctx, ps):
        M, t = ctx.M, ctx.b["t"]
        re = M.rank_total()
        return (
            _fpow(1 - 2 * ps, M.n - re) * _fpow(ps, re) * _fpow(t, -re)
            * tutte_num(M, 1 + t * (1 - 2 * ps) / ps,
                        (1 - ps) / (1 - 2 * ps))
        )

    add(IdentityRecord(
        id="MOD-P2",
        description="expectation of the sign- and rank-modified "
                    "characteristic polynomial of a random restriction",
        kind="expectation", model="restriction",
        lhs=expectation(lambda ctx, child:
                        (-1) ** child.n
                        * _fpow(ctx.b["t"], -child.rank_total())
                        * characteristic_num(child, ctx.b["t"])),
        rhs=lambda ctx: math.prod(1 - 2 * pe for pe in ctx.p) * z_num(
            ctx.M, ctx.b["t"],
            [pe / (1 - 2 * pe) for pe in ctx.p]),
        params=("t",),
        pole=lambda p, b: b["t"] == 0 or any(pe == HALF for pe in p),
        rhs_uniform=modp2_uniform,
        uniform_pole=lambda ps, b: ps in (0, HALF),
    ))

    def cor00_lhs(ctx):
        t_exp = brute_force_expectation(
            ctx.M, "restriction",
            lambda child: tutte_num(child, ZERO, ZERO), ctx.p)
        p_exp = brute_force_expectation(
            ctx.M, "restriction",
            lambda child: (-1) ** child.n * characteristic_num(child, ONE),
            ctx.p)
        return (t_exp, p_exp)

    def cor00_rhs(ctx):
        val = math.prod(1 - 2 * pe for pe in ctx.p) * z_num(
            ctx.M, ONE, [pe / (1 - 2 * pe) for pe in ctx.p])
        return (val, val)

    def cor00_uniform(ctx, ps):
        M = ctx.M
        val = _fpow(ps, M.n) * tutte_num(
            M, (1 - ps) / ps, (1 - ps) / (1 - 2 * ps))
        return (val, val)

    add(IdentityRecord(
        id="COR-00",
        description="Tutte polynomial at the origin for coloops-only rsms",
        kind="expectation", model="restriction",
        lhs=cor00_lhs,
        rhs=cor00_rhs,
        applicable=_is_coloops_only,
        pole=lambda p, b: any(pe == HALF for pe in p),
        rhs_uniform=cor00_uniform,
        uniform_pole=lambda ps, b: ps in (0, HALF),
    ))

    def modzcon_lhs_f(ctx, child):
        M = ctx.M
        s, v = ctx.b["s"], ctx.b["v"]
        in_child = set(child.index_map)
        ra = M.rank_total() - child.rank_total()
        term = _fpow(s, -ra)
        for e in range(M.n):
            if e not in in_child:
                term *= -v[e]
        return term * z_num(child, s, _local(v, child))

    add(IdentityRecord(
        id="MOD-Z-CON",
        description="expectation of the modified multivariate Tutte "
                    "polynomial of a random contraction",
        kind="expectation", model="contraction",
        lhs=con_expectation(modzcon_lhs_f),
        rhs=lambda ctx: math.prod(1 - pe for pe in ctx.p) * z_num(
            ctx.M, ctx.b["s"],
            [ve * (1 - 2 * pe) / (1 - pe)
             for ve, pe in zip(ctx.b["v"], ctx.p)]),
        params=("s",), elem_params=("v",),
        pole=lambda p, b: b["s"] == 0 or any(pe == 1 for pe in p),
    ))

    def cort2con_lhs_f(ctx, child):
        # the (x-1) exponent is the parent's full rank, constant over A
        # (substitute v = y-1 in the contraction convolution to see it)
        M = ctx.M
        x, y = ctx.b["x"], ctx.b["y"]
        asize = M.n - child.n
        ra = M.rank_total() - child.rank_total()
        return (
            (-1) ** asize
            * _fpow(y - 1, asize - ra)
            * _fpow(x - 1, -M.rank_total())
            * tutte_num(child, x, y)
        )

    def cort2con_uniform(ctx, ps):
        M = ctx.M
        x, y = ctx.b["x"], ctx.b["y"]
        re = M.rank_total()
        return (
            _fpow(1 - ps, M.n - re) * _fpow(1 - 2 * ps, re)
            * _fpow(x - 1, -re)
            * tutte_num(M, 1 + (x - 1) * (1 - ps) / (1 - 2 * ps),
                        1 + (y - 1) * (1 - 2 * ps) / (1 - ps))
        )

    add(IdentityRecord(
        id="COR-T2-CON",
        description="expectation of the modified Tutte polynomial of a "
                    "random contraction",
        kind="expectation", model="contraction",
        lhs=con_expectation(cort2con_lhs_f),
        rhs=lambda ctx: math.prod(1 - pe for pe in ctx.p) * z_num(
            ctx.M, (ctx.b["x"] - 1) * (ctx.b["y"] - 1),
            [(ctx.b["y"] - 1) * (1 - 2 * pe) / (1 - pe)
             for pe in ctx.p]),
        params=("x", "y"),
        pole=lambda p, b: b["x"] == 1 or b["y"] == 1
                          or any(pe == 1 for pe in p),
        rhs_uniform=cort2con_uniform,
        uniform_pole=lambda ps, b: ps in (HALF, 1),
    ))

    def modfcon_lhs_f(ctx, child):
        M = ctx.M
        t = ctx.b["t"]
        asize = M.n - child.n
        ra = M.rank_total() - child.rank_total()
        return (
            (-1) ** asize * _fpow(t, asize - ra) * flow_num(child, t)
        )

    def modfcon_uniform(ctx, ps):
        M, t = ctx.M, ctx.b["t"]
        re = M.rank_total()
        return (
            _fpow(ps - 1, M.n - re) * _fpow(1 - 2 * ps, re)
            * tutte_num(M, ps / (2 * ps - 1),
                        1 + t * (1 - 2 * ps) / (ps - 1))
        )

    add(IdentityRecord(
        id="MOD-F-CON",
        description="expectation of the modified flow polynomial of a "
                    "random contraction",
        kind="expectation", model="contraction",
        lhs=con_expectation(modfcon_lhs_f),
        rhs=lambda ctx: math.prod(pe - 1 for pe in ctx.p) * z_num(
            ctx.M, ctx.b["t"],
            [-ctx.b["t"] * (1 - 2 * pe) / (1 - pe) for pe in ctx.p]),
        params=("t",),
        pole=lambda p, b: b["t"] == 0 or any(pe == 1 for pe in p),
        rhs_uniform=modfcon_uniform,
        uniform_pole=lambda ps, b: ps in (HALF, 1),
    ))

    return R


REGISTRY = build_registry()


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-97, 97), rng.randint(1, 97))


def random_probability(rng: random.Random) -> Fraction:
    den = rng.randint(1, 97)
    return Fraction(rng.randint(0, den), den)


def _draw_bindings(
    record: IdentityRecord, M: Rsm, rng: random.Random,
    uniform_elems: bool = False,
) -> dict:
    """uniform_elems repeats one draw across the ground set, which the
    single-probability closed forms require of their element vectors."""
    b: dict = {}
    for name in record.params:
        b[name] = random_rational(rng)
    for name in record.elem_params:
        if uniform_elems:
            b[name] = [random_rational(rng)] * M.n
        else:
            b[name] = [random_rational(rng) for _ in range(M.n)]
    for name in record.int_elem_params:
        if uniform_elems:
            b[name] = [Fraction(rng.randint(1, 3))] * M.n
        else:
            b[name] = [Fraction(rng.randint(1, 3)) for _ in range(M.n)]
    return b


def _probability_choices(record: IdentityRecord, M: Rsm, rng: random.Random):
    """The p vectors to test: uniform 1/3, 1/2, 1, a random per-element
    draw, and (for branch identities) a mixed vector hitting the branch
    on a strict subset."""
    n = M.n
    choices = [
        ("third", [Fraction(1, 3)] * n),
        ("half", [HALF] * n),
        ("one", [ONE] * n),
    ]
    if record.uniform_only:
        den = rng.randint(2, 97)
        ps = Fraction(rng.randint(1, den - 1), den)
        choices.append(("random-uniform", [ps] * n))
    else:
        choices.append(("random", [random_probability(rng) for _ in range(n)]))
        if record.branch_value is not None and n >= 2:
            mixed = [random_probability(rng) for _ in range(n)]
            mixed[0] = record.branch_value
            choices.append(("mixed-branch", mixed))
    return choices


def verify_identity(
    identity_id: str,
    M: Rsm,
    trials: int = 3,
    seed: int = 0,
    instance_name: str | None = None,
) -> list[str]:
    """Exact-equality check at random rational points; returns report
    lines "PASS|FAIL <identity-id> <instance-name> <point-index>".

    Returns an empty list when the identity does not apply to M.
    """
    record = REGISTRY.get(identity_id)
    if record is None:
        raise UnknownIdentity(identity_id)
    if not record.applicable(M):
        return []
    name = instance_name or M.name or f"rsm{M.n}"
    lines = []
    point_index = 0
    for trial in range(trials):
        rng = random.Random(f"{seed}:{identity_id}:{name}:{trial}")
        for label, p in _probability_choices(record, M, rng):
            result = _check_point(record, M, p, rng)
            if result is None:
                continue  # persistent pole at this fixed p; skip
            lines.append(
                f"{'PASS' if result else 'FAIL'} {identity_id} {name} "
                f"{point_index}"
            )
            point_index += 1
    return lines


def _check_point(record, M, p, rng, max_attempts: int = 60):
    """One probability choice: draw bindings avoiding poles, compare
    sides exactly.  None if no non-pole binding could be found."""
    uniform = len(set(p)) == 1
    uniform_elems = uniform and record.rhs_uniform is not None
    for _ in range(max_attempts):
        b = _draw_bindings(record, M, rng, uniform_elems=uniform_elems)
        if record.pole(p, b):
            if not record.params and not record.elem_params \
                    and not record.int_elem_params:
                return None  # pole depends on p alone
            continue
        ctx = EvalContext(M=M, p=list(p), b=b, rng=rng)
        try:
            lhs = record.lhs(ctx)
            rhs = record.rhs(ctx)
        except (PoleError, ZeroDivisionError):
            continue
        ok = lhs == rhs
        if ok and uniform_elems:
            ps = p[0]
            if not record.uniform_pole(ps, b):
                try:
                    ok = record.rhs_uniform(ctx, ps) == lhs
                except (PoleError, ZeroDivisionError):
                    pass
        return ok
    return None


def verify_corpus(
    instances: list[tuple[str, Rsm]],
    identity_ids: list[str] | None = None,
    trials: int = 3,
    seed: int = 0,
) -> list[str]:
    """Run every requested identity over every instance; deterministic
    report ordering (identity id, then instance order)."""
    ids = sorted(identity_ids) if identity_ids else sorted(REGISTRY)
    lines = []
    for identity_id in ids:
        for name, M in instances:
            lines.extend(
                verify_identity(identity_id, M, trials=trials, seed=seed,
                                instance_name=name)
            )
    return lines


def closed_form(
    identity_id: str, M: Rsm, p: list[Fraction], bindings: dict
) -> object:
    """Evaluate the identity's closed-form (right-hand) side exactly."""
    record = REGISTRY.get(identity_id)
    if record is None:
        raise UnknownIdentity(identity_id)
    if not record.applicable(M):
        raise InapplicableIdentity(
            f"{identity_id} does not apply to this instance"
        )
    b = dict(bindings)
    if record.pole(p, b):
        raise PoleError(
            f"{identity_id} has a pole at the requested parameters; "
            f"the piecewise branch (if any) is chosen automatically "
            f"only away from other poles"
        )
    ctx = EvalContext(M=M, p=list(p), b=b, rng=random.Random(0))
    return record.rhs(ctx)


def expectation_value(
    identity_id: str, M: Rsm, p: list[Fraction], bindings: dict
) -> object:
    """Left-hand (brute-force) side of an identity, for cross-checking."""
    record = REGISTRY.get(identity_id)
    if record is None:
        raise UnknownIdentity(identity_id)
    ctx = EvalContext(M=M, p=list(p), b=dict(bindings), rng=random.Random(0))
    return record.lhs(ctx)


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SampleReport:
    estimate: float
    stderr: float
    n: int
    seed: int


def monte_carlo(
    M: Rsm,
    model: str,
    f: Callable[[Rsm], float],
    p: list[float],
    n: int,
    seed: int,
) -> SampleReport:
    """i.i.d. sampling of E_p with per-element Bernoulli(p_e); the only
    floating-point computation in the library."""
    rng = random.Random(seed)
    total = 0.0
    total_sq = 0.0
    values: dict[int, float] = {}
    for _ in range(n):
        mask = 0
        for e in range(M.n):
            if rng.random() < p[e]:
                mask |= 1 << e
        val = values.get(mask)
        if val is None:
            val = float(f(_cached_minor(M, model, mask)))
            values[mask] = val
        total += val
        total_sq += val * val
    mean = total / n
    var = max(total_sq / n - mean * mean, 0.0)
    stderr = math.sqrt(var / n)
    return SampleReport(estimate=mean, stderr=stderr, n=n, seed=seed)
