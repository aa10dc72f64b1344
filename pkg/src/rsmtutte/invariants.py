"""Polynomial invariants of an rsm, each computed from its own defining
subset sum.  The change-of-variable identities relating them are tests,
not implementations.

Every invariant has a Poly builder (symbolic output, canonical variables)
and a numeric evaluator returning an exact Fraction at a rational point;
the expectation engine uses the numeric forms.
"""

from __future__ import annotations

from fractions import Fraction

from .construct import (
    GroupProvenance,
    enumerate_homs,
    hom_image,
    torsion_part_order,
)
from .poly import Poly, PoleError, VarRegistry
from .rsm import MissingMetadata, Rsm, bits, popcount


def _fpow(base: Fraction, exp: int) -> Fraction:
    """base**exp with the 0^0 = 1 convention; 0^negative is a pole."""
    if base == 0:
        if exp == 0:
            return Fraction(1)
        if exp < 0:
            raise PoleError(f"0^{exp}")
        return Fraction(0)
    return base ** exp


def _vprod(values, mask: int) -> Fraction:
    out = Fraction(1)
    for e in bits(mask):
        out *= values[e]
    return out


# ---------------------------------------------------------------------------
# symbolic builders
# ---------------------------------------------------------------------------

def multivariate_tutte(M: Rsm, reg: VarRegistry) -> Poly:
    """Z_M(q, v_e) = sum over A of m(A) q^(-r(A)) prod_{e in A} v_e."""
    out = Poly.const(reg, 0)
    for mask in range(M.full + 1):
        exps = {"q": -M.rank(mask)}
        for e in bits(mask):
            exps[f"v{M.index_map[e]}"] = 1
        out = out + Poly.monomial(reg, exps, M.mult(mask))
    return out


def subset_corank(M: Rsm, reg: VarRegistry) -> Poly:
    """SC_M = q^r(E) Z_M, by its own sum."""
    re = M.rank_total()
    out = Poly.const(reg, 0)
    for mask in range(M.full + 1):
        exps = {"q": re - M.rank(mask)}
        for e in bits(mask):
            exps[f"v{M.index_map[e]}"] = 1
        out = out + Poly.monomial(reg, exps, M.mult(mask))
    return out


def rank_nullity(M: Rsm, reg: VarRegistry) -> Poly:
    """W_M(x, y) = sum m(A) x^r(A) y^(|A| - r(A))."""
    out = Poly.const(reg, 0)
    for mask in range(M.full + 1):
        r = M.rank(mask)
        out = out + Poly.monomial(
            reg, {"x": r, "y": popcount(mask) - r}, M.mult(mask)
        )
    return out


def tutte_shifted(M: Rsm, reg: VarRegistry) -> Poly:
    """Tutte polynomial in the shifted variables X = x-1, Y = y-1
    (always a Laurent polynomial)."""
    re = M.rank_total()
    out = Poly.const(reg, 0)
    for mask in range(M.full + 1):
        r = M.rank(mask)
        out = out + Poly.monomial(
            reg, {"X": re - r, "Y": popcount(mask) - r}, M.mult(mask)
        )
    return out


def tutte(M: Rsm, reg: VarRegistry) -> Poly:
    """T_M(x, y), re-expanded in x and y.

    Valid when all shifted exponents are nonnegative (the matroid-with-
    multiplicity case); otherwise T lives in Laurent variables x-1, y-1
    and we raise."""
    shifted = tutte_shifted(M, reg)
    for key in shifted.terms:
        if any(e < 0 for _, e in key):
            raise ValueError(
                "Tutte polynomial is Laurent in x-1, y-1 for this rsm; "
                "use tutte_shifted"
            )
    x = Poly.var(reg, "x") - 1
    y = Poly.var(reg, "y") - 1
    return shifted.substitute({"X": x, "Y": y})


def flow(M: Rsm, reg: VarRegistry) -> Poly:
    """F_M(t) = sum (-1)^|E \\ A| m(A) t^(|A| - r(A))."""
    out = Poly.const(reg, 0)
    esize = M.n
    for mask in range(M.full + 1):
        k = popcount(mask)
        coeff = M.mult(mask) * (-1) ** (esize - k)
        out = out + Poly.monomial(reg, {"t": k - M.rank(mask)}, coeff)
    return out


def characteristic(M: Rsm, reg: VarRegistry) -> Poly:
    """P_M(t) = sum (-1)^|A| m(A) t^(r(E) - r(A))."""
    re = M.rank_total()
    out = Poly.const(reg, 0)
    for mask in range(M.full + 1):
        coeff = M.mult(mask) * (-1) ** popcount(mask)
        out = out + Poly.monomial(reg, {"t": re - M.rank(mask)}, coeff)
    return out


def chromatic(M: Rsm, reg: VarRegistry) -> Poly:
    """chi_M(t) = sum (-1)^|A| m(A) t^(ambient_rank - r(A))."""
    if M.ambient_rank is None:
        raise MissingMetadata("chromatic polynomial needs an ambient rank")
    out = Poly.const(reg, 0)
    for mask in range(M.full + 1):
        coeff = M.mult(mask) * (-1) ** popcount(mask)
        out = out + Poly.monomial(
            reg, {"t": M.ambient_rank - M.rank(mask)}, coeff
        )
    return out


def rank_monomial(M: Rsm, reg: VarRegistry) -> Poly:
    """X_M(t) = m(E) t^(-r(E))."""
    return Poly.monomial(reg, {"t": -M.rank_total()}, M.mult(M.full))


def set_monomial(M: Rsm, reg: VarRegistry) -> Poly:
    """Y_M(t_e) = m(E) prod_e t_e."""
    exps = {f"t{M.index_map[e]}": 1 for e in M.elements()}
    return Poly.monomial(reg, exps, M.mult(M.full))


def ehrhart_multivariate(M: Rsm, reg: VarRegistry) -> Poly:
    """Ehr_E(v_e) = sum over independent A of m(A) prod v_e."""
    out = Poly.const(reg, 0)
    for mask in range(M.full + 1):
        if M.rank(mask) != popcount(mask):
            continue
        exps = {f"v{M.index_map[e]}": 1 for e in bits(mask)}
        out = out + Poly.monomial(reg, exps, M.mult(mask))
    return out


def potts(M: Rsm, reg: VarRegistry) -> Poly:
    """Partition function |F|^r(Gamma) Z_M(|F|, v_e) of a Z-representable
    matroid with finite-group multiplicity."""
    prov = M.provenance
    if not isinstance(prov, GroupProvenance) or prov.mult.kind != "lie_group":
        raise MissingMetadata("potts needs finite-group multiplicity provenance")
    group = prov.mult.group
    if group.a or group.b:
        raise MissingMetadata("potts needs a finite group (a = b = 0)")
    if M.ambient_rank is None:
        raise MissingMetadata("potts needs an ambient rank")
    q = Fraction(group.finite_order)
    out = Poly.const(reg, 0)
    for mask in range(M.full + 1):
        coeff = M.mult(mask) * q ** (M.ambient_rank - M.rank(mask))
        exps = {f"v{M.index_map[e]}": 1 for e in bits(mask)}
        out = out + Poly.monomial(reg, exps, coeff)
    return out


def potts_direct(
    M: Rsm, values: list[Fraction], limit: int = 10_000
) -> Fraction | None:
    """Potts partition function by direct enumeration of Hom(Gamma, F);
    None when |Hom(Gamma, F)| exceeds the limit.

    ``values`` are the per-element v_e for the LOCAL elements of M.
    """
    prov = M.provenance
    if not isinstance(prov, GroupProvenance):
        raise MissingMetadata("direct Potts needs group provenance")
    group = prov.mult.group
    target = group.finite
    spec = prov.spec
    order = group.finite_order
    count = order ** spec.free_rank
    for d in spec.torsion:
        count *= torsion_part_order(group, d)
    if count > limit:
        return None
    zero = tuple(0 for _ in target)
    total = Fraction(0)
    for phi in enumerate_homs(spec, target):
        term = Fraction(1)
        for e in M.elements():
            if hom_image(spec, phi, spec.elements[e], target) == zero:
                term *= 1 + values[e]
        total += term
    return total


# ---------------------------------------------------------------------------
# numeric evaluators (exact Fractions)
# ---------------------------------------------------------------------------

def z_num(M: Rsm, q: Fraction, v: list[Fraction]) -> Fraction:
    """Z_M at a rational point; v indexed by local element."""
    total = Fraction(0)
    for mask in range(M.full + 1):
        total += M.mult(mask) * _fpow(q, -M.rank(mask)) * _vprod(v, mask)
    return total


def w_num(M: Rsm, x: Fraction, y: Fraction) -> Fraction:
    total = Fraction(0)
    for mask in range(M.full + 1):
        r = M.rank(mask)
        total += M.mult(mask) * _fpow(x, r) * _fpow(y, popcount(mask) - r)
    return total


def tutte_num(M: Rsm, x: Fraction, y: Fraction) -> Fraction:
    re = M.rank_total()
    total = Fraction(0)
    for mask in range(M.full + 1):
        r = M.rank(mask)
        total += (
            M.mult(mask)
            * _fpow(x - 1, re - r)
            * _fpow(y - 1, popcount(mask) - r)
        )
    return total


def flow_num(M: Rsm, t: Fraction) -> Fraction:
    total = Fraction(0)
    for mask in range(M.full + 1):
        k = popcount(mask)
        total += (
            M.mult(mask) * (-1) ** (M.n - k) * _fpow(t, k - M.rank(mask))
        )
    return total


def characteristic_num(M: Rsm, t: Fraction) -> Fraction:
    re = M.rank_total()
    total = Fraction(0)
    for mask in range(M.full + 1):
        total += (
            M.mult(mask) * (-1) ** popcount(mask) * _fpow(t, re - M.rank(mask))
        )
    return total


def chromatic_num(M: Rsm, t: Fraction) -> Fraction:
    if M.ambient_rank is None:
        raise MissingMetadata("chromatic polynomial needs an ambient rank")
    total = Fraction(0)
    for mask in range(M.full + 1):
        total += (
            M.mult(mask)
            * (-1) ** popcount(mask)
            * _fpow(t, M.ambient_rank - M.rank(mask))
        )
    return total


def ehrhart_multivariate_num(M: Rsm, v: list[Fraction]) -> Fraction:
    total = Fraction(0)
    for mask in range(M.full + 1):
        if M.rank(mask) == popcount(mask):
            total += M.mult(mask) * _vprod(v, mask)
    return total
