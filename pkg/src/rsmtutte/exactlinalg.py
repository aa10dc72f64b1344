"""Exact integer/rational linear algebra: Smith normal form, quotient-group
structure of finitely generated abelian groups, and Fourier-Motzkin
elimination of rational inequality systems.

Everything here is exact: integers are Python ints, rationals are
``fractions.Fraction``.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class InputError(ValueError):
    """Malformed input (dimension mismatch, bad coordinates, ...)."""


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors of an integer matrix.

    invariant_factors: positive integers d_1 | d_2 | ... | d_r
    rank: number of nonzero diagonal entries (= rank over Q)
    """

    invariant_factors: tuple[int, ...]
    rank: int


@dataclass(frozen=True)
class QuotientStructure:
    """Structure of a f.g. abelian quotient: Z^free_rank + sum Z/t_i.

    torsion is a divisibility chain of integers > 1.
    """

    free_rank: int
    torsion: tuple[int, ...]

    @property
    def torsion_order(self) -> int:
        n = 1
        for t in self.torsion:
            n *= t
        return n


def snf(matrix: list[list[int]]) -> SmithForm:
    """Smith normal form by integer row/column reduction.

    Pivot choice: minimal nonzero absolute value in the remaining block.
    Suitable for the small matrices this library works with.
    """
    if not matrix or not matrix[0]:
        return SmithForm((), 0)
    m = [list(row) for row in matrix]
    rows, cols = len(m), len(m[0])
    for row in m:
        if len(row) != cols:
            raise InputError("ragged matrix")
    diag = []
    t = 0
    while t < min(rows, cols):
        # locate pivot: minimal |entry| != 0 in block [t:, t:]
        pi = pj = -1
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                a = m[i][j]
                if a != 0 and (best is None or abs(a) < best):
                    best, pi, pj = abs(a), i, j
        if best is None:
            break
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        # clear row/column t; may reintroduce entries, so loop
        while True:
            p = m[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // p
                    for j in range(t, cols):
                        m[i][j] -= q * m[t][j]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // p
                    for i in range(t, rows):
                        m[i][j] -= q * m[i][t]
                    if m[t][j]:
                        for i in range(t, rows):
                            m[i][t], m[i][j] = m[i][j], m[i][t]
                        dirty = True
                        break
            if not dirty:
                break
        diag.append(abs(m[t][t]))
        t += 1
    # enforce divisibility chain
    diag = [d for d in diag if d != 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a != 0:
                g = gcd(a, b)
                diag[i], diag[i + 1] = g, a * b // g
                changed = True
    return SmithForm(tuple(diag), len(diag))


def quotient_structure(
    free_rank: int, torsion: list[int], elements: list[list[int]]
) -> QuotientStructure:
    """Structure of Gamma/<A> for Gamma = Z^s + Z/d_1 + ... + Z/d_n.

    Each element of A is given by s free coordinates followed by n torsion
    coordinates.  The quotient is computed by lifting to Z^(s+n) with the
    torsion relations appended as extra relation columns, then reading off
    the Smith form.
    """
    s, n = free_rank, len(torsion)
    for d in torsion:
        if d <= 1:
            raise InputError("torsion moduli must be > 1")
    cols: list[list[int]] = []
    for a in elements:
        if len(a) != s + n:
            raise InputError(
                f"element has {len(a)} coordinates, expected {s + n}"
            )
        cols.append(list(a))
    for i, d in enumerate(torsion):
        col = [0] * (s + n)
        col[s + i] = d
        cols.append(col)
    if not cols:
        return QuotientStructure(s + n, ())
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(s + n)]
    form = snf(matrix)
    return QuotientStructure(
        free_rank=s + n - form.rank,
        torsion=tuple(d for d in form.invariant_factors if d > 1),
    )


def rational_rank(vectors: list[list[int]] | list[list[Fraction]]) -> int:
    """Rank over Q of a list of vectors (rows), by Gaussian elimination."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    col = 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pv = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] / pv
                for j in range(col, ncols):
                    rows[i][j] -= f * rows[rank][j]
        rank += 1
        col += 1
    return rank


def solve_exact(
    matrix: list[list[int]], rhs: list[Fraction]
) -> list[Fraction] | None:
    """Solve matrix @ x = rhs exactly; None if inconsistent.

    The columns of ``matrix`` are assumed linearly independent, so a
    solution is unique when it exists.
    """
    rows = [[Fraction(x) for x in row] + [rhs[i]] for i, row in enumerate(matrix)]
    nr, nc = len(rows), len(matrix[0]) if matrix else 0
    piv_cols = []
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
        if r == nr:
            break
    for i in range(r, nr):
        if rows[i][nc]:
            return None
    if len(piv_cols) < nc:
        # columns dependent; caller violated the precondition
        raise InputError("matrix columns are not independent")
    sol = [Fraction(0)] * nc
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][nc]
    return sol


# A linear inequality sum_i coeffs[i] * x_i <= bound.
Inequality = tuple[tuple[Fraction, ...], Fraction]


def make_ineq(coeffs, bound) -> Inequality:
    return (tuple(Fraction(c) for c in coeffs), Fraction(bound))


def _normalize(ineq: Inequality) -> Inequality:
    coeffs, bound = ineq
    lead = next((c for c in coeffs if c), None)
    if lead is None:
        return ineq
    scale = 1 / abs(lead)
    return (tuple(c * scale for c in coeffs), bound * scale)


def fourier_motzkin_eliminate(
    system: list[Inequality], var_index: int
) -> list[Inequality]:
    """Eliminate variable ``var_index`` from a rational inequality system.

    A point of the projection lifts to a point of the original system iff
    it satisfies the returned system.  Infeasibility shows up as a row
    0 <= negative.
    """
    zeros, pos, neg = [], [], []
    for coeffs, bound in system:
        c = coeffs[var_index]
        if c == 0:
            zeros.append((coeffs, bound))
        elif c > 0:
            pos.append((tuple(x / c for x in coeffs), bound / c))
        else:
            neg.append((tuple(x / -c for x in coeffs), bound / -c))
    out = list(zeros)
    for pc, pb in pos:
        for nc, nb in neg:
            coeffs = tuple(a + b for a, b in zip(pc, nc))
            out.append((coeffs, pb + nb))
    seen = set()
    dedup = []
    for ineq in out:
        key = _normalize(ineq)
        if key not in seen:
            seen.add(key)
            dedup.append(ineq)
    return dedup


def satisfies(system: list[Inequality], point: list[Fraction]) -> bool:
    return all(
        sum(c * x for c, x in zip(coeffs, point)) <= bound
        for coeffs, bound in system
    )
