"""Ranked sets with multiplicity: the universal object of this library.

An :class:`Rsm` is a ground set of n <= 30 elements together with a rank
oracle (subset -> int) and a multiplicity oracle (subset -> Fraction),
both memoized and keyed by bitmask.  Restriction, contraction, and dual
are the three minor operations; matroid/arithmetic-matroid axiom checkers
and the shared subset-summation kernel live here too.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

MAX_GROUND = 30


class NotAMatroid(ValueError):
    """Operation requires a matroid rank function."""


class MissingMetadata(ValueError):
    """Operation requires ambient-rank or provenance the rsm lacks."""


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def submasks(mask: int):
    """All subsets of ``mask``, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class Rsm:
    """Ground set + memoized rank and multiplicity oracles.

    ``ambient_rank`` carries the rank of the ambient group / dimension of
    the ambient space when the rsm came from a representation; it is what
    the chromatic polynomial exponentiates against.  ``provenance`` is an
    optional constructor-specific object (see ``construct``).
    ``index_map`` maps local element index -> element index in the rsm
    this one was derived from by restriction/contraction (identity for
    root instances).
    """

    def __init__(
        self,
        n: int,
        rank_fn: Callable[[int], int],
        mult_fn: Callable[[int], Fraction],
        labels: tuple[str, ...] | None = None,
        ambient_rank: int | None = None,
        provenance=None,
        index_map: tuple[int, ...] | None = None,
        name: str = "",
    ):
        if not 0 <= n <= MAX_GROUND:
            raise ValueError(f"ground set size {n} outside [0, {MAX_GROUND}]")
        self.n = n
        self.full = (1 << n) - 1
        self._rank_fn = rank_fn
        self._mult_fn = mult_fn
        self._rank_memo: dict[int, int] = {}
        self._mult_memo: dict[int, Fraction] = {}
        self.labels = labels or tuple(str(i) for i in range(n))
        self.ambient_rank = ambient_rank
        self.provenance = provenance
        self.index_map = index_map if index_map is not None else tuple(range(n))
        self.name = name

    # -- oracles --------------------------------------------------------

    def rank(self, mask: int) -> int:
        r = self._rank_memo.get(mask)
        if r is None:
            r = self._rank_fn(mask)
            self._rank_memo[mask] = r
        return r

    def mult(self, mask: int) -> Fraction:
        m = self._mult_memo.get(mask)
        if m is None:
            m = Fraction(self._mult_fn(mask))
            self._mult_memo[mask] = m
        return m

    def rank_total(self) -> int:
        return self.rank(self.full)

    def elements(self) -> range:
        return range(self.n)

    # -- minor operations -------------------------------------------------

    def restriction(self, mask: int) -> "Rsm":
        """M|A: ground set A reindexed; rank/mult restricted."""
        elems = tuple(bits(mask))
        pos = {e: i for i, e in enumerate(elems)}

        def expand(sub: int) -> int:
            out = 0
            for i, e in enumerate(elems):
                if sub >> i & 1:
                    out |= 1 << e
            return out

        prov = None
        if self.provenance is not None:
            prov = self.provenance.restrict(elems)
        return Rsm(
            len(elems),
            lambda sub: self.rank(expand(sub)),
            lambda sub: self.mult(expand(sub)),
            labels=tuple(self.labels[e] for e in elems),
            ambient_rank=self.ambient_rank,
            provenance=prov,
            index_map=tuple(self.index_map[e] for e in elems),
            name=self.name,
        )

    def contraction(self, mask: int) -> "Rsm":
        """M/A: ground set E\\A; rank(B) = r(B|A) - r(A); mult(B) = m(B|A)."""
        elems = tuple(bits(self.full & ~mask))
        ra = self.rank(mask)

        def expand(sub: int) -> int:
            out = mask
            for i, e in enumerate(elems):
                if sub >> i & 1:
                    out |= 1 << e
            return out

        ambient = None
        if self.ambient_rank is not None:
            ambient = self.ambient_rank - ra
        return Rsm(
            len(elems),
            lambda sub: self.rank(expand(sub)) - ra,
            lambda sub: self.mult(expand(sub)),
            labels=tuple(self.labels[e] for e in elems),
            ambient_rank=ambient,
            provenance=None,
            index_map=tuple(self.index_map[e] for e in elems),
            name=self.name,
        )

    def dual(self) -> "Rsm":
        """M*: rank*(A) = |A| - r(E) + r(E\\A); mult*(A) = m(E\\A)."""
        re = self.rank_total()
        full = self.full
        return Rsm(
            self.n,
            lambda mask: popcount(mask) - re + self.rank(full & ~mask),
            lambda mask: self.mult(full & ~mask),
            labels=self.labels,
            index_map=self.index_map,
            name=self.name,
        )

    # -- matroid structure -------------------------------------------------

    def closure(self, mask: int) -> int:
        if not self.check_matroid():
            raise NotAMatroid("closure requires a matroid rank function")
        r = self.rank(mask)
        out = mask
        for e in range(self.n):
            if not (mask >> e & 1) and self.rank(mask | 1 << e) == r:
                out |= 1 << e
        return out

    def flats(self) -> list[int]:
        if not self.check_matroid():
            raise NotAMatroid("flats require a matroid rank function")
        out = []
        for mask in range(self.full + 1):
            r = self.rank(mask)
            if all(
                self.rank(mask | 1 << e) > r
                for e in range(self.n)
                if not (mask >> e & 1)
            ):
                out.append(mask)
        return out

    def check_matroid(self, sample_pairs: int = 100_000, seed: int = 0) -> bool:
        """Normalization, monotonicity, and submodularity of the rank.

        Exhaustive over subset pairs for n <= 12, random pairs beyond.
        """
        cached = getattr(self, "_is_matroid", None)
        if cached is not None:
            return cached
        ok = self._check_matroid_impl(sample_pairs, seed)
        self._is_matroid = ok
        return ok

    def _check_matroid_impl(self, sample_pairs: int, seed: int) -> bool:
        full = self.full
        for mask in range(full + 1):
            r = self.rank(mask)
            if not 0 <= r <= popcount(mask):
                return False
            for e in bits(mask):
                if self.rank(mask & ~(1 << e)) > r:
                    return False
        if self.n <= 12:
            pairs = (
                (a, b) for a in range(full + 1) for b in range(full + 1)
            )
        else:
            rng = random.Random(seed)
            pairs = (
                (rng.randrange(full + 1), rng.randrange(full + 1))
                for _ in range(sample_pairs)
            )
        for a, b in pairs:
            if self.rank(a | b) + self.rank(a & b) > self.rank(a) + self.rank(b):
                return False
        return True

    def check_arithmetic(self) -> bool:
        """Arithmetic matroid axioms: divisibility, molecule product,
        molecule positivity.  Requires a matroid with positive integer
        multiplicities."""
        if not self.check_matroid():
            return False
        for mask in range(self.full + 1):
            m = self.mult(mask)
            if m.denominator != 1 or m <= 0:
                return False
        # axiom (i): divisibility along single-element steps
        for mask in range(self.full + 1):
            r = self.rank(mask)
            ma = self.mult(mask)
            for e in range(self.n):
                if mask >> e & 1:
                    continue
                up = mask | 1 << e
                mu = self.mult(up)
                if self.rank(up) == r:
                    if ma % mu != 0:
                        return False
                else:
                    if mu % ma != 0:
                        return False
        # axioms (ii) and (iii) over molecules [R, S]
        for s_mask in range(self.full + 1):
            for r_mask in submasks(s_mask):
                diff = s_mask & ~r_mask
                rr = self.rank(r_mask)
                f_mask = 0
                for e in bits(diff):
                    if self.rank(r_mask | 1 << e) > rr:
                        f_mask |= 1 << e
                t_mask = diff & ~f_mask
                if not all(
                    self.rank(r_mask | a) == rr + popcount(a & f_mask)
                    for a in submasks(diff)
                ):
                    continue  # not a molecule
                if self.mult(r_mask) * self.mult(s_mask) != self.mult(
                    r_mask | f_mask
                ) * self.mult(r_mask | t_mask):
                    return False
                ssize = popcount(s_mask)
                rho = sum(
                    (-1) ** (ssize - popcount(r_mask | a)) * self.mult(r_mask | a)
                    for a in submasks(diff)
                )
                if (-1) ** popcount(t_mask) * rho < 0:
                    return False
        return True

    # -- summation kernel ---------------------------------------------------

    def subset_sum(self, weight: Callable[[int], object]):
        """Sum of weight(A) over all subsets A, in fixed ascending mask order.

        Works for any type supporting +, starting from weight(0).
        """
        total = weight(0)
        for mask in range(1, self.full + 1):
            total = total + weight(mask)
        return total

    def __repr__(self):
        label = self.name or f"rsm(n={self.n})"
        return f"<Rsm {label} n={self.n}>"
