import random
from fractions import Fraction

import pytest

from rsmtutte import (
    MultiplicitySpec,
    NotAMatroid,
    Rsm,
    load_corpus_instance,
    rsm_explicit,
    rsm_from_graph,
    rsm_from_vectors,
    uniform_matroid,
)
from rsmtutte.construct import GraphSpec, VectorListSpec
from rsmtutte.rsm import popcount


def rsm_equal(a: Rsm, b: Rsm) -> bool:
    if a.n != b.n:
        return False
    return all(
        a.rank(m) == b.rank(m) and a.mult(m) == b.mult(m)
        for m in range(a.full + 1)
    )


@pytest.fixture
def k3():
    return load_corpus_instance("k3")


def test_minor_basics(k3):
    res = k3.restriction(0b011)
    assert res.n == 2 and res.rank_total() == 2
    assert res.index_map == (0, 1)
    con = k3.contraction(0b001)
    assert con.n == 2 and con.rank(0) == 0
    assert con.rank_total() == 1
    assert con.ambient_rank == k3.ambient_rank - 1
    dual = k3.dual()
    assert dual.rank_total() == k3.n - k3.rank_total()
    assert dual.mult(0b011) == k3.mult(0b100)


def test_double_dual_is_empty_contraction(k3):
    assert rsm_equal(k3.dual().dual(), k3.contraction(0))


def test_contraction_dual_commutes(k3):
    # dual of a contraction = restriction of the dual to the complement
    for mask in range(k3.full + 1):
        lhs = k3.contraction(mask).dual()
        rhs = k3.dual().restriction(k3.full & ~mask)
        assert rsm_equal(lhs, rhs)


def test_rank_shift_instance():
    M = load_corpus_instance("shifted_rank")
    assert M.rank(0) == 1
    # duality still involutive up to empty contraction
    D = M.dual()
    assert D.rank(0) == 0 - M.rank_total() + M.rank(M.full)
    C = M.contraction(0)
    assert rsm_equal(D.dual(), C)
    assert not M.check_matroid()


def test_check_matroid_accepts_and_flats():
    u25 = uniform_matroid(2, 5)
    assert u25.check_matroid()
    k3 = rsm_from_graph(
        GraphSpec(3, ((0, 1), (1, 2), (0, 2))), MultiplicitySpec.trivial()
    )
    assert k3.check_matroid()
    flats = k3.flats()
    # K3: empty set, three singletons, and everything
    assert sorted(flats) == [0, 1, 2, 4, 7]
    assert k3.closure(0b011) == 0b111


def test_check_arithmetic_accepts_representable():
    for name in ["vec_diag23", "vec_triple", "ab_z4_mix", "ab_z_double"]:
        M = load_corpus_instance(name)
        assert M.check_matroid(), name
        assert M.check_arithmetic(), name


def mutated_tables(base: Rsm, count: int, seed: int):
    """Single-entry perturbations of the rank or multiplicity table."""
    rng = random.Random(seed)
    full = base.full
    out = []
    while len(out) < count:
        ranks = {m: base.rank(m) for m in range(full + 1)}
        mults = {m: base.mult(m) for m in range(full + 1)}
        mask = rng.randrange(full + 1)
        if rng.random() < 0.5:
            delta = rng.choice([-1, 1])
            new_rank = ranks[mask] + delta
            if not 0 <= new_rank <= popcount(mask):
                continue
            ranks[mask] = new_rank
        else:
            mults[mask] = mults[mask] * rng.choice([7, 11])
        out.append(rsm_explicit(ranks, mults, n=base.n))
    return out


def test_checkers_reject_mutations():
    base = rsm_from_vectors(
        VectorListSpec(2, ((2, 0), (0, 3), (1, 1))),
        MultiplicitySpec.arithmetic(),
    )
    assert base.check_matroid() and base.check_arithmetic()
    rejected = 0
    # seed chosen so none of the 20 perturbations happens to land on
    # another valid arithmetic matroid (some single-entry edits do)
    for M in mutated_tables(base, 20, seed=74):
        if not (M.check_matroid() and M.check_arithmetic()):
            rejected += 1
    assert rejected == 20


def test_flats_require_matroid():
    M = load_corpus_instance("shifted_rank")
    with pytest.raises(NotAMatroid):
        M.flats()


def test_subset_sum_deterministic(k3):
    total = k3.subset_sum(lambda mask: Fraction(k3.rank(mask)))
    assert total == sum(Fraction(k3.rank(m)) for m in range(8))
