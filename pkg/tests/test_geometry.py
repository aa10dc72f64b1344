import random
from fractions import Fraction

import pytest

from rsmtutte import (
    InputError,
    MultiplicitySpec,
    Zonotope,
    arrangement_flat_identities,
    ehrhart_closed,
    flats_sum_applicable,
    lattice_points_half_open,
    lattice_points_zonotope,
    layer_count,
    load_corpus,
    load_corpus_instance,
    rsm_from_vectors,
)
from rsmtutte.construct import VectorListSpec
from rsmtutte.geometry import ScaleExceeded
from rsmtutte.invariants import characteristic_num


def test_segment_counts():
    # [0, 2] at k = 1 has 3 lattice points, at k = 3 it is [0, 6]: 7 points
    z = Zonotope(1, ((2,),))
    assert lattice_points_zonotope(z, 1) == 3
    assert lattice_points_zonotope(z, 3) == 7
    M = rsm_from_vectors(VectorListSpec(1, ((2,),)), MultiplicitySpec.arithmetic())
    assert ehrhart_closed(M, Fraction(1)) == 3
    assert ehrhart_closed(M, Fraction(3)) == 7
    assert ehrhart_closed(M, Fraction(0)) == 1


def test_square_and_triple():
    sq = Zonotope(2, ((1, 0), (0, 1)))
    assert lattice_points_zonotope(sq, 1) == 4
    tri = Zonotope(2, ((1, 0), (0, 1), (1, 1)))
    # hexagon with vertices (0,0),(1,0),(2,1),(2,2),(1,2),(0,1)
    assert lattice_points_zonotope(tri, 1) == 7
    M = load_corpus_instance("vec_triple")
    assert ehrhart_closed(M, Fraction(1)) == 7


def test_closed_formula_matches_brute_force_on_random_lists():
    rng = random.Random(31)
    cases = 0
    while cases < 12:
        dim = rng.randint(1, 3)
        m = rng.randint(1, min(4, dim + 2))
        gens = tuple(
            tuple(rng.randint(-2, 2) for _ in range(dim)) for _ in range(m)
        )
        M = rsm_from_vectors(
            VectorListSpec(dim, gens), MultiplicitySpec.arithmetic()
        )
        for k in (1, 2, 3):
            assert lattice_points_zonotope(Zonotope(dim, gens), k) == (
                ehrhart_closed(M, Fraction(k))
            ), (gens, k)
        cases += 1


def test_scale_guard():
    with pytest.raises(ScaleExceeded):
        lattice_points_zonotope(Zonotope(4, ((1, 0, 0, 0),)), 1)
    with pytest.raises(ScaleExceeded):
        lattice_points_zonotope(Zonotope(1, ((1,),)), 4)


def test_half_open_counts():
    # diag(2,3): half-open box [0,2) x [0,3) has 6 lattice points
    assert lattice_points_half_open([(2, 0), (0, 3)], [1, 1]) == 6
    assert lattice_points_half_open([(1, 0), (0, 1)], [1, 1]) == 1
    assert lattice_points_half_open([(2, 0), (0, 3)], [2, 1]) == 12
    assert lattice_points_half_open([], []) == 1
    with pytest.raises(InputError):
        lattice_points_half_open([(1, 0), (2, 0)], [1, 1])


def test_half_open_multivariate_product():
    # the half-open count factors as prod over elements of the element's
    # own scaled count, matching the multivariate independent-set sum
    # evaluated on a single independent set
    from rsmtutte.exactlinalg import quotient_structure

    rng = random.Random(32)
    for _ in range(15):
        dim = rng.randint(1, 3)
        gens = []
        while len(gens) < dim:
            g = tuple(rng.randint(-2, 2) for _ in range(dim))
            from rsmtutte.exactlinalg import rational_rank

            if rational_rank([list(v) for v in gens + [g]]) == len(gens) + 1:
                gens.append(g)
        scaling = [rng.randint(1, 2) for _ in gens]
        q = quotient_structure(dim, [], [list(g) for g in gens])
        vol = q.torsion_order
        expected = vol
        for k in scaling:
            expected *= k
        assert lattice_points_half_open(gens, scaling) == expected


def test_layer_counts():
    M = load_corpus_instance("lie_finite")
    # empty intersection: whole group torus, |F|^rank(Gamma) layers
    assert layer_count(M, 0) == 16
    full = M.full
    assert layer_count(M, full) == int(M.mult(full))


def test_arrangement_flat_identities_boolean():
    M = load_corpus_instance("vec_boolean2")
    t = Fraction(5)
    rows = arrangement_flat_identities(M, t)
    assert all(row["ok"] for row in rows)
    empty = next(row for row in rows if row["flat"] == 0)
    # at the empty flat the sum recovers the whole-space count t^2
    assert empty["expected"] == t * t


def test_arrangement_flat_identities_corpus():
    for name, M in load_corpus():
        if not flats_sum_applicable(M):
            continue
        for row in arrangement_flat_identities(M, Fraction(7)):
            assert row["ok"], (name, row)


def test_flats_sum_applicability_gate():
    assert flats_sum_applicable(load_corpus_instance("vec_boolean2"))
    assert flats_sum_applicable(load_corpus_instance("vec_diag23"))
    # not even a matroid
    assert not flats_sum_applicable(load_corpus_instance("shifted_rank"))


def test_triple_characteristic_golden():
    M = load_corpus_instance("vec_triple")
    t = Fraction(4)
    assert characteristic_num(M, t) == (t - 1) * (t - 2)
