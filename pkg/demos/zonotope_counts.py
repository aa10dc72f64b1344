"""Lattice points of zonotopes vs the subset formula.

The zonotope of a list of integer vectors is the Minkowski sum of the
segments [0, e].  Its lattice-point count at dilation k is a polynomial
in k whose subset expansion only sees independent subsets, weighted by
their arithmetic multiplicity.  We check the formula against a direct
count done with Fourier-Motzkin projection.

    python3 demos/zonotope_counts.py
"""

from fractions import Fraction

from rsmtutte import (
    MultiplicitySpec,
    VectorListSpec,
    Zonotope,
    ehrhart_closed,
    lattice_points_half_open,
    lattice_points_zonotope,
    rsm_from_vectors,
)

gens = ((1, 0), (0, 1), (1, 1))
M = rsm_from_vectors(VectorListSpec(2, gens), MultiplicitySpec.arithmetic())

for k in (1, 2, 3):
    direct = lattice_points_zonotope(Zonotope(2, gens), k)
    formula = ehrhart_closed(M, Fraction(k))
    print(f"k = {k}: direct count {direct}, subset formula {formula}")
    assert direct == formula

# half-open variant for an independent list: the count is exactly
# m(E) * k1 * k2, i.e. the volume, with no boundary corrections
gens = [(2, 0), (0, 3)]
print("half-open diag(2,3) at k = (1,1):",
      lattice_points_half_open(gens, [1, 1]))
print("half-open diag(2,3) at k = (2,2):",
      lattice_points_half_open(gens, [2, 2]))
