"""Build a few small instances and print their Tutte-type polynomials.

Run from the repository root:

    python3 demos/tutte_basics.py
"""

from fractions import Fraction

from rsmtutte import (
    GraphSpec,
    MultiplicitySpec,
    VarRegistry,
    VectorListSpec,
    multivariate_tutte,
    rsm_from_graph,
    rsm_from_vectors,
    tutte,
)
from rsmtutte.invariants import characteristic, chromatic, flow, tutte_num

k3 = rsm_from_graph(
    GraphSpec(3, ((0, 1), (1, 2), (0, 2))), MultiplicitySpec.trivial(),
    name="K3",
)

reg = VarRegistry()
print("K3 (triangle graph)")
print("  Z  =", multivariate_tutte(k3, reg).canonical_string())
print("  T  =", tutte(k3, reg).canonical_string())
print("  chi =", chromatic(k3, reg).canonical_string())
print("  flow =", flow(k3, reg).canonical_string())
print("  T(2, 2) =", tutte_num(k3, Fraction(2), Fraction(2)),
      " (counts spanning subgraphs... all 8 subsets here)")
print()

# an arithmetic example: the columns of diag(2, 3), where multiplicities
# remember the index of the sublattice spanned by each subset
diag = rsm_from_vectors(
    VectorListSpec(2, ((2, 0), (0, 3))), MultiplicitySpec.arithmetic(),
    name="diag23",
)
reg2 = VarRegistry()
print("columns of diag(2, 3), arithmetic multiplicity")
print("  m(full set) =", diag.mult(diag.full))
print("  Z  =", multivariate_tutte(diag, reg2).canonical_string())
print("  P  =", characteristic(diag, reg2).canonical_string())
