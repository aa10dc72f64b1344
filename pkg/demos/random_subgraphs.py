"""Expected chromatic polynomial of a random subgraph, three ways.

Keep each edge of the triangle independently with probability 1/2 and ask
for the expected number of proper 3-colorings of the surviving graph.
The answer is 123/8, computed here by

  1. brute force over all 8 edge subsets,
  2. the closed-form identity E-CHI-RES,
  3. a Monte Carlo estimate, which should land within a few standard
     errors of the exact value.

    python3 demos/random_subgraphs.py
"""

from fractions import Fraction

from rsmtutte import (
    brute_force_expectation,
    closed_form,
    load_corpus_instance,
    monte_carlo,
)
from rsmtutte.invariants import chromatic_num

k3 = load_corpus_instance("k3")
p = [Fraction(1, 2)] * 3
t = Fraction(3)

brute = brute_force_expectation(
    k3, "restriction", lambda child: chromatic_num(child, t), p
)
closed = closed_form("E-CHI-RES", k3, p, {"t": t})
mc = monte_carlo(
    k3, "restriction", lambda child: float(chromatic_num(child, t)),
    [0.5] * 3, n=50_000, seed=1,
)

print("brute force:     ", brute)
print("closed form:     ", closed)
print("monte carlo:     ", f"{mc.estimate:.4f} +- {mc.stderr:.4f}",
      f"(n = {mc.n})")
assert brute == closed == Fraction(123, 8)
