"""Which even negative definite forms can bound the 3-torus?

The enumeration walks Minkowski-reduced Gram matrices rank by rank, so the
full search up to rank 8 takes a minute or two. Pass ``-v`` to watch it.
"""

import logging
import sys

from filliform.lattice import root_system
from filliform.ledger import builtin, check_filling, delta, enumerate_even_candidates

if "-v" in sys.argv:
    logging.basicConfig(level=logging.DEBUG, format="%(message)s")

t3 = builtin("T3")
print(f"{t3.name}: b1 = {t3.b1}, delta = {delta(t3)}")

for f in enumerate_even_candidates(t3):
    v = check_filling(t3, f)
    print(f"  rank {f.rank:>2}  roots {root_system(f).label() or '-':<4}  margin {v.margin}")
