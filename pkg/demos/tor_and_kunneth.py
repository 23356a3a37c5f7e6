"""Tor over the Laurent ring and graded ranks under sums with S1 x S2."""

from filliform.coeff import GradedRankVector, koszul_tor, laurent_matrix, laurent_snf, kunneth_s1s2

m = laurent_matrix([["1 - t", 0], [0, "t^2 - 1"]])
print("Smith factors:", [str(f) for f in laurent_snf(m).factors])

for coefficients in ("trivial", "full"):
    print(coefficients, koszul_tor(m, coefficients))

point = GradedRankVector([(0, 1)], [])
for n in range(4):
    ranks = kunneth_s1s2(point, n).ranks
    print(f"{n} copies:", ", ".join(f"{r} in degree {d}" for d, r in ranks))
