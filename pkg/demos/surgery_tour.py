"""Homology bookkeeping for a knot drawn in a surgery picture.

The knot below lives in the lens space obtained by 3-surgery on the unknot
and meets the spanning disk once.
"""

from filliform.surgery import (
    FramedLink,
    KnotInPresentation,
    classify,
    cobordism_b2,
    dual_knot,
    homology,
    rational_linking,
    zero_slope,
)

link = FramedLink([[3]])
print("ambient homology:", homology(link))

k = KnotInPresentation(link, [1], 0)
print("self-linking:", rational_linking(k))
print("case:", classify(k))
print("zero slope:", zero_slope(k))
print("cobordism b2:", cobordism_b2(k))

dual = dual_knot(k)
print("dual knot lives in a link with components", dual.link.names)

# zero-surgery on the three-component unlink is the 3-torus in homology
print("unlink with zero framings:", homology(FramedLink([[0, 0, 0]] * 3)))
