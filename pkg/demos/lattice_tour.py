"""A walk through the lattice toolkit on a few classical definite forms.

Run with ``python3 demos/lattice_tour.py``.
"""

from filliform.lattice import (
    complement_quotient,
    invariants,
    is_isometric,
    root_system,
    shadow,
    standard_form,
)


def describe(name, f):
    inv = invariants(f)
    sh = shadow(f)
    print(f"{name:>8}: rank {inv.rank}, det {inv.det}, {inv.parity}, "
          f"roots {root_system(f).label()}, s = {sh.s}, s_bar = {sh.s_bar}")


for name, f in [
    ("E8", standard_form("e8")),
    ("D4", standard_form("d", 4)),
    ("Z^5", standard_form("cube", 5)),
    ("Gamma12", standard_form("gamma", 12)),
]:
    describe(name, f)

# E8 sits inside the odd Lorentzian lattice as the complement of a
# characteristic vector of square -8 (with the signs used here).
lorentz = standard_form("lorentz", 9)
x = [3] + [-1] * 9
quotient = complement_quotient(lorentz, x)
ok, _ = is_isometric(quotient, standard_form("e8"))
print(f"complement of {x} in I(1,9) is E8: {ok}")
