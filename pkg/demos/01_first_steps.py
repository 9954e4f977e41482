"""First steps: build a few racks and look at their good involutions.

Run with ``python demos/01_first_steps.py``.
"""

from symracks.constructors import conj_subquandle, dihedral_quandle, galkin_quandle, tetrahedral_quandle
from symracks.good import cns_check, good_involutions_connected_conj, good_involutions_oracle
from symracks.groups import conjugacy_classes, cyclic_group, make_named_group
from symracks.racks import classify_rack

# A rack is stored as its table of maps: R.s[x] is the permutation s_x.
R = dihedral_quandle(8)
print("R8 rows:")
for x, row in enumerate(R.rows):
    print(f"  s_{x} = {row}")
print("flags:", classify_rack(R))

# Dihedral quandles have 1, 2 or 4 good involutions depending on n mod 4.
for n in range(3, 13):
    print(f"R{n}: {len(good_involutions_oracle(dihedral_quandle(n)))} good involutions")

# The tetrahedral quandle is self-dual but has none at all.
T = tetrahedral_quandle()
print("tetrahedral:", len(good_involutions_oracle(T)), "good involutions")

# Galkin quandles: exactly one when 2c = 0, none otherwise.
for c in range(4):
    goods = good_involutions_oracle(galkin_quandle(cyclic_group(4), c))
    print(f"Galkin(Z4, {c}): {len(goods)}")

# Conjugacy classes of SL(2,5), viewed as conjugation quandles.
G = make_named_group("SL(2,5)")
for cls in conjugacy_classes(G):
    if len(cls) == 1:
        continue
    spec = conj_subquandle(G, cls)
    goods = good_involutions_connected_conj(spec)
    print(f"class of size {len(cls):2d}: {len(goods)} good, connected noninvolutory symmetric: "
          f"{cns_check(spec).is_cns}")
