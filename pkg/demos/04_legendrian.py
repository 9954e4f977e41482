"""Legendrian racks and the correspondence with ordinary racks.

A Legendrian rack carries an automorphism ``u`` commuting with every row and
with ``u^-2`` equal to the kink map.  Twisting the rows by ``u^3`` gives a
plain rack, and twisting back by the cube of the inverse kink map recovers
the Legendrian rack exactly.
"""

from symracks.constructors import dihedral_quandle, permutation_rack
from symracks.enumeration import enumerate_racks
from symracks.good import good_involutions_oracle
from symracks.legendrian import functor_F, functor_F_inv, is_legendrian, legendrian_structures
from symracks.racks import kink_map

P = permutation_rack(3, [1, 2, 0])
L = functor_F_inv(P)
print("rack rows:", P.rows, "kink map:", kink_map(P))
print("Legendrian partner rows:", L.rack.rows, "u:", L.u, "->", is_legendrian(L))
print("round trip exact:", functor_F(L) == P)

# On a kei, Legendrian structures and good involutions coincide.
R = dihedral_quandle(8)
print("R8 structures == good involutions:",
      set(legendrian_structures(R)) == good_involutions_oracle(R).as_set())

ok = all(functor_F(functor_F_inv(R)) == R for n in range(1, 6) for R in enumerate_racks(n))
print("round trips on all racks of order <= 5:", ok)
