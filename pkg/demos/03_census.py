"""Counting small racks, symmetric racks and Legendrian racks.

Every rack is a quandle twisted by an automorphism commuting with all rows,
so the rack list is built from the quandle list.  Symmetric racks are then
counted as pairs (rack, good involution) up to isomorphism.
"""

import time

from symracks.enumeration import census_legendrian, census_symmetric, enumerate_racks

print("order  racks  quandles  kei   sym racks  sym quandles  sym kei  Leg quandles")
for n in range(1, 7):
    t0 = time.perf_counter()
    racks = enumerate_racks(n)
    row = [
        len(racks),
        len(enumerate_racks(n, "quandle")),
        len(enumerate_racks(n, "kei")),
        census_symmetric(n, "rack", racks=racks),
        census_symmetric(n, "quandle", racks=racks),
        census_symmetric(n, "kei", racks=racks),
        census_legendrian(n, "quandle", racks=racks),
    ]
    print(f"{n:5d}  " + "  ".join(f"{v:8d}" for v in row) + f"   ({time.perf_counter() - t0:.2f}s)")

# Orders 7 and 8 take a few minutes; pass opt_in=True (and optionally a
# cache_dir so an interrupted run resumes) to enumerate_racks for them.
