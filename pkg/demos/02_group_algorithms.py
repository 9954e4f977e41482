"""The group-theoretic solvers next to the backtracking oracle.

For conjugation quandles the good involutions are ``x -> (z x)^-1`` with the
central element ``z`` chosen orbit by orbit; for core quandles they are
``g -> t g`` with ``t`` of order at most two.  Both are checked here against
the generic search, and the core quandle of Dic3 is examined by hand.
"""

import time

from symracks.constructors import core_quandle
from symracks.good import (
    bound_report,
    conj_full,
    good_involutions_conj,
    good_involutions_core,
    good_involutions_oracle,
    is_good_involution,
)
from symracks.groups import make_named_group

for name in ["D4", "Q8", "Dic3", "D6", "(Z2xZ2):Z4"]:
    G = make_named_group(name)
    spec = conj_full(G)
    t0 = time.perf_counter()
    fast = good_involutions_conj(spec)
    t1 = time.perf_counter()
    report = bound_report(spec, fast, aut_cap=0)
    line = f"Conj {name:11s} good={len(fast):5d} bound={report.upper_bound:8d} ({t1 - t0:.3f}s)"
    if G.order <= 12:
        line += f" oracle agrees: {fast.as_set() == good_involutions_oracle(spec.rack).as_set()}"
    print(line)

for name in ["Z4", "Z4xZ2", "Q8", "Dic3", "Dic4", "Dic5"]:
    G = make_named_group(name)
    fast = good_involutions_core(G)
    oracle = good_involutions_oracle(core_quandle(G))
    print(f"Core {name:6s} good={len(fast):3d} oracle={len(oracle):3d}")

# Core Dic3 by hand.  Swapping x and x^3 while fixing everything else is not
# good: s_{xa}(x) = x a^2 but s_{xa}(x^3) = x a^5, so the swap does not
# commute with s_{xa}.
G = make_named_group("Dic3")
R = core_quandle(G)
x, x3 = G.labels.index("xa^0"), G.labels.index("xa^3")
swap = list(range(G.order))
swap[x], swap[x3] = x3, x
print("swap x <-> x^3 good?", is_good_involution(R, swap))
for rho in good_involutions_core(G).involutions:
    moved = [f"{G.label(i)}->{G.label(j)}" for i, j in enumerate(rho) if i != j]
    print("  ", ", ".join(moved) or "identity")
