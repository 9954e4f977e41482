"""Racks built from groups and a few named small examples."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .groups import FiniteGroup, InvalidParameter, make_named_group
from .racks import Rack, RackAxiomError, orbit_decomposition, rack_from_table

__all__ = [
    "NotClosed",
    "NotAutomorphism",
    "NotAbelian",
    "ConjSubquandleSpec",
    "conj_quandle",
    "conj_subquandle",
    "conjugation_closed_subsets",
    "core_quandle",
    "alexander_quandle",
    "galkin_quandle",
    "permutation_rack",
    "tetrahedral_quandle",
    "dihedral_quandle",
    "parse_rack",
]


class NotClosed(RackAxiomError):
    def __init__(self, x: int, y: int):
        super().__init__(f"x y x^-1 leaves the subset for x={x}, y={y}")
        self.witness = (x, y)


class NotAutomorphism(ValueError):
    pass


class NotAbelian(ValueError):
    pass


def conj_quandle(G: FiniteGroup) -> Rack:
    """``s_g(h) = g h g^-1`` on all of ``G``."""
    m = G.mul
    table = m[m, G.inv[:, None]]
    return Rack(G.order, table, f"Conj({G.name})")


@dataclass(frozen=True)
class ConjSubquandleSpec:
    """A union of conjugacy classes closed under conjugation by its own elements.

    ``elements[i]`` is the group element behind rack element ``i``.
    """
    rack: Rack
    group: FiniteGroup
    elements: tuple[int, ...]
    inversion_closed: bool
    connected: bool


def conj_subquandle(G: FiniteGroup, X: Sequence[int]) -> ConjSubquandleSpec:
    elements = tuple(sorted(set(int(x) for x in X)))
    if not elements:
        raise InvalidParameter("subquandle needs at least one element")
    index = {g: i for i, g in enumerate(elements)}
    m, inv = G.mul, G.inv
    table = []
    for x in elements:
        row = []
        for y in elements:
            z = int(m[m[x, y], inv[x]])
            if z not in index:
                raise NotClosed(x, y)
            row.append(index[z])
        table.append(row)
    R = Rack(len(elements), np.array(table, dtype=np.int64), f"Conj({G.name})|{len(elements)}")
    return ConjSubquandleSpec(
        rack=R,
        group=G,
        elements=elements,
        inversion_closed=all(int(inv[x]) in index for x in elements),
        connected=len(orbit_decomposition(R).orbits) == 1,
    )


def conjugation_closed_subsets(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Every nonempty subset ``X`` with ``x X x^-1 = X`` for all ``x`` in ``X``.

    Such a subset is a union of orbits of ``<X>`` acting by conjugation.  The
    search grows subsets orbit by orbit and closes them, so it is exponential
    only in the number of subsets that actually qualify.
    """
    n = G.order
    m, inv = G.mul, G.inv
    conj = m[m, inv[:, None]]  # conj[h, g] = h g h^-1

    def close(S: frozenset) -> frozenset:
        # closure under y -> x y x^-1 for x, y in S; for a finite set this
        # already gives closure under the group generated by S
        arr = np.fromiter(S, dtype=np.int64)
        while True:
            grown = np.union1d(arr, conj[np.ix_(arr, arr)].ravel())
            if len(grown) == len(arr):
                return frozenset(int(v) for v in arr)
            arr = grown

    found: set[frozenset] = set()
    stack = [close(frozenset([g])) for g in range(n)]
    while stack:
        S = stack.pop()
        if S in found:
            continue
        found.add(S)
        for g in range(n):
            if g not in S:
                T = close(S | {g})
                if T not in found:
                    stack.append(T)
    return sorted((tuple(sorted(S)) for S in found), key=lambda t: (len(t), t))


def core_quandle(G: FiniteGroup) -> Rack:
    """``s_g(h) = g h^-1 g``."""
    m = G.mul
    n = G.order
    idx = np.arange(n)
    table = m[m[idx[:, None], G.inv[None, :]], idx[:, None]]
    return Rack(n, table, f"Core({G.name})")


def alexander_quandle(G: FiniteGroup, phi: Sequence[int]) -> Rack:
    """``s_g(h) = phi(h g^-1) g`` for a group automorphism ``phi``."""
    p = np.asarray(phi, dtype=np.int64)
    n = G.order
    if p.shape != (n,) or sorted(p.tolist()) != list(range(n)):
        raise NotAutomorphism("phi is not a bijection of the group")
    if not np.array_equal(p[G.mul], G.mul[p[:, None], p[None, :]]):
        raise NotAutomorphism("phi does not respect multiplication")
    m = G.mul
    idx = np.arange(n)
    table = m[p[m[idx[None, :], G.inv[:, None]]], idx[:, None]]
    return Rack(n, table, f"Alex({G.name})")


def galkin_quandle(A: FiniteGroup, c: int) -> Rack:
    """Galkin quandle on ``Z3 x A``; element ``(x, a)`` has index ``x |A| + a``.

    ``s_(y,b)(x,a) = (2y - x, -a + mu(x-y) b + tau(x-y))`` with
    ``mu = (2, -1, -1)`` and ``tau = (0, 0, c)``.
    """
    if not A.is_abelian():
        raise NotAbelian(f"{A.name} is not abelian")
    k = A.order
    if not 0 <= c < k:
        raise InvalidParameter(f"c={c} is not an element of {A.name}")
    m, inv, e = A.mul, A.inv, A.identity

    def mu(d: int, b: int) -> int:
        return int(m[b, b]) if d == 0 else int(inv[b])

    table = np.zeros((3 * k, 3 * k), dtype=np.int64)
    for y in range(3):
        for b in range(k):
            for x in range(3):
                d = (x - y) % 3
                tau = c if d == 2 else e
                for a in range(k):
                    val = m[m[inv[a], mu(d, b)], tau]
                    table[y * k + b, x * k + a] = ((2 * y - x) % 3) * k + val
    return Rack(3 * k, table, f"Galkin({A.name},{A.label(c) if A.labels else c})")


def permutation_rack(n: int, sigma: Sequence[int]) -> Rack:
    """Every ``s_x`` equals ``sigma``."""
    if sorted(sigma) != list(range(n)):
        raise InvalidParameter("sigma must be a permutation of range(n)")
    return Rack(n, np.tile(np.asarray(sigma, dtype=np.int64), (n, 1)), f"Perm{n}")


def tetrahedral_quandle() -> Rack:
    """Four elements, each acting as a 3-cycle on the other three."""
    cycles = [(1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)]
    table = []
    for x, cyc in enumerate(cycles):
        row = list(range(4))
        for i, a in enumerate(cyc):
            row[a] = cyc[(i + 1) % 3]
        table.append(row)
    return rack_from_table(4, table, "Tetrahedral")


def dihedral_quandle(n: int) -> Rack:
    """``s_x(y) = 2x - y`` on ``Z_n``."""
    if n < 1:
        raise InvalidParameter("n must be positive")
    idx = np.arange(n)
    return Rack(n, (2 * idx[:, None] - idx[None, :]) % n, f"R{n}")


def _cyclic_multiplier(G: FiniteGroup, k: int) -> list[int]:
    # Z_n is labelled by residues, so multiplication by k is an endomorphism
    return [(g * k) % G.order for g in range(G.order)]


def parse_rack(desc: str) -> Rack:
    """Build a rack from a short descriptor.

    Accepted forms: ``conj:G``, ``core:G``, ``galkin:A:c``, ``dihedral:n``,
    ``alex:Zn:mulk``, ``trivial:n``, ``tetrahedral``.  ``G`` is any group name
    understood by :func:`make_named_group`.
    """
    from .racks import trivial_quandle

    desc = desc.strip()
    kind, _, rest = desc.partition(":")
    kind = kind.lower()
    if kind == "conj":
        return conj_quandle(make_named_group(rest))
    if kind == "core":
        return core_quandle(make_named_group(rest))
    if kind == "galkin":
        group, _, c = rest.rpartition(":")
        return galkin_quandle(make_named_group(group), int(c))
    if kind == "dihedral":
        return dihedral_quandle(int(rest))
    if kind == "trivial":
        return trivial_quandle(int(rest))
    if kind == "tetrahedral":
        return tetrahedral_quandle()
    if kind == "alex":
        group, _, auto = rest.rpartition(":")
        G = make_named_group(group)
        mm = re.fullmatch(r"mul(-?\d+)", auto)
        if not mm or not re.fullmatch(r"Z\d+", G.name):
            raise InvalidParameter("alex descriptors take the form alex:Zn:mulk")
        return alexander_quandle(G, _cyclic_multiplier(G, int(mm.group(1))))
    raise InvalidParameter(f"unknown rack descriptor {desc!r}")
