"""GL-racks, Legendrian racks and the functor pair between racks and
Legendrian racks.

A GL-structure on a rack is an automorphism ``u`` commuting with every
``s_x``; the pair is Legendrian when the kink map equals ``u^-2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .racks import (
    Rack,
    SizeCap,
    automorphism_group,
    classify_rack,
    compose,
    identity_perm,
    inverse,
    is_automorphism,
    kink_map,
    perm_power,
    rack_from_table,
)

__all__ = [
    "NotGLStructure",
    "NotLegendrian",
    "GLRack",
    "LegendrianStatus",
    "gl_rack",
    "is_legendrian",
    "functor_F",
    "functor_F_inv",
    "centralizing_maps",
    "gl_structures",
    "legendrian_structures",
    "conjugation_orbits",
    "gl_isomorphism_classes",
]


class NotGLStructure(ValueError):
    pass


class NotLegendrian(ValueError):
    pass


@dataclass(frozen=True)
class GLRack:
    rack: Rack
    u: tuple[int, ...]

    def to_json(self) -> dict:
        out = self.rack.to_json()
        out["u"] = list(self.u)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GLRack":
        return gl_rack(Rack.from_json(data), data["u"])


def gl_rack(R: Rack, u: Sequence[int]) -> GLRack:
    u = tuple(int(v) for v in u)
    if not is_automorphism(R, u):
        raise NotGLStructure("u is not a rack automorphism")
    ua = np.asarray(u)
    if not np.array_equal(ua[R.s], R.s[:, ua]):
        raise NotGLStructure("u does not commute with every s_x")
    return GLRack(R, u)


@dataclass(frozen=True)
class LegendrianStatus:
    is_legendrian: bool
    is_legendrian_quandle: bool
    is_legendrian_kei: bool

    def __bool__(self) -> bool:
        return self.is_legendrian


def is_legendrian(L: GLRack) -> LegendrianStatus:
    theta = kink_map(L.rack)
    legendrian = theta == perm_power(L.u, -2)
    flags = classify_rack(L.rack)
    return LegendrianStatus(
        legendrian,
        legendrian and flags.is_quandle,
        legendrian and flags.is_kei,
    )


def _twist(R: Rack, p: Sequence[int], name: str) -> Rack:
    pa = np.asarray(p, dtype=np.int64)
    return Rack(R.order, pa[R.s], name)


def functor_F(L: GLRack) -> Rack:
    """``(X, s, u) -> (X, u^3 s)``."""
    if not is_legendrian(L):
        raise NotLegendrian("kink map differs from u^-2")
    out = _twist(L.rack, perm_power(L.u, 3), L.rack.name)
    return rack_from_table(out.order, out.s, out.name)


def functor_F_inv(R: Rack) -> GLRack:
    """``(X, s) -> (X, theta^-3 s, theta)``."""
    theta = kink_map(R)
    out = _twist(R, perm_power(theta, -3), R.name)
    return GLRack(rack_from_table(out.order, out.s, out.name), theta)


def centralizing_maps(R: Rack, square: Sequence[int] | None = None,
                      limit: int | None = None) -> list[tuple[int, ...]]:
    """Permutations ``u`` commuting with every ``s_x`` and with ``s_u(x) = s_x``.

    These are exactly the GL-structures.  With ``square`` given, only those
    with ``u^2 = square`` are returned.  Each choice of ``u(x)`` is propagated
    through ``u(g(a)) = g(u(a))`` for the distinct rows ``g`` (and through
    ``u(u(a)) = square(a)``) before branching again.
    """
    n = R.order
    rows = R.rows
    movers = sorted((set(rows) | set(R.inv_rows)) - {identity_perm(n)})
    fiber = [[y for y in range(n) if rows[y] == rows[x]] for x in range(n)]
    same = [{y for y in f} for f in fiber]
    sq = tuple(square) if square is not None else None
    u = [-1] * n
    used = [False] * n
    trail: list[int] = []
    found: list[tuple[int, ...]] = []

    def push(x, y) -> bool:
        start = len(trail)
        pending = [(x, y)]
        while pending:
            a, b = pending.pop()
            if u[a] != -1:
                if u[a] != b:
                    break
                continue
            if used[b] or b not in same[a]:
                break
            u[a] = b
            used[b] = True
            trail.append(a)
            for g in movers:
                pending.append((g[a], g[b]))
            if sq is not None:
                pending.append((b, sq[a]))
        else:
            return True
        undo(start)
        return False

    def undo(start):
        while len(trail) > start:
            a = trail.pop()
            used[u[a]] = False
            u[a] = -1

    def search(i):
        while i < n and u[i] != -1:
            i += 1
        if i == n:
            found.append(tuple(u))
            return limit is not None and len(found) >= limit
        for y in fiber[i]:
            if used[y]:
                continue
            start = len(trail)
            if push(i, y):
                stop = search(i + 1)
                undo(start)
                if stop:
                    return True
        return False

    search(0)
    if found:
        U = np.asarray(found, dtype=np.int64)
        assert np.all(_commutes(R, U))
        if sq is not None:
            assert np.all(U[np.arange(len(U))[:, None], U] == np.asarray(sq))
    return sorted(found)


def _commutes(R: Rack, U: np.ndarray) -> np.ndarray:
    # lhs[k, x, y] = u_k(s_x(y)); rhs[k, x, y] = s_x(u_k(y))
    n = R.order
    lhs = U[np.arange(len(U))[:, None, None], R.s[None, :, :]]
    rhs = R.s[np.arange(n)[None, :, None], U[:, None, :]]
    return lhs == rhs


def gl_structures(R: Rack) -> list[tuple[int, ...]]:
    return centralizing_maps(R)


def legendrian_structures(R: Rack, cap: int | None = None) -> list[tuple[int, ...]]:
    """All ``u`` making ``(R, u)`` a Legendrian rack (``u^-2`` = kink map)."""
    if cap is not None and R.order > cap:
        raise SizeCap(f"rack order {R.order} exceeds cap {cap}")
    theta = kink_map(R)
    return centralizing_maps(R, square=inverse(theta))


def conjugation_orbits(maps: Sequence[Sequence[int]],
                       aut: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """One representative (the smallest) per orbit of ``aut`` acting by conjugation."""
    remaining = set(tuple(m) for m in maps)
    reps = []
    for m in sorted(remaining):
        if m not in remaining:
            continue
        reps.append(m)
        for phi in aut:
            remaining.discard(compose(compose(phi, m), inverse(phi)))
    return reps


def gl_isomorphism_classes(R: Rack, maps: Sequence[Sequence[int]],
                           aut: Sequence[Sequence[int]] | None = None) -> int:
    if aut is None:
        aut = automorphism_group(R, cap=None)
    return len(conjugation_orbits(maps, aut))
