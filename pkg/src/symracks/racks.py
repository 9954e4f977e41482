"""Finite racks stored as image tables ``s[x][y] = s_x(y)``.

Permutations of ``range(n)`` are plain tuples of ints throughout; ``compose(p, q)``
applies ``q`` first.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "RackAxiomError",
    "RowNotPermutation",
    "NotSelfDistributive",
    "SizeCap",
    "ExplosionGuard",
    "Rack",
    "RackFlags",
    "OrbitDecomposition",
    "rack_from_table",
    "trivial_quandle",
    "compose",
    "inverse",
    "identity_perm",
    "is_involution",
    "perm_power",
    "cycle_type",
    "classify_rack",
    "is_medial",
    "kink_map",
    "dual_rack",
    "orbit_decomposition",
    "inner_group",
    "is_homomorphism",
    "is_automorphism",
    "is_antiautomorphism",
    "isomorphisms",
    "automorphism_group",
    "antiautomorphisms",
    "are_isomorphic",
    "canonical_form",
    "relabel",
    "product_rack",
]

DEFAULT_AUT_ORDER_CAP = 16
DEFAULT_INNER_CAP = 10**6


class RackAxiomError(ValueError):
    pass


class RowNotPermutation(RackAxiomError):
    def __init__(self, x: int):
        super().__init__(f"row {x} is not a permutation")
        self.x = x


class NotSelfDistributive(RackAxiomError):
    def __init__(self, x: int, y: int, z: int):
        super().__init__(
            f"s_x s_y != s_(s_x(y)) s_x for x={x}, y={y} (they differ at z={z})")
        self.witness = (x, y, z)


class SizeCap(RuntimeError):
    pass


class ExplosionGuard(SizeCap):
    pass


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(p[i] for i in q)


def inverse(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def is_involution(p: Sequence[int]) -> bool:
    return all(p[p[i]] == i for i in range(len(p)))


def perm_power(p: Sequence[int], k: int) -> tuple[int, ...]:
    if k < 0:
        p, k = inverse(p), -k
    out = identity_perm(len(p))
    for _ in range(k):
        out = compose(p, out)
    return out


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        j, k = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths))


# ---------------------------------------------------------------------------
# the rack type
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Rack:
    order: int
    s: np.ndarray
    name: str = ""

    def __post_init__(self):
        self.s.setflags(write=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, Rack) and np.array_equal(self.s, other.s)

    def __hash__(self) -> int:
        return hash(self.s.tobytes())

    def __repr__(self) -> str:
        return f"Rack(order={self.order}, name={self.name!r}, s={self.rows})"

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.s)

    @cached_property
    def inv_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(inverse(row) for row in self.rows)

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "s": self.s.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "Rack":
        return rack_from_table(int(data["order"]), data["s"], data.get("name", ""))


def _make(n: int, table, name: str) -> Rack:
    return Rack(n, np.array(table, dtype=np.int64).reshape(n, n), name)


def rack_from_table(n: int, s, name: str = "") -> Rack:
    """Validate ``s`` (``s[x][y] = s_x(y)``) and return a :class:`Rack`."""
    if n < 1:
        raise RackAxiomError("racks are nonempty")
    table = np.asarray(s, dtype=np.int64)
    if table.shape != (n, n):
        raise RackAxiomError(f"table must be {n}x{n}, got shape {table.shape}")
    target = np.arange(n)
    for x in range(n):
        if not np.array_equal(np.sort(table[x]), target):
            raise RowNotPermutation(x)
    # s_x(s_y(z)) == s_{s_x(y)}(s_x(z))
    lhs = table[np.arange(n)[:, None, None], table[None, :, :]]
    rhs = table[table[:, :, None], table[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        x, y, z = (int(v) for v in bad[0])
        raise NotSelfDistributive(x, y, z)
    return Rack(n, table.copy(), name)


def trivial_quandle(n: int) -> Rack:
    return _make(n, np.tile(np.arange(n), (n, 1)), f"T{n}")


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RackFlags:
    is_quandle: bool
    is_kei: bool
    is_involutory: bool
    is_faithful: bool
    is_medial: bool
    is_connected: bool


def is_medial(R: Rack) -> bool:
    """Whether ``(x, y) -> s_y(x)`` is a homomorphism ``R x R -> R``."""
    s = R.s
    n = R.order
    for x2 in range(n):
        # lhs[x1, y1, y2] = s_{s_{y2}(x2)}(s_{y1}(x1))
        lhs = s[s[:, x2][None, None, :], s.T[:, :, None]]
        # rhs[x1, y1, y2] = s_{s_{y2}(y1)}(s_{x2}(x1))
        rhs = s[s.T[None, :, :], s[x2][:, None, None]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def classify_rack(R: Rack) -> RackFlags:
    s = R.s
    n = R.order
    idx = np.arange(n)
    quandle = bool(np.all(s[idx, idx] == idx))
    involutory = bool(np.all(s[idx[:, None], s] == idx[None, :]))
    faithful = len(set(R.rows)) == n
    return RackFlags(
        is_quandle=quandle,
        is_kei=quandle and involutory,
        is_involutory=involutory,
        is_faithful=faithful,
        is_medial=is_medial(R),
        is_connected=len(orbit_decomposition(R).orbits) == 1,
    )


def kink_map(R: Rack) -> tuple[int, ...]:
    theta = tuple(R.rows[x][x] for x in range(R.order))
    assert is_automorphism(R, theta)
    return theta


def dual_rack(R: Rack) -> Rack:
    return _make(R.order, R.inv_rows, f"{R.name}^op" if R.name else "")


# ---------------------------------------------------------------------------
# orbits and the inner automorphism group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrbitDecomposition:
    orbit_of: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.orbits)


def _union_find_orbits(n: int, maps: Sequence[Sequence[int]]) -> OrbitDecomposition:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in maps:
        for x in range(n):
            a, b = find(x), find(p[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    orbits = tuple(tuple(g) for g in sorted(groups.values()))
    orbit_of = [0] * n
    for k, orb in enumerate(orbits):
        for x in orb:
            orbit_of[x] = k
    return OrbitDecomposition(tuple(orbit_of), orbits)


def orbit_decomposition(R: Rack) -> OrbitDecomposition:
    return _union_find_orbits(R.order, R.rows)


def inner_group(R: Rack, cap: int = DEFAULT_INNER_CAP):
    """Generators ``s_x``, the order of the group they generate, and its orbits."""
    gens = sorted(set(R.rows))
    ident = identity_perm(R.order)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(g, p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > cap:
                        raise ExplosionGuard(f"inner group exceeds {cap} elements")
        frontier = nxt
    return gens, len(seen), orbit_decomposition(R)


# ---------------------------------------------------------------------------
# homomorphisms, automorphisms, antiautomorphisms
# ---------------------------------------------------------------------------

def is_homomorphism(R1: Rack, R2: Rack, phi: Sequence[int]) -> bool:
    p = np.asarray(phi)
    return bool(np.array_equal(p[R1.s], R2.s[p][:, p]))


def is_automorphism(R: Rack, phi: Sequence[int]) -> bool:
    return sorted(phi) == list(range(R.order)) and is_homomorphism(R, R, phi)


def is_antiautomorphism(R: Rack, rho: Sequence[int]) -> bool:
    return sorted(rho) == list(range(R.order)) and is_homomorphism(R, dual_rack(R), rho)


def _local_invariants(R: Rack) -> list[tuple]:
    """Isomorphism-invariant data attached to each element."""
    n = R.order
    rows = R.rows
    orbits = orbit_decomposition(R)
    theta = [rows[x][x] for x in range(n)]
    out = []
    for x in range(n):
        k, y = 1, theta[x]
        while y != x:
            y = theta[y]
            k += 1
        out.append((
            cycle_type(rows[x]),
            theta[x] == x,
            k,
            len(orbits.orbits[orbits.orbit_of[x]]),
            sum(1 for y in range(n) if rows[y] == rows[x]),
            sum(1 for y in range(n) if rows[y][x] == x),
        ))
    return out


def isomorphisms(R1: Rack, R2: Rack, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """All bijections ``phi`` with ``phi s_x = t_{phi(x)} phi``, by backtracking.

    Each choice of an image is closed under the rack operations and their
    inverses before branching again, so the search only branches on a
    generating set.
    """
    n = R1.order
    if R2.order != n:
        return
    s1, s1i, s2, s2i = R1.rows, R1.inv_rows, R2.rows, R2.inv_rows
    inv1, inv2 = _local_invariants(R1), _local_invariants(R2)
    if sorted(inv1) != sorted(inv2):
        return
    cands = [[y for y in range(n) if inv2[y] == inv1[x]] for x in range(n)]
    img = [-1] * n
    used = [False] * n
    assigned: list[int] = []
    count = 0

    def push(x, y) -> int | None:
        """Assign x -> y and close; return number of new assignments or None."""
        start = len(assigned)
        pending = [(x, y)]
        while pending:
            a, fa = pending.pop()
            if img[a] != -1:
                if img[a] != fa:
                    break
                continue
            if used[fa] or inv2[fa] != inv1[a]:
                break
            img[a] = fa
            used[fa] = True
            assigned.append(a)
            for b in assigned:
                fb = img[b]
                pending.append((s1[a][b], s2[fa][fb]))
                pending.append((s1[b][a], s2[fb][fa]))
                pending.append((s1i[a][b], s2i[fa][fb]))
                pending.append((s1i[b][a], s2i[fb][fa]))
        else:
            return len(assigned) - start
        undo(start)
        return None

    def undo(start):
        while len(assigned) > start:
            a = assigned.pop()
            used[img[a]] = False
            img[a] = -1

    def search():
        nonlocal count
        if len(assigned) == n:
            count += 1
            yield tuple(img)
            return
        x = next(i for i in range(n) if img[i] == -1)
        for y in cands[x]:
            if used[y]:
                continue
            start = len(assigned)
            if push(x, y) is None:
                continue
            yield from search()
            undo(start)
            if limit is not None and count >= limit:
                return

    yield from search()


def _check_cap(R: Rack, cap: int | None):
    if cap is not None and R.order > cap:
        raise SizeCap(f"rack order {R.order} exceeds the search cap {cap}")


def automorphism_group(R: Rack, cap: int | None = DEFAULT_AUT_ORDER_CAP,
                       max_count: int = 10**6) -> list[tuple[int, ...]]:
    _check_cap(R, cap)
    out = []
    for phi in isomorphisms(R, R):
        out.append(phi)
        if len(out) > max_count:
            raise ExplosionGuard(f"more than {max_count} automorphisms")
    return sorted(out)


def antiautomorphisms(R: Rack, cap: int | None = DEFAULT_AUT_ORDER_CAP,
                      iota: Sequence[int] | None = None,
                      aut: Sequence[Sequence[int]] | None = None) -> list[tuple[int, ...]]:
    """All antiautomorphisms.  With a known antiautomorphism ``iota`` they are
    ``iota * phi`` for ``phi`` in ``Aut R``; otherwise they are searched directly."""
    _check_cap(R, cap)
    if iota is not None:
        if not is_antiautomorphism(R, iota):
            raise ValueError("iota is not an antiautomorphism")
        auts = aut if aut is not None else automorphism_group(R, cap)
        return sorted(compose(iota, phi) for phi in auts)
    return sorted(isomorphisms(R, dual_rack(R)))


def are_isomorphic(R1: Rack, R2: Rack) -> bool:
    return next(isomorphisms(R1, R2), None) is not None


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------

_BRUTE_LIMIT = 50_000


def _refine(R: Rack, cells_of: list[int], extra: Sequence[Sequence[int]]) -> list[int]:
    """Equitable refinement; returns a cell index per element (cells numbered
    by sorted signature, so numbering is labeling-independent)."""
    n = R.order
    rows = R.rows
    cell = list(cells_of)
    while True:
        sigs = []
        for x in range(n):
            sigs.append((
                cell[x],
                tuple(sorted((cell[y], cell[rows[x][y]], cell[rows[y][x]]) for y in range(n))),
                tuple(cell[u[x]] for u in extra),
            ))
        order = {sig: k for k, sig in enumerate(sorted(set(sigs)))}
        new = [order[sig] for sig in sigs]
        if len(order) == len(set(cell)):
            return new
        cell = new


def _cells(cell: list[int]) -> list[list[int]]:
    k = max(cell) + 1
    out: list[list[int]] = [[] for _ in range(k)]
    for x, c in enumerate(cell):
        out[c].append(x)
    return out


def _labelings(cells: list[list[int]]) -> np.ndarray:
    Q = np.zeros((1, 0), dtype=np.int64)
    for c in cells:
        perms = np.array(list(itertools.permutations(c)), dtype=np.int64)
        Q = np.concatenate([np.repeat(Q, len(perms), axis=0),
                            np.tile(perms, (len(Q), 1))], axis=1)
    return Q


def _lexmin(R: Rack, Q: np.ndarray, extra) -> tuple[tuple[int, ...], np.ndarray]:
    n = R.order
    P = np.argsort(Q, axis=1)
    parts = [np.take_along_axis(P, R.s[Q[:, :, None], Q[:, None, :]].reshape(len(Q), -1), axis=1)]
    for u in extra:
        ua = np.asarray(u, dtype=np.int64)
        parts.append(np.take_along_axis(P, ua[Q], axis=1))
    keys = np.concatenate(parts, axis=1)
    cand = np.arange(len(Q))
    for col in range(keys.shape[1]):
        vals = keys[cand, col]
        cand = cand[vals == vals.min()]
        if len(cand) == 1:
            break
    best = cand[0]
    return tuple(int(v) for v in keys[best]), Q[best]


def _canon_search(R: Rack, cell: list[int], extra) -> tuple[tuple[int, ...], np.ndarray]:
    cells = _cells(cell)
    if math.prod(math.factorial(len(c)) for c in cells) <= _BRUTE_LIMIT:
        return _lexmin(R, _labelings(cells), extra)
    # individualize each element of the first non-singleton cell
    target = next(k for k, c in enumerate(cells) if len(c) > 1)
    best = None
    for v in cells[target]:
        split = [2 * c + (1 if c == target and x != v else 0) for x, c in enumerate(cell)]
        split = _refine(R, split, extra)
        cand = _canon_search(R, split, extra)
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def canonical_form(R: Rack, extra: Sequence[Sequence[int]] = ()):
    """Canonical table of ``R`` and the relabeling ``old -> new`` that produces it.

    Isomorphic racks get identical tables.  ``extra`` lists unary maps (for
    example a good involution or a GL-structure) that must be carried along;
    the canonical form then classifies the pair up to isomorphism.

    Returns ``(table, extras, relabeling)`` where ``table`` is an ``n x n``
    array and ``extras`` the relabeled unary maps.
    """
    n = R.order
    extra = [tuple(u) for u in extra]
    init = _local_invariants(R)
    init = [(init[x],) + tuple(len(_cycle_of(u, x)) for u in extra) for x in range(n)]
    order = {sig: k for k, sig in enumerate(sorted(set(init)))}
    cell = _refine(R, [order[sig] for sig in init], extra)
    key, q = _canon_search(R, cell, extra)
    table = np.array(key[:n * n], dtype=np.int64).reshape(n, n)
    extras = [tuple(key[n * n + k * n: n * n + (k + 1) * n]) for k in range(len(extra))]
    relabeling = tuple(int(v) for v in np.argsort(q))
    return table, extras, relabeling


def _cycle_of(u: Sequence[int], x: int) -> list[int]:
    out, y = [x], u[x]
    while y != x:
        out.append(y)
        y = u[y]
    return out


def relabel(R: Rack, p: Sequence[int], name: str | None = None) -> Rack:
    """The rack transported along the bijection ``p: old -> new``."""
    n = R.order
    q = inverse(p)
    pa, qa = np.asarray(p), np.asarray(q)
    table = pa[R.s[qa[:, None], qa[None, :]]]
    return Rack(n, table, R.name if name is None else name)


def product_rack(R1: Rack, R2: Rack) -> Rack:
    """Componentwise structure on pairs; ``(a, b)`` is element ``a * |R2| + b``."""
    n1, n2 = R1.order, R2.order
    idx = np.arange(n1 * n2)
    a, b = idx // n2, idx % n2
    table = R1.s[a[:, None], a[None, :]] * n2 + R2.s[b[:, None], b[None, :]]
    return Rack(n1 * n2, table, f"{R1.name}x{R2.name}")
