"""Finite groups stored as dense multiplication tables.

Elements are the integers ``0..order-1``.  Every named family below fixes an
element ordering so that tables, racks built from them, and any serialized
output are reproducible:

* ``Z{n}``          -- residue ``k`` is element ``k``.
* ``GxH``           -- pair ``(g, h)`` is element ``g * |H| + h``.
* ``D{n}``          -- ``r^k`` is ``k`` and ``s r^k`` is ``n + k`` (order ``2n``).
* ``Dic{n}``        -- ``a^k`` is ``k`` and ``x a^k`` is ``2n + k`` (order ``4n``).
* ``S{n}``, ``A{n}`` -- permutations of ``range(n)`` in lexicographic order,
  composed right-to-left, ``(p*q)(i) = p(q(i))``.
* ``N:C``           -- semidirect product with ``C`` cyclic; ``(m, c)`` is
  element ``m * |C| + c`` and ``(m1, c1)(m2, c2) = (m1 * a^c1(m2), c1 + c2)``.
* ``SL(2,q)``       -- matrices ``[[a, b], [c, d]]`` over ``Z/q`` in
  lexicographic order of ``(a, b, c, d)``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "GroupAxiomError",
    "NotAssociative",
    "NoIdentity",
    "NoInverse",
    "UnsupportedFamily",
    "InvalidParameter",
    "FiniteGroup",
    "GroupEmbedding",
    "group_from_table",
    "cyclic_group",
    "direct_product",
    "semidirect_product",
    "dihedral_group",
    "dicyclic_group",
    "symmetric_group",
    "alternating_group",
    "special_linear_group",
    "make_named_group",
    "small_groups",
    "center",
    "two_torsion_center",
    "conjugacy_classes",
    "subgroup_generated",
    "swap_wreath_extension",
    "core_center_subgroup_A",
]


class GroupAxiomError(ValueError):
    pass


class NotAssociative(GroupAxiomError):
    def __init__(self, a: int, b: int, c: int):
        super().__init__(f"(a*b)*c != a*(b*c) for a={a}, b={b}, c={c}")
        self.triple = (a, b, c)


class NoIdentity(GroupAxiomError):
    def __init__(self):
        super().__init__("table has no two-sided identity")


class NoInverse(GroupAxiomError):
    def __init__(self, element: int):
        super().__init__(f"element {element} has no two-sided inverse")
        self.element = element


class UnsupportedFamily(ValueError):
    pass


class InvalidParameter(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group with elements ``0..order-1``."""

    order: int
    mul: np.ndarray
    identity: int
    inv: np.ndarray
    name: str = ""
    labels: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.mul, other.mul)

    def __hash__(self) -> int:
        return hash(self.mul.tobytes())

    def m(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = int(self.inv[a]), -k
        result = self.identity
        for _ in range(k):
            result = int(self.mul[result, a])
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.mul[x, a])
            k += 1
        return k

    def exponent(self) -> int:
        return math.lcm(*(self.element_order(a) for a in range(self.order)))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def label(self, a: int) -> str:
        if self.labels is not None:
            return str(self.labels[a])
        return str(a)

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "mul": self.mul.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        g = group_from_table(int(data["order"]), data["mul"])
        return g.renamed(data.get("name", ""))

    def renamed(self, name: str) -> "FiniteGroup":
        return FiniteGroup(self.order, self.mul, self.identity, self.inv, name, self.labels)


@dataclass(frozen=True, eq=False)
class GroupEmbedding:
    """An injective map between the element sets of two groups."""

    source: FiniteGroup
    target: FiniteGroup
    map: np.ndarray

    def __post_init__(self):
        if len(set(self.map.tolist())) != self.source.order:
            raise ValueError("embedding map is not injective")

    def __call__(self, a: int) -> int:
        return int(self.map[a])

    def is_homomorphism(self) -> bool:
        lhs = self.map[self.source.mul]
        rhs = self.target.mul[self.map[:, None], self.map[None, :]]
        return bool(np.array_equal(lhs, rhs))


def _as_table(order: int, mul) -> np.ndarray:
    table = np.asarray(mul, dtype=np.int64)
    if table.shape != (order, order):
        raise GroupAxiomError(f"table must be {order}x{order}, got shape {table.shape}")
    if order and (table.min() < 0 or table.max() >= order):
        raise GroupAxiomError("table entries out of range")
    return table


def _check_associative(table: np.ndarray, chunk: int = 64) -> None:
    n = table.shape[0]
    for start in range(0, n, chunk):
        a = np.arange(start, min(n, start + chunk))
        lhs = table[table[a][:, :, None], np.arange(n)[None, None, :]]
        rhs = table[a[:, None, None], table[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, b, c = bad[0]
            raise NotAssociative(int(a[i]), int(b), int(c))


def group_from_table(order: int, mul, name: str = "", check: bool = True,
                     labels: Sequence | None = None) -> FiniteGroup:
    """Validate a multiplication table and locate identity and inverses.

    ``check=False`` skips the associativity scan; use it only for tables built
    from already-validated groups.
    """
    if order < 1:
        raise GroupAxiomError("a group needs at least one element")
    table = _as_table(order, mul)
    idx = np.arange(order)
    identity = None
    for e in range(order):
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            identity = e
            break
    if identity is None:
        raise NoIdentity()
    inv = np.full(order, -1, dtype=np.int64)
    for a in range(order):
        hits = np.flatnonzero(table[a] == identity)
        if len(hits) != 1 or table[hits[0], a] != identity:
            raise NoInverse(a)
        inv[a] = hits[0]
    if check:
        _check_associative(table)
    return FiniteGroup(order, table, identity, inv, name,
                       tuple(labels) if labels is not None else None)


def _from_elements(elements: Sequence, op: Callable, name: str, labels=None) -> FiniteGroup:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[op(a, b)]
    return group_from_table(n, table, name, check=False, labels=labels)


# ---------------------------------------------------------------------------
# named families
# ---------------------------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter(f"Z{n}: order must be positive")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return group_from_table(n, table, f"Z{n}", check=False)


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    n, m = g.order, h.order
    a = np.arange(n * m)
    ga, ha = a // m, a % m
    table = g.mul[ga[:, None], ga[None, :]] * m + h.mul[ha[:, None], ha[None, :]]
    return group_from_table(n * m, table, name or f"{g.name}x{h.name}", check=False)


def semidirect_product(normal: FiniteGroup, m: int, action: Sequence[int],
                       name: str) -> FiniteGroup:
    """``normal : Z/m`` where the generator of ``Z/m`` acts by the automorphism
    ``action`` (a permutation of the elements of ``normal``)."""
    alpha = np.asarray(action, dtype=np.int64)
    if not np.array_equal(alpha[normal.mul], normal.mul[alpha[:, None], alpha[None, :]]):
        raise InvalidParameter(f"{name}: action is not an automorphism")
    powers = [np.arange(normal.order)]
    for _ in range(1, m):
        powers.append(alpha[powers[-1]])
    if not np.array_equal(alpha[powers[-1]], powers[0]):
        raise InvalidParameter(f"{name}: action order does not divide {m}")
    n = normal.order
    table = np.empty((n * m, n * m), dtype=np.int64)
    for x in range(n * m):
        n1, c1 = divmod(x, m)
        row_n = normal.mul[n1, powers[c1]]
        for c2 in range(m):
            table[x, np.arange(n) * m + c2] = row_n * m + (c1 + c2) % m
    return group_from_table(n * m, table, name, check=False)


def dihedral_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter(f"D{n}: n must be positive")

    def op(a, b):
        (f1, i), (f2, j) = a, b
        return ((f1 + f2) % 2, ((-i if f2 else i) + j) % n)

    elements = [(0, k) for k in range(n)] + [(1, k) for k in range(n)]
    labels = [f"r^{k}" for k in range(n)] + [f"sr^{k}" for k in range(n)]
    return _from_elements(elements, op, f"D{n}", labels)


def dicyclic_group(n: int) -> FiniteGroup:
    if n < 2:
        raise InvalidParameter(f"Dic{n}: n must be at least 2")
    m = 2 * n

    def op(a, b):
        (e, i), (f, j) = a, b
        k = ((-i if f else i) + j) % m
        if e and f:
            return (0, (k + n) % m)
        return ((e + f) % 2, k)

    elements = [(0, k) for k in range(m)] + [(1, k) for k in range(m)]
    labels = [f"a^{k}" for k in range(m)] + [f"xa^{k}" for k in range(m)]
    return _from_elements(elements, op, f"Dic{n}", labels)


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter(f"S{n}: n must be positive")
    elements = list(itertools.permutations(range(n)))
    return _from_elements(elements, lambda p, q: tuple(p[i] for i in q), f"S{n}",
                          elements)


def _is_even(p: Sequence[int]) -> bool:
    seen, parity = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity == 0


def alternating_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidParameter(f"A{n}: n must be positive")
    elements = [p for p in itertools.permutations(range(n)) if _is_even(p)]
    return _from_elements(elements, lambda p, q: tuple(p[i] for i in q), f"A{n}",
                          elements)


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, math.isqrt(q) + 1))


def special_linear_group(q: int) -> FiniteGroup:
    if not _is_prime(q):
        raise InvalidParameter(f"SL(2,{q}): only prime fields are supported")
    elements = [m for m in itertools.product(range(q), repeat=4)
                if (m[0] * m[3] - m[1] * m[2]) % q == 1]

    def op(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % q, (a * f + b * h) % q,
                (c * e + d * g) % q, (c * f + d * h) % q)

    return _from_elements(elements, op, f"SL(2,{q})", elements)


def _mult_action(group: FiniteGroup, k: int) -> list[int]:
    """``x -> x^k`` on a cyclic group stored additively."""
    return [(k * x) % group.order for x in range(group.order)]


def _special(name: str) -> FiniteGroup | None:
    z = cyclic_group
    if name == "Q8":
        return dicyclic_group(2).renamed("Q8")
    if name == "QD16":
        return semidirect_product(z(8), 2, _mult_action(z(8), 3), "QD16")
    if name == "M16":
        return semidirect_product(z(8), 2, _mult_action(z(8), 5), "M16")
    if name == "Z4:Z4":
        return semidirect_product(z(4), 4, _mult_action(z(4), -1), "Z4:Z4")
    if name == "(Z2xZ2):Z4":
        v = direct_product(z(2), z(2))
        # swap the two Z2 coordinates
        return semidirect_product(v, 4, [2 * (x % 2) + x // 2 for x in range(4)],
                                  "(Z2xZ2):Z4")
    if name == "(Z4xZ2):Z2":
        v = direct_product(z(4), z(2))
        # (a, b) -> (a + 2b, b): the central product of Z4 and D4
        act = [((x // 2 + 2 * (x % 2)) % 4) * 2 + x % 2 for x in range(8)]
        return semidirect_product(v, 2, act, "(Z4xZ2):Z2")
    if name == "(Z3xZ3):Z2":
        v = direct_product(z(3), z(3))
        return semidirect_product(v, 2, [int(i) for i in v.inv], "(Z3xZ3):Z2")
    if name == "Z5:Z4":
        return semidirect_product(z(5), 4, _mult_action(z(5), 2), "Z5:Z4")
    if name == "Z7:Z3":
        return semidirect_product(z(7), 3, _mult_action(z(7), 2), "Z7:Z3")
    return None


_FAMILY = re.compile(r"^(Z|D|Dic|S|A)(\d+)$")
_SL = re.compile(r"^SL\(2,(\d+)\)$")


def _split_top(name: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in name:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return parts


def make_named_group(spec: str) -> FiniteGroup:
    """Build a group from a descriptor such as ``"D4"``, ``"Z4xZ2"``,
    ``"Dic3"``, ``"Q8xZ2"``, ``"Z5:Z4"`` or ``"SL(2,5)"``."""
    name = spec.replace(" ", "")
    special = _special(name)
    if special is not None:
        return special
    parts = _split_top(name, "x")
    if len(parts) > 1:
        if any(not p for p in parts):
            raise UnsupportedFamily(f"cannot parse group descriptor {spec!r}")
        group = make_named_group(parts[0])
        for p in parts[1:]:
            group = direct_product(group, make_named_group(p))
        return group.renamed(name)
    m = _SL.match(name)
    if m:
        return special_linear_group(int(m.group(1)))
    m = _FAMILY.match(name)
    if not m:
        raise UnsupportedFamily(f"unsupported group family {spec!r}")
    family, n = m.group(1), int(m.group(2))
    builders = {"Z": cyclic_group, "D": dihedral_group, "Dic": dicyclic_group,
                "S": symmetric_group, "A": alternating_group}
    if family == "D" and n < 1 or family in ("S", "A") and n < 1:
        raise InvalidParameter(f"{spec}: invalid parameter")
    return builders[family](n)


# Groups of order <= 23, each order listed in the standard small-group order.
_SMALL_GROUPS = {
    1: ["Z1"],
    2: ["Z2"],
    3: ["Z3"],
    4: ["Z4", "Z2xZ2"],
    5: ["Z5"],
    6: ["S3", "Z6"],
    7: ["Z7"],
    8: ["Z8", "Z4xZ2", "D4", "Q8", "Z2xZ2xZ2"],
    9: ["Z9", "Z3xZ3"],
    10: ["D5", "Z10"],
    11: ["Z11"],
    12: ["Dic3", "Z12", "A4", "D6", "Z6xZ2"],
    13: ["Z13"],
    14: ["D7", "Z14"],
    15: ["Z15"],
    16: ["Z16", "Z4xZ4", "(Z2xZ2):Z4", "Z4:Z4", "Z8xZ2", "M16", "D8", "QD16", "Dic4",
         "Z4xZ2xZ2", "D4xZ2", "Q8xZ2", "(Z4xZ2):Z2", "Z2xZ2xZ2xZ2"],
    17: ["Z17"],
    18: ["D9", "Z18", "S3xZ3", "(Z3xZ3):Z2", "Z6xZ3"],
    19: ["Z19"],
    20: ["Dic5", "Z20", "Z5:Z4", "D10", "Z10xZ2"],
    21: ["Z7:Z3", "Z21"],
    22: ["D11", "Z22"],
    23: ["Z23"],
}


def small_groups(max_order: int, min_order: int = 1) -> list[str]:
    """Names of all groups of order in ``[min_order, max_order]`` (up to 23)."""
    if max_order > max(_SMALL_GROUPS):
        raise InvalidParameter(f"small-group catalogue stops at order {max(_SMALL_GROUPS)}")
    return [name for order in range(min_order, max_order + 1)
            for name in _SMALL_GROUPS.get(order, [])]


# ---------------------------------------------------------------------------
# structural queries
# ---------------------------------------------------------------------------

def center(G: FiniteGroup) -> tuple[int, ...]:
    commutes = (G.mul == G.mul.T).all(axis=1)
    return tuple(int(z) for z in np.flatnonzero(commutes))


def two_torsion_center(G: FiniteGroup) -> tuple[int, ...]:
    return tuple(z for z in center(G) if G.mul[z, z] == G.identity)


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Conjugacy classes, each sorted; the identity class comes first and the
    rest are ordered by their smallest element."""
    # conj[h, g] = h g h^-1
    conj = G.mul[G.mul, G.inv[:, None]]
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for a in [G.identity] + [x for x in range(G.order) if x != G.identity]:
        if seen[a]:
            continue
        members = np.unique(conj[:, a])
        seen[members] = True
        classes.append(tuple(int(x) for x in members))
    return classes


def subgroup_generated(G: FiniteGroup, S: Iterable[int]) -> tuple[int, ...]:
    gens = sorted(set(int(s) for s in S))
    if not gens:
        raise ValueError("generating set must be nonempty")
    members = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = int(G.mul[a, g])
                if b not in members:
                    members.add(b)
                    nxt.append(b)
        frontier = nxt
    return tuple(sorted(members))


def swap_wreath_extension(G: FiniteGroup) -> tuple[FiniteGroup, GroupEmbedding]:
    """``K = (G x G) : Z/2`` with ``Z/2`` swapping the coordinates, and the map
    ``g -> (g, g^-1, 1)``.

    ``(a, b, i)`` is element ``i * n^2 + a * n + b``.  The map is a quandle
    embedding of the core quandle of ``G`` into the conjugation quandle of
    ``K``; it is not a group homomorphism.
    """
    n = G.order
    idx = np.arange(2 * n * n)
    i, a, b = idx // (n * n), (idx // n) % n, idx % n
    # (a, b, i)(c, d, j) = (a c', b d', i + j) with (c', d') = swap^i (c, d)
    # row index = left factor; swap applies to the right factor when left i == 1
    c = np.where(i[:, None] == 0, a[None, :], b[None, :])
    d = np.where(i[:, None] == 0, b[None, :], a[None, :])
    first = G.mul[a[:, None], c]
    second = G.mul[b[:, None], d]
    table = ((i[:, None] + i[None, :]) % 2) * n * n + first * n + second
    K = group_from_table(2 * n * n, table, f"({G.name}x{G.name}):Z2", check=False)
    phi = np.array([n * n + g * n + int(G.inv[g]) for g in range(n)], dtype=np.int64)
    return K, GroupEmbedding(G, K, phi)


def core_center_subgroup_A(G: FiniteGroup) -> tuple[int, ...]:
    """Central elements ``a`` with ``(a, a, 0)`` in the subgroup of ``K``
    generated by the image of ``g -> (g, g^-1, 1)``."""
    K, phi = swap_wreath_extension(G)
    H = set(subgroup_generated(K, phi.map.tolist()))
    n = G.order
    return tuple(a for a in center(G) if a * n + a in H)
