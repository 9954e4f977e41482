"""Good involutions: an exhaustive oracle, the two group-theoretic solvers,
closed forms, obstructions, bounds and symmetric-rack classification.

A good involution of a rack is an involution ``rho`` with ``rho s_x = s_x rho``
and ``s_rho(x) = s_x^-1`` for every ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .constructors import ConjSubquandleSpec, conj_subquandle, core_quandle, galkin_quandle
from .groups import (
    FiniteGroup,
    center,
    conjugacy_classes,
    subgroup_generated,
    two_torsion_center,
)
from .racks import (
    Rack,
    SizeCap,
    automorphism_group,
    compose,
    inverse,
    is_involution,
    orbit_decomposition,
)

__all__ = [
    "NotConnected",
    "GoodInvolutionSet",
    "BoundReport",
    "Obstruction",
    "CnsCertificate",
    "fiber_condition",
    "centralizer_condition",
    "anti_condition",
    "is_good_involution",
    "all_involutions",
    "involution_count",
    "good_involutions_oracle",
    "good_involutions_conj",
    "good_involutions_connected_conj",
    "conj_obstruction_check",
    "good_involutions_core",
    "galkin_good_involutions",
    "cns_check",
    "symmetric_iso_classes",
    "bound_report",
    "conj_group_bound",
    "conj_full",
]

DEFAULT_ORACLE_CAP = 30


class NotConnected(ValueError):
    pass


@dataclass(frozen=True)
class BoundReport:
    good_count: int
    aut_count: int | None
    center_size: int
    orbit_count: int
    upper_bound: int
    lower_bound: int | None = None

    def holds(self) -> bool:
        ok = self.good_count <= self.upper_bound
        if self.lower_bound is not None:
            ok = ok and self.lower_bound <= self.good_count
        if self.aut_count is not None:
            ok = ok and self.good_count <= self.aut_count
        return ok

    def to_json(self) -> dict:
        return {
            "good_count": self.good_count,
            "aut_count": self.aut_count,
            "center_size": self.center_size,
            "orbit_count": self.orbit_count,
            "upper_bound": self.upper_bound,
            "lower_bound": self.lower_bound,
        }


@dataclass(frozen=True)
class GoodInvolutionSet:
    rack: Rack
    method: str
    involutions: tuple[tuple[int, ...], ...]
    back_index: tuple[int, ...] | None = None
    bounds: BoundReport | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.involutions)

    def as_set(self) -> frozenset:
        return frozenset(self.involutions)

    def to_json(self, descriptor: str | None = None) -> dict:
        out = {
            "rack": descriptor if descriptor is not None else self.rack.name,
            "method": self.method,
            "count": len(self.involutions),
            "involutions": [list(p) for p in self.involutions],
            "bounds": self.bounds.to_json() if self.bounds else {},
        }
        if self.back_index is not None:
            out["back_index"] = list(self.back_index)
        return out


def _result(R, method, perms, back_index=None) -> GoodInvolutionSet:
    return GoodInvolutionSet(R, method, tuple(sorted(set(perms))), back_index)


# ---------------------------------------------------------------------------
# the three defining conditions, separately
# ---------------------------------------------------------------------------

def fiber_condition(R: Rack, rho: Sequence[int]) -> bool:
    """``s_rho(x)^-1 = s_x`` for all ``x``."""
    return all(R.rows[rho[x]] == R.inv_rows[x] for x in range(R.order))


def centralizer_condition(R: Rack, rho: Sequence[int]) -> bool:
    """``rho`` commutes with every ``s_x``."""
    r = np.asarray(rho)
    return bool(np.array_equal(r[R.s], R.s[:, r]))


def anti_condition(R: Rack, rho: Sequence[int]) -> bool:
    """``rho s_x = s_rho(x)^-1 rho`` for all ``x``."""
    r = np.asarray(rho)
    dual = np.asarray(R.inv_rows)
    return bool(np.array_equal(r[R.s], dual[r][:, r]))


def is_good_involution(R: Rack, rho: Sequence[int]) -> bool:
    return (sorted(rho) == list(range(R.order)) and is_involution(rho)
            and fiber_condition(R, rho) and centralizer_condition(R, rho))


# ---------------------------------------------------------------------------
# involutions of a finite set
# ---------------------------------------------------------------------------

def involution_count(n: int) -> int:
    a, b = 1, 1  # I(0), I(1)
    if n == 0:
        return 1
    for k in range(2, n + 1):
        a, b = b, b + (k - 1) * a
    return b


def all_involutions(n: int) -> list[tuple[int, ...]]:
    out = []
    perm = [-1] * n

    def rec(i):
        while i < n and perm[i] != -1:
            i += 1
        if i == n:
            out.append(tuple(perm))
            return
        perm[i] = i
        rec(i + 1)
        for j in range(i + 1, n):
            if perm[j] == -1:
                perm[i], perm[j] = j, i
                rec(i + 1)
                perm[j] = -1
        perm[i] = -1

    rec(0)
    return sorted(out)


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------

def good_involutions_oracle(R: Rack, cap: int | None = DEFAULT_ORACLE_CAP) -> GoodInvolutionSet:
    """Exhaustive search straight from the definition.

    ``rho(x)`` ranges over the fiber ``{y : s_y = s_x^-1}``; each choice forces
    ``rho(y) = x`` and ``rho(s_z(x)) = s_z(rho(x))`` for all ``z``, which are
    propagated before the next branch.  Leaves are re-verified in full.
    """
    n = R.order
    if cap is not None and n > cap:
        raise SizeCap(f"oracle limited to order {cap}, got {n}")
    rows, irows = R.rows, R.inv_rows
    row_id = {row: k for k, row in enumerate(sorted(set(rows)))}
    rid = [row_id[r] for r in rows]
    want = [row_id.get(r, -1) for r in irows]  # id of s_x^-1, if it is some s_y
    if min(want) < 0:
        return _result(R, "oracle", [])
    fibers = [[y for y in range(n) if rid[y] == want[x]] for x in range(n)]
    # commuting with s_z also means commuting with s_z^-1; repeats and the
    # identity add no constraints
    movers = sorted((set(rows) | set(irows)) - {tuple(range(n))})

    rho = [-1] * n
    trail: list[int] = []
    found = []

    def push(x, y) -> bool:
        start = len(trail)
        pending = [(x, y)]
        while pending:
            a, b = pending.pop()
            if rho[a] != -1:
                if rho[a] != b:
                    break
                continue
            if rid[b] != want[a] or rho[b] != -1:
                break
            rho[a] = b
            trail.append(a)
            if rho[b] == -1:
                rho[b] = a
                trail.append(b)
            for g in movers:
                pending.append((g[a], g[b]))
        else:
            return True
        undo(start)
        return False

    def undo(start):
        while len(trail) > start:
            rho[trail.pop()] = -1

    def search(i):
        while i < n and rho[i] != -1:
            i += 1
        if i == n:
            found.append(tuple(rho))
            return
        for y in fibers[i]:
            if rho[y] != -1:
                continue
            start = len(trail)
            if push(i, y):
                search(i + 1)
                undo(start)

    search(0)
    return _result(R, "oracle", _verified(R, found))


def _verified(R: Rack, perms: list, chunk: int = 4096) -> list:
    """Keep only the candidates that satisfy every defining condition."""
    if not perms:
        return []
    n = R.order
    s = R.s
    inv_s = np.asarray(R.inv_rows)
    idx = np.arange(n)
    keep = []
    for start in range(0, len(perms), chunk):
        P = np.asarray(perms[start:start + chunk], dtype=np.int64)
        rows = np.arange(len(P))[:, None]
        ok = np.all(P[rows, P] == idx, axis=1)
        ok &= np.all(s[P] == inv_s[None, :, :], axis=(1, 2))
        # rho(s_x(y)) == s_x(rho(y))
        lhs = P[rows[:, :, None], s[None, :, :]]
        rhs = s[idx[None, :, None], P[:, None, :]]
        ok &= np.all(lhs == rhs, axis=(1, 2))
        keep.extend(perms[start + k] for k in np.flatnonzero(ok))
    return keep


# ---------------------------------------------------------------------------
# conjugation subquandles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _ConjData:
    H: tuple[int, ...]
    ZH: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]  # in group indices
    orbit_of: dict


def _conj_data(spec: ConjSubquandleSpec) -> _ConjData:
    G = spec.group
    H = tuple(subgroup_generated(G, spec.elements))
    m = G.mul
    ZH = tuple(int(z) for z in H if all(m[z, h] == m[h, z] for h in H))
    decomposition = orbit_decomposition(spec.rack)
    orbits = tuple(tuple(spec.elements[i] for i in orb) for orb in decomposition.orbits)
    orbit_of = {g: k for k, orb in enumerate(orbits) for g in orb}
    return _ConjData(H, ZH, orbits, orbit_of)


def _assignments(k: int, options: list[dict[int, int]]) -> Iterable[dict[int, int]]:
    """Functions ``f`` on ``range(k)`` with ``f(i)`` a key of ``options[i]``
    and ``f(options[i][f(i)]) = f(i)``: the value on an orbit must agree with
    the value on its target orbit."""
    assign: dict[int, int] = {}

    def rec(i):
        while i < k and i in assign:
            i += 1
        if i == k:
            yield dict(assign)
            return
        for z, target in options[i].items():
            if target in assign:
                if assign[target] != z:
                    continue
                assign[i] = z
                yield from rec(i + 1)
                del assign[i]
            else:
                if z not in options[target]:
                    continue
                assign[i] = z
                assign[target] = z
                yield from rec(i + 1)
                del assign[i]
                if target != i:
                    del assign[target]

    yield from rec(0)


def good_involutions_conj(spec: ConjSubquandleSpec) -> GoodInvolutionSet:
    """Good involutions of a conjugation subquandle from the centre of ``<X>``.

    Every good involution is ``x -> (zeta(x) x)^-1`` for a function ``zeta``
    from the ``<X>``-orbits of ``X`` to the centre of ``<X>``.  For each orbit
    and central ``z`` the map lands in ``X`` (or not) and then lands inside a
    single orbit; the constraint ``zeta o rho = zeta`` ties that target orbit to
    the same ``z``, so assignments are built orbit pair by orbit pair.
    """
    G, X = spec.group, spec.elements
    m, inv = G.mul, G.inv
    data = _conj_data(spec)
    index = {g: i for i, g in enumerate(X)}
    options: list[dict[int, int]] = []
    for orb in data.orbits:
        opts = {}
        for z in data.ZH:
            images = [int(inv[m[z, x]]) for x in orb]
            if all(y in index for y in images):
                targets = {data.orbit_of[y] for y in images}
                assert len(targets) == 1
                opts[z] = targets.pop()
        options.append(opts)
    perms = []
    for zeta in _assignments(len(data.orbits), options):
        rho = [0] * len(X)
        for k, orb in enumerate(data.orbits):
            z = zeta[k]
            for x in orb:
                rho[index[x]] = index[int(inv[m[z, x]])]
        perms.append(tuple(rho))
    return _result(spec.rack, "alg1", perms, X)


def good_involutions_connected_conj(spec: ConjSubquandleSpec) -> GoodInvolutionSet:
    """``x -> z x^-1`` for each central ``z`` with ``z X^-1 = X``."""
    if not spec.connected:
        raise NotConnected("the subquandle has more than one orbit")
    G, X = spec.group, spec.elements
    m, inv = G.mul, G.inv
    data = _conj_data(spec)
    index = {g: i for i, g in enumerate(X)}
    perms = []
    for z in data.ZH:
        images = [int(m[z, inv[x]]) for x in X]
        if all(y in index for y in images):
            perms.append(tuple(index[y] for y in images))
    return _result(spec.rack, "connected", perms, X)


@dataclass(frozen=True)
class Obstruction:
    status: str  # "empty", "inversion" or "inconclusive"
    witness: int | None = None
    reason: str = ""


def conj_obstruction_check(spec: ConjSubquandleSpec) -> Obstruction:
    G, X = spec.group, spec.elements
    m = G.mul
    data = _conj_data(spec)
    Z = set(data.ZH)
    for x in X:
        if not any(int(m[y, x]) in Z for y in X):
            return Obstruction("empty", x, "no y in X has y x central in <X>")
    if len(Z) == 1:
        if spec.inversion_closed:
            return Obstruction("inversion", None, "<X> is centreless and X is closed under inverses")
        return Obstruction("empty", None, "<X> is centreless and X is not closed under inverses")
    return Obstruction("inconclusive")


@dataclass(frozen=True)
class CnsCertificate:
    is_cns: bool
    single_class: bool
    noncentral_square: int | None
    inversion_closed: bool

    def __bool__(self) -> bool:
        return self.is_cns


def cns_check(spec: ConjSubquandleSpec) -> CnsCertificate:
    """Whether ``(Conj X, inversion)`` is a connected noninvolutory symmetric
    quandle via the group criterion: one ``<X>``-class, some ``x^2`` outside
    the centre of ``<X>``, and ``X`` closed under inverses."""
    G, X = spec.group, spec.elements
    data = _conj_data(spec)
    Z = set(data.ZH)
    witness = next((x for x in X if int(G.mul[x, x]) not in Z), None)
    single = len(data.orbits) == 1
    return CnsCertificate(
        is_cns=single and witness is not None and spec.inversion_closed,
        single_class=single,
        noncentral_square=witness,
        inversion_closed=spec.inversion_closed,
    )


# ---------------------------------------------------------------------------
# core quandles
# ---------------------------------------------------------------------------

def good_involutions_core(G: FiniteGroup, list_limit: int = 10**6) -> GoodInvolutionSet:
    """Good involutions of ``Core G`` as ``g -> t(g) g`` with ``t`` constant on
    orbits, valued in the central elements of order at most two, and agreeing
    on an orbit and its translate."""
    R = core_quandle(G)
    if G.exponent() <= 2:
        # every s_g is the identity: all involutions are good
        if involution_count(G.order) > list_limit:
            raise SizeCap("too many involutions to list")
        return _result(R, "closed_form", all_involutions(G.order), tuple(range(G.order)))
    m = G.mul
    T = two_torsion_center(G)
    decomposition = orbit_decomposition(R)
    orbits = decomposition.orbits
    options: list[dict[int, int]] = []
    for orb in orbits:
        opts = {}
        for t in T:
            targets = {decomposition.orbit_of[int(m[t, g])] for g in orb}
            assert len(targets) == 1
            opts[int(t)] = targets.pop()
        options.append(opts)
    perms = []
    for alpha in _assignments(len(orbits), options):
        rho = [0] * G.order
        for k, orb in enumerate(orbits):
            for g in orb:
                rho[g] = int(m[alpha[k], g])
        perms.append(tuple(rho))
    return _result(R, "alg2", perms, tuple(range(G.order)))


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def galkin_good_involutions(A: FiniteGroup, c: int) -> GoodInvolutionSet:
    """``{(x, a) -> (x, a + c)}`` when ``2c = 0``, otherwise nothing."""
    R = galkin_quandle(A, c)
    k = A.order
    if int(A.mul[c, c]) != A.identity:
        return _result(R, "closed_form", [])
    rho = tuple((i // k) * k + int(A.mul[i % k, c]) for i in range(R.order))
    return _result(R, "closed_form", [rho])


# ---------------------------------------------------------------------------
# classification and bounds
# ---------------------------------------------------------------------------

def symmetric_iso_classes(R: Rack, goods: Iterable[Sequence[int]],
                          aut: Sequence[Sequence[int]] | None = None,
                          cap: int | None = None):
    """Orbits of ``Aut R`` acting on good involutions by conjugation.

    Returns ``(count, representatives)``; the representative of each orbit is
    its smallest member.
    """
    goods = sorted(set(tuple(g) for g in goods))
    if not goods:
        return 0, []
    if aut is None:
        aut = automorphism_group(R, cap=cap)
    remaining = set(goods)
    reps = []
    for rho in goods:
        if rho not in remaining:
            continue
        reps.append(rho)
        for phi in aut:
            remaining.discard(compose(compose(phi, rho), inverse(phi)))
    return len(reps), reps


def bound_report(source, goods: GoodInvolutionSet | None = None,
                 aut_cap: int | None = 16) -> BoundReport:
    """Bounds for a conjugation subquandle spec or, given a group, its core."""
    if isinstance(source, ConjSubquandleSpec):
        data = _conj_data(source)
        goods = goods if goods is not None else good_involutions_conj(source)
        R = source.rack
        upper = len(data.ZH) ** len(data.orbits)
        zsize, k, lower = len(data.ZH), len(data.orbits), None
    elif isinstance(source, FiniteGroup):
        goods = goods if goods is not None else good_involutions_core(source)
        R = goods.rack
        T = two_torsion_center(source)
        k = len(orbit_decomposition(R).orbits)
        zsize = len(T)
        upper, lower = len(T) ** k, len(T)
        if source.exponent() <= 2:
            upper = lower = involution_count(source.order)
    else:
        raise TypeError("expected a ConjSubquandleSpec or a FiniteGroup")
    aut_count = None
    if aut_cap is None or R.order <= aut_cap:
        aut_count = len(automorphism_group(R, cap=None))
    report = BoundReport(len(goods), aut_count, zsize, k, upper, lower)
    assert report.holds(), report
    return report


def conj_group_bound(G: FiniteGroup) -> int:
    """``|Z(G)|`` to the number of conjugacy classes."""
    return len(center(G)) ** len(conjugacy_classes(G))


def conj_full(G: FiniteGroup) -> ConjSubquandleSpec:
    return conj_subquandle(G, range(G.order))
