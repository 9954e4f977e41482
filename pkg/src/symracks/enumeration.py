"""Isomorph-free generation of small racks, quandles and kei, the symmetric and
Legendrian censuses built on it, and conjugacy class sizes of symmetric groups.

Quandles are generated directly.  Racks are obtained from quandles: for a rack
with kink map ``theta`` the maps ``q_x = theta^-1 s_x`` form a quandle on which
``theta`` is a GL-structure, and conversely ``s_x = u q_x`` is a rack for any
GL-structure ``u`` of a quandle.  Isomorphism classes of racks therefore
correspond to pairs (quandle, GL-structure up to conjugation by the quandle's
automorphisms).  A direct rack search is kept as an independent check.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import logging
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np

from .good import good_involutions_oracle, symmetric_iso_classes
from .legendrian import centralizing_maps, conjugation_orbits, legendrian_structures
from .racks import (
    Rack,
    SizeCap,
    automorphism_group,
    canonical_form,
    classify_rack,
    compose,
    cycle_type,
    inverse,
    is_involution,
)

__all__ = [
    "InvalidN",
    "KINDS",
    "SYMMETRIC_KINDS",
    "LEGENDRIAN_KINDS",
    "DEFAULT_MAX_ORDER",
    "enumerate_racks",
    "enumerate_racks_direct",
    "enumerate_racks_naive",
    "census_symmetric",
    "census_legendrian",
    "census_rows",
    "census_csv",
    "sn_class_sizes",
    "sn_class_sizes_explicit",
]

log = logging.getLogger(__name__)

KINDS = ("rack", "quandle", "kei")
SYMMETRIC_KINDS = KINDS
LEGENDRIAN_KINDS = ("rack", "medial_rack", "quandle", "medial_quandle", "kei", "medial_kei")
DEFAULT_MAX_ORDER = 6
OPT_IN_MAX_ORDER = 8


class InvalidN(ValueError):
    pass


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

def _check_order(n: int, opt_in: bool) -> None:
    if n < 1:
        raise InvalidN("orders start at 1")
    limit = OPT_IN_MAX_ORDER if opt_in else DEFAULT_MAX_ORDER
    if n > limit:
        hint = "" if opt_in or n > OPT_IN_MAX_ORDER else " (orders 7 and 8 need opt_in=True)"
        raise SizeCap(f"enumeration of order {n} exceeds the cap {limit}{hint}")


def _partitions(n: int) -> list[tuple[int, ...]]:
    out = []

    def rec(rest, largest, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for k in range(min(rest, largest), 0, -1):
            rec(rest - k, k, acc + [k])

    rec(n, n, [])
    return out


def _standard_perm(points: Sequence[int], lengths: Sequence[int], n: int) -> tuple[int, ...]:
    """Identity off ``points``; on ``points`` consecutive cycles of the given lengths."""
    p = list(range(n))
    i = 0
    for k in lengths:
        block = points[i:i + k]
        for j, a in enumerate(block):
            p[a] = block[(j + 1) % k]
        i += k
    return tuple(p)


def _row_key(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(cycle_type(p), reverse=True))


def _first_rows(n: int, kind: str) -> list[tuple[int, ...]]:
    """Row 0 up to relabeling: one standard permutation per conjugacy type
    (and, for racks, per length of the cycle through 0)."""
    rows = []
    if kind in ("quandle", "kei"):
        for lam in _partitions(n - 1) if n > 1 else [()]:
            if kind == "kei" and any(k > 2 for k in lam):
                continue
            rows.append(_standard_perm(list(range(1, n)), lam, n))
    else:
        for lam in _partitions(n):
            for L in sorted(set(lam)):
                rest = list(lam)
                rest.remove(L)
                rows.append(_standard_perm(list(range(n)), [L] + rest, n))
    return rows


def _candidates(n: int, kind: str) -> list[list[tuple[int, ...]]]:
    perms = list(itertools.permutations(range(n)))
    if kind == "rack":
        return [perms] * n
    out = []
    for x in range(n):
        c = [p for p in perms if p[x] == x]
        if kind == "kei":
            c = [p for p in c if is_involution(p)]
        out.append(c)
    return out


def _search_partition(n: int, kind: str, first: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    """All labeled tables of the given kind with ``s_0 = first`` in which no row
    has a larger cycle type than row 0."""
    cands = _candidates(n, kind)
    allowed = [set(c) for c in cands]
    top = _row_key(first)
    rows: list = [None] * n
    trail: list[int] = []
    out = []

    def set_row(x, p) -> bool:
        start = len(trail)
        pending = [(x, p)]
        while pending:
            a, pa = pending.pop()
            if rows[a] is not None:
                if rows[a] != pa:
                    break
                continue
            if pa not in allowed[a] or _row_key(pa) > top:
                break
            rows[a] = pa
            trail.append(a)
            inv_a = inverse(pa)
            for b in trail:
                pb = rows[b]
                # s_{s_a(b)} = s_a s_b s_a^-1 and s_{s_b(a)} = s_b s_a s_b^-1
                pending.append((pa[b], compose(compose(pa, pb), inv_a)))
                if b != a:
                    pending.append((pb[a], compose(compose(pb, pa), inverse(pb))))
        else:
            return True
        while len(trail) > start:
            rows[trail.pop()] = None
        return False

    def search():
        x = next((i for i in range(n) if rows[i] is None), None)
        if x is None:
            out.append(tuple(rows))
            return
        for p in cands[x]:
            start = len(trail)
            if set_row(x, p):
                search()
                while len(trail) > start:
                    rows[trail.pop()] = None

    if set_row(0, first):
        search()
    return out


def _canonical_key(R: Rack) -> tuple[int, ...]:
    table, _, _ = canonical_form(R)
    return tuple(int(v) for v in table.ravel())


def _partition_job(args) -> list[list[int]]:
    n, kind, first = args
    keys = set()
    for rows in _search_partition(n, kind, first):
        keys.add(_canonical_key(Rack(n, np.array(rows, dtype=np.int64))))
    return [list(k) for k in sorted(keys)]


def _run_partitions(n: int, kind: str, workers: int, cache_dir: str | None,
                    progress: Callable[[str], None] | None) -> set[tuple[int, ...]]:
    firsts = _first_rows(n, kind)
    jobs = list(enumerate(firsts))
    results: dict[int, list] = {}
    paths = {}
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        for k, first in jobs:
            path = os.path.join(cache_dir, f"gen-{kind}-n{n}-part{k:03d}.json")
            paths[k] = path
            if os.path.exists(path):
                with open(path) as fh:
                    data = json.load(fh)
                if data.get("first") == list(first):
                    results[k] = data["keys"]
    todo = [(k, first) for k, first in jobs if k not in results]

    def done(k, keys):
        results[k] = keys
        if cache_dir:
            tmp = paths[k] + ".tmp"
            with open(tmp, "w") as fh:
                json.dump({"first": list(firsts[k]), "keys": keys}, fh)
            os.replace(tmp, paths[k])
        if progress:
            progress(f"order {n} {kind}: partition {len(results)}/{len(jobs)} done")

    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {k: pool.submit(_partition_job, (n, kind, first)) for k, first in todo}
            for k, fut in futures.items():
                done(k, fut.result())
    else:
        for k, first in todo:
            done(k, _partition_job((n, kind, first)))
    keys = set()
    for k in range(len(jobs)):
        keys.update(tuple(v) for v in results[k])
    return keys


def _racks_from_keys(n: int, keys: Iterable[tuple[int, ...]], name: str) -> list[Rack]:
    out = []
    for i, key in enumerate(sorted(keys)):
        out.append(Rack(n, np.array(key, dtype=np.int64).reshape(n, n), f"{name}{n}_{i + 1}"))
    return out


def _enumerate_quandles(n: int, kind: str, workers: int, cache_dir, progress) -> list[Rack]:
    return _racks_from_keys(n, _run_partitions(n, kind, workers, cache_dir, progress),
                            "K" if kind == "kei" else "Q")


def _lift(Q: Rack) -> list[Rack]:
    """Racks whose associated quandle is ``Q``, one per isomorphism class."""
    aut = automorphism_group(Q, cap=None)
    out = []
    for u in conjugation_orbits(centralizing_maps(Q), aut):
        ua = np.asarray(u, dtype=np.int64)
        out.append(Rack(Q.order, ua[Q.s]))
    return out


def enumerate_racks(n: int, kind: str = "rack", *, opt_in: bool = False, workers: int = 1,
                    cache_dir: str | None = None,
                    progress: Callable[[str], None] | None = None) -> list[Rack]:
    """One canonical representative per isomorphism class, sorted by table.

    Orders above 6 need ``opt_in=True``.  ``cache_dir`` makes long runs
    resumable (one file per partition of the search); ``workers`` spreads the
    partitions over processes.  The output does not depend on either.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    _check_order(n, opt_in)
    if kind in ("quandle", "kei"):
        return _enumerate_quandles(n, kind, workers, cache_dir, progress)
    keys = set()
    for Q in _enumerate_quandles(n, "quandle", workers, cache_dir, progress):
        for R in _lift(Q):
            key = _canonical_key(R)
            assert key not in keys, "distinct lifts must not be isomorphic"
            keys.add(key)
    return _racks_from_keys(n, keys, "R")


def enumerate_racks_direct(n: int, kind: str = "rack") -> list[Rack]:
    """Same result as :func:`enumerate_racks`, by searching rack tables directly."""
    _check_order(n, opt_in=False)
    keys = set()
    for first in _first_rows(n, kind):
        for rows in _search_partition(n, kind, first):
            keys.add(_canonical_key(Rack(n, np.array(rows, dtype=np.int64))))
    return _racks_from_keys(n, keys, "D")


def enumerate_racks_naive(n: int) -> list[np.ndarray]:
    """Every labeled rack table of order ``n`` by brute force over all row
    tuples (feasible for ``n <= 4``)."""
    if n > 4:
        raise SizeCap("naive enumeration is limited to order 4")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    m = len(perms)
    idx = np.arange(n)
    out = []
    for combo in itertools.product(range(m), repeat=n - 1):
        # the first row varies fastest inside a vectorized block
        T = np.empty((m, n, n), dtype=np.int64)
        T[:, 0, :] = perms
        for j, c in enumerate(combo):
            T[:, j + 1, :] = perms[c]
        k = np.arange(m)[:, None, None, None]
        lhs = T[k, idx[None, :, None, None], T[k, idx[None, None, :, None], idx[None, None, None, :]]]
        sxy = T[k, idx[None, :, None, None], idx[None, None, :, None]]
        sxz = T[k, idx[None, :, None, None], idx[None, None, None, :]]
        rhs = T[k, sxy, sxz]
        ok = np.all((lhs == rhs).reshape(m, -1), axis=1)
        out.extend(T[ok])
    return out


# ---------------------------------------------------------------------------
# censuses
# ---------------------------------------------------------------------------

def _kind_filter(kind: str) -> Callable[[Rack], bool]:
    base = kind.replace("medial_", "")
    medial = kind.startswith("medial_")

    def keep(R: Rack) -> bool:
        f = classify_rack(R)
        if medial and not f.is_medial:
            return False
        if base == "quandle":
            return f.is_quandle
        if base == "kei":
            return f.is_kei
        return True

    return keep


def _representatives(n: int, base: str, racks: Sequence[Rack] | None, **kw) -> list[Rack]:
    if racks is not None:
        return list(racks)
    return enumerate_racks(n, base, **kw)


def census_symmetric(n: int, kind: str = "rack", racks: Sequence[Rack] | None = None,
                     **kw) -> int:
    """Number of symmetric racks ``(R, rho)`` of order ``n`` up to isomorphism,
    with ``R`` of the given kind.  Order 0 counts the empty rack."""
    if kind not in SYMMETRIC_KINDS:
        raise ValueError(f"kind must be one of {SYMMETRIC_KINDS}")
    if n == 0:
        return 1
    keep = _kind_filter(kind)
    total = 0
    for R in _representatives(n, kind, racks, **kw):
        if not keep(R):
            continue
        goods = good_involutions_oracle(R, cap=None).involutions
        if goods:
            total += symmetric_iso_classes(R, goods, automorphism_group(R, cap=None))[0]
    return total


def census_legendrian(n: int, kind: str = "rack", racks: Sequence[Rack] | None = None,
                      **kw) -> int:
    """Number of Legendrian racks of order ``n`` up to GL-isomorphism whose
    underlying rack is of the given kind (``medial_*`` adds mediality)."""
    if kind not in LEGENDRIAN_KINDS:
        raise ValueError(f"kind must be one of {LEGENDRIAN_KINDS}")
    if n == 0:
        return 1
    keep = _kind_filter(kind)
    base = kind.replace("medial_", "")
    total = 0
    for R in _representatives(n, base, racks, **kw):
        if not keep(R):
            continue
        structures = legendrian_structures(R)
        if structures:
            total += len(conjugation_orbits(structures, automorphism_group(R, cap=None)))
    return total


def census_rows(max_order: int, table: str = "symmetric", **kw) -> list[dict]:
    """Rows ``{"order", "kind", "count"}`` for orders ``0..max_order``.

    Rack representatives of each order are generated once and reused for
    every kind.
    """
    kinds = SYMMETRIC_KINDS if table == "symmetric" else LEGENDRIAN_KINDS
    fn = census_symmetric if table == "symmetric" else census_legendrian
    rows = []
    for n in range(0, max_order + 1):
        racks = enumerate_racks(n, "rack", **kw) if n else None
        for kind in kinds:
            rows.append({"order": n, "kind": kind, "count": fn(n, kind, racks=racks)})
    return rows


def census_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["order", "kind", "count"], lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# conjugacy class sizes in symmetric groups
# ---------------------------------------------------------------------------

def _centralizer_order(lam: Sequence[int]) -> int:
    counts = Counter(lam)
    return math.prod(k ** m * math.factorial(m) for k, m in counts.items())


def sn_class_sizes(n: int, max_n: int = 9) -> list[int]:
    """Sizes of the classes of ``S_n`` whose elements have order above 2 and
    that either consist of odd permutations or stay a single class in ``A_n``.

    Centralizer orders come from the cycle type: ``prod k^m_k m_k!`` in
    ``S_n``, halved in ``A_n`` unless the cycle lengths are odd and distinct.
    """
    if not isinstance(n, int) or isinstance(n, bool) or not 5 <= n <= max_n:
        raise InvalidN(f"n must be an integer in 5..{max_n}")
    sizes = set()
    for lam in _partitions(n):
        if math.lcm(*lam) <= 2:
            continue
        c_sn = _centralizer_order(lam)
        odd = (n - len(lam)) % 2 == 1
        splits = all(k % 2 for k in lam) and len(set(lam)) == len(lam)
        c_an = c_sn if splits else c_sn // 2
        if odd or c_sn == 2 * c_an:
            sizes.add(math.factorial(n) // c_sn)
    return sorted(sizes)


def sn_class_sizes_explicit(n: int) -> list[int]:
    """The same selection computed from explicit permutations (``n <= 7``)."""
    if not 1 <= n <= 7:
        raise InvalidN("explicit computation is limited to n <= 7")
    P = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    Pinv = np.argsort(P, axis=1)
    parity = np.array([(n - len(cycle_type(p))) % 2 for p in P])
    even = P[parity == 0]
    even_inv = Pinv[parity == 0]
    seen = np.zeros(len(P), dtype=bool)
    index = {tuple(p): i for i, p in enumerate(P.tolist())}
    sizes = set()
    for i, sigma in enumerate(P):
        if seen[i]:
            continue
        # p sigma p^-1 as arrays
        cls = np.unique(np.take_along_axis(P, sigma[Pinv], axis=1), axis=0)
        for row in cls.tolist():
            seen[index[tuple(row)]] = True
        order = math.lcm(*cycle_type(sigma.tolist()))
        if order <= 2:
            continue
        if parity[i] == 1:
            sizes.add(len(cls))
            continue
        an_orbit = np.unique(np.take_along_axis(even, sigma[even_inv], axis=1), axis=0)
        if len(an_orbit) == len(cls):  # does not split
            sizes.add(len(cls))
    return sorted(sizes)
