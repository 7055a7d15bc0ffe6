"""Exhaustive catalogs of small algebras per class.

Finite distributive lattices are enumerated through Birkhoff duality: grow
posets of join-irreducibles (up to isomorphism) by repeatedly attaching a new
maximal element above a downset, pruning once the downset count exceeds the
requested lattice size, then take downset lattices.  Distinct posets give
non-isomorphic lattices, so no lattice-level deduplication is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce

from .algebra import (
    FiniteAlgebra,
    VarietyClass,
    canonical_form,
    derive_operations,
    derived_box_hdp,
    serial_key,
    validate,
)
from .errors import TheoremViolation

MAX_LATTICE_SIZE = 12  # documented desk-scale bound


# -- posets of join-irreducibles ---------------------------------------------

def _downset_masks(below: tuple[int, ...], cap: int | None = None):
    """Downsets of a poset given by strictly-below bitmasks (indices linearly extended)."""
    sets = [0]
    for i, b in enumerate(below):
        sets += [s | (1 << i) for s in sets if s & b == b]
        if cap is not None and len(sets) > cap:
            return None
    return sets

def _poset_key(below: tuple[int, ...]):
    """Canonical key up to isomorphism: minimal relabeling within invariant classes."""
    k = len(below)
    if k == 0:
        return ()
    above = [0] * k
    for i in range(k):
        for j in range(k):
            if below[i] >> j & 1:
                above[j] |= 1 << i
    degree = [(bin(below[i]).count("1"), bin(above[i]).count("1")) for i in range(k)]
    invariant = [
        (
            degree[i],
            tuple(sorted(degree[j] for j in range(k) if below[i] >> j & 1)),
            tuple(sorted(degree[j] for j in range(k) if above[i] >> j & 1)),
        )
        for i in range(k)
    ]
    groups: dict = {}
    for i in range(k):
        groups.setdefault(invariant[i], []).append(i)
    ordered_groups = [groups[key] for key in sorted(groups)]
    best = None
    for arrangement in itertools.product(*(itertools.permutations(g) for g in ordered_groups)):
        order = [x for group in arrangement for x in group]
        pos = {old: new for new, old in enumerate(order)}
        key = tuple(
            tuple(sorted(pos[j] for j in range(k) if below[old] >> j & 1))
            for old in order
        )
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _posets_by_downset_count(max_count: int) -> dict:
    """All posets (up to iso) with at most max_count downsets, grouped by count."""
    out: dict = {}
    seen = set()
    frontier = [()]
    seen.add(_poset_key(()))
    out.setdefault(1, []).append(())
    while frontier:
        nxt = []
        for below in frontier:
            masks = _downset_masks(below)
            for d in masks:
                grown = below + (d,)
                gmasks = _downset_masks(grown, cap=max_count)
                if gmasks is None:
                    continue
                key = _poset_key(grown)
                if key in seen:
                    continue
                seen.add(key)
                out.setdefault(len(gmasks), []).append(grown)
                nxt.append(grown)
        frontier = nxt
    return out


def _lattice_of_downsets(below: tuple[int, ...]) -> FiniteAlgebra:
    masks = sorted(_downset_masks(below), key=lambda m: (bin(m).count("1"), m))
    idx = {m: i for i, m in enumerate(masks)}
    n = len(masks)
    meet = tuple(tuple(idx[a & b] for b in masks) for a in masks)
    join = tuple(tuple(idx[a | b] for b in masks) for a in masks)
    impl = []
    for a in masks:
        row = []
        for b in masks:
            c = 0
            for d in masks:
                if d & a & ~b == 0:
                    c |= d
            row.append(idx[c])
        impl.append(tuple(row))
    return canonical_form(
        FiniteAlgebra(n, VarietyClass("heyting"), meet, join, tuple(impl))
    )


def enum_distributive_lattices(n: int) -> list[FiniteAlgebra]:
    """All Heyting algebras of size n up to isomorphism, canonical and sorted."""
    if not 1 <= n <= MAX_LATTICE_SIZE:
        raise ValueError(f"size must be within 1..{MAX_LATTICE_SIZE}, got {n}")
    posets = _posets_by_downset_count(n).get(n, [])
    lattices = sorted((_lattice_of_downsets(p) for p in posets), key=serial_key)
    return [alg.rename(f"heyting_n{n}_{i:02d}") for i, alg in enumerate(lattices)]


# -- decorations --------------------------------------------------------------

def _boolean_sublattices(lat: FiniteAlgebra):
    """0-1-sublattices in which every member has a complement, smallest first."""
    n, top = lat.size, lat.top
    middle = [a for a in lat.elements if a not in (0, top)]
    for k in range(len(middle) + 1):
        for extra in itertools.combinations(middle, k):
            g = (0, *extra, top) if top != 0 else (0,)
            gs = set(g)
            if not all(lat.meet[a][b] in gs and lat.join[a][b] in gs for a in g for b in g):
                continue
            if not all(
                any(lat.meet[a][b] == 0 and lat.join[a][b] == top for b in g) for a in g
            ):
                continue
            yield g


def _decorate_ws5(lat: FiniteAlgebra) -> list[FiniteAlgebra]:
    found = {}
    for g in _boolean_sublattices(lat):
        box = tuple(
            reduce(lambda x, y: lat.join[x][y], (e for e in g if lat.le(e, a)), 0)
            for a in lat.elements
        )
        cand = FiniteAlgebra(lat.size, VarietyClass("ws5"), lat.meet, lat.join, lat.impl, box=box)
        if validate(cand).valid:
            canon = canonical_form(cand)
            found.setdefault(serial_key(canon), canon)
    return [found[k] for k in sorted(found)]


def _antitone_involutions(lat: FiniteAlgebra):
    """All unary tables that are involutive order anti-automorphisms."""
    n = lat.size
    inv = [-1] * n

    def ok(a):
        b = inv[a]
        for c in range(n):
            if inv[c] == -1:
                continue
            if lat.le(a, c) != lat.le(inv[c], b) or lat.le(c, a) != lat.le(b, inv[c]):
                return False
        return True

    def rec(a):
        if a == n:
            yield tuple(inv)
            return
        if inv[a] != -1:
            yield from rec(a + 1)
            return
        for b in range(n):
            if b in inv:
                continue
            if inv[b] != -1 and inv[b] != a:
                continue
            prev_b = inv[b]
            inv[a] = b
            inv[b] = a
            if ok(a) and ok(b):
                yield from rec(a + 1)
            inv[a] = -1
            inv[b] = prev_b if b != a else -1

    yield from rec(0)


def _decorate_hri(lat: FiniteAlgebra) -> list[FiniteAlgebra]:
    found = {}
    for inv in _antitone_involutions(lat):
        if any(inv[lat.neg[a]] != lat.neg[lat.neg[a]] for a in lat.elements):
            continue
        box = tuple(lat.neg[inv[a]] for a in lat.elements)
        cand = FiniteAlgebra(
            lat.size, VarietyClass("hri"), lat.meet, lat.join, lat.impl, box=box, invol=inv
        )
        if validate(cand).valid:
            canon = canonical_form(cand)
            found.setdefault(serial_key(canon), canon)
    return [found[k] for k in sorted(found)]


def _forced_dualneg(lat: FiniteAlgebra) -> tuple[int, ...]:
    """Least b with a | b = 1; exists on any finite distributive lattice."""
    out = []
    for a in lat.elements:
        candidates = [b for b in lat.elements if lat.join[a][b] == lat.top]
        val = reduce(lambda x, y: lat.meet[x][y], candidates)
        if lat.join[a][val] != lat.top:
            raise TheoremViolation(f"dual pseudocomplement missing at {a} in {lat!r}")
        out.append(val)
    return tuple(out)


def _forced_dimpl(lat: FiniteAlgebra) -> tuple[tuple[int, ...], ...]:
    """Least b with c <= a | b, as a c-by-a table."""
    rows = []
    for c in lat.elements:
        row = []
        for a in lat.elements:
            candidates = [b for b in lat.elements if lat.le(c, lat.join[a][b])]
            val = reduce(lambda x, y: lat.meet[x][y], candidates)
            if not lat.le(c, lat.join[a][val]):
                raise TheoremViolation(f"dual residual missing at ({c},{a}) in {lat!r}")
            row.append(val)
        rows.append(tuple(row))
    return tuple(rows)


def _stabilizes_at(lat: FiniteAlgebra, dualneg, level: int) -> bool:
    bd = tuple(lat.neg[dualneg[a]] for a in lat.elements)
    cur = tuple(lat.elements)
    for _ in range(level):
        cur = tuple(bd[c] for c in cur)
    return tuple(bd[c] for c in cur) == cur


def _decorate_leveled(lat: FiniteAlgebra, cls: VarietyClass) -> list[FiniteAlgebra]:
    dualneg = _forced_dualneg(lat)
    if not _stabilizes_at(lat, dualneg, cls.level):
        return []
    extra = {"dualneg": dualneg}
    if cls.kind == "dht":
        dimpl = _forced_dimpl(lat)
        if dualneg != tuple(dimpl[lat.top][a] for a in lat.elements):
            raise TheoremViolation(f"forced dualneg disagrees with 1 -< a in {lat!r}")
        extra["dimpl"] = dimpl
    cand = FiniteAlgebra(lat.size, cls, lat.meet, lat.join, lat.impl, **extra)
    cand = derive_operations(cand)  # fills box; raises if a WS5 box axiom breaks
    return [canonical_form(cand)]


def decorate(cls: VarietyClass, lat: FiniteAlgebra) -> list[FiniteAlgebra]:
    """All decorations of a Heyting algebra in the given class, up to isomorphism."""
    if lat.cls.kind != "heyting":
        raise ValueError("decorate expects a plain Heyting algebra")
    if cls.kind == "heyting":
        return [lat]
    if cls.kind == "ws5":
        return _decorate_ws5(lat)
    if cls.kind == "hri":
        return _decorate_hri(lat)
    return _decorate_leveled(lat, cls)


@dataclass(frozen=True)
class Catalog:
    cls: VarietyClass
    max_size: int
    algebras: tuple[FiniteAlgebra, ...]

    def of_size(self, n: int) -> list[FiniteAlgebra]:
        return [a for a in self.algebras if a.size == n]


@lru_cache(maxsize=None)
def build_catalog(cls: VarietyClass, max_size: int) -> Catalog:
    """Every algebra of the class up to max_size, canonical, deduplicated, named."""
    algebras = []
    for n in range(1, max_size + 1):
        found = []
        for lat in enum_distributive_lattices(n):
            found.extend(decorate(cls, lat))
        found.sort(key=serial_key)
        tag = str(cls).replace(":", "_")
        algebras.extend(a.rename(f"{tag}_n{n}_{i:02d}") for i, a in enumerate(found))
    return Catalog(cls, max_size, tuple(algebras))
