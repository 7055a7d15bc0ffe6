"""Finite algebras on {0..n-1}: tables, validation, derived operations, canonical form.

Conventions: index 0 is the bottom element and index size-1 the top; catalog
algebras additionally keep indices compatible with a linear extension of the
lattice order (see canonical_form).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache

from .errors import (
    InvalidAlgebraError,
    MalformedAlgebraError,
    TermEvalError,
    TheoremViolation,
)

KINDS = ("heyting", "ws5", "hri", "hdp", "dht")
LEVELED = ("hdp", "dht")


@dataclass(frozen=True)
class VarietyClass:
    """Algebra class tag; level is the stabilization degree for hdp/dht."""

    kind: str
    level: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown class kind {self.kind!r}")
        if self.kind in LEVELED:
            if self.level is None or self.level < 1:
                raise ValueError(f"class {self.kind} needs a level >= 1")
        elif self.level is not None:
            raise ValueError(f"class {self.kind} takes no level")

    @classmethod
    def parse(cls, text: str) -> "VarietyClass":
        if ":" in text:
            kind, _, lvl = text.partition(":")
            return cls(kind, int(lvl))
        return cls(text)

    def __str__(self) -> str:
        return self.kind if self.level is None else f"{self.kind}:{self.level}"


HEYTING = VarietyClass("heyting")
WS5 = VarietyClass("ws5")
HRI = VarietyClass("hri")


def _tup2(rows):
    return None if rows is None else tuple(tuple(r) for r in rows)


def _tup1(row):
    return None if row is None else tuple(row)


@dataclass(frozen=True)
class FiniteAlgebra:
    """Operation tables over {0..size-1}; binary tables are row-major, row = left argument."""

    size: int
    cls: VarietyClass
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    impl: tuple[tuple[int, ...], ...]
    box: tuple[int, ...] | None = None
    invol: tuple[int, ...] | None = None
    dualneg: tuple[int, ...] | None = None
    dimpl: tuple[tuple[int, ...], ...] | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "meet", _tup2(self.meet))
        object.__setattr__(self, "join", _tup2(self.join))
        object.__setattr__(self, "impl", _tup2(self.impl))
        object.__setattr__(self, "dimpl", _tup2(self.dimpl))
        object.__setattr__(self, "box", _tup1(self.box))
        object.__setattr__(self, "invol", _tup1(self.invol))
        object.__setattr__(self, "dualneg", _tup1(self.dualneg))

    @property
    def top(self) -> int:
        return self.size - 1

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def nontrivial(self) -> bool:
        return self.size > 1

    def le(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    @cached_property
    def neg(self) -> tuple[int, ...]:
        return tuple(self.impl[a][0] for a in self.elements)

    def iff(self, a: int, b: int) -> int:
        return self.meet[self.impl[a][b]][self.impl[b][a]]

    @cached_property
    def upset(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(b for b in self.elements if self.le(a, b)) for a in self.elements)

    @cached_property
    def open_set(self) -> frozenset | None:
        if self.box is None:
            return None
        return frozenset(a for a in self.elements if self.box[a] == a)

    @cached_property
    def dense_set(self) -> frozenset:
        return frozenset(a for a in self.elements if self.neg[a] == 0)

    @cached_property
    def regular_set(self) -> frozenset:
        return frozenset(a for a in self.elements if self.neg[self.neg[a]] == a)

    @cached_property
    def boolean_h_reduct(self) -> bool:
        return all(self.join[a][self.neg[a]] == self.top for a in self.elements)

    def unary_tables(self) -> dict:
        out = {}
        for name in ("box", "invol", "dualneg"):
            t = getattr(self, name)
            if t is not None:
                out[name] = t
        return out

    def binary_tables(self) -> dict:
        out = {"meet": self.meet, "join": self.join, "impl": self.impl}
        if self.dimpl is not None:
            out["dimpl"] = self.dimpl
        return out

    def rename(self, name: str) -> "FiniteAlgebra":
        return replace(self, name=name)

    def __repr__(self):
        tag = self.name or f"{self.cls}/{self.size}"
        return f"FiniteAlgebra<{tag}>"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class ElementProfile:
    """Element classification; open is None when the algebra carries no box table."""

    open: frozenset | None
    dense: frozenset
    regular: frozenset
    boolean_h_reduct: bool
    simple: bool


def check_structure(alg: FiniteAlgebra) -> None:
    """Raise MalformedAlgebraError on shape/range defects or tables foreign to the class."""
    n = alg.size
    if n < 1:
        raise MalformedAlgebraError(f"size must be >= 1, got {n}")

    def chk2(name, rows):
        if len(rows) != n:
            raise MalformedAlgebraError(f"{name}: expected {n} rows, got {len(rows)}")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise MalformedAlgebraError(f"{name}[{i}]: expected {n} entries, got {len(row)}")
            for j, v in enumerate(row):
                if not isinstance(v, int) or not 0 <= v < n:
                    raise MalformedAlgebraError(f"{name}[{i}][{j}] = {v!r} out of range 0..{n - 1}")

    def chk1(name, row):
        if len(row) != n:
            raise MalformedAlgebraError(f"{name}: expected {n} entries, got {len(row)}")
        for i, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise MalformedAlgebraError(f"{name}[{i}] = {v!r} out of range 0..{n - 1}")

    chk2("meet", alg.meet)
    chk2("join", alg.join)
    chk2("impl", alg.impl)
    kind = alg.cls.kind
    allowed = {
        "heyting": (),
        "ws5": ("box",),
        "hri": ("box", "invol"),
        "hdp": ("box", "dualneg"),
        "dht": ("box", "dualneg", "dimpl"),
    }[kind]
    for name in ("box", "invol", "dualneg", "dimpl"):
        t = getattr(alg, name)
        if t is None:
            continue
        if name not in allowed:
            raise MalformedAlgebraError(f"table {name} not part of class {alg.cls}")
        if name == "dimpl":
            chk2(name, t)
        else:
            chk1(name, t)
    if kind == "ws5" and alg.box is None:
        raise MalformedAlgebraError("ws5 algebra requires a box table")
    if kind == "hri" and alg.invol is None:
        raise MalformedAlgebraError("hri algebra requires an invol table")
    if kind == "hdp" and alg.dualneg is None:
        raise MalformedAlgebraError("hdp algebra requires a dualneg table")
    if kind == "dht" and alg.dimpl is None:
        raise MalformedAlgebraError("dht algebra requires a dimpl table")


def _boxdot(alg: FiniteAlgebra, dualneg) -> tuple[int, ...]:
    neg = alg.neg
    return tuple(neg[dualneg[a]] for a in alg.elements)


def _iterate(table, k, n):
    cur = tuple(range(n))
    for _ in range(k):
        cur = tuple(table[c] for c in cur)
    return cur


def derived_box_hdp(alg: FiniteAlgebra, dualneg, level: int) -> tuple[int, ...]:
    """box a = meet of boxdot^i a for i = 0..level, boxdot = neg . dualneg."""
    bd = _boxdot(alg, dualneg)
    out = []
    for a in alg.elements:
        acc, cur = a, a
        for _ in range(level):
            cur = bd[cur]
            acc = alg.meet[acc][cur]
        out.append(acc)
    return tuple(out)


def derived_dualneg_dht(alg: FiniteAlgebra) -> tuple[int, ...]:
    return tuple(alg.dimpl[alg.top][a] for a in alg.elements)


def inferred_level(alg: FiniteAlgebra) -> int | None:
    """Least k >= 0 with boxdot^(k+1) = boxdot^k, or None if boxdot cycles."""
    dualneg = alg.dualneg if alg.dualneg is not None else derived_dualneg_dht(alg)
    bd = _boxdot(alg, dualneg)
    cur = tuple(range(alg.size))
    for k in range(alg.size + 1):
        nxt = tuple(bd[c] for c in cur)
        if nxt == cur:
            return k
        cur = nxt
    return None


def validate(alg: FiniteAlgebra) -> ValidationReport:
    """Check lattice, residuation and class axioms; collect every violation."""
    check_structure(alg)
    n, top = alg.size, alg.top
    meet, join, impl = alg.meet, alg.join, alg.impl
    bad = []

    def le(a, b):
        return meet[a][b] == a

    for a in range(n):
        if meet[a][a] != a:
            bad.append(("meet-idempotent", (a,)))
        if join[a][a] != a:
            bad.append(("join-idempotent", (a,)))
        if meet[0][a] != 0:
            bad.append(("bottom-least", (a,)))
        if join[a][top] != top:
            bad.append(("top-greatest", (a,)))
        for b in range(n):
            if meet[a][b] != meet[b][a]:
                bad.append(("meet-commutative", (a, b)))
            if join[a][b] != join[b][a]:
                bad.append(("join-commutative", (a, b)))
            if meet[a][join[a][b]] != a:
                bad.append(("absorption-meet-join", (a, b)))
            if join[a][meet[a][b]] != a:
                bad.append(("absorption-join-meet", (a, b)))
            for c in range(n):
                if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
                    bad.append(("meet-associative", (a, b, c)))
                if join[join[a][b]][c] != join[a][join[b][c]]:
                    bad.append(("join-associative", (a, b, c)))
                if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]]:
                    bad.append(("distributive", (a, b, c)))
                if le(meet[a][b], c) != le(a, impl[b][c]):
                    bad.append(("residuation", (a, b, c)))

    kind, level = alg.cls.kind, alg.cls.level

    if alg.invol is not None:
        inv, neg = alg.invol, alg.neg
        for a in range(n):
            if inv[inv[a]] != a:
                bad.append(("invol-involutive", (a,)))
            if inv[neg[a]] != neg[neg[a]]:
                bad.append(("invol-regular", (a,)))
            for b in range(n):
                if inv[join[a][b]] != meet[inv[a]][inv[b]]:
                    bad.append(("invol-de-morgan", (a, b)))
        if alg.box is not None:
            for a in range(n):
                if alg.box[a] != neg[inv[a]]:
                    bad.append(("box-consistent", (a,)))

    dualneg = alg.dualneg
    if kind == "dht":
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if le(c, join[a][b]) != le(alg.dimpl[c][a], b):
                        bad.append(("dual-residuation", (a, b, c)))
        derived_dn = derived_dualneg_dht(alg)
        if dualneg is not None:
            for a in range(n):
                if dualneg[a] != derived_dn[a]:
                    bad.append(("dualneg-consistent", (a,)))
        dualneg = derived_dn

    if dualneg is not None:
        for a in range(n):
            for b in range(n):
                if (join[a][b] == top) != le(dualneg[a], b):
                    bad.append(("dual-pseudocomplement", (a, b)))
        if kind in LEVELED:
            bd = _boxdot(alg, dualneg)
            lo, hi = _iterate(bd, level, n), _iterate(bd, level + 1, n)
            for a in range(n):
                if lo[a] != hi[a]:
                    bad.append(("boxdot-level", (a,)))
            if alg.box is not None:
                want = derived_box_hdp(alg, dualneg, level)
                for a in range(n):
                    if alg.box[a] != want[a]:
                        bad.append(("box-consistent", (a,)))

    if alg.box is not None:
        box = alg.box
        if box[top] != top:
            bad.append(("box-top", (top,)))
        opens = [a for a in range(n) if box[a] == a]
        for a in range(n):
            if not le(box[a], a):
                bad.append(("box-decreasing", (a,)))
            if box[box[a]] != box[a]:
                bad.append(("box-idempotent", (a,)))
            for b in range(n):
                if box[meet[a][b]] != meet[box[a]][box[b]]:
                    bad.append(("box-meet", (a, b)))
                if box[join[a][box[b]]] != join[box[a]][box[b]]:
                    bad.append(("box-join-open", (a, b)))
        for a in opens:
            if not any(meet[a][g] == 0 and join[a][g] == top for g in opens):
                bad.append(("open-elements-boolean", (a,)))

    return ValidationReport(tuple(bad))


def require_valid(alg: FiniteAlgebra) -> FiniteAlgebra:
    report = validate(alg)
    if not report.valid:
        raise InvalidAlgebraError(report)
    return alg


def derive_operations(alg: FiniteAlgebra) -> FiniteAlgebra:
    """Fill in derived tables (box; dualneg for dht) and re-validate the result.

    Idempotent: present tables are recomputed and must agree.
    """
    kind = alg.cls.kind
    out = alg
    if kind == "hri":
        box = tuple(alg.neg[alg.invol[a]] for a in alg.elements)
        out = replace(alg, box=box)
    elif kind in LEVELED:
        dualneg = alg.dualneg if alg.dualneg is not None else derived_dualneg_dht(alg)
        box = derived_box_hdp(alg, dualneg, alg.cls.level)
        out = replace(alg, box=box, dualneg=dualneg)
    return require_valid(out)


def element_profile(alg: FiniteAlgebra) -> ElementProfile:
    """Classify elements; `simple` counts congruence filters and, when a box
    table is present, is cross-checked against the open-element count."""
    from . import congruence

    simple = len(congruence.all_congruence_filters(alg)) == 2
    opens = alg.open_set
    if opens is not None and simple != (len(opens) == 2):
        raise TheoremViolation(
            f"simplicity ({simple}) disagrees with open-element count {len(opens)} on {alg!r}"
        )
    return ElementProfile(
        open=opens,
        dense=alg.dense_set,
        regular=alg.regular_set,
        boolean_h_reduct=alg.boolean_h_reduct,
        simple=simple,
    )


def discriminator_eval(alg: FiniteAlgebra, a: int, b: int, c: int) -> int:
    """t(a,b,c) = (box(a<->b) & c) | (!box(a<->b) & a)."""
    if alg.box is None:
        raise TermEvalError(f"class {alg.cls} carries no box table; run derive_operations")
    e = alg.box[alg.iff(a, b)]
    return alg.join[alg.meet[e][c]][alg.meet[alg.neg[e]][a]]


# -- canonical form ----------------------------------------------------------

def linear_extensions(alg: FiniteAlgebra):
    """Yield all orderings e0..e(n-1) of elements compatible with the lattice order."""
    n = alg.size
    below = [frozenset(b for b in range(n) if b != a and alg.le(b, a)) for a in range(n)]
    placed: set = set()
    order: list = []

    def rec():
        if len(order) == n:
            yield tuple(order)
            return
        for a in range(n):
            if a not in placed and below[a] <= placed:
                placed.add(a)
                order.append(a)
                yield from rec()
                order.pop()
                placed.remove(a)

    yield from rec()


def relabel(alg: FiniteAlgebra, perm) -> FiniteAlgebra:
    """Apply old->new index permutation to every table."""
    n = alg.size
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old

    def two(t):
        return None if t is None else tuple(
            tuple(perm[t[inv[i]][inv[j]]] for j in range(n)) for i in range(n)
        )

    def one(t):
        return None if t is None else tuple(perm[t[inv[i]]] for i in range(n))

    return replace(
        alg,
        meet=two(alg.meet),
        join=two(alg.join),
        impl=two(alg.impl),
        dimpl=two(alg.dimpl),
        box=one(alg.box),
        invol=one(alg.invol),
        dualneg=one(alg.dualneg),
    )


def serial_key(alg: FiniteAlgebra):
    return (
        alg.size,
        alg.cls.kind,
        alg.cls.level or 0,
        alg.meet,
        alg.join,
        alg.impl,
        alg.box or (),
        alg.invol or (),
        alg.dualneg or (),
        alg.dimpl or (),
    )


@lru_cache(maxsize=None)
def canonical_relabeling(alg: FiniteAlgebra):
    """(perm, algebra) with the lexicographically least tables over linear-extension relabelings."""
    best_key, best_perm, best_alg = None, None, None
    for ext in linear_extensions(alg):
        perm = [0] * alg.size
        for new, old in enumerate(ext):
            perm[old] = new
        cand = relabel(alg, perm)
        key = serial_key(cand)
        if best_key is None or key < best_key:
            best_key, best_perm, best_alg = key, tuple(perm), cand
    return best_perm, best_alg


def canonical_form(alg: FiniteAlgebra) -> FiniteAlgebra:
    return canonical_relabeling(alg)[1]
