"""Congruence filters, congruences, quotients, products, factor decomposition.

On a finite lattice every h-filter is principal (it is finite, meet-closed and
upward closed, so it is the up-set of the meet of its members); congruence
filters are exactly the up-sets of open elements.  Congruences are canonically
represented by their filters; the partition form is kept for the relational
factor-pair checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce

from .algebra import FiniteAlgebra, canonical_relabeling, serial_key
from .errors import TheoremViolation
from .morphism import Homomorphism, isomorphic


@dataclass(frozen=True)
class Congruence:
    """Partition of {0..size-1}; blocks sorted by minimum element, elements sorted."""

    blocks: tuple[tuple[int, ...], ...]
    size: int

    def __post_init__(self):
        object.__setattr__(
            self,
            "blocks",
            tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0])),
        )

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        out = [0] * self.size
        for i, block in enumerate(self.blocks):
            for a in block:
                out[a] = i
        return tuple(out)

    @property
    def is_identity(self) -> bool:
        return len(self.blocks) == self.size

    @property
    def is_total(self) -> bool:
        return len(self.blocks) == 1

    def related(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def meet(self, other: "Congruence") -> "Congruence":
        keys = {}
        for a in range(self.size):
            keys.setdefault((self.class_of[a], other.class_of[a]), []).append(a)
        return Congruence(tuple(tuple(v) for v in keys.values()), self.size)

    def join(self, other: "Congruence") -> "Congruence":
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for blocks in (self.blocks, other.blocks):
            for block in blocks:
                for a in block[1:]:
                    parent[find(a)] = find(block[0])
        groups = {}
        for a in range(self.size):
            groups.setdefault(find(a), []).append(a)
        return Congruence(tuple(tuple(v) for v in groups.values()), self.size)

    def permutes_with(self, other: "Congruence") -> bool:
        n = self.size

        def compose(first, second):
            out = set()
            for a in range(n):
                for b in range(n):
                    if first.related(a, b):
                        for c in range(n):
                            if second.related(b, c):
                                out.add((a, c))
            return out

        return compose(self, other) == compose(other, self)


def _blocks_valid(alg: FiniteAlgebra, blocks) -> str | None:
    seen = [0] * alg.size
    for block in blocks:
        for a in block:
            if not 0 <= a < alg.size:
                return f"element {a} out of range"
            seen[a] += 1
    if any(c != 1 for c in seen):
        return "blocks do not partition the universe"
    return None


def congruence_from_blocks(alg: FiniteAlgebra, blocks) -> Congruence:
    """Build a congruence, verifying the partition is compatible with every table."""
    problem = _blocks_valid(alg, blocks)
    if problem:
        raise ValueError(problem)
    theta = Congruence(tuple(tuple(b) for b in blocks), alg.size)
    cls = theta.class_of
    for name, t in alg.unary_tables().items():
        for block in theta.blocks:
            rep = t[block[0]]
            if any(cls[t[a]] != cls[rep] for a in block[1:]):
                raise ValueError(f"partition not compatible with {name}")
    for name, t in alg.binary_tables().items():
        for a in alg.elements:
            for b in alg.elements:
                for a2 in theta.blocks[cls[a]]:
                    if cls[t[a][b]] != cls[t[a2][b]] or cls[t[b][a]] != cls[t[b][a2]]:
                        raise ValueError(f"partition not compatible with {name}")
    return theta


# -- filters -----------------------------------------------------------------

def is_hfilter(alg: FiniteAlgebra, carrier) -> bool:
    f = frozenset(carrier)
    if alg.top not in f:
        return False
    up = all(b in f for a in f for b in alg.upset[a])
    meets = all(alg.meet[a][b] in f for a in f for b in f)
    return up and meets


def is_congruence_filter(alg: FiniteAlgebra, carrier) -> bool:
    f = frozenset(carrier)
    if not is_hfilter(alg, f):
        return False
    if alg.box is None:
        return True
    return all(alg.box[a] in f for a in f)


def generated_hfilter(alg: FiniteAlgebra, seed) -> frozenset:
    """Least h-filter containing seed: the up-set of the meet of the seed."""
    if not seed:
        return frozenset({alg.top})
    b = reduce(lambda x, y: alg.meet[x][y], seed)
    return frozenset(alg.upset[b])


def generated_congfilter(alg: FiniteAlgebra, seed) -> frozenset:
    """Least congruence filter containing seed, via the boxed-meet description:
    { a : box b0 & ... & box b(k-1) <= a for some bi in seed }."""
    if alg.box is None:
        return generated_hfilter(alg, seed)
    if not seed:
        return frozenset({alg.top})
    b = reduce(lambda x, y: alg.meet[x][y], (alg.box[s] for s in seed))
    return frozenset(alg.upset[b])


def all_congruence_filters(alg: FiniteAlgebra) -> list[frozenset]:
    """Every congruence filter, ascending by size then carrier."""
    out = []
    for b in alg.elements:
        f = frozenset(alg.upset[b])
        if alg.box is None or all(alg.box[a] in f for a in f):
            out.append(f)
    return sorted(out, key=lambda f: (len(f), sorted(f)))


def principal_generator(alg: FiniteAlgebra, f) -> int:
    """The single generator b with f = { a : box b <= a }; b is the meet of f."""
    b = reduce(lambda x, y: alg.meet[x][y], f)
    bb = b if alg.box is None else alg.box[b]
    if frozenset(alg.upset[bb]) != frozenset(f):
        raise TheoremViolation(f"meet {b} does not box-generate the filter {sorted(f)}")
    return b


def to_congruence(alg: FiniteAlgebra, f) -> Congruence:
    """Congruence of a filter: a ~ b iff (a -> b) & (b -> a) lies in f."""
    if not is_congruence_filter(alg, f):
        raise ValueError(f"{sorted(f)} is not a congruence filter")
    fset = frozenset(f)
    reps: list[int] = []
    blocks: list[list[int]] = []
    for a in alg.elements:
        for i, r in enumerate(reps):
            if alg.iff(a, r) in fset:
                blocks[i].append(a)
                break
        else:
            reps.append(a)
            blocks.append([a])
    return congruence_from_blocks(alg, blocks)


def to_filter(alg: FiniteAlgebra, theta: Congruence) -> frozenset:
    """The block of the top element."""
    return frozenset(theta.blocks[theta.class_of[alg.top]])


def principal_congruence(alg: FiniteAlgebra, a: int, b: int) -> Congruence:
    """Least congruence identifying a and b."""
    return to_congruence(alg, generated_congfilter(alg, (alg.iff(a, b),)))


# -- quotients and products --------------------------------------------------

def quotient(alg: FiniteAlgebra, theta: Congruence) -> tuple[FiniteAlgebra, Homomorphism]:
    """Block algebra (re-canonicalized) with its projection."""
    cls = theta.class_of
    k = len(theta.blocks)
    reps = [block[0] for block in theta.blocks]

    def two(t):
        if t is None:
            return None
        out = tuple(tuple(cls[t[ra][rb]] for rb in reps) for ra in reps)
        for a in alg.elements:  # well-definedness: block images independent of reps
            for b in alg.elements:
                if out[cls[a]][cls[b]] != cls[t[a][b]]:
                    raise TheoremViolation("induced table ill-defined; congruence check broken")
        return out

    def one(t):
        if t is None:
            return None
        out = tuple(cls[t[r]] for r in reps)
        for a in alg.elements:
            if out[cls[a]] != cls[t[a]]:
                raise TheoremViolation("induced table ill-defined; congruence check broken")
        return out

    prelim = FiniteAlgebra(
        k, alg.cls,
        meet=two(alg.meet), join=two(alg.join), impl=two(alg.impl), dimpl=two(alg.dimpl),
        box=one(alg.box), invol=one(alg.invol), dualneg=one(alg.dualneg),
        name=f"{alg.name}/theta" if alg.name else "",
    )
    perm, canon = canonical_relabeling(prelim)
    proj = Homomorphism(alg, canon, tuple(perm[cls[a]] for a in alg.elements))
    return canon, proj


def product(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    """Componentwise product; element (x, y) sits at index x*|b| + y."""
    if a.cls != b.cls:
        raise ValueError(f"class mismatch: {a.cls} vs {b.cls}")
    n, m = a.size, b.size

    def two(ta, tb):
        if ta is None or tb is None:
            return None
        return tuple(
            tuple(ta[x1][x2] * m + tb[y1][y2] for x2 in range(n) for y2 in range(m))
            for x1 in range(n) for y1 in range(m)
        )

    def one(ta, tb):
        if ta is None or tb is None:
            return None
        return tuple(ta[x] * m + tb[y] for x in range(n) for y in range(m))

    return FiniteAlgebra(
        n * m, a.cls,
        meet=two(a.meet, b.meet), join=two(a.join, b.join), impl=two(a.impl, b.impl),
        dimpl=two(a.dimpl, b.dimpl), box=one(a.box, b.box), invol=one(a.invol, b.invol),
        dualneg=one(a.dualneg, b.dualneg),
        name=f"({a.name or 'A'})x({b.name or 'B'})",
    )


@dataclass(frozen=True)
class FactorPair:
    """Complementary permuting congruences with the witness isomorphism onto the product."""

    theta: Congruence
    theta_prime: Congruence
    quotient_a: FiniteAlgebra
    quotient_b: FiniteAlgebra
    proj_a: Homomorphism
    proj_b: Homomorphism
    iso: Homomorphism


def make_factor_pair(alg: FiniteAlgebra, theta: Congruence, theta_prime: Congruence) -> FactorPair:
    qa, pa = quotient(alg, theta)
    qb, pb = quotient(alg, theta_prime)
    prod = product(qa, qb)
    iso = Homomorphism(alg, prod, tuple(pa.map[x] * qb.size + pb.map[x] for x in alg.elements))
    if not (iso.onto and iso.injective):
        raise TheoremViolation("factor map onto the product is not bijective")
    return FactorPair(theta, theta_prime, qa, qb, pa, pb, iso)


def factor_complement(alg: FiniteAlgebra, theta: Congruence) -> FactorPair | None:
    """First verified complement in filter order (ascending size, lexicographic carrier)."""
    for f in all_congruence_filters(alg):
        theta_prime = to_congruence(alg, f)
        if not theta.meet(theta_prime).is_identity:
            continue
        if not theta.join(theta_prime).is_total:
            continue
        if not theta.permutes_with(theta_prime):
            continue
        return make_factor_pair(alg, theta, theta_prime)
    return None


def decompose_simples(alg: FiniteAlgebra) -> list[FiniteAlgebra]:
    """Split along factor congruences until every factor is simple (or indecomposable);
    verifies that the factors multiply back to the input up to isomorphism."""
    if not alg.nontrivial:
        raise ValueError("decompose_simples needs a nontrivial algebra")

    def split(a: FiniteAlgebra) -> list[FiniteAlgebra]:
        filters = all_congruence_filters(a)
        for f in filters:
            if len(f) in (1, a.size):
                continue  # identity / total congruence: no proper split
            pair = factor_complement(a, to_congruence(a, f))
            if pair is not None and pair.quotient_a.nontrivial and pair.quotient_b.nontrivial:
                return split(pair.quotient_a) + split(pair.quotient_b)
        return [a]

    factors = sorted(split(alg), key=serial_key)
    prod = reduce(product, factors)
    if isomorphic(prod, alg) is None:
        raise TheoremViolation(f"decomposition of {alg!r} does not multiply back")
    return factors


def boolean_projection(alg: FiniteAlgebra) -> tuple[FiniteAlgebra, Homomorphism]:
    """Quotient by the congruence filter generated by all dense elements."""
    f = generated_congfilter(alg, sorted(alg.dense_set))
    out, proj = quotient(alg, to_congruence(alg, f))
    if not out.boolean_h_reduct:
        raise TheoremViolation(f"Boolean projection of {alg!r} is not Boolean")
    return out, proj
