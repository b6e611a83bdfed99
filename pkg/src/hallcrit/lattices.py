"""Finite lattices and semilattices: constructors, distributivity, enumeration
of join-preserving maps and of small join semilattices."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from math import gcd, lcm

from .csl import (
    CapExceededError,
    Check,
    FiniteCsl,
    MalformedTableError,
    _as_table,
    check_csl_axioms,
    is_bounded_by_identity,
    is_derivation,
)

DEFAULT_MAP_CAP = 1_000_000


class NotALatticeError(ValueError):
    pass


class NotDistributiveError(ValueError):
    def __init__(self, witness):
        super().__init__(f"distributivity fails at {witness}")
        self.witness = witness


@dataclass(frozen=True)
class FiniteLattice:
    join_table: tuple[tuple[int, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    labels: tuple | None = field(default=None, compare=False)

    @classmethod
    def from_tables(cls, join, meet, labels=None) -> FiniteLattice:
        j = _as_table(join, what="join")
        m = _as_table(meet, len(j), what="meet")
        lat = cls(j, m, None if labels is None else tuple(labels))
        lat.validate()
        return lat

    @classmethod
    def from_leq(cls, n: int, leq, labels=None) -> FiniteLattice:
        """Build join/meet tables from an order predicate ``leq(a, b)``."""
        def bound(a, b, up):
            cands = [w for w in range(n) if (leq(a, w) and leq(b, w) if up else leq(w, a) and leq(w, b))]
            for w in cands:
                if all((leq(w, v) if up else leq(v, w)) for v in cands):
                    return w
            raise NotALatticeError(f"no {'join' if up else 'meet'} for ({a}, {b})")
        join = [[bound(a, b, True) for b in range(n)] for a in range(n)]
        meet = [[bound(a, b, False) for b in range(n)] for a in range(n)]
        return cls.from_tables(join, meet, labels)

    def validate(self) -> None:
        n, j, m = self.n, self.join_table, self.meet_table
        for a, b in product(range(n), repeat=2):
            if j[a][b] != j[b][a] or m[a][b] != m[b][a]:
                raise NotALatticeError(f"tables not commutative at ({a}, {b})")
            if j[a][m[a][b]] != a or m[a][j[a][b]] != a:
                raise NotALatticeError(f"absorption fails at ({a}, {b})")
        for a, b, c in product(range(n), repeat=3):
            if j[a][j[b][c]] != j[j[a][b]][c] or m[a][m[b][c]] != m[m[a][b]][c]:
                raise NotALatticeError(f"tables not associative at ({a}, {b}, {c})")

    @property
    def n(self) -> int:
        return len(self.join_table)

    def leq(self, a: int, b: int) -> bool:
        return self.join_table[a][b] == b

    @cached_property
    def bottom(self) -> int:
        b = 0
        for a in range(self.n):
            b = self.meet_table[b][a]
        return b

    @cached_property
    def top(self) -> int:
        t = 0
        for a in range(self.n):
            t = self.join_table[t][a]
        return t

    def index(self, label) -> int:
        return int(label) if self.labels is None else self.labels.index(label)

    def distributivity_witness(self) -> tuple[int, int, int] | None:
        j, m = self.join_table, self.meet_table
        for a, b, c in product(range(self.n), repeat=3):
            if m[a][j[b][c]] != j[m[a][b]][m[a][c]]:
                return (a, b, c)
        return None

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        """Non-bottom elements with exactly one lower cover, in increasing size order."""
        out = []
        for x in range(self.n):
            if x == self.bottom:
                continue
            below = [y for y in range(self.n) if y != x and self.leq(y, x)]
            covers = [y for y in below if not any(z != y and self.leq(y, z) for z in below)]
            if len(covers) == 1:
                out.append(x)
        out.sort(key=lambda x: sum(self.leq(y, x) for y in range(self.n)))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "join": [list(r) for r in self.join_table],
            "meet": [list(r) for r in self.meet_table],
        }

    @classmethod
    def from_json(cls, doc: dict | str) -> FiniteLattice:
        if isinstance(doc, str):
            doc = json.loads(doc)
        for key in ("join", "meet"):
            if key not in doc:
                raise MalformedTableError(f"missing field {key!r}")
        return cls.from_tables(doc["join"], doc["meet"])


def divisor_lattice(n: int) -> FiniteLattice:
    divs = [d for d in range(1, n + 1) if n % d == 0]
    idx = {d: i for i, d in enumerate(divs)}
    join = [[idx[lcm(a, b)] for b in divs] for a in divs]
    meet = [[idx[gcd(a, b)] for b in divs] for a in divs]
    return FiniteLattice.from_tables(join, meet, labels=divs)


def boolean_lattice(atoms: int) -> FiniteLattice:
    size = 1 << atoms
    join = [[a | b for b in range(size)] for a in range(size)]
    meet = [[a & b for b in range(size)] for a in range(size)]
    return FiniteLattice.from_tables(join, meet)


def chain(n: int) -> FiniteLattice:
    return FiniteLattice.from_tables(
        [[max(a, b) for b in range(n)] for a in range(n)],
        [[min(a, b) for b in range(n)] for a in range(n)],
    )


def diamond_m3() -> FiniteLattice:
    """0 < a, b, c < 1 with a, b, c pairwise incomparable (ids 0, 1, 2, 3, 4)."""
    return FiniteLattice.from_leq(5, lambda x, y: x == y or x == 0 or y == 4, labels=("0", "a", "b", "c", "1"))


def pentagon_n5() -> FiniteLattice:
    """0 < a < c < 1 and 0 < b < 1 (ids 0, a=1, c=2, b=3, 1=4)."""
    order = {(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)}
    return FiniteLattice.from_leq(5, lambda x, y: x == y or (x, y) in order, labels=("0", "a", "c", "b", "1"))


def csl_from_distributive_lattice(lattice: FiniteLattice) -> FiniteCsl:
    """The commutator semi-lattice with ``dot = meet`` on a distributive lattice."""
    w = lattice.distributivity_witness()
    if w is not None:
        raise NotDistributiveError(w)
    return FiniteCsl.from_tables(lattice.join_table, lattice.meet_table, lattice.bottom, lattice.labels)


def lattice_of(csl: FiniteCsl) -> FiniteLattice:
    return FiniteLattice.from_leq(csl.n, csl.leq, csl.labels)


def join_preserving_maps(lattice: FiniteLattice, cap: int = DEFAULT_MAP_CAP):
    """Yield every map preserving binary joins and bottom, as a tuple.

    Values are assigned monotonically on join-irreducibles and extended by
    ``f(x) = join{f(j) : j <= x irreducible}``; extensions that fail to preserve
    joins (possible only off distributive lattices) are dropped.
    """
    n, leq, jt = lattice.n, lattice.leq, lattice.join_table
    ji = lattice.join_irreducibles
    below = [[j for j in ji if leq(j, x)] for x in range(n)]
    preds = [[q for q in range(i) if leq(ji[q], ji[i])] for i in range(len(ji))]
    assign = [0] * len(ji)
    visited = 0

    def extend():
        f = []
        pos = {j: i for i, j in enumerate(ji)}
        for x in range(n):
            v = lattice.bottom
            for j in below[x]:
                v = jt[v][assign[pos[j]]]
            f.append(v)
        return tuple(f)

    def rec(i):
        nonlocal visited
        if i == len(ji):
            visited += 1
            if visited > cap:
                raise CapExceededError(f"more than {cap} candidate maps")
            f = extend()
            if all(f[jt[a][b]] == jt[f[a]][f[b]] for a, b in product(range(n), repeat=2)):
                yield f
            return
        for v in range(n):
            if all(leq(assign[q], v) for q in preds[i]):
                assign[i] = v
                yield from rec(i + 1)

    yield from rec(0)


def derivations(csl: FiniteCsl, lattice: FiniteLattice, cap: int = DEFAULT_MAP_CAP) -> set[tuple[int, ...]]:
    return {f for f in join_preserving_maps(lattice, cap) if is_derivation(csl, f)}


def check_distributive_derivation_criterion(lattice: FiniteLattice, cap: int = DEFAULT_MAP_CAP) -> bool:
    """With ``dot = meet``: a join-preserving map is a derivation iff ``f <= id``."""
    csl = csl_from_distributive_lattice(lattice)
    for f in join_preserving_maps(lattice, cap):
        if bool(is_derivation(csl, f)) != is_bounded_by_identity(csl, f):
            return False
    return True


# ---------------------------------------------------------------- small semilattices


def _canonical(n: int, leq_pairs: frozenset) -> tuple:
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted((perm[a], perm[b]) for a, b in leq_pairs))
        if best is None or key < best:
            best = key
    return best


def join_semilattices(n: int) -> list[FiniteCsl]:
    """All join semi-lattices on n elements up to isomorphism, as FiniteCsl
    with the constant-zero placeholder dot (``bottom`` is 0 and may not be least)."""
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    seen = set()
    out = []
    for bits in product((False, True), repeat=len(pairs)):
        rel = {(a, a) for a in range(n)} | {p for p, on in zip(pairs, bits) if on}
        if any((b, a) in rel for a, b in rel if a != b):
            continue
        if any((a, c) not in rel for a, b in rel for b2, c in rel if b == b2):
            continue
        join = []
        ok = True
        for a in range(n):
            row = []
            for b in range(n):
                ub = [w for w in range(n) if (a, w) in rel and (b, w) in rel]
                least = [w for w in ub if all((w, v) in rel for v in ub)]
                if not least:
                    ok = False
                    break
                row.append(least[0])
            if not ok:
                break
            join.append(row)
        if not ok:
            continue
        key = _canonical(n, frozenset(rel))
        if key in seen:
            continue
        seen.add(key)
        zero = [[0] * n for _ in range(n)]
        out.append(FiniteCsl.from_tables(join, zero, 0))
    return out


def commutator_operations(semilattice: FiniteCsl):
    """Yield every FiniteCsl on the given join table satisfying all four axioms.

    Candidates are restricted to commutative tables with ``dot(a, b)`` a common
    lower bound of a and b; bottom is the least element when one exists.
    """
    n, leq = semilattice.n, semilattice.leq
    least = [w for w in range(n) if all(leq(w, a) for a in range(n))]
    if not least:
        return
    bottom = least[0]
    pairs = [(a, b) for a in range(n) for b in range(a, n)]
    choices = [[w for w in range(n) if leq(w, a) and leq(w, b)] for a, b in pairs]
    for values in product(*choices):
        dot = [[0] * n for _ in range(n)]
        for (a, b), v in zip(pairs, values):
            dot[a][b] = dot[b][a] = v
        csl = FiniteCsl.from_tables(semilattice.join_table, dot, bottom)
        if check_csl_axioms(csl):
            yield csl


def find_violating_table(n_max: int, predicate) -> FiniteCsl | None:
    """First commutator operation (over semilattices of size <= n_max) where
    ``predicate(csl)`` is truthy."""
    for n in range(1, n_max + 1):
        for sl in join_semilattices(n):
            for csl in commutator_operations(sl):
                if predicate(csl):
                    return csl
    return None


__all__ = [
    "Check",
    "FiniteLattice",
    "NotALatticeError",
    "NotDistributiveError",
    "boolean_lattice",
    "chain",
    "check_distributive_derivation_criterion",
    "commutator_operations",
    "csl_from_distributive_lattice",
    "derivations",
    "diamond_m3",
    "divisor_lattice",
    "find_violating_table",
    "join_preserving_maps",
    "join_semilattices",
    "lattice_of",
    "pentagon_n5",
]
