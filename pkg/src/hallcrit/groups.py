"""Finite groups as multiplication tables, subgroup machinery, commutators and
the normal-subgroup lattice as a commutator context."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from .csl import FiniteCsl, materialize


class GroupTableError(ValueError):
    """A table does not define a group; ``witness`` locates the problem."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotNormalError(ValueError):
    pass


class NotAHomomorphismError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    identity: int
    names: tuple[str, ...] | None = None
    name: str | None = None

    @classmethod
    def from_table(cls, table, names=None, name=None) -> FiniteGroup:
        rows = [list(r) for r in table]
        n = len(rows)
        if n == 0:
            raise GroupTableError("empty table")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise GroupTableError(f"row {i} has length {len(row)}, expected {n}", ("row", i))
            for v in row:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise GroupTableError(f"row {i} has out-of-range entry {v!r}", ("row", i))
            if len(set(row)) != n:
                raise GroupTableError(f"row {i} is not a permutation (not a Latin square)", ("row", i))
        for j in range(n):
            if len({rows[i][j] for i in range(n)}) != n:
                raise GroupTableError(f"column {j} is not a permutation (not a Latin square)", ("column", j))
        ids = [e for e in range(n) if all(rows[e][x] == x == rows[x][e] for x in range(n))]
        if not ids:
            raise GroupTableError("no identity element")
        for a, b, c in product(range(n), repeat=3):
            if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                raise GroupTableError(f"not associative at ({a}, {b}, {c})", ("triple", (a, b, c)))
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != n:
                raise GroupTableError("names length does not match order")
        return cls(tuple(tuple(r) for r in rows), ids[0], names, name)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.table)

    def commutator(self, s: int, t: int) -> int:
        """``s t s^-1 t^-1``."""
        m, inv = self.table, self.inverse
        return m[m[m[s][t]][inv[s]]][inv[t]]

    def conjugate(self, g: int, x: int) -> int:
        m = self.table
        return m[m[g][x]][self.inverse[g]]

    def element(self, name: str) -> int:
        if self.names is None:
            return int(name)
        return self.names.index(name)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        seen, out = set(), []
        for x in self.elements:
            if x not in seen:
                cls_ = tuple(sorted({self.conjugate(g, x) for g in self.elements}))
                seen.update(cls_)
                out.append(cls_)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a, b in combinations(self.elements, 2))

    def context(self) -> NSubContext:
        return nsub_context(self)

    def to_json(self) -> dict:
        doc = {"kind": "group", "order": self.order, "table": [list(r) for r in self.table]}
        if self.names is not None:
            doc["names"] = list(self.names)
        return doc

    @classmethod
    def from_json(cls, doc: dict | str) -> FiniteGroup:
        if isinstance(doc, str):
            doc = json.loads(doc)
        g = cls.from_table(doc["table"], doc.get("names"), doc.get("name"))
        if "order" in doc and doc["order"] != g.order:
            raise GroupTableError(f"order {doc['order']} does not match table size {g.order}")
        return g

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


@dataclass(frozen=True, order=True)
class Subgroup:
    """A subgroup as its sorted tuple of element ids."""

    elements: tuple[int, ...]

    @classmethod
    def of(cls, elements: Iterable[int]) -> Subgroup:
        return cls(tuple(sorted(set(elements))))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def issubset(self, other: Subgroup) -> bool:
        return self._set <= other._set

    def sort_key(self):
        return (len(self.elements), self.elements)


def _check_ids(G: FiniteGroup, S: Iterable[int]) -> list[int]:
    S = list(S)
    for x in S:
        if not isinstance(x, int) or not 0 <= x < G.order:
            raise ValueError(f"element id {x!r} out of range for group of order {G.order}")
    return S


def subgroup_generated(G: FiniteGroup, S: Iterable[int]) -> Subgroup:
    """Least subgroup containing S (closure under products; finite so inverses follow)."""
    gens = sorted(set(_check_ids(G, S)))
    found = {G.identity}
    frontier = [G.identity]
    m = G.table
    while frontier:
        new = []
        for x in frontier:
            for s in gens:
                y = m[x][s]
                if y not in found:
                    found.add(y)
                    new.append(y)
        frontier = new
    return Subgroup.of(found)


def normal_closure(G: FiniteGroup, S: Iterable[int]) -> Subgroup:
    """Least normal subgroup containing S."""
    S = set(_check_ids(G, S))
    conj = {G.conjugate(g, s) for s in S for g in G.elements}
    return subgroup_generated(G, conj)


def is_normal(G: FiniteGroup, S: Subgroup) -> bool:
    return all(G.conjugate(g, s) in S for g in G.elements for s in S.elements)


def is_subgroup(G: FiniteGroup, S: Iterable[int]) -> bool:
    s = set(S)
    return G.identity in s and all(G.mul(a, b) in s for a in s for b in s)


def join_subgroups(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    return subgroup_generated(G, A.elements + B.elements)


def huq_commutator_grp(G: FiniteGroup, S: Subgroup, T: Subgroup) -> Subgroup:
    """Normal closure in G of all commutators ``s t s^-1 t^-1``."""
    comms = {G.commutator(s, t) for s in S.elements for t in T.elements}
    return normal_closure(G, comms)


def restrict(G: FiniteGroup, S: Subgroup) -> FiniteGroup:
    """S as a group in its own right; element i of the result is ``S.elements[i]``."""
    pos = {x: i for i, x in enumerate(S.elements)}
    try:
        table = [[pos[G.mul(a, b)] for b in S.elements] for a in S.elements]
    except KeyError as exc:
        raise ValueError("not closed under multiplication") from exc
    names = None if G.names is None else [G.names[x] for x in S.elements]
    return FiniteGroup(tuple(tuple(r) for r in table), pos[G.identity], None if names is None else tuple(names))


def relative_commutator_grp(G: FiniteGroup, S: Subgroup, K: Subgroup, L: Subgroup) -> Subgroup:
    """``[K, L]_S`` computed inside S and re-embedded in G."""
    if not is_subgroup(G, S.elements):
        raise ValueError("S is not a subgroup")
    if not (K.issubset(S) and L.issubset(S)):
        raise ValueError("K and L must be contained in S")
    H = restrict(G, S)
    pos = {x: i for i, x in enumerate(S.elements)}
    inner = huq_commutator_grp(H, Subgroup.of(pos[k] for k in K.elements), Subgroup.of(pos[x] for x in L.elements))
    return Subgroup.of(S.elements[i] for i in inner.elements)


def _close_under_joins(G: FiniteGroup, gens: Iterable[Subgroup]) -> list[Subgroup]:
    gens = list(dict.fromkeys(gens))
    found = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        for a in frontier:
            for b in gens:
                c = join_subgroups(G, a, b)
                if c not in found:
                    found.add(c)
                    new.append(c)
        frontier = new
    found.add(Subgroup((G.identity,)))
    return sorted(found, key=Subgroup.sort_key)


def enumerate_normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All normal subgroups, sorted by (size, elements).

    Every normal subgroup is a join of normal closures of conjugacy classes.
    """
    return _close_under_joins(G, (normal_closure(G, c) for c in G.conjugacy_classes))


def enumerate_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups, as joins of cyclic subgroups."""
    return _close_under_joins(G, (subgroup_generated(G, [x]) for x in G.elements))


def normal_subgroups_bruteforce(G: FiniteGroup) -> list[Subgroup]:
    """Every identity-containing subset closed under product, inverse and
    conjugation. Exponential; meant as an oracle for small groups."""
    others = [x for x in G.elements if x != G.identity]
    out = []
    for bits in product((False, True), repeat=len(others)):
        s = {G.identity} | {x for x, on in zip(others, bits) if on}
        if not all(G.mul(a, b) in s for a in s for b in s):
            continue
        if not all(G.inverse[a] in s for a in s):
            continue
        if all(G.conjugate(g, a) in s for g in G.elements for a in s):
            out.append(Subgroup.of(s))
    return sorted(out, key=Subgroup.sort_key)


@dataclass(frozen=True, eq=False)
class GroupHom:
    domain: FiniteGroup
    codomain: FiniteGroup
    map: tuple[int, ...]

    @classmethod
    def from_map(cls, domain: FiniteGroup, codomain: FiniteGroup, mapping: Sequence[int]) -> GroupHom:
        mapping = tuple(int(v) for v in mapping)
        if len(mapping) != domain.order:
            raise NotAHomomorphismError(f"map has length {len(mapping)}, expected {domain.order}")
        if any(not 0 <= v < codomain.order for v in mapping):
            raise NotAHomomorphismError("map has out-of-range values")
        for a, b in product(domain.elements, repeat=2):
            if mapping[domain.mul(a, b)] != codomain.mul(mapping[a], mapping[b]):
                raise NotAHomomorphismError(f"not multiplicative at ({a}, {b})", (a, b))
        return cls(domain, codomain, mapping)

    def __call__(self, x: int) -> int:
        return self.map[x]

    def kernel(self) -> Subgroup:
        return kernel_grp(self)

    def image(self, S: Subgroup) -> Subgroup:
        return Subgroup.of(self.map[x] for x in S.elements)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.codomain.order


def kernel_grp(p: GroupHom) -> Subgroup:
    e = p.codomain.identity
    return Subgroup.of(x for x in p.domain.elements if p.map[x] == e)


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """``G/N`` with cosets numbered by their least element, and the projection."""
    if not is_subgroup(G, N.elements) or not is_normal(G, N):
        raise NotNormalError("N is not a normal subgroup")
    coset_of = {}
    reps = []
    for g in G.elements:
        if g not in coset_of:
            idx = len(reps)
            reps.append(g)
            for x in N.elements:
                coset_of[G.mul(g, x)] = idx
    table = [[coset_of[G.mul(a, b)] for b in reps] for a in reps]
    names = None if G.names is None else tuple(f"{G.names[r]}N" for r in reps)
    name = None if G.name is None else f"{G.name}/N"
    Q = FiniteGroup(tuple(tuple(r) for r in table), coset_of[G.identity], names, name)
    return Q, GroupHom(G, Q, tuple(coset_of[g] for g in G.elements))


class NSubContext:
    """The lattice of normal subgroups of G with ``dot`` the commutator.

    Elements are :class:`Subgroup` handles; nothing is enumerated until
    :meth:`materialize` is called.
    """

    def __init__(self, group: FiniteGroup):
        self.group = group
        self._dot_cache: dict = {}

    @property
    def bottom(self) -> Subgroup:
        return Subgroup((self.group.identity,))

    @property
    def top(self) -> Subgroup:
        return Subgroup(tuple(self.group.elements))

    def leq(self, a: Subgroup, b: Subgroup) -> bool:
        return a.issubset(b)

    def join(self, a: Subgroup, b: Subgroup) -> Subgroup:
        if a.issubset(b):
            return b
        if b.issubset(a):
            return a
        return join_subgroups(self.group, a, b)

    def dot(self, a: Subgroup, b: Subgroup) -> Subgroup:
        key = (a, b) if a <= b else (b, a)
        out = self._dot_cache.get(key)
        if out is None:
            out = self._dot_cache[key] = huq_commutator_grp(self.group, a, b)
        return out

    def is_normal(self, a: Subgroup) -> bool:
        return is_subgroup(self.group, a.elements) and is_normal(self.group, a)

    def is_closed(self, a: Subgroup) -> bool:
        return is_subgroup(self.group, a.elements)

    def elements(self) -> list[Subgroup]:
        return enumerate_normal_subgroups(self.group)

    def materialize(self) -> FiniteCsl:
        return materialize(self, self.elements())

    def subobject_context(self, S: Subgroup) -> NSubContext:
        return NSubContext(restrict(self.group, S))

    def relative_dot(self, S: Subgroup, K: Subgroup, L: Subgroup) -> Subgroup:
        return relative_commutator_grp(self.group, S, K, L)

    def describe(self, a: Subgroup) -> list[int]:
        return list(a.elements)


def nsub_context(G: FiniteGroup) -> NSubContext:
    return NSubContext(G)
