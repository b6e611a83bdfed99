"""Commutator semi-lattices: finite instances, axiom checkers, derivations, and
exact verification of the iterate bounds.

A commutator semi-lattice is a join semi-lattice with a commutative operation
``dot`` such that ``dot(a, b) <= b`` and ``dot`` distributes over binary joins.
Everything here works either on an explicit :class:`FiniteCsl` (tables) or on
any object implementing :class:`CommutatorContext`.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property, partial
from itertools import product
from typing import Any, Callable, Hashable, Iterable, Protocol, Sequence, runtime_checkable

EXHAUSTIVE_CAP = 64
DEFAULT_ITERATION_CAP = 64


class MalformedTableError(ValueError):
    """Tables are not square, have mismatched sizes or out-of-range ids."""


class PreconditionError(ValueError):
    pass


class NoBaseIterateError(RuntimeError):
    """No m with f^m(y) <= x.x was found within the iteration cap."""


class CapExceededError(RuntimeError):
    pass


@runtime_checkable
class CommutatorContext(Protocol):
    """Lazy commutator semi-lattice over opaque element handles."""

    @property
    def bottom(self) -> Hashable: ...

    @property
    def top(self) -> Hashable: ...

    def leq(self, a, b) -> bool: ...

    def join(self, a, b): ...

    def dot(self, a, b): ...


@dataclass
class Check:
    """Outcome of an exhaustive check; truthy iff it passed."""

    ok: bool
    witness: tuple | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _as_table(rows, n=None, what="table"):
    try:
        table = tuple(tuple(int(v) for v in row) for row in rows)
    except TypeError as exc:
        raise MalformedTableError(f"{what} is not a list of rows") from exc
    size = len(table) if n is None else n
    if len(table) != size:
        raise MalformedTableError(f"{what} has {len(table)} rows, expected {size}")
    for i, row in enumerate(table):
        if len(row) != size:
            raise MalformedTableError(f"{what} row {i} has length {len(row)}, expected {size}")
        for j, v in enumerate(row):
            if not 0 <= v < size:
                raise MalformedTableError(f"{what}[{i}][{j}] = {v} is out of range 0..{size - 1}")
    return table


@dataclass(frozen=True)
class FiniteCsl:
    """Explicit finite commutator semi-lattice on carrier ``0..n-1``.

    The order is derived from the join table: ``leq(a, b)`` iff ``join(a, b) == b``.
    Construction only validates the table shapes; use :func:`check_csl_axioms`
    to test the laws.
    """

    join_table: tuple[tuple[int, ...], ...]
    dot_table: tuple[tuple[int, ...], ...]
    bottom: int
    labels: tuple | None = field(default=None, compare=False)

    @classmethod
    def from_tables(cls, join, dot, bottom, labels=None) -> FiniteCsl:
        join_t = _as_table(join, what="join")
        dot_t = _as_table(dot, len(join_t), what="dot")
        if not 0 <= int(bottom) < max(len(join_t), 1) or not join_t:
            raise MalformedTableError(f"bottom {bottom} is out of range")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != len(join_t):
                raise MalformedTableError("labels length does not match table size")
        return cls(join_t, dot_t, int(bottom), labels)

    @property
    def n(self) -> int:
        return len(self.join_table)

    @property
    def elements(self) -> range:
        return range(self.n)

    def leq(self, a: int, b: int) -> bool:
        return self.join_table[a][b] == b

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def dot(self, a: int, b: int) -> int:
        return self.dot_table[a][b]

    @cached_property
    def top(self) -> int:
        t = self.bottom
        for a in self.elements:
            t = self.join_table[t][a]
        return t

    def index(self, label) -> int:
        if self.labels is None:
            return int(label)
        return self.labels.index(label)

    def label(self, a: int):
        return a if self.labels is None else self.labels[a]

    def with_dot(self, dot) -> FiniteCsl:
        return FiniteCsl.from_tables(self.join_table, dot, self.bottom, self.labels)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "join": [list(r) for r in self.join_table],
            "dot": [list(r) for r in self.dot_table],
            "bottom": self.bottom,
        }

    @classmethod
    def from_json(cls, doc: dict | str) -> FiniteCsl:
        if isinstance(doc, str):
            doc = json.loads(doc)
        for key in ("n", "join", "dot", "bottom"):
            if key not in doc:
                raise MalformedTableError(f"missing field {key!r}")
        csl = cls.from_tables(doc["join"], doc["dot"], doc["bottom"])
        if csl.n != doc["n"]:
            raise MalformedTableError(f"n = {doc['n']} but tables have size {csl.n}")
        return csl


# ---------------------------------------------------------------- triples


def _tuples(n: int, arity: int, sample: int | None, seed: int,
            cap: int = EXHAUSTIVE_CAP) -> Iterable[tuple[int, ...]]:
    if sample is None:
        if n > cap:
            raise CapExceededError(
                f"carrier of size {n} exceeds the exhaustive cap {cap}; pass sample= or raise cap="
            )
        return product(range(n), repeat=arity)
    rng = random.Random(seed)
    return sorted(tuple(rng.randrange(n) for _ in range(arity)) for _ in range(sample))


def _first(pred, tuples) -> tuple | None:
    for t in tuples:
        if not pred(*t):
            return t
    return None


# ---------------------------------------------------------------- axioms


@dataclass
class AxiomReport:
    results: dict[str, Check]

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def __bool__(self) -> bool:
        return self.ok

    def failed(self) -> list[str]:
        return [k for k, v in self.results.items() if not v]


def _check_semilattice(csl: FiniteCsl, sample=None, seed=0, cap=EXHAUSTIVE_CAP) -> Check:
    n, j, bot = csl.n, csl.join, csl.bottom
    for a in range(n):
        if j(a, a) != a:
            return Check(False, (a,), "join not idempotent")
    w = _first(lambda a, b: j(a, b) == j(b, a), _tuples(n, 2, sample, seed, cap))
    if w:
        return Check(False, w, "join not commutative")
    w = _first(lambda a, b, c: j(a, j(b, c)) == j(j(a, b), c), _tuples(n, 3, sample, seed, cap))
    if w:
        return Check(False, w, "join not associative")
    for a in range(n):
        if not csl.leq(bot, a):
            return Check(False, (bot, a), "bottom is not least")
    return Check(True)


def check_csl_axioms(csl: FiniteCsl, sample: int | None = None, seed: int = 0,
                     cap: int = EXHAUSTIVE_CAP) -> AxiomReport:
    """Check laws (a)-(d) of a commutator semi-lattice.

    (a) join semi-lattice with least element ``bottom``; (b) ``dot`` commutative;
    (c) ``dot(a, b) <= b``; (d) ``dot(a, join(b, c)) == join(dot(a, b), dot(a, c))``.
    Witnesses are lexicographically least.
    """
    if not isinstance(csl, FiniteCsl):
        raise MalformedTableError("expected a FiniteCsl")
    n, j, d, leq = csl.n, csl.join, csl.dot, csl.leq
    results = {"a": _check_semilattice(csl, sample, seed, cap)}
    w = _first(lambda a, b: d(a, b) == d(b, a), _tuples(n, 2, sample, seed, cap))
    results["b"] = Check(w is None, w, None if w is None else "dot not commutative")
    w = _first(lambda a, b: leq(d(a, b), b), _tuples(n, 2, sample, seed, cap))
    results["c"] = Check(w is None, w, None if w is None else "dot(a, b) not below b")
    w = _first(lambda a, b, c: d(a, j(b, c)) == j(d(a, b), d(a, c)), _tuples(n, 3, sample, seed, cap))
    results["d"] = Check(w is None, w, None if w is None else "dot does not distribute over join")
    return AxiomReport(results)


def check_jacobi(csl: FiniteCsl, sample: int | None = None, seed: int = 0,
                 cap: int = EXHAUSTIVE_CAP) -> Check:
    """``a.(b.c) <= ((a.b).c) v (b.(a.c))`` for all triples."""
    j, d, leq = csl.join, csl.dot, csl.leq
    w = _first(
        lambda a, b, c: leq(d(a, d(b, c)), j(d(d(a, b), c), d(b, d(a, c)))),
        _tuples(csl.n, 3, sample, seed, cap),
    )
    return Check(w is None, w)


def check_associative(csl: FiniteCsl, sample: int | None = None, seed: int = 0,
                      cap: int = EXHAUSTIVE_CAP) -> Check:
    d = csl.dot
    w = _first(lambda a, b, c: d(a, d(b, c)) == d(d(a, b), c), _tuples(csl.n, 3, sample, seed, cap))
    return Check(w is None, w)


# ---------------------------------------------------------------- derivations

Map = Callable[[Any], Any]


def _as_callable(f) -> Map:
    if callable(f):
        return f
    values = tuple(f)
    return values.__getitem__


def iterate(f, n: int, x):
    f = _as_callable(f)
    for _ in range(n):
        x = f(x)
    return x


def preserves_joins(csl: FiniteCsl, f: Sequence[int]) -> Check:
    if f[csl.bottom] != csl.bottom:
        return Check(False, (csl.bottom,), "not-join-preserving")
    j = csl.join
    w = _first(lambda a, b: f[j(a, b)] == j(f[a], f[b]), product(csl.elements, repeat=2))
    return Check(w is None, w, None if w is None else "not-join-preserving")


def is_derivation(csl: FiniteCsl, f: Sequence[int]) -> Check:
    """Join preservation plus the Leibniz inequality
    ``f(a.b) <= (f(a).b) v (a.f(b))`` on every pair."""
    f = tuple(f)
    if len(f) != csl.n or any(not 0 <= v < csl.n for v in f):
        raise PreconditionError("map must be a total function on the carrier")
    joins = preserves_joins(csl, f)
    if not joins:
        return joins
    j, d, leq = csl.join, csl.dot, csl.leq
    w = _first(
        lambda a, b: leq(f[d(a, b)], j(d(f[a], b), d(a, f[b]))),
        product(csl.elements, repeat=2),
    )
    return Check(w is None, w, None if w is None else "Leibniz-violated")


def inner_derivation(ctx, x):
    """The map ``y -> x.y``: a tuple on a FiniteCsl, a callable on a context."""
    if isinstance(ctx, FiniteCsl):
        return ctx.dot_table[x]
    return partial(ctx.dot, x)


def is_bounded_by_identity(csl: FiniteCsl, f: Sequence[int]) -> bool:
    return all(csl.leq(f[a], a) for a in csl.elements)


def check_inner_derivation_equivalence(csl: FiniteCsl) -> bool:
    """Jacobi holds iff every ``x.-`` is a derivation; also every ``x.-`` is
    order preserving. Returns True when both facts hold on ``csl``."""
    leq = csl.leq
    for x in csl.elements:
        row = csl.dot_table[x]
        for a, b in product(csl.elements, repeat=2):
            if leq(a, b) and not leq(row[a], row[b]):
                return False
    jacobi = bool(check_jacobi(csl))
    all_inner = all(is_derivation(csl, inner_derivation(csl, x)) for x in csl.elements)
    return jacobi == all_inner


def check_derivation_sufficient(csl: FiniteCsl, f: Sequence[int]) -> bool:
    """Return whether ``f(a.b) <= f(a).f(b)`` holds everywhere; when it does,
    ``f`` must be a derivation and this is asserted.

    Raises PreconditionError unless ``f`` preserves joins and ``f <= id``.
    """
    f = tuple(f)
    if not preserves_joins(csl, f):
        raise PreconditionError("map does not preserve joins")
    if not is_bounded_by_identity(csl, f):
        raise PreconditionError("map is not bounded above by the identity")
    d, leq = csl.dot, csl.leq
    applies = all(leq(f[d(a, b)], d(f[a], f[b])) for a, b in product(csl.elements, repeat=2))
    if applies:
        result = is_derivation(csl, f)
        if not result:
            raise AssertionError(f"sufficient condition held but derivation failed at {result.witness}")
    return applies


# ---------------------------------------------------------------- meets, idempotence


def meet_of(csl: FiniteCsl, a: int, b: int) -> int | None:
    """Greatest lower bound of a and b in the join order, if it exists."""
    lower = [w for w in csl.elements if csl.leq(w, a) and csl.leq(w, b)]
    for w in lower:
        if all(csl.leq(v, w) for v in lower):
            return w
    return None


def is_distributive_order(csl: FiniteCsl) -> Check:
    """Whether (carrier, leq) is a lattice satisfying a^(b v c) = (a^b) v (a^c)."""
    n = csl.n
    meet = [[meet_of(csl, a, b) for b in range(n)] for a in range(n)]
    for a, b in product(range(n), repeat=2):
        if meet[a][b] is None:
            return Check(False, (a, b), "no meet")
    j = csl.join
    w = _first(
        lambda a, b, c: meet[a][j(b, c)] == j(meet[a][b], meet[a][c]),
        product(range(n), repeat=3),
    )
    return Check(w is None, w, None if w is None else "not distributive")


def check_idempotent_meet(csl: FiniteCsl) -> bool | None:
    """For an idempotent ``dot``: confirm ``dot`` is the meet and the order is a
    distributive lattice. Returns None when ``dot`` is not idempotent."""
    if any(csl.dot(a, a) != a for a in csl.elements):
        return None
    for a, b in product(csl.elements, repeat=2):
        if meet_of(csl, a, b) != csl.dot(a, b):
            return False
    return bool(is_distributive_order(csl))


# ---------------------------------------------------------------- iterate bounds


def verify_leibniz_iterate(ctx, f, a, b, n_max: int) -> list[bool]:
    """For n = 0..n_max: ``f^n(a.b) <= join_{i=0..n} f^i(a).f^{n-i}(b)``."""
    f = _as_callable(f)
    fa = [a]
    fb = [b]
    for _ in range(n_max):
        fa.append(f(fa[-1]))
        fb.append(f(fb[-1]))
    out = []
    lhs = ctx.dot(a, b)
    for n in range(n_max + 1):
        rhs = ctx.bottom
        for i in range(n + 1):
            rhs = ctx.join(rhs, ctx.dot(fa[i], fb[n - i]))
        out.append(ctx.leq(lhs, rhs))
        lhs = f(lhs)
    return out


def lemma_exponent(k: int, m: int) -> int:
    return k * (m - 1) + 1


def main_exponent(k: int, m: int) -> int:
    return k * (k + 1) // 2 * (m - 1) + k


@dataclass
class BoundEntry:
    k: int
    exponent: int
    holds: bool


@dataclass
class BoundReport:
    kind: str
    m: int
    entries: list[BoundEntry]

    @property
    def all_hold(self) -> bool:
        return all(e.holds for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "all_hold": self.all_hold,
            "entries": [{"k": e.k, "exponent": e.exponent, "holds": e.holds} for e in self.entries],
        }


def sub_collection(ctx, seeds: Iterable, maps: Sequence[Map] = (), cap: int = EXHAUSTIVE_CAP) -> list:
    """Closure of ``seeds`` plus bottom under join, dot and the given maps.

    Raises CapExceededError when the closure grows past ``cap`` elements.
    """
    found = [ctx.bottom]
    seen = {ctx.bottom}

    def add(e):
        if e not in seen:
            if len(found) >= cap:
                raise CapExceededError(f"sub-collection exceeds {cap} elements")
            seen.add(e)
            found.append(e)

    for s in seeds:
        add(s)
    i = 0
    while i < len(found):
        a = found[i]
        for b in found[: i + 1]:
            add(ctx.join(a, b))
            add(ctx.dot(a, b))
            add(ctx.dot(b, a))
        for g in maps:
            add(g(a))
        i += 1
    return found


def materialize(ctx, elements: Sequence) -> FiniteCsl:
    """Tables of ``ctx`` restricted to ``elements`` (which must be closed under
    join and dot). Labels are the element handles."""
    if isinstance(ctx, FiniteCsl) and list(elements) == list(ctx.elements):
        return ctx
    index = {e: i for i, e in enumerate(elements)}
    try:
        join = [[index[ctx.join(a, b)] for b in elements] for a in elements]
        dot = [[index[ctx.dot(a, b)] for b in elements] for a in elements]
    except KeyError as exc:
        raise PreconditionError("elements are not closed under join and dot") from exc
    return FiniteCsl.from_tables(join, dot, index[ctx.bottom], labels=tuple(elements))


def _check_bound_preconditions(ctx, f: Map, seeds, cap: int) -> None:
    elements = sub_collection(ctx, seeds, maps=(f,), cap=cap)
    csl = materialize(ctx, elements)
    fmap = [csl.index(f(e)) for e in elements]
    if not is_derivation(csl, fmap):
        raise PreconditionError("f is not a derivation on the sampled sub-collection")
    if not is_bounded_by_identity(csl, fmap):
        raise PreconditionError("f is not bounded above by the identity")
    jac = check_jacobi(csl)
    if not jac:
        raise PreconditionError(f"Jacobi fails on the sampled sub-collection at {jac.witness}")


def least_base_iterate(ctx, f, y, x, cap: int = DEFAULT_ITERATION_CAP) -> int:
    """Least m >= 1 with ``f^m(y) <= x.x``."""
    f = _as_callable(f)
    target = ctx.dot(x, x)
    z = y
    for m in range(1, cap + 1):
        z = f(z)
        if ctx.leq(z, target):
            return m
    raise NoBaseIterateError(f"no m <= {cap} with f^m(y) <= x.x")


def _powers(g: Map, x, k_max: int) -> list:
    out = [x]
    for _ in range(k_max):
        out.append(g(out[-1]))
    return out


def verify_lemma_bound(ctx, f, x, k_max: int, cap: int = DEFAULT_ITERATION_CAP,
                       check_preconditions: bool = True) -> BoundReport:
    """Check ``f^{n_k}(g^{k-1}(x)) <= g^k(x)`` for k = 1..k_max, where
    ``g = x.-``, ``n_k = k(m-1)+1`` and m is least with ``f^m(x) <= x.x``."""
    f = _as_callable(f)
    if check_preconditions:
        _check_bound_preconditions(ctx, f, [ctx.top, x], cap)
    m = least_base_iterate(ctx, f, x, x, cap)
    g = inner_derivation(ctx, x)
    g = _as_callable(g)
    gx = _powers(g, x, k_max)
    entries = []
    for k in range(1, k_max + 1):
        e = lemma_exponent(k, m)
        entries.append(BoundEntry(k, e, ctx.leq(iterate(f, e, gx[k - 1]), gx[k])))
    return BoundReport("lemma", m, entries)


def verify_main_bound(ctx, f, x, y, k_max: int, cap: int = DEFAULT_ITERATION_CAP,
                      check_preconditions: bool = True) -> BoundReport:
    """Check ``f^{m_k}(y) <= g^k(x)`` for k = 1..k_max, where ``g = x.-``,
    ``m_k = k(k+1)/2 (m-1) + k`` and m is least with ``f^m(y) <= x.x``."""
    f = _as_callable(f)
    if not ctx.leq(x, y):
        raise PreconditionError("x must be below y")
    if check_preconditions:
        _check_bound_preconditions(ctx, f, [ctx.top, x, y], cap)
    m = least_base_iterate(ctx, f, y, x, cap)
    gx = _powers(_as_callable(inner_derivation(ctx, x)), x, k_max)
    entries = []
    for k in range(1, k_max + 1):
        e = main_exponent(k, m)
        entries.append(BoundEntry(k, e, ctx.leq(iterate(f, e, y), gx[k])))
    return BoundReport("main", m, entries)
