"""Non-associative rings over the integers given by structure constants.

Additive groups are Z^n with generators e_1..e_n; ``sc[i][j]`` holds the
coordinates of ``e_i * e_j`` and multiplication extends bilinearly. Submodules
and ideals are stored by their canonical Hermite basis, so equality is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from . import hnf as _hnf
from .hnf import Basis, Vector

DEFAULT_CLOSURE_CAP = 1000


class RingError(ValueError):
    pass


class NotClosedError(RingError):
    """A submodule is not closed under multiplication."""


class NotMultiplicativeError(RingError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ClosureCapError(RuntimeError):
    """The ideal closure loop did not stabilize; ascending chains in Z^n are
    finite, so this signals a bug."""


@dataclass(frozen=True, eq=False)
class NARing:
    rank: int
    sc: tuple[tuple[Vector, ...], ...]
    name: str | None = None

    @classmethod
    def from_sc(cls, sc, name=None) -> NARing:
        n = len(sc)
        out = []
        for i, row in enumerate(sc):
            if len(row) != n:
                raise RingError(f"sc[{i}] has {len(row)} entries, expected {n}")
            out_row = []
            for j, vec in enumerate(row):
                if len(vec) != n:
                    raise RingError(f"sc[{i}][{j}] has length {len(vec)}, expected {n}")
                out_row.append(tuple(int(x) for x in vec))
            out.append(tuple(out_row))
        return cls(n, tuple(out), name)

    @classmethod
    def from_products(cls, rank: int, products: dict[tuple[int, int], Sequence[int]], name=None) -> NARing:
        """Structure constants from the nonzero products ``{(i, j): e_i * e_j}`` (0-based)."""
        zero = (0,) * rank
        return cls.from_sc([[products.get((i, j), zero) for j in range(rank)] for i in range(rank)], name)

    def basis_vector(self, i: int) -> Vector:
        return tuple(int(k == i) for k in range(self.rank))

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        return multiply(self, u, v)

    def context(self) -> IdealContext:
        return ideal_context(self)

    def to_json(self) -> dict:
        return {"kind": "naring", "rank": self.rank, "sc": [[list(v) for v in row] for row in self.sc]}

    @classmethod
    def from_json(cls, doc: dict | str) -> NARing:
        if isinstance(doc, str):
            doc = json.loads(doc)
        R = cls.from_sc(doc["sc"], doc.get("name"))
        if "rank" in doc and doc["rank"] != R.rank:
            raise RingError(f"rank {doc['rank']} does not match sc of size {R.rank}")
        return R

    def __repr__(self) -> str:
        return f"NARing({self.name or '?'}, rank={self.rank})"


def multiply(R: NARing, u: Sequence[int], v: Sequence[int]) -> Vector:
    n = R.rank
    if len(u) != n or len(v) != n:
        raise RingError(f"vectors must have length {n}")
    out = [0] * n
    for i, a in enumerate(u):
        if not a:
            continue
        row = R.sc[i]
        for j, b in enumerate(v):
            if b:
                ab = a * b
                for k, c in enumerate(row[j]):
                    out[k] += ab * c
    return tuple(out)


@dataclass(frozen=True)
class Submodule:
    """Subgroup of Z^n by canonical Hermite basis. ``is_ideal`` records that
    closure under multiplication by generators was verified; it does not take
    part in equality."""

    n: int
    basis: Basis
    is_ideal: bool = field(default=False, compare=False)

    @classmethod
    def span(cls, n: int, vectors: Iterable[Sequence[int]] = ()) -> Submodule:
        return cls(n, _hnf.hnf(vectors, n))

    @classmethod
    def zero(cls, n: int) -> Submodule:
        return cls(n, ())

    @classmethod
    def whole(cls, n: int) -> Submodule:
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v: Sequence[int]) -> bool:
        return _hnf.contains(self.basis, v)

    def issubset(self, other: Submodule) -> bool:
        return all(b in other for b in self.basis)

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...] | None:
        return _hnf.coordinates(self.basis, v)

    def as_ideal(self) -> Submodule:
        return Submodule(self.n, self.basis, True)

    def to_json(self) -> dict:
        return {"vectors": [list(v) for v in self.basis]}


def submodule_canonicalize(vectors: Iterable[Sequence[int]], n: int | None = None) -> Submodule:
    vectors = [tuple(v) for v in vectors]
    if n is None:
        if not vectors:
            raise RingError("ambient rank needed for an empty vector list")
        n = len(vectors[0])
    return Submodule.span(n, vectors)


def join_submodules(A: Submodule, B: Submodule) -> Submodule:
    if A.n != B.n:
        raise RingError("ambient rank mismatch")
    if A.issubset(B):
        return B
    if B.issubset(A):
        return A
    return Submodule.span(A.n, A.basis + B.basis)


def _generator_products(R: NARing, v: Vector) -> Iterable[Vector]:
    for i in range(R.rank):
        e = R.basis_vector(i)
        yield multiply(R, e, v)
        yield multiply(R, v, e)


def is_ideal(R: NARing, S: Submodule) -> bool:
    """Closed under left and right multiplication by every generator; by
    bilinearity this is closure under multiplication by all of R."""
    return all(w in S for b in S.basis for w in _generator_products(R, b))


def is_subring(R: NARing, S: Submodule) -> bool:
    return all(multiply(R, a, b) in S for a in S.basis for b in S.basis)


def ideal_generated(R: NARing, vectors: Iterable[Sequence[int]], cap: int = DEFAULT_CLOSURE_CAP) -> Submodule:
    """Least ideal containing ``vectors``: adjoin ``e_i * b`` and ``b * e_i`` for
    basis rows b until the Hermite basis stops changing."""
    S = Submodule.span(R.rank, vectors)
    for _ in range(cap):
        extra = [w for b in S.basis for w in _generator_products(R, b) if w not in S]
        if not extra:
            return S.as_ideal()
        S = Submodule.span(R.rank, S.basis + tuple(extra))
    raise ClosureCapError(f"ideal closure did not stabilize within {cap} rounds")


def huq_commutator_ring(R: NARing, S: Submodule, T: Submodule) -> Submodule:
    """Ideal generated by all ``s*t`` and ``t*s`` for basis rows s of S, t of T."""
    gens = []
    for s, t in product(S.basis, T.basis):
        gens.append(multiply(R, s, t))
        gens.append(multiply(R, t, s))
    return ideal_generated(R, gens)


def subring(R: NARing, S: Submodule) -> NARing:
    """S as a ring of rank ``S.rank`` in the coordinates of its Hermite basis."""
    if not is_subring(R, S):
        raise NotClosedError("submodule is not closed under multiplication")
    sc = []
    for a in S.basis:
        row = []
        for b in S.basis:
            row.append(S.coordinates(multiply(R, a, b)))
        sc.append(row)
    return NARing.from_sc(sc) if sc else NARing(0, ())


def to_sub_coordinates(S: Submodule, K: Submodule) -> Submodule:
    coords = []
    for v in K.basis:
        c = S.coordinates(v)
        if c is None:
            raise RingError("submodule is not contained in S")
        coords.append(c)
    return Submodule.span(S.rank, coords)


def from_sub_coordinates(S: Submodule, K: Submodule, ideal: bool = False) -> Submodule:
    vecs = [tuple(sum(c * b[k] for c, b in zip(coef, S.basis)) for k in range(S.n)) for coef in K.basis]
    out = Submodule.span(S.n, vecs)
    return out.as_ideal() if ideal else out


def relative_commutator_ring(R: NARing, S: Submodule, K: Submodule, L: Submodule) -> Submodule:
    """``[K, L]_S`` computed in the subring S, mapped back into R's coordinates.

    The result is an ideal of S; it need not be an ideal of R.
    """
    inner = subring(R, S)
    out = huq_commutator_ring(inner, to_sub_coordinates(S, K), to_sub_coordinates(S, L))
    return from_sub_coordinates(S, out)


@dataclass(frozen=True, eq=False)
class RingHom:
    """``p(v) = matrix @ v`` with matrix of shape codomain.rank x domain.rank."""

    domain: NARing
    codomain: NARing
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_matrix(cls, domain: NARing, codomain: NARing, matrix) -> RingHom:
        mat = tuple(tuple(int(x) for x in row) for row in matrix)
        if len(mat) != codomain.rank or any(len(r) != domain.rank for r in mat):
            raise RingError(f"matrix must be {codomain.rank} x {domain.rank}")
        p = cls(domain, codomain, mat)
        for i, j in product(range(domain.rank), repeat=2):
            ei, ej = domain.basis_vector(i), domain.basis_vector(j)
            if p(multiply(domain, ei, ej)) != multiply(codomain, p(ei), p(ej)):
                raise NotMultiplicativeError(f"p(e{i + 1} e{j + 1}) != p(e{i + 1}) p(e{j + 1})", (i, j))
        return p

    def __call__(self, v: Sequence[int]) -> Vector:
        return _hnf.matvec(self.matrix, v)

    def kernel(self) -> Submodule:
        return kernel_ring_hom(self)

    def image(self, S: Submodule) -> Submodule:
        return Submodule.span(self.codomain.rank, [self(v) for v in S.basis])

    def is_surjective(self) -> bool:
        cols = [tuple(row[j] for row in self.matrix) for j in range(self.domain.rank)]
        return Submodule.span(self.codomain.rank, cols) == Submodule.whole(self.codomain.rank)


def kernel_ring_hom(p: RingHom) -> Submodule:
    K = Submodule(p.domain.rank, _hnf.kernel(p.matrix, p.domain.rank))
    if not is_ideal(p.domain, K):
        raise AssertionError("kernel of a ring homomorphism must be an ideal")
    return K.as_ideal()


class IdealContext:
    """Two-sided ideals of R with ``dot`` the generated-ideal commutator.

    The ideal lattice is infinite in general, so nothing is enumerated.
    """

    def __init__(self, ring: NARing):
        self.ring = ring

    @property
    def bottom(self) -> Submodule:
        return Submodule.zero(self.ring.rank).as_ideal()

    @property
    def top(self) -> Submodule:
        return Submodule.whole(self.ring.rank).as_ideal()

    def leq(self, a: Submodule, b: Submodule) -> bool:
        return a.issubset(b)

    def join(self, a: Submodule, b: Submodule) -> Submodule:
        return join_submodules(a, b)

    def dot(self, a: Submodule, b: Submodule) -> Submodule:
        return huq_commutator_ring(self.ring, a, b)

    def is_normal(self, a: Submodule) -> bool:
        return is_ideal(self.ring, a)

    def is_closed(self, a: Submodule) -> bool:
        return is_subring(self.ring, a)

    def subobject_context(self, S: Submodule) -> IdealContext:
        return IdealContext(subring(self.ring, S))

    def relative_dot(self, S: Submodule, K: Submodule, L: Submodule) -> Submodule:
        return relative_commutator_ring(self.ring, S, K, L)

    def describe(self, a: Submodule) -> list[list[int]]:
        return [list(v) for v in a.basis]


def ideal_context(R: NARing) -> IdealContext:
    return IdealContext(R)


@dataclass(frozen=True)
class RingCounterexample:
    E: NARing
    B: NARing
    p: RingHom
    N: Submodule
    X: Submodule


def build_paper_example() -> RingCounterexample:
    """Rank-3 ring E with ``e2*e2 = e3``, ``e3*e1 = e3`` (all other generator
    products zero), the zero-multiplication ring B of rank 2, the projection
    ``p: e1 -> b1, e2 -> b2, e3 -> 0``, ``N = <e2, e3>`` and ``X = <e3>``."""
    E = NARing.from_products(3, {(1, 1): (0, 0, 1), (2, 0): (0, 0, 1)}, name="E")
    B = NARing.from_products(2, {}, name="B")
    p = RingHom.from_matrix(E, B, [[1, 0, 0], [0, 1, 0]])
    N = Submodule.span(3, [(0, 1, 0), (0, 0, 1)])
    X = Submodule.span(3, [(0, 0, 1)])
    return RingCounterexample(E, B, p, N, X)
