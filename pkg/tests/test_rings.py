from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from hallcrit import hnf as H
from hallcrit.rings import (
    NARing,
    NotClosedError,
    NotMultiplicativeError,
    RingHom,
    Submodule,
    build_paper_example,
    huq_commutator_ring,
    ideal_context,
    ideal_generated,
    is_ideal,
    join_submodules,
    relative_commutator_ring,
    subring,
)

import oracles

small = st.integers(-4, 4)


def vectors(n, max_count=3):
    return st.lists(st.tuples(*[small] * n), min_size=1, max_size=max_count)


# ---------------------------------------------------------------- Hermite form


def test_hnf_examples():
    assert H.hnf([(2, 0), (0, 3), (1, 1)]) == ((1, 0), (0, 1))
    assert H.hnf([(4, 6)]) == ((4, 6),)
    assert H.hnf([(-4, -6), (2, 3)]) == ((2, 3),)
    assert H.hnf([(0, 0)]) == ()
    assert H.hnf([(2, 4), (0, 6)]) == ((2, 4), (0, 6))
    assert H.hnf([(2, 10), (0, 6)]) == ((2, 4), (0, 6))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), vectors(n))))
def test_hnf_shape_and_determinant(case):
    n, vecs = case
    basis = H.hnf(vecs, n)
    pivots = H.pivot_columns(basis)
    assert pivots == sorted(set(pivots))
    for r, (row, c) in enumerate(zip(basis, pivots)):
        assert row[c] > 0 and not any(row[:c])
        assert all(0 <= basis[k][c] < row[c] for k in range(r))
    # idempotent and independent of generator order
    assert H.hnf(basis, n) == basis
    assert H.hnf(list(reversed(vecs)), n) == basis
    if len(basis) == n:
        # full rank: the pivot product is the index of the lattice in Z^n
        prod = 1
        for row, c in zip(basis, pivots):
            prod *= row[c]
        assert prod == oracles.gcd_of_maximal_minors(vecs, len(basis))


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda n: st.tuples(vectors(n, 2), st.tuples(*[st.integers(-6, 6)] * n))
    )
)
def test_membership_matches_bruteforce(case):
    vecs, target = case
    n = len(target)
    basis = H.hnf(vecs, n)
    found = H.contains(basis, target)
    if oracles.in_span_bruteforce(vecs, target, bound=5):
        assert found
    if found:
        coeffs = H.coordinates(basis, target)
        assert tuple(sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(n)) == tuple(target)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), vectors(n, 3))))
def test_kernel_is_saturated_solution_lattice(case):
    n, rows = case
    K = H.kernel(rows, n)
    for v in K:
        assert H.matvec(rows, v) == (0,) * len(rows)
    for v in product(range(-3, 4), repeat=n):
        if H.matvec(rows, v) == (0,) * len(rows):
            assert H.contains(K, v)


def test_kernel_example():
    assert H.kernel([[1, 0, 0], [0, 1, 0]], 3) == ((0, 0, 1),)
    assert H.kernel([[2, 4]], 2) == ((2, -1),)


# ---------------------------------------------------------------- rings


@pytest.fixture(scope="module")
def ex():
    return build_paper_example()


def test_counterexample_values(ex):
    E, N, X = ex.E, ex.N, ex.X
    top = Submodule.whole(3)
    zero = Submodule.zero(3)
    assert ex.p.kernel() == X
    assert is_ideal(E, N) and is_ideal(E, X)
    assert relative_commutator_ring(E, N, N, N) == X
    assert huq_commutator_ring(E, top, top) == X
    assert huq_commutator_ring(E, top, X) == X
    assert huq_commutator_ring(E, N, X) == zero
    assert ex.p.is_surjective()


def test_ideal_generated(ex):
    assert ideal_generated(ex.E, [(0, 1, 0)]) == ex.N
    assert ideal_generated(ex.E, []) == Submodule.zero(3)


def test_join_of_cyclic_spans():
    a = Submodule.span(1, [(2,)])
    b = Submodule.span(1, [(3,)])
    assert join_submodules(a, b) == Submodule.span(1, [(1,)])


def test_subring_rejects_non_closed(ex):
    # e2 * e2 = e3 leaves span{e2}
    with pytest.raises(NotClosedError):
        subring(ex.E, Submodule.span(3, [(0, 1, 0)]))


def test_non_multiplicative_hom(ex):
    # sending e3 to b1 breaks p(e2 e2) = p(e2) p(e2)
    with pytest.raises(NotMultiplicativeError):
        RingHom.from_matrix(ex.E, ex.B, [[1, 0, 1], [0, 1, 0]])


def test_ring_json_round_trip(ex):
    again = NARing.from_json(ex.E.to_json())
    assert again.sc == ex.E.sc and again.rank == 3


def _ideals(E):
    candidates = [Submodule.span(3, vs) for vs in product(
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 2), (1, 1, 0)], repeat=2)]
    return [S for S in {c for c in candidates} if is_ideal(E, S)]


def test_commutator_symmetric_and_monotone(ex):
    E = ex.E
    ideals = _ideals(E) + [Submodule.whole(3), Submodule.zero(3)]
    ctx = ideal_context(E)
    for K, L in product(ideals, repeat=2):
        C = ctx.dot(K, L)
        assert C == ctx.dot(L, K)
        assert C.issubset(K) and C.issubset(L)
        for M in ideals:
            if K.issubset(M):
                assert C.issubset(ctx.dot(M, L))
