from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from hallcrit.csl import (
    CapExceededError,
    FiniteCsl,
    MalformedTableError,
    NoBaseIterateError,
    PreconditionError,
    check_associative,
    check_csl_axioms,
    check_derivation_sufficient,
    check_idempotent_meet,
    check_inner_derivation_equivalence,
    check_jacobi,
    inner_derivation,
    is_bounded_by_identity,
    is_derivation,
    lemma_exponent,
    main_exponent,
    materialize,
    sub_collection,
    verify_leibniz_iterate,
    verify_lemma_bound,
    verify_main_bound,
)
from hallcrit.groups import Subgroup
from hallcrit.lattices import (
    boolean_lattice,
    chain,
    csl_from_distributive_lattice,
    divisor_lattice,
    find_violating_table,
    join_preserving_maps,
    lattice_of,
)
from hallcrit.rings import build_paper_example

import oracles


def div_csl(n):
    return csl_from_distributive_lattice(divisor_lattice(n))


def constant_bottom(lat):
    n = lat.n
    return FiniteCsl.from_tables(lat.join_table, [[lat.bottom] * n for _ in range(n)], lat.bottom)


def oracle_nsub_csl(P):
    """NSub of a permutation group with the commutator, computed without the table code."""
    normals = sorted(P.normal_subgroups(), key=lambda s: (len(s), sorted(s)))
    idx = {s: i for i, s in enumerate(normals)}
    join = [[idx[P.closure(a | b)] for b in normals] for a in normals]
    dot = [[idx[P.commutator(a, b)] for b in normals] for a in normals]
    return FiniteCsl.from_tables(join, dot, 0, labels=normals), normals


# ---------------------------------------------------------------- axioms


def test_divisor_12_gcd_passes_all_axioms():
    report = check_csl_axioms(div_csl(12))
    assert report.ok
    assert set(report.results) == {"a", "b", "c", "d"}


def test_two_chain_constant_bottom_passes():
    assert check_csl_axioms(constant_bottom(chain(2))).ok


def test_axiom_c_violation_found_by_exhaustive_search():
    lat = chain(3)
    violators = []
    for vals in product(range(3), repeat=6):
        dot = [[0] * 3 for _ in range(3)]
        for (a, b), v in zip([(a, b) for a in range(3) for b in range(a, 3)], vals):
            dot[a][b] = dot[b][a] = v
        csl = FiniteCsl.from_tables(lat.join_table, dot, 0)
        bad = [(a, b) for a, b in product(range(3), repeat=2) if max(dot[a][b], b) != b]
        if bad:
            violators.append((csl, bad[0]))
    assert violators
    for csl, first_bad in violators[:50]:
        report = check_csl_axioms(csl)
        assert not report.results["c"]
        assert report.results["c"].witness == first_bad


def test_malformed_tables_are_structural_errors():
    with pytest.raises(MalformedTableError):
        FiniteCsl.from_tables([[0, 1], [1]], [[0, 0], [0, 0]], 0)
    with pytest.raises(MalformedTableError):
        FiniteCsl.from_tables([[0, 1], [1, 1]], [[0, 5], [0, 0]], 0)
    with pytest.raises(MalformedTableError):
        FiniteCsl.from_tables([[0, 1], [1, 1]], [[0, 0], [0, 0]], 3)


def test_axiom_a_failure_names_reason():
    # join table that is not commutative
    csl = FiniteCsl.from_tables([[0, 0], [1, 1]], [[0, 0], [0, 0]], 0)
    assert csl.to_json()["n"] == 2
    res = check_csl_axioms(csl).results["a"]
    assert not res and res.reason == "join not commutative" and res.witness == (0, 1)


def test_json_round_trip():
    csl = div_csl(12)
    again = FiniteCsl.from_json(csl.to_json())
    assert again == csl


def test_exhaustive_cap_requires_explicit_choice():
    n = 65
    csl = FiniteCsl.from_tables(
        [[max(a, b) for b in range(n)] for a in range(n)], [[0] * n for _ in range(n)], 0
    )
    with pytest.raises(CapExceededError):
        check_jacobi(csl)
    assert check_jacobi(csl, sample=500, seed=1)
    assert check_jacobi(csl, cap=65)


# ---------------------------------------------------------------- Jacobi and associativity


def test_jacobi_divisor_30():
    assert check_jacobi(div_csl(30))


def test_jacobi_nsub_s3_bruteforce():
    csl, _ = oracle_nsub_csl(oracles.s3())
    assert csl.n == 3
    assert check_csl_axioms(csl)
    assert check_jacobi(csl)


def test_jacobi_violation_on_four_elements():
    csl = find_violating_table(4, lambda c: not check_jacobi(c))
    assert csl is not None and csl.n == 4
    res = check_jacobi(csl)
    j, d, leq = csl.join, csl.dot, csl.leq
    expected = next(
        (a, b, c) for a, b, c in product(range(4), repeat=3)
        if not leq(d(a, d(b, c)), j(d(d(a, b), c), d(b, d(a, c))))
    )
    assert not res and res.witness == expected
    assert find_violating_table(3, lambda c: not check_jacobi(c)) is None


def test_associative_examples():
    assert check_associative(div_csl(12))
    assert check_associative(constant_bottom(chain(4)))
    # brute force: every triple commutator in D4 is trivial, so NSub(D4) is associative
    d4_csl, _ = oracle_nsub_csl(oracles.d4())
    assert check_associative(d4_csl)
    # [A3,[S3,S3]] = [A3,A3] = 1 but [[A3,S3],S3] = A3
    s3_csl, normals = oracle_nsub_csl(oracles.s3())
    res = check_associative(s3_csl)
    assert not res
    a, b, c = res.witness
    assert s3_csl.dot(a, s3_csl.dot(b, c)) != s3_csl.dot(s3_csl.dot(a, b), c)


# ---------------------------------------------------------------- derivations


def test_identity_and_constant_bottom_are_derivations():
    for csl in (div_csl(12), *oracle_nsub_csl(oracles.d4())[:1]):
        assert is_derivation(csl, list(csl.elements))
        assert is_derivation(csl, [csl.bottom] * csl.n)


def test_join_preserving_not_below_identity_fails_on_divisor_12():
    lat = divisor_lattice(12)
    csl = csl_from_distributive_lattice(lat)
    unbounded = [f for f in join_preserving_maps(lat) if not is_bounded_by_identity(csl, f)]
    assert unbounded
    for f in unbounded:
        res = is_derivation(csl, f)
        assert not res and res.reason == "Leibniz-violated"


def test_not_join_preserving_reason():
    csl = div_csl(12)
    f = [csl.top] * csl.n
    res = is_derivation(csl, f)
    assert not res and res.reason == "not-join-preserving"


def test_inner_derivation_examples():
    csl = div_csl(12)
    assert list(inner_derivation(csl, csl.bottom)) == [csl.bottom] * csl.n
    six = csl.index(6)
    assert [csl.label(v) for v in inner_derivation(csl, six)] == [gcd(6, y) for y in csl.labels]


def test_inner_derivation_of_d4_center_is_trivial(d4):
    ctx = d4.context()
    center = Subgroup.of([d4.element("e"), d4.element("a^2")])
    g = inner_derivation(ctx, center)
    assert all(g(K) == ctx.bottom for K in ctx.elements())


def test_inner_derivation_equivalence_examples():
    assert check_inner_derivation_equivalence(div_csl(30))
    bad = find_violating_table(4, lambda c: not check_jacobi(c))
    assert not check_jacobi(bad)
    assert not all(is_derivation(bad, inner_derivation(bad, x)) for x in bad.elements)
    assert check_inner_derivation_equivalence(bad)
    assert check_inner_derivation_equivalence(oracle_nsub_csl(oracles.s3())[0])


def test_derivation_sufficient_condition():
    csl = div_csl(12)
    assert check_derivation_sufficient(csl, list(csl.elements))
    assert check_derivation_sufficient(csl, [csl.bottom] * csl.n)
    f = [csl.index(gcd(x, 6)) for x in csl.labels]
    assert check_derivation_sufficient(csl, f)
    with pytest.raises(PreconditionError):
        check_derivation_sufficient(csl, [csl.index(12 if x > 1 else 1) for x in csl.labels])


# ---------------------------------------------------------------- idempotence


def test_idempotent_meet_examples():
    assert check_idempotent_meet(div_csl(12)) is True
    assert check_idempotent_meet(constant_bottom(chain(3))) is None


# ---------------------------------------------------------------- Leibniz iterate and bounds


def test_leibniz_iterate_examples(d4):
    csl = div_csl(12)
    assert verify_leibniz_iterate(csl, list(csl.elements), 3, 5, 4) == [True] * 5
    assert verify_leibniz_iterate(csl, [0] * csl.n, 2, 4, 0) == [True]
    ctx = d4.context()
    f = inner_derivation(ctx, ctx.top)
    assert verify_leibniz_iterate(ctx, f, ctx.top, ctx.top, 4) == [True] * 5


def test_lemma_bound_d4(d4):
    ctx = d4.context()
    f = inner_derivation(ctx, ctx.top)
    report = verify_lemma_bound(ctx, f, ctx.top, 6)
    assert report.m == 1
    assert [e.exponent for e in report.entries] == [1] * 6
    assert report.all_hold


def test_lemma_bound_k1_is_definition_of_m():
    csl = div_csl(60)
    for x in csl.elements:
        report = verify_lemma_bound(csl, list(csl.elements), x, 1)
        assert report.entries[0].exponent == report.m and report.all_hold


def test_lemma_not_asserted_on_counterexample_ring():
    ex = build_paper_example()
    ctx = ex.E.context()
    # Jacobi fails on {0, X, N, E}, so [E,-] is not even a derivation there
    with pytest.raises(PreconditionError, match="not a derivation|Jacobi"):
        verify_lemma_bound(ctx, inner_derivation(ctx, ctx.top), ex.N, 3)


def test_main_bound_identity_on_distributive():
    csl = div_csl(30)
    ident = list(csl.elements)
    for x in csl.elements:
        report = verify_main_bound(csl, ident, x, x, 5)
        assert report.m == 1
        assert [e.exponent for e in report.entries] == [1, 2, 3, 4, 5]
        assert report.all_hold


def test_main_bound_d4(d4):
    ctx = d4.context()
    f = inner_derivation(ctx, ctx.top)
    report = verify_main_bound(ctx, f, ctx.top, ctx.top, 6)
    assert report.m == 1 and report.all_hold
    assert [e.exponent for e in report.entries] == [1, 2, 3, 4, 5, 6]


def test_no_base_iterate(d4):
    ctx = d4.context()
    with pytest.raises(NoBaseIterateError):
        verify_main_bound(ctx, lambda K: K, ctx.top, ctx.top, 2, cap=10)


def test_main_bound_requires_x_below_y():
    csl = div_csl(12)
    with pytest.raises(PreconditionError):
        verify_main_bound(csl, list(csl.elements), csl.top, csl.bottom, 2)


def test_bound_rejects_non_derivation():
    csl = div_csl(12)
    with pytest.raises(PreconditionError):
        verify_main_bound(csl, [csl.top] * csl.n, csl.bottom, csl.top, 2)


def test_exponent_values():
    assert [lemma_exponent(k, 3) for k in (1, 2, 3)] == [3, 5, 7]
    assert [main_exponent(k, 3) for k in (1, 2, 3)] == [3, 8, 15]


@given(st.integers(1, 50), st.integers(1, 50))
def test_exponent_identity(k, m):
    assert main_exponent(k + 1, m) == lemma_exponent(k + 1, m) + main_exponent(k, m)
    assert main_exponent(1, m) == lemma_exponent(1, m) == m


def test_sub_collection_and_materialize(d4):
    ctx = d4.context()
    elements = sub_collection(ctx, [ctx.top])
    assert set(elements) == {ctx.top, ctx.dot(ctx.top, ctx.top), ctx.bottom}
    csl = materialize(ctx, elements)
    assert check_csl_axioms(csl) and check_jacobi(csl)
    with pytest.raises(CapExceededError):
        sub_collection(ctx, ctx.elements(), cap=3)


# ---------------------------------------------------------------- properties over small instances


def _derivations(csl):
    lat = lattice_of(csl)
    return [f for f in join_preserving_maps(lat) if is_derivation(csl, f)]


def test_inner_maps_order_preserving_and_jacobi_equivalence(small_csls):
    for csl in small_csls:
        leq = csl.leq
        for x in csl.elements:
            row = csl.dot_table[x]
            assert all(leq(row[a], row[b]) for a, b in product(csl.elements, repeat=2) if leq(a, b))
        assert check_inner_derivation_equivalence(csl)


def test_idempotent_operations_are_distributive_meets(small_csls):
    idempotent = [c for c in small_csls if check_idempotent_meet(c) is not None]
    assert idempotent
    assert all(check_idempotent_meet(c) for c in idempotent)


def test_leibniz_iterate_all_derivations(small_csls):
    for csl in small_csls:
        for f in _derivations(csl):
            for a, b in product(csl.elements, repeat=2):
                assert all(verify_leibniz_iterate(csl, f, a, b, 5))


def test_main_bound_universal_on_small_jacobi_csls(small_csls):
    checked = 0
    for csl in small_csls:
        if not check_jacobi(csl):
            continue
        for f in _derivations(csl):
            if not is_bounded_by_identity(csl, f):
                continue
            for x, y in product(csl.elements, repeat=2):
                if not csl.leq(x, y):
                    continue
                try:
                    main = verify_main_bound(csl, f, x, y, 5, check_preconditions=False)
                    lemma = verify_lemma_bound(csl, f, x, 5, check_preconditions=False)
                except NoBaseIterateError:
                    continue
                assert main.all_hold and lemma.all_hold
                checked += 1
    assert checked > 100


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 400))
def test_distributive_lattices_are_associative_commutator_lattices(n):
    csl = csl_from_distributive_lattice(divisor_lattice(n))
    assert check_csl_axioms(csl)
    assert check_associative(csl)
    assert check_jacobi(csl)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_random_small_csl_laws(small_csls, data):
    csl = data.draw(st.sampled_from(small_csls))
    assert check_csl_axioms(csl)
    if check_associative(csl):
        assert check_jacobi(csl)


def test_boolean_lattice_is_associative():
    csl = csl_from_distributive_lattice(boolean_lattice(3))
    assert check_csl_axioms(csl) and check_associative(csl)
