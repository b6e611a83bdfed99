"""Lower central series, nilpotency class, Hall's criterion with its explicit
class bound, and the commutator conditions, over any commutator context."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import partial, singledispatch
from itertools import product
from typing import Any

from . import csl as _csl
from .groups import FiniteGroup, Subgroup, huq_commutator_grp, is_normal, is_subgroup, quotient_group, relative_commutator_grp
from .rings import NARing, Submodule, huq_commutator_ring, is_ideal, is_subring, relative_commutator_ring

DEFAULT_MAX_STEPS = 64


class Status(enum.Enum):
    NILPOTENT = "nilpotent"
    NOT_NILPOTENT = "not-nilpotent"
    UNKNOWN = "unknown"


@dataclass
class GammaChain:
    """``entries[k]`` is the k-th lower central term; ``entries[0]`` is top."""

    entries: list
    status: Status
    nilpotency_class: int | None = None
    stabilized_at: int | None = None

    def to_dict(self, describe=repr) -> dict:
        return {
            "status": self.status.value,
            "class": self.nilpotency_class,
            "stabilized_at": self.stabilized_at,
            "entries": [describe(e) for e in self.entries],
        }


def gamma_series(ctx, max_steps: int = DEFAULT_MAX_STEPS) -> GammaChain:
    """Iterate ``g -> dot(top, g)`` from top until bottom, a repeat, or the cap."""
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    entries = [ctx.top]
    for step in range(max_steps + 1):
        cur = entries[-1]
        if cur == ctx.bottom:
            return GammaChain(entries, Status.NILPOTENT, nilpotency_class=step)
        if step == max_steps:
            break
        nxt = ctx.dot(ctx.top, cur)
        if nxt == cur:
            return GammaChain(entries, Status.NOT_NILPOTENT, stabilized_at=step)
        entries.append(nxt)
    return GammaChain(entries, Status.UNKNOWN)


def nilpotency_class(ctx, max_steps: int = DEFAULT_MAX_STEPS) -> int | Status:
    """The class as an int, or ``Status.NOT_NILPOTENT`` / ``Status.UNKNOWN``."""
    chain = gamma_series(ctx, max_steps)
    if chain.status is Status.NILPOTENT:
        return chain.nilpotency_class
    return chain.status


def hall_bound(c: int, d: int) -> int:
    """``c(c+1)/2 * (d-1) + c``."""
    if c < 1 or d < 1:
        raise ValueError("c and d must be positive")
    return c * (c + 1) // 2 * (d - 1) + c


@dataclass
class HallVerdict:
    n_normal: bool
    surjective: bool
    ker_contained: bool | None
    c: int | Status | None
    d: int | Status | None
    bound: int | None
    class_E: int | Status | None
    hypotheses_hold: bool
    theorem_holds: bool
    failed_hypothesis: str | None = None
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def enc(v):
            return v.value if isinstance(v, Status) else v

        return {
            "n_normal": self.n_normal,
            "surjective": self.surjective,
            "ker_contained": self.ker_contained,
            "c": enc(self.c),
            "d": enc(self.d),
            "bound": self.bound,
            "class_E": enc(self.class_E),
            "hypotheses_hold": self.hypotheses_hold,
            "theorem_holds": self.theorem_holds,
            "failed_hypothesis": self.failed_hypothesis,
            "evidence": self.evidence,
        }


def _effective_bound(c: int, d: int) -> int:
    # c = 0: ker p is trivial so E is isomorphic to B; d = 0 only tightens the bound
    if c == 0:
        return d
    return hall_bound(c, max(d, 1))


def hall_check(E_ctx, N, p, max_steps: int = DEFAULT_MAX_STEPS, sample_cap: int = _csl.EXHAUSTIVE_CAP) -> HallVerdict:
    """Check the hypotheses of Hall's criterion for ``p: E -> B`` and the
    normal subobject N, compute the class of E and compare it with the bound.

    ``E_ctx`` must offer ``is_normal``, ``subobject_context`` and
    ``relative_dot`` besides the commutator-context operations; ``p`` must
    offer ``kernel()``, ``is_surjective()`` and ``codomain.context()``.
    Failed hypotheses are reported in the verdict, not raised.
    """
    describe = getattr(E_ctx, "describe", repr)
    evidence: dict[str, Any] = {}
    n_normal = E_ctx.is_normal(N)
    surjective = p.is_surjective()
    chain_E = gamma_series(E_ctx, max_steps)
    class_E = chain_E.nilpotency_class if chain_E.status is Status.NILPOTENT else chain_E.status
    evidence["gamma_E"] = chain_E.to_dict(describe)

    def verdict(**kw):
        return HallVerdict(n_normal=n_normal, surjective=surjective, class_E=class_E, evidence=evidence, **kw)

    if not n_normal:
        return verdict(ker_contained=None, c=None, d=None, bound=None, hypotheses_hold=False,
                       theorem_holds=True, failed_hypothesis="N is not normal")
    if not surjective:
        return verdict(ker_contained=None, c=None, d=None, bound=None, hypotheses_hold=False,
                       theorem_holds=True, failed_hypothesis="p is not surjective")

    N_ctx = E_ctx.subobject_context(N)
    chain_N = gamma_series(N_ctx, max_steps)
    evidence["gamma_N"] = chain_N.to_dict(getattr(N_ctx, "describe", repr))
    B_ctx = p.codomain.context()
    chain_B = gamma_series(B_ctx, max_steps)
    evidence["gamma_B"] = chain_B.to_dict(getattr(B_ctx, "describe", repr))
    c = chain_N.nilpotency_class if chain_N.status is Status.NILPOTENT else chain_N.status
    d = chain_B.nilpotency_class if chain_B.status is Status.NILPOTENT else chain_B.status

    ker = p.kernel()
    NN = E_ctx.relative_dot(N, N, N)
    ker_contained = E_ctx.leq(ker, NN)
    evidence["kernel"] = describe(ker)
    evidence["NN_in_N"] = describe(NN)

    failed = None
    if not isinstance(c, int):
        failed = "N is not nilpotent"
    elif not isinstance(d, int):
        failed = "B is not nilpotent"
    elif not ker_contained:
        failed = "kernel of p is not contained in [N,N]_N"
    if failed:
        return verdict(ker_contained=ker_contained, c=c, d=d, bound=None, hypotheses_hold=False,
                       theorem_holds=True, failed_hypothesis=failed)

    bound = _effective_bound(c, d)
    theorem_holds = isinstance(class_E, int) and class_E <= bound
    evidence.update(_proof_chain(E_ctx, N, c, d, sample_cap))
    return verdict(ker_contained=True, c=c, d=d, bound=bound, hypotheses_hold=True, theorem_holds=theorem_holds)


def _proof_chain(E_ctx, N, c: int, d: int, sample_cap: int) -> dict:
    """The intermediate inequalities of the proof: ``f^d(E) <= g(N)`` and,
    when Jacobi holds on the sub-collection generated by E and N,
    ``f^{m_k}(E) <= g^k(N)`` for k <= c, with ``f = [E,-]`` and ``g = [N,-]``."""
    top = E_ctx.top
    f = partial(E_ctx.dot, top)
    out: dict[str, Any] = {"fd_leq_gN": E_ctx.leq(_csl.iterate(f, d, top), E_ctx.dot(N, N))}
    try:
        elements = _csl.sub_collection(E_ctx, [top, N], cap=sample_cap)
    except _csl.CapExceededError:
        out["jacobi_sampled"] = None
        return out
    sample = _csl.materialize(E_ctx, elements)
    jac = _csl.check_jacobi(sample)
    out["jacobi_sampled"] = bool(jac)
    if not jac:
        describe = getattr(E_ctx, "describe", repr)
        out["jacobi_witness"] = [describe(elements[i]) for i in jac.witness]
        return out
    if c >= 1:
        try:
            report = _csl.verify_main_bound(E_ctx, f, N, top, max(c, 1), check_preconditions=False)
            out["main_bound"] = report.to_dict()
        except _csl.NoBaseIterateError:
            out["main_bound"] = None
    return out


# ---------------------------------------------------------------- Condition 1


@dataclass
class ConditionResult:
    holds: bool
    left: Any
    right: Any

    def __bool__(self) -> bool:
        return self.holds


@singledispatch
def check_condition_a(C, S, K, L) -> bool:
    """``[K, L]_S == [K, L]_C`` for K, L normal in C and K, L <= S <= C."""
    raise TypeError(f"no backend for {type(C).__name__}")


@check_condition_a.register
def _(C: FiniteGroup, S: Subgroup, K: Subgroup, L: Subgroup) -> bool:
    if not is_subgroup(C, S.elements):
        raise _csl.PreconditionError("S is not a subgroup")
    if not (is_normal(C, K) and is_normal(C, L)):
        raise _csl.PreconditionError("K and L must be normal in C")
    if not (K.issubset(S) and L.issubset(S)):
        raise _csl.PreconditionError("K and L must lie in S")
    return relative_commutator_grp(C, S, K, L) == huq_commutator_grp(C, K, L)


@check_condition_a.register
def _(C: NARing, S: Submodule, K: Submodule, L: Submodule) -> bool:
    if not is_subring(C, S):
        raise _csl.PreconditionError("S is not a subring")
    if not (is_ideal(C, K) and is_ideal(C, L)):
        raise _csl.PreconditionError("K and L must be ideals of C")
    if not (K.issubset(S) and L.issubset(S)):
        raise _csl.PreconditionError("K and L must lie in S")
    return relative_commutator_ring(C, S, K, L) == huq_commutator_ring(C, K, L)


def check_condition_b_i(ctx, K, L, M) -> ConditionResult:
    """``[K, L v M] == [K, L] v [K, M]``."""
    left = ctx.dot(K, ctx.join(L, M))
    right = ctx.join(ctx.dot(K, L), ctx.dot(K, M))
    return ConditionResult(left == right, left, right)


def check_condition_b_ii(ctx, K, L, M) -> ConditionResult:
    """``[K, [L, M]] <= [[K, L], M] v [L, [K, M]]``."""
    left = ctx.dot(K, ctx.dot(L, M))
    right = ctx.join(ctx.dot(ctx.dot(K, L), M), ctx.dot(L, ctx.dot(K, M)))
    return ConditionResult(ctx.leq(left, right), left, right)


# ---------------------------------------------------------------- group sweeps


@dataclass
class SweepRecord:
    group: str
    N: tuple[int, ...]
    c: int
    d: int | Status
    bound: int | None
    class_E: int | Status
    ok: bool


def hall_sweep_group(name: str, E: FiniteGroup, max_steps: int = DEFAULT_MAX_STEPS) -> list[SweepRecord]:
    """For each nilpotent normal N with ``E/[N,N]`` nilpotent, compare the
    class of E against the bound. Other N are skipped."""
    ctx = E.context()
    chain_E = gamma_series(ctx, max_steps)
    class_E = chain_E.nilpotency_class if chain_E.status is Status.NILPOTENT else chain_E.status
    out = []
    for N in ctx.elements():
        c = nilpotency_class(ctx.subobject_context(N), max_steps)
        if not isinstance(c, int):
            continue
        B, _ = quotient_group(E, ctx.dot(N, N))
        d = nilpotency_class(B.context(), max_steps)
        if not isinstance(d, int):
            continue
        bound = _effective_bound(c, d)
        ok = isinstance(class_E, int) and class_E <= bound
        out.append(SweepRecord(name, N.elements, c, d, bound, class_E, ok))
    return out


def regular_image_holds(E: FiniteGroup, kernel: Subgroup) -> bool:
    """For ``p: E -> E/kernel`` and every normal K: ``p([E,K]) == [B, p(K)]``."""
    B, p = quotient_group(E, kernel)
    ctx = E.context()
    B_ctx = B.context()
    return all(p.image(ctx.dot(ctx.top, K)) == B_ctx.dot(B_ctx.top, p.image(K)) for K in ctx.elements())


def nsub_triples_condition(ctx, check, elements=None) -> tuple | None:
    """First triple of ``elements`` (default: all normal subobjects) failing ``check``."""
    elements = ctx.elements() if elements is None else elements
    for K, L, M in product(elements, repeat=3):
        if not check(ctx, K, L, M):
            return (K, L, M)
    return None
