"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Sequence

from . import csl as _csl
from .catalog import catalog
from .documents import InputDocument, InputError, parse_input, parse_json_object
from .groups import FiniteGroup, GroupHom, NotAHomomorphismError, enumerate_subgroups, quotient_group, subgroup_generated
from .lattices import NotDistributiveError, csl_from_distributive_lattice
from .nilpotence import (
    DEFAULT_MAX_STEPS,
    Status,
    check_condition_a,
    check_condition_b_i,
    check_condition_b_ii,
    gamma_series,
    hall_check,
)
from .rings import NARing, RingError, RingHom, Submodule, build_paper_example

COMMANDS = ("axioms", "jacobi", "associative", "class", "series", "hall", "conditions",
            "paper-example", "bounds-verify", "catalog")


@dataclass
class Report:
    command: str
    inputs: dict[str, str]
    result: dict
    ok: bool = True
    timing: float | None = None
    exit_code: int = field(default=0, compare=False)

    def to_json(self) -> dict:
        doc: dict[str, Any] = {"command": self.command, "inputs": self.inputs, "ok": self.ok, "result": self.result}
        if self.timing is not None:
            doc["timing_seconds"] = round(self.timing, 6)
        return doc

    @classmethod
    def from_json(cls, doc: dict | str) -> Report:
        if isinstance(doc, str):
            doc = json.loads(doc)
        ok = doc["ok"]
        return cls(doc["command"], doc["inputs"], doc["result"], ok, doc.get("timing_seconds"), 0 if ok else 1)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def render_text(self) -> str:
        lines = [f"{self.command}: {'ok' if self.ok else 'FAILED'}"]
        lines += _text_lines(self.result, "  ")
        if self.timing is not None:
            lines.append(f"  time: {self.timing:.3f}s")
        return "\n".join(lines)


def _text_lines(obj, indent: str) -> list[str]:
    out = []
    for key, val in obj.items():
        if isinstance(val, dict):
            out.append(f"{indent}{key}:")
            out += _text_lines(val, indent + "  ")
        else:
            out.append(f"{indent}{key}: {json.dumps(val)}")
    return out


# ---------------------------------------------------------------- helpers


def _subobject(doc: InputDocument, source: str):
    raw = parse_json_object(source)
    if doc.kind == "group":
        if "generators" not in raw:
            raise InputError(f"{source}: missing field 'generators'")
        try:
            return subgroup_generated(doc.payload, raw["generators"])
        except ValueError as exc:
            raise InputError(f"{source}: {exc}") from exc
    if doc.kind == "naring":
        if "vectors" not in raw:
            raise InputError(f"{source}: missing field 'vectors'")
        try:
            return Submodule.span(doc.payload.rank, raw["vectors"])
        except ValueError as exc:
            raise InputError(f"{source}: {exc}") from exc
    raise InputError("subobjects are only meaningful for group and naring inputs")


def _as_csl(doc: InputDocument, subs: list, cap: int):
    """Finite commutator semi-lattice for a document, with a label describer."""
    if doc.kind == "csl":
        return doc.payload, lambda i: i
    if doc.kind == "lattice":
        return csl_from_distributive_lattice(doc.payload), lambda i: i
    ctx = doc.payload.context()
    if doc.kind == "group":
        csl = ctx.materialize()
    else:
        elements = _csl.sub_collection(ctx, [ctx.top, *subs], cap=cap)
        csl = _csl.materialize(ctx, elements)
    return csl, lambda i: ctx.describe(csl.labels[i])


def _check_dict(check, describe) -> dict:
    out = {"holds": bool(check)}
    if not check:
        out["witness"] = [describe(i) for i in check.witness]
        if check.reason:
            out["reason"] = check.reason
    return out


# ---------------------------------------------------------------- commands


def _cmd_axioms(doc, subs, opts):
    try:
        csl, describe = _as_csl(doc, subs, opts.cap)
    except NotDistributiveError as exc:
        return {"distributive": False, "witness": list(exc.witness)}, False
    report = _csl.check_csl_axioms(csl, sample=opts.sample, seed=opts.seed, cap=opts.cap)
    result = {"n": csl.n, "axioms": {k: _check_dict(v, describe) for k, v in report.results.items()}}
    return result, report.ok


def _cmd_law(check):
    def run(doc, subs, opts):
        try:
            csl, describe = _as_csl(doc, subs, opts.cap)
        except NotDistributiveError as exc:
            return {"distributive": False, "witness": list(exc.witness)}, False
        res = check(csl, sample=opts.sample, seed=opts.seed, cap=opts.cap)
        return {"n": csl.n, **_check_dict(res, describe)}, res.ok
    return run


def _context(doc):
    if doc.kind not in ("group", "naring"):
        raise InputError(f"command needs a group or naring input, got {doc.kind}")
    return doc.payload.context()


def _cmd_class(doc, subs, opts):
    ctx = _context(doc)
    chain = gamma_series(ctx, opts.max_steps)
    value = chain.nilpotency_class if chain.status is Status.NILPOTENT else chain.status.value
    return {"class": value, "status": chain.status.value}, True


def _cmd_series(doc, subs, opts):
    ctx = _context(doc)
    return gamma_series(ctx, opts.max_steps).to_dict(ctx.describe), True


def _cmd_hall(doc, subs, opts):
    ctx = _context(doc)
    if len(subs) != 1:
        raise InputError("hall needs exactly one --subobject")
    N = subs[0]
    if opts.quotient_by == "commutator":
        if doc.kind != "group":
            raise InputError("--quotient-by commutator is only available for groups; pass --hom and --codomain")
        if not ctx.is_normal(N):
            raise InputError("--quotient-by commutator needs a normal subobject")
        _, p = quotient_group(doc.payload, ctx.dot(N, N))
    else:
        if not (opts.hom and opts.codomain):
            raise InputError("hall needs --quotient-by commutator or both --hom and --codomain")
        cod = parse_input(opts.codomain)
        raw = parse_json_object(opts.hom)
        try:
            if doc.kind == "group" and cod.kind == "group":
                p = GroupHom.from_map(doc.payload, cod.payload, raw["map"])
            elif doc.kind == "naring" and cod.kind == "naring":
                p = RingHom.from_matrix(doc.payload, cod.payload, raw["matrix"])
            else:
                raise InputError("domain and codomain kinds differ")
        except KeyError as exc:
            raise InputError(f"{opts.hom}: missing field {exc.args[0]!r}") from exc
        except (NotAHomomorphismError, RingError) as exc:
            raise InputError(f"{opts.hom}: {exc}") from exc
    verdict = hall_check(ctx, N, p, opts.max_steps)
    return verdict.to_dict(), verdict.theorem_holds


def _conditions(ctx, elements, condition_a_cases) -> dict:
    out = {}
    fail_a = None
    for C, S, K, L in condition_a_cases:
        if not check_condition_a(C, S, K, L):
            fail_a = [ctx.describe(x) for x in (S, K, L)]
            break
    out["a"] = {"holds": fail_a is None, "cases": len(condition_a_cases)}
    if fail_a:
        out["a"]["witness"] = fail_a
    for name, check in (("b_i", check_condition_b_i), ("b_ii", check_condition_b_ii)):
        entry = {"holds": True}
        for K, L, M in product(elements, repeat=3):
            res = check(ctx, K, L, M)
            if not res:
                entry = {
                    "holds": False,
                    "witness": [ctx.describe(x) for x in (K, L, M)],
                    "left": ctx.describe(res.left),
                    "right": ctx.describe(res.right),
                }
                break
        out[name] = entry
    return out


def _cmd_conditions(doc, subs, opts):
    ctx = _context(doc)
    if doc.kind == "group":
        G: FiniteGroup = doc.payload
        elements = ctx.elements()
        cases = [
            (G, S, K, L)
            for S in enumerate_subgroups(G)
            for K in elements if K.issubset(S)
            for L in elements if L.issubset(S)
        ]
    else:
        R: NARing = doc.payload
        elements = _csl.sub_collection(ctx, [ctx.top, *subs], cap=opts.cap)
        ideals = [e for e in elements if ctx.is_normal(e)]
        cases = [
            (R, S, K, L)
            for S in elements if ctx.is_closed(S)
            for K in ideals if K.issubset(S)
            for L in ideals if L.issubset(S)
        ]
    result = _conditions(ctx, elements, cases)
    result["elements"] = len(elements)
    return result, all(v["holds"] for v in result.values() if isinstance(v, dict))


def _cmd_bounds(doc, subs, opts):
    if doc.kind in ("csl", "lattice"):
        csl, describe = _as_csl(doc, subs, opts.cap)
        ctx, xs = csl, list(csl.elements)
    else:
        ctx = _context(doc)
        describe = ctx.describe
        xs = subs or (ctx.elements() if doc.kind == "group" else [ctx.top])
    f = _csl.inner_derivation(ctx, ctx.top)
    runs = []
    ok = True
    for x in xs:
        entry = {"x": describe(x)}
        try:
            lemma = _csl.verify_lemma_bound(ctx, f, x, opts.k_max)
            main = _csl.verify_main_bound(ctx, f, x, ctx.top, opts.k_max)
        except _csl.NoBaseIterateError:
            entry["skipped"] = "no base iterate"
        except _csl.PreconditionError as exc:
            entry["skipped"] = str(exc)
        else:
            entry["lemma"] = lemma.to_dict()
            entry["main"] = main.to_dict()
            ok = ok and lemma.all_hold and main.all_hold
        runs.append(entry)
    return {"k_max": opts.k_max, "runs": runs}, ok


def paper_example_report() -> tuple[dict, bool]:
    """Reproduce every claim about the non-associative ring counterexample."""
    ex = build_paper_example()
    ctx = ex.E.context()
    E, N, X = ctx.top, ex.N, ex.X
    zero = ctx.bottom
    d = ctx.describe
    checks = {
        "p_is_ring_hom": True,
        "kernel_is_X": ex.p.kernel() == X,
        "N_is_subring": ctx.is_closed(N),
        "NN_in_N_is_X": ctx.relative_dot(N, N, N) == X,
        "EE_is_X": ctx.dot(E, E) == X,
        "EX_is_X": ctx.dot(E, X) == X,
        "NX_is_zero": ctx.dot(N, X) == zero,
        "class_N_is_2": gamma_series(ctx.subobject_context(N)).nilpotency_class == 2,
        "class_B_is_1": gamma_series(ex.B.context()).nilpotency_class == 1,
        "E_not_nilpotent": gamma_series(ctx).status is Status.NOT_NILPOTENT,
    }
    b_ii = check_condition_b_ii(ctx, E, N, N)
    checks["jacobi_fails_at_E_N_N"] = not b_ii and b_ii.left == X and b_ii.right == zero
    sample = [zero, X, N, E]
    checks["b_i_holds_on_0_X_N_E"] = all(check_condition_b_i(ctx, *t) for t in product(sample, repeat=3))
    verdict = hall_check(ctx, N, ex.p)
    checks["hall_counterexample"] = verdict.hypotheses_hold and not verdict.theorem_holds and verdict.bound == 2
    result = {
        "E_sc": ex.E.to_json()["sc"],
        "N": d(N),
        "X": d(X),
        "gamma_E": gamma_series(ctx).to_dict(d),
        "hall": verdict.to_dict(),
        "checks": checks,
        "theorem_holds_expected": False,
    }
    return result, all(checks.values())


def _cmd_catalog(opts):
    return {"groups": [{"name": name, "order": G.order} for name, G in catalog()]}, True


def run_command(command: str, documents: Sequence[InputDocument] = (), opts: argparse.Namespace | None = None) -> Report:
    """Dispatch ``command``; input errors raise :class:`InputError`."""
    opts = opts or build_parser().parse_args([command])
    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    start = time.perf_counter()
    inputs = {}
    if command == "catalog":
        result, ok = _cmd_catalog(opts)
    elif command == "paper-example":
        result, ok = paper_example_report()
    else:
        if not documents:
            raise InputError(f"{command} needs --input")
        doc = documents[0]
        inputs["input"] = doc.digest
        subs = [_subobject(doc, s) for s in (opts.subobject or [])]
        handler = {
            "axioms": _cmd_axioms,
            "jacobi": _cmd_law(_csl.check_jacobi),
            "associative": _cmd_law(_csl.check_associative),
            "class": _cmd_class,
            "series": _cmd_series,
            "hall": _cmd_hall,
            "conditions": _cmd_conditions,
            "bounds-verify": _cmd_bounds,
        }[command]
        try:
            result, ok = handler(doc, subs, opts)
        except _csl.CapExceededError as exc:
            raise InputError(str(exc)) from exc
    elapsed = time.perf_counter() - start
    return Report(command, inputs, result, ok, elapsed if opts.timing else None, 0 if ok else 1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hallcrit", description="Commutator lattices and Hall's nilpotence criterion.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", help="input file, JSON text, or catalog:NAME")
    parser.add_argument("--subobject", action="append", help="subobject file ({'generators': ...} or {'vectors': ...})")
    parser.add_argument("--quotient-by", choices=("commutator",), help="hall: B := E/[N,N] with p the projection")
    parser.add_argument("--hom", help="hall: homomorphism file ({'map': ...} or {'matrix': ...})")
    parser.add_argument("--codomain", help="hall: codomain input for --hom")
    parser.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    parser.add_argument("--k-max", type=int, default=6)
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--sample", type=int, default=None, help="check this many random tuples instead of all")
    parser.add_argument("--cap", type=int, default=_csl.EXHAUSTIVE_CAP, help="exhaustive-check and closure size cap")
    parser.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        opts = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        docs = [parse_input(opts.input)] if opts.input else []
        report = run_command(opts.command, docs, opts)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.dumps() if opts.format == "json" else report.render_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
