"""Command line interface: one binary, stable JSON schemas, a batch driver.

Every subcommand is a thin wrapper over the library; no algorithmic logic
lives here.  ``verify-all`` runs the whole verification suite and emits a
schema-versioned machine-readable report; with a fixed seed the report is
byte-identical across runs.  The PIK_THREADS environment variable caps the
process pool used to run independent checks (default 1, sequential).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Callable, Optional

from . import ajohnson, conj, decomp, endos, fuzz, igroup, lie, magnus
from .conj import SearchBudget
from .prng import Lcg
from .words import ParseError, parse_word, parse_x_word

SCHEMA = "pik/1"


@dataclass(frozen=True)
class RunConfig:
    n: int = 3
    max_degree: int = 4
    budget_len: int = 10
    budget_coset: int = 8
    budget_nilpotency: int = 4
    seed: int = 20240601
    fuzz_words: int = 100
    fuzz_conj: int = 40
    output_format: str = "json"  # "json" | "text"
    output_path: Optional[str] = None
    negative_control: Optional[str] = None

    def __post_init__(self) -> None:
        if self.n < 2 or self.max_degree < 1:
            raise ValueError("bounds must be positive")
        if min(self.budget_len, self.budget_coset, self.budget_nilpotency) < 1:
            raise ValueError("budgets must be positive")

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "max_degree": self.max_degree,
            "budgets": {
                "len": self.budget_len,
                "coset": self.budget_coset,
                "nilpotency": self.budget_nilpotency,
            },
            "seed": self.seed,
            "fuzz": {"words": self.fuzz_words, "conjugacy": self.fuzz_conj},
        }


def emit_report(results: list[dict], config: Optional[RunConfig] = None) -> dict:
    report: dict = {"schema": SCHEMA}
    if config is not None:
        report["config"] = config.as_dict()
    report["checks"] = results
    return report


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _report_text(report: dict) -> str:
    lines = []
    for check in report.get("checks", []):
        lines.append(f"{check['status']:4s}  {check['name']}")
    ok = all(c["status"] == "pass" for c in report.get("checks", []))
    lines.append("OK" if ok else "FAILED")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# verify-all checks.  Top-level functions taking the config dict so a process
# pool can run them; each returns {name, status, details}.
# ---------------------------------------------------------------------------


def _check(name: str, ok: bool, details: dict) -> dict:
    return {"name": name, "status": "pass" if ok else "fail", "details": details}


def check_mccool(cfg: RunConfig) -> dict:
    factory = endos.perturbed_chi if cfg.negative_control == "perturb-chi" else endos.chi
    rep = endos.check_mccool_relations(cfg.n, chi_factory=factory)
    return _check("mccool_relations", rep.ok, rep.as_dict())


def check_igroup_relations(cfg: RunConfig) -> dict:
    failures = []
    count = 0
    for label, wordstr in igroup.relation_instances(cfg.n):
        count += 1
        tokens = parse_word(wordstr)
        if not igroup.word_problem(cfg.n, tokens):
            failures.append(label + " (collection)")
        if not endos.is_identity(igroup.direct_endo(cfg.n, tokens)):
            failures.append(label + " (automorphism)")
    return _check(
        "igroup_relations", not failures, {"instances": count, "failures": failures}
    )


def check_normal_form_fuzz(cfg: RunConfig) -> dict:
    rng = Lcg(cfg.seed)
    bad = 0
    for _ in range(cfg.fuzz_words):
        tokens = fuzz.random_gen_tokens(rng, cfg.n, 30)
        collected = igroup.collect(cfg.n, tokens)
        if igroup.to_endo(collected) != igroup.direct_endo(cfg.n, tokens):
            bad += 1
    return _check("normal_form_fuzz", bad == 0, {"cases": cfg.fuzz_words, "failures": bad})


def check_conjugacy_fuzz(cfg: RunConfig) -> dict:
    rng = Lcg(cfg.seed + 1)
    planted_fail = 0
    for _ in range(cfg.fuzz_conj):
        x, y, budget = fuzz.planted_conjugacy_case(rng, cfg.n, 8)
        budget = SearchBudget(
            max_len=cfg.budget_len,
            coset=cfg.budget_coset,
            nilpotency=cfg.budget_nilpotency,
            gen_radius=budget.gen_radius,
        )
        res = conj.conjugacy(x, y, budget)
        if res.verdict != "conjugate":
            planted_fail += 1
    refute_fail = 0
    for _ in range(cfg.fuzz_conj // 2):
        x = fuzz.random_ielem(rng, cfg.n, 6)
        y = fuzz.random_ielem(rng, cfg.n, 6)
        if igroup.abelianize(x) == igroup.abelianize(y):
            continue
        res = conj.conjugacy(x, y)
        if res.verdict != "not_conjugate":
            refute_fail += 1
    ok = planted_fail == 0 and refute_fail == 0
    return _check(
        "conjugacy_fuzz",
        ok,
        {"planted": cfg.fuzz_conj, "planted_failures": planted_fail, "refuted_failures": refute_fail},
    )


def check_theorem_th1(cfg: RunConfig) -> dict:
    rels = decomp.build_relators(cfg.n)
    if cfg.negative_control == "drop-relator":
        rels = rels.without(rels.of_kind(3)[0])
    rep = decomp.verify_theorem_th1(cfg.n, cfg.max_degree, relators=rels)
    details = rep.as_dict()
    fail = rep.first_failure()
    if fail is not None:
        details["first_failure"] = {
            "m": fail.m,
            "rank_deficit": fail.witt_rank - fail.direct_sum.rank_sum,
        }
    return _check("theorem_th1", rep.ok, details)


def check_tilde_t(cfg: RunConfig) -> dict:
    rep = decomp.verify_tilde_T(cfg.n, min(cfg.max_degree, 3))
    return _check("tilde_T", rep.ok, rep.as_dict())


def check_rank_table(cfg: RunConfig) -> dict:
    rows = decomp.gr_rank_table(cfg.n, cfg.max_degree)
    ok = all(r.ok for r in rows)
    return _check("gr_rank_table", ok, {"rows": [r.as_dict() for r in rows]})


def check_l1_ranks(cfg: RunConfig) -> dict:
    rows = []
    ok = True
    for c in range(1, min(2, cfg.max_degree) + 1):
        got = ajohnson.l1_rank(cfg.n, c, c + 2)
        want = sum(lie.witt(i, c) for i in range(2, cfg.n + 1))
        rows.append({"c": c, "l1_rank": got, "expected": want})
        ok = ok and got == want
    return _check("l1_rank_identity", ok, {"rows": rows})


def check_thu1(cfg: RunConfig) -> dict:
    rows = []
    ok = True
    for c in (1, 2):
        rep = ajohnson.thu1_bound(cfg.n, c)
        rows.append(rep.as_dict())
        ok = ok and rep.certified
    return _check("thu1_bound", ok, {"rows": rows})


_CHECKS: list[Callable[[RunConfig], dict]] = [
    check_mccool,
    check_igroup_relations,
    check_normal_form_fuzz,
    check_conjugacy_fuzz,
    check_theorem_th1,
    check_tilde_t,
    check_rank_table,
    check_l1_ranks,
    check_thu1,
]


def cmd_verify_all(cfg: RunConfig) -> int:
    threads = int(os.environ.get("PIK_THREADS", "1") or "1")
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_check, [(i, cfg) for i in range(len(_CHECKS))]))
    else:
        results = [fn(cfg) for fn in _CHECKS]
    report = emit_report(results, cfg)
    text = _dump(report) if cfg.output_format == "json" else _report_text(report)
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [c["name"] for c in results if c["status"] != "pass"]
    if failed:
        print(f"failed checks: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def _run_check(item: tuple[int, RunConfig]) -> dict:
    idx, cfg = item
    return _CHECKS[idx](cfg)


# ---------------------------------------------------------------------------
# Argument parsing.
# ---------------------------------------------------------------------------


def _budget_from_args(args) -> SearchBudget:
    return SearchBudget(
        max_len=args.budget_len,
        coset=args.budget_coset,
        nilpotency=args.budget_nilpotency,
        gen_radius=args.budget_radius,
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pik")
    sub = p.add_subparsers(dest="command", required=True)

    endos_p = sub.add_parser("endos", help="automorphism generators and relations")
    endos_sub = endos_p.add_subparsers(dest="subcommand", required=True)
    mc = endos_sub.add_parser("check-mccool")
    mc.add_argument("--n", type=int, required=True)

    ig = sub.add_parser("igroup", help="normal-form arithmetic")
    ig_sub = ig.add_subparsers(dest="subcommand", required=True)
    nf = ig_sub.add_parser("normal-form")
    nf.add_argument("--n", type=int, required=True)
    nf.add_argument("word")
    wp = ig_sub.add_parser("word-problem")
    wp.add_argument("--n", type=int, required=True)
    wp.add_argument("word")

    mg = sub.add_parser("magnus", help="truncated Magnus expansion")
    mg_sub = mg.add_subparsers(dest="subcommand", required=True)
    ex = mg_sub.add_parser("expand")
    ex.add_argument("--n", type=int, required=True)
    ex.add_argument("--maxdeg", type=int, required=True)
    ex.add_argument("word")

    cj = sub.add_parser("conj", help="conjugacy decision")
    cj_sub = cj.add_subparsers(dest="subcommand", required=True)
    dec = cj_sub.add_parser("decide")
    dec.add_argument("--n", type=int, required=True)
    dec.add_argument("--budget-len", type=int, default=16)
    dec.add_argument("--budget-coset", type=int, default=8)
    dec.add_argument("--budget-nilpotency", type=int, default=4)
    dec.add_argument("--budget-radius", type=int, default=8)
    dec.add_argument("x_word")
    dec.add_argument("y_word")

    li = sub.add_parser("lie", help="free Lie algebra data")
    li_sub = li.add_subparsers(dest="subcommand", required=True)
    wt = li_sub.add_parser("witt")
    wt.add_argument("--N", type=int, required=True)
    wt.add_argument("--c", type=int, required=True)
    bs = li_sub.add_parser("basis")
    bs.add_argument("--N", type=int, required=True)
    bs.add_argument("--m", type=int, required=True)
    bs.add_argument("--format", choices=["json", "text"], default="json")

    dc = sub.add_parser("decomp", help="graded decomposition certificates")
    dc_sub = dc.add_subparsers(dest="subcommand", required=True)
    dv = dc_sub.add_parser("verify")
    dv.add_argument("--n", type=int, required=True)
    dv.add_argument("--max-degree", type=int, required=True)
    dv.add_argument("--format", choices=["json", "text"], default="json")
    rt = dc_sub.add_parser("rank-table")
    rt.add_argument("--n", type=int, required=True)
    rt.add_argument("--max-degree", type=int, required=True)

    ia = sub.add_parser("ia", help="IA filtration ranks")
    ia_sub = ia.add_subparsers(dest="subcommand", required=True)
    l1 = ia_sub.add_parser("l1-rank")
    l1.add_argument("--n", type=int, required=True)
    l1.add_argument("--c", type=int, required=True)
    th = ia_sub.add_parser("thu1")
    th.add_argument("--n", type=int, required=True)
    th.add_argument("--c", type=int, required=True)

    va = sub.add_parser("verify-all", help="run the full verification suite")
    va.add_argument("--n", type=int, default=3)
    va.add_argument("--max-degree", type=int, default=4)
    va.add_argument("--seed", type=int, default=20240601)
    va.add_argument("--fuzz-words", type=int, default=100)
    va.add_argument("--fuzz-conj", type=int, default=40)
    va.add_argument("--budget-len", type=int, default=10)
    va.add_argument("--budget-coset", type=int, default=8)
    va.add_argument("--budget-nilpotency", type=int, default=4)
    va.add_argument("--format", choices=["json", "text"], default="json")
    va.add_argument("--out", default=None)
    va.add_argument(
        "--negative-control",
        choices=["drop-relator", "perturb-chi"],
        default=None,
        help="corrupt one input on purpose; the run must fail",
    )

    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ParseError as exc:
        print(json.dumps({"error": str(exc), "column": exc.column}), file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2


def _print(obj: dict) -> None:
    sys.stdout.write(_dump(obj))


def _dispatch(args) -> int:
    if args.command == "endos" and args.subcommand == "check-mccool":
        rep = endos.check_mccool_relations(args.n)
        _print({"instances": rep.instances, "failures": list(rep.failures)})
        return 0 if rep.ok else 1

    if args.command == "igroup":
        tokens = parse_word(args.word)
        if args.subcommand == "normal-form":
            elem = igroup.collect(args.n, tokens)
            comps = {
                str(m): igroup.format_level_word(elem.part(m))
                for m in range(args.n, 1, -1)
            }
            _print({"components": comps})
            return 0
        if args.subcommand == "word-problem":
            _print({"trivial": igroup.word_problem(args.n, tokens)})
            return 0

    if args.command == "magnus" and args.subcommand == "expand":
        w = parse_x_word(args.word, args.n)
        poly = magnus.magnus_expand(w, args.maxdeg)
        terms = [
            {"monomial": list(mono), "coeff": coeff} for mono, coeff in poly.sorted_terms()
        ]
        sys.stdout.write(json.dumps(terms, sort_keys=True, indent=2) + "\n")
        return 0

    if args.command == "conj" and args.subcommand == "decide":
        x = igroup.collect(args.n, parse_word(args.x_word))
        y = igroup.collect(args.n, parse_word(args.y_word))
        res = conj.conjugacy(x, y, _budget_from_args(args))
        _print(res.as_dict())
        return 0

    if args.command == "lie":
        if args.subcommand == "witt":
            _print({"N": args.N, "c": args.c, "witt": lie.witt(args.N, args.c)})
            return 0
        if args.subcommand == "basis":
            basis = lie.lyndon_basis(args.N, args.m)
            if args.format == "json":
                _print(
                    {
                        "N": args.N,
                        "m": args.m,
                        "count": len(basis),
                        "basis": [
                            {
                                "lyndon_word": list(e.lyndon[0][0]),
                                "tensor": [
                                    {"monomial": list(mono), "coeff": c}
                                    for mono, c in e.coords.sorted_terms()
                                ],
                            }
                            for e in basis
                        ],
                    }
                )
            else:
                for e in basis:
                    print("".join(str(a) for a in e.lyndon[0][0]))
            return 0

    if args.command == "decomp":
        if args.subcommand == "verify":
            rep = decomp.verify_theorem_th1(args.n, args.max_degree)
            if args.format == "json":
                _print(rep.as_dict())
            else:
                for d in rep.degrees:
                    print(f"m={d.m}: J={d.rank_j} Y={list(d.ranks_y)} ok={d.ok}")
            return 0 if rep.ok else 1
        if args.subcommand == "rank-table":
            rows = decomp.gr_rank_table(args.n, args.max_degree)
            _print({"rows": [r.as_dict() for r in rows]})
            return 0 if all(r.ok for r in rows) else 1

    if args.command == "ia":
        if args.subcommand == "l1-rank":
            rank = ajohnson.l1_rank(args.n, args.c, args.c + 2)
            _print({"n": args.n, "c": args.c, "l1_rank": rank})
            return 0
        if args.subcommand == "thu1":
            rep = ajohnson.thu1_bound(args.n, args.c)
            _print(rep.as_dict())
            return 0 if rep.certified else 1

    if args.command == "verify-all":
        cfg = RunConfig(
            n=args.n,
            max_degree=args.max_degree,
            budget_len=args.budget_len,
            budget_coset=args.budget_coset,
            budget_nilpotency=args.budget_nilpotency,
            seed=args.seed,
            fuzz_words=args.fuzz_words,
            fuzz_conj=args.fuzz_conj,
            output_format=args.format,
            output_path=args.out,
            negative_control=args.negative_control,
        )
        return cmd_verify_all(cfg)

    raise ValueError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
