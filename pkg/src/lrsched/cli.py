"""Command-line front end: generate instances, run solvers, report gaps."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .demand import is_feasible
from .factory import COST_MODELS, counterexample, properize, random_instance, \
    read_instance, write_instance
from .local_ratio import check_level_bound, local_ratio_solve, verify_solve_invariants
from .local_ratio_rd import (
    check_level_bound_rd,
    local_ratio_solve_rd,
    verify_solve_invariants_rd,
)
from .model import Cost, format_cost, is_infinite
from .oracle import brute_force_opt
from .primal_dual import (
    check_dual_coverage,
    check_dual_feasibility,
    primal_dual_solve,
)


def _ratio(primal: Cost, bound: Fraction) -> str:
    """Exact fraction plus a six-decimal rendering (the fraction is the contract)."""
    if is_infinite(primal):
        return "inf"
    if bound == 0:
        return "inf"
    gap = Fraction(primal, bound)
    return f"{gap.numerator}/{gap.denominator} ({float(gap):.6f})"


def _parse_delta(text: str):
    if "/" in text:
        num, den = text.split("/", 1)
        return int(num), int(den)
    return int(text), 1


def _print_lr_trace(result) -> None:
    print("k t r A D alpha j s undo")
    for step in result.trace:
        a_size = sum(1 for s in step.sigma_before if s >= step.t_star)
        r_col = step.r_star if step.r_star is not None else "-"
        undo = "reverted" if step.reverted else "kept"
        print(f"{step.level} {step.t_star} {r_col} {a_size} {step.demand} "
              f"{format_cost(step.alpha)} {step.chosen_job} {step.chosen_time} {undo}")
    nonzero = sum(1 for step in result.trace if step.alpha != 0)
    print(f"# lower_bound={format_cost(result.lower_bound)} "
          f"levels={len(result.trace)} nonzero_alpha={nonzero}")


def _print_pd_trace(result) -> None:
    print("k t r A D alpha j s undo")
    for it in result.trace:
        undo = "reverted" if it.pruned else "kept"
        print(f"{it.k} {it.t_star} - {len(it.active)} {it.demand} "
              f"{format_cost(it.dual_value)} {it.job} {it.time} {undo}")
    nonzero = [dv for dv in result.duals if dv.value != 0]
    print(f"# dual_objective={format_cost(result.dual_objective)} "
          f"nonzero_duals={len(nonzero)}")
    for dv in nonzero:
        jobs = ",".join(str(j) for j in sorted(dv.jobs))
        print(f"# dual t={dv.t} A={{{jobs}}} y={format_cost(dv.value)}")


def _cmd_gen(args) -> int:
    if args.family == "counterexample":
        inst = counterexample(args.p)
        if args.properize:
            num, den = _parse_delta(args.delta)
            inst = properize(inst, num, den)
    else:
        inst = random_instance(args.seed, args.n, args.pmax, args.kappa, args.cost)
    write_instance(inst, args.output)
    print(f"wrote {args.output}")
    return 0


def _cmd_solve(args) -> int:
    inst = read_instance(args.input)
    violated = False
    if args.algo == "oracle":
        result = brute_force_opt(inst)
        print(f"opt={format_cost(result.opt_cost)}")
        return 0
    if args.algo == "pd":
        result = primal_dual_solve(inst)
        if args.trace:
            _print_pd_trace(result)
        feasible = is_feasible(inst, result.due_dates)
        print(f"primal={format_cost(result.primal_cost)} "
              f"dual={format_cost(result.dual_objective)} "
              f"gap={_ratio(result.primal_cost, result.dual_objective)} "
              f"feasible={'yes' if feasible else 'no'}")
        violated = not feasible
        if args.check_bounds:
            dual_ok = check_dual_feasibility(result.duals, inst)
            coverage = check_dual_coverage(result, inst)
            ratio = coverage.max_ratio
            print(f"dual_feasible={'yes' if dual_ok else 'no'} "
                  f"coverage_ratio_max="
                  f"{format_cost(ratio) if ratio is not None else '-'} "
                  f"exceeds_two={'yes' if not coverage.within_factor_two else 'no'}")
            violated = violated or not dual_ok
    else:
        if args.algo == "lr":
            result = local_ratio_solve(inst)
            invariants = verify_solve_invariants(inst, result)
            bounds = check_level_bound(result)
        else:
            result = local_ratio_solve_rd(inst)
            invariants = verify_solve_invariants_rd(inst, result)
            bounds = check_level_bound_rd(result, inst.kappa)
        if args.trace:
            _print_lr_trace(result)
        feasible = is_feasible(inst, result.final_sigma)
        print(f"primal={format_cost(result.primal_cost)} "
              f"lower={format_cost(result.lower_bound)} "
              f"gap={_ratio(result.primal_cost, result.lower_bound)} "
              f"feasible={'yes' if feasible else 'no'}")
        violated = not feasible
        if args.check_bounds:
            ratio = bounds.max_ratio
            print(f"invariants={'ok' if invariants.ok else 'VIOLATED'} "
                  f"level_bound_max="
                  f"{format_cost(ratio) if ratio is not None else '-'} "
                  f"factor={bounds.factor} levels_ok={'yes' if bounds.ok else 'no'}")
            for message in invariants.violations:
                print(f"violation: {message}")
            violated = violated or not invariants.ok or not bounds.ok
    return 2 if violated else 0


def _cmd_gap(args) -> int:
    values = [v for v in args.p_list.split(",") if v.strip()]
    if not values:
        print("gap: empty p-list", file=sys.stderr)
        return 2
    status = 0
    for text in values:
        p = int(text)
        if p < 4:
            print(f"warning: skipping p={p} (p must be >= 4)", file=sys.stderr)
            continue
        inst = counterexample(p)
        pd = primal_dual_solve(inst)
        lr = local_ratio_solve(inst)
        print(f"p={p} pd_primal={format_cost(pd.primal_cost)} "
              f"pd_dual={format_cost(pd.dual_objective)} "
              f"lr_primal={format_cost(lr.primal_cost)} "
              f"lr_lower={format_cost(lr.lower_bound)} "
              f"gap={_ratio(pd.primal_cost, pd.dual_objective)}")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrsched",
        description="Single-machine min-sum scheduling via due-date covering: "
                    "a primal-dual solver, a local-ratio solver with certified "
                    "lower bounds, its release-date variant, and an exact "
                    "brute-force oracle.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen_sub = gen.add_subparsers(dest="family", required=True)
    gen_cx = gen_sub.add_parser("counterexample",
                                help="the four-job gap family")
    gen_cx.add_argument("--p", type=int, required=True)
    gen_cx.add_argument("--properize", action="store_true",
                        help="shift costs one horizon right and add delta*p_j")
    gen_cx.add_argument("--delta", default="1/100", metavar="N/D")
    gen_cx.add_argument("-o", "--output", required=True)
    gen_rand = gen_sub.add_parser("random", help="seeded random instance")
    gen_rand.add_argument("--seed", type=int, required=True)
    gen_rand.add_argument("--n", type=int, required=True)
    gen_rand.add_argument("--pmax", type=int, required=True)
    gen_rand.add_argument("--kappa", type=int, default=1)
    gen_rand.add_argument("--cost", choices=COST_MODELS, default="step")
    gen_rand.add_argument("-o", "--output", required=True)

    solve = sub.add_parser("solve", help="run a solver on an instance file")
    solve.add_argument("--algo", choices=("lr", "lr-rd", "pd", "oracle"),
                       required=True)
    solve.add_argument("-i", "--input", required=True)
    solve.add_argument("--trace", action="store_true",
                       help="print the per-iteration table")
    solve.add_argument("--check-bounds", action="store_true",
                       help="verify per-level bounds and solve invariants")

    gap = sub.add_parser("gap", help="tabulate primal/dual gaps of the gap family")
    gap.add_argument("--family", choices=("counterexample",),
                     default="counterexample")
    gap.add_argument("--p-list", required=True, metavar="P1,P2,...")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "solve":
            return _cmd_solve(args)
        return _cmd_gap(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
