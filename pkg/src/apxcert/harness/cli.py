"""Command-line interface.

Exit status: 0 when every check passes, 1 when a guarantee or claimed
constant is violated (the offending instance is written to stderr), 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from .. import reductions
from ..approx import RoundingParams
from ..instances import InstanceError, PARSERS, parse_any, serialize
from ..oracles import OracleLimitError
from .experiments import ORACLES, resolve_algorithm, run_congestion_experiment, run_ratio_experiment
from .generators import CorpusSpec, generate
from .report import FORMATS, emit_report

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

# Source corpus defaults for each reduction; all sit inside the oracle limits.
REDUCTION_CORPUS = {
    "3sat-to-2sat": dict(problem="cnf", n=4, m=2, k=3),
    "2sat-to-nae3sat": dict(problem="cnf", n=6, m=8, k=2),
    "nae3sat-to-maxcut": dict(problem="cnf", n=5, m=4, k=3),
}
REDUCE_FUNCTIONS = {
    "3sat-to-2sat": lambda x: reductions.reduce_3sat_to_2sat(x).instance,
    "2sat-to-nae3sat": lambda x: reductions.reduce_2sat_to_nae3sat(x).instance,
    "nae3sat-to-maxcut": lambda x: reductions.reduce_nae3sat_to_maxcut(x).instance,
    "ksat-to-3sat": reductions.ksat_to_3sat,
}


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(0), help="unsigned 64-bit seed")
    parser.add_argument("--format", choices=FORMATS, default=d("json"), help="report format")
    parser.add_argument("--trials", type=int, default=d(10), help="independent random trials")
    parser.add_argument("--d", type=int, default=d(2), help="rounding-rounds multiplier")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="apxcert", description=__doc__.splitlines()[0])
    _global_options(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        _global_options(sp, suppress=True)
        return sp

    sp = add("solve", "run an approximation algorithm on an instance file")
    sp.add_argument("problem", choices=sorted(ORACLES))
    sp.add_argument("algorithm")
    sp.add_argument("instance")

    sp = add("oracle", "exact optimum of an instance file")
    sp.add_argument("problem", choices=sorted(ORACLES))
    sp.add_argument("instance")

    sp = add("reduce", "apply a reduction and print the target instance")
    sp.add_argument("reduction", choices=sorted(REDUCE_FUNCTIONS))
    sp.add_argument("instance")

    sp = add("verify", "measure L-reduction constants on a random corpus")
    sp.add_argument("reduction", choices=sorted(reductions.REDUCTIONS))
    sp.add_argument("--corpus-spec", default="")

    sp = add("bench", "approximation ratios against exact optima on a random corpus")
    sp.add_argument("algorithm")
    sp.add_argument("--corpus-spec", default="")

    sp = add("congestion-experiment", "congestion rounding success rates on random networks")
    sp.add_argument("--corpus-spec", default="")
    return p


def _read_instance(path: str, problem: str | None = None):
    with open(path) as fh:
        text = fh.read()
    kind = {"maxsat": "cnf", "nae3sat": "cnf", "maxcut": "graph", "vertexcover": "graph",
            "setcover": "setcover", "tsp": "metric", "congestion": "network"}.get(problem)
    return PARSERS[kind](text) if kind else parse_any(text)


def _params(args) -> RoundingParams:
    return RoundingParams(d=args.d, trials=args.trials, seed=args.seed)


def _corpus_spec(args, **defaults) -> CorpusSpec:
    """Corpus spec from ``--corpus-spec``; the global seed applies unless it names one."""
    return CorpusSpec.parse(args.corpus_spec, **{**defaults, "seed": args.seed})


def _report_violation(index: int, instance) -> None:
    print(f"violation on instance {index}:", file=sys.stderr)
    sys.stderr.write(serialize(instance))


def _cmd_solve(args):
    alg = resolve_algorithm(args.algorithm, args.problem)
    x = _read_instance(args.instance, args.problem)
    out = alg.run(x, _params(args))
    report = {"problem": alg.problem, "algorithm": alg.tag, "value": out.value,
              "guarantee": out.guarantee, "witness": out.witness}
    return report, EXIT_OK


def _cmd_oracle(args):
    x = _read_instance(args.instance, args.problem)
    res = ORACLES[args.problem](x)
    return {"problem": args.problem, "value": res.value, "witness": res.witness}, EXIT_OK


def _cmd_reduce(args):
    x = _read_instance(args.instance, "maxsat")
    sys.stdout.write(serialize(REDUCE_FUNCTIONS[args.reduction](x)))
    return None, EXIT_OK


def _cmd_verify(args):
    red = reductions.REDUCTIONS[args.reduction]
    spec = _corpus_spec(args, **REDUCTION_CORPUS[args.reduction])
    corpus = generate(spec)
    rep = reductions.verify_lreduction(red, corpus, seed=args.seed)
    bad = rep.identity_violations or not (rep.condition3_pass and rep.condition4_pass)
    if bad:
        worst = (rep.identity_violations or
                 [i for i in (rep.worst_condition3 if not rep.condition3_pass else None,
                              rep.worst_condition4 if not rep.condition4_pass else None)
                  if i is not None])
        if worst:
            _report_violation(worst[0], corpus[worst[0]])
    return rep, EXIT_VIOLATION if bad else EXIT_OK


def _cmd_bench(args):
    alg = resolve_algorithm(args.algorithm)
    spec = _corpus_spec(args, problem=alg.corpus)
    corpus = generate(spec)
    rep = run_ratio_experiment(alg.tag, corpus, _params(args))
    if rep.violations:
        _report_violation(rep.violations[0], corpus[rep.violations[0]])
        return rep, EXIT_VIOLATION
    return rep, EXIT_OK


def _cmd_congestion(args):
    spec = _corpus_spec(args, problem="network")
    corpus = generate(spec)
    rep = run_congestion_experiment(corpus, _params(args))
    bad = rep.lower_bound_violations or rep.failures
    pooled = rep.pooled_success_fraction
    if bad:
        _report_violation(bad[0], corpus[bad[0]])
    elif pooled is not None and pooled < 0.5:
        print(f"pooled success fraction {pooled} is below 1/2", file=sys.stderr)
        bad = True
    return rep, EXIT_VIOLATION if bad else EXIT_OK


COMMANDS = {
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "reduce": _cmd_reduce,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
    "congestion-experiment": _cmd_congestion,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = COMMANDS[args.command](args)
    except (InstanceError, OracleLimitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if report is not None:
        sys.stdout.write(emit_report(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
