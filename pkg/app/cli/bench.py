"""
Synthetic scaling runs: n inputs, m outputs and k edge-triggered lock conjuncts.
"""
import csv
import io
import logging
import random

from cli.synth import SynthOptions, run_pipeline

logger = logging.getLogger(__name__)

COLUMNS = ('n_in', 'n_out', 'k', 'parse_ms', 'build_ms', 'encode_ms', 'solve_ms', 'verdict')


def bench_spec_text(n_in: int, n_out: int, k: int, seed: int = 0) -> str:
    """
    Spec with `k` conjuncts G(rise(a) -> X(o W rise(b))) spread over the outputs.

    Every lock drives its output true, so the instance is realizable.
    """
    rng = random.Random(seed)
    inputs = [f"in{j}" for j in range(n_in)]
    outputs = [f"out{j}" for j in range(n_out)]
    lines = [f"input {', '.join(inputs)};", f"output {', '.join(outputs)};"]
    for m in range(k):
        trigger, release = rng.sample(inputs, 2) if n_in > 1 else (inputs[0], inputs[0])
        out = outputs[m % n_out]
        lines.append(f"L{m}: G((!{trigger} & X {trigger}) -> X({out} W (!{release} & X {release})));")
    return "\n".join(lines) + "\n"


def bench_row(n_in: int, n_out: int, k: int, seed: int = 0) -> dict:
    outcome = run_pipeline(bench_spec_text(n_in, n_out, k, seed), f"bench-{n_in}-{n_out}-{k}",
                           SynthOptions(seed=seed))
    timings = outcome.report.timings
    return {
        'n_in': n_in,
        'n_out': n_out,
        'k': k,
        'parse_ms': timings.get('parse', 0.0),
        'build_ms': timings.get('build', 0.0),
        'encode_ms': timings.get('encode', 0.0),
        'solve_ms': timings.get('solve', 0.0),
        'verdict': outcome.report.verdict,
    }


def cmd_bench(args) -> int:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=COLUMNS, lineterminator='\n')
    writer.writeheader()
    for k in args.k:
        row = bench_row(args.n_in, args.n_out, k, args.seed)
        logger.info("bench k=%d: %s", k, row['verdict'])
        writer.writerow(row)
    print(buffer.getvalue(), end='')
    return 0
