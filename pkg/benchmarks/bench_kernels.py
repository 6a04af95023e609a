"""Benchmark the pure-Python kernels against the compiled extension.

Both backends are imported side by side and driven with identical inputs,
so the table below is an apples-to-apples comparison of the hot loops:
counting, suffix tallying, context statistics, interpolation, and
sequence scoring. Outputs are also cross-checked for exact equality.

Usage:
    python benchmarks/bench_kernels.py [--tokens N] [--order N] [--repeat N]
"""

import argparse
import itertools
import random
import time

from humorlm._kernels import _pure

try:
    from humorlm._kernels import _core
except ImportError:
    _core = None


def chain_ids(n_tokens, vocab_size=1200, branch=24, line_len=15, seed=11):
    """Lines of token ids from a random Markov chain (realistic sparsity)."""
    rng = random.Random(seed)
    successors = [rng.sample(range(1, vocab_size + 1), branch) for _ in range(vocab_size + 1)]
    lines = []
    emitted = 0
    cur = 1
    while emitted < n_tokens:
        line = []
        for _ in range(min(line_len, n_tokens - emitted)):
            cur = rng.choice(successors[cur])
            line.append(cur)
        emitted += len(line)
        lines.append(line)
    return lines


def run_backend(impl, lines, order, d=(0.7, 1.1, 1.4)):
    """One full count -> smooth -> score pass; returns (timings, outputs)."""
    timings = {}

    t0 = time.perf_counter()
    tables = [{} for _ in range(order)]
    for line in lines:
        impl.accumulate_counts(tables, line, order, False)
    timings["accumulate_counts"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    adjusted = [None] * order
    adjusted[order - 1] = tables[order - 1]
    for k in range(order - 1, 0, -1):
        adjusted[k - 1] = impl.tally_suffixes(adjusted[k])
    timings["tally_suffixes"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    stats = [impl.context_stats(t) for t in adjusted]
    timings["context_stats"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    uni_tot = sum(adjusted[0].values())
    uni_gamma = sum(d[min(c, 3) - 1] for c in adjusted[0].values()) / uni_tot
    vsize = len(adjusted[0])
    probs = [{
        g: max(c - d[min(c, 3) - 1], 0.0) / uni_tot + uni_gamma / vsize
        for g, c in adjusted[0].items()
    }]
    for k in range(2, order + 1):
        probs.append(impl.interpolate_grams(
            adjusted[k - 1], [], stats[k - 1], d[0], d[1], d[2], probs[-1]))
    backoffs = [impl.backoff_weights(stats[k], d[0], d[1], d[2]) for k in range(1, order)]
    for t in probs:
        impl.log10_values(t)
    timings["interpolate+backoff"] = time.perf_counter() - t0

    queries = lines[: max(1, len(lines) // 10)]
    t0 = time.perf_counter()
    total = 0.0
    for line in queries:
        total += impl.score_sequence_ids(probs, backoffs, line, order, False)
    timings["score_sequence_ids"] = time.perf_counter() - t0

    return timings, (adjusted, probs, backoffs, total)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tokens", type=int, default=500_000)
    ap.add_argument("--order", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3, help="best-of-N timing")
    args = ap.parse_args()

    if _core is None:
        print("compiled backend not built; showing pure-Python timings only")
    lines = chain_ids(args.tokens)
    print(f"{args.tokens} tokens, order {args.order}, {len(lines)} lines, best of {args.repeat}\n")

    results = {}
    outputs = {}
    for name, impl in (("pure", _pure),) + ((("compiled", _core),) if _core else ()):
        best = None
        for _ in range(args.repeat):
            timings, out = run_backend(impl, lines, args.order)
            if best is None:
                best = timings
                outputs[name] = out
            else:
                for key, value in timings.items():
                    best[key] = min(best[key], value)
        results[name] = best

    if _core is not None:
        pa, pp, pb, pt = outputs["pure"]
        ca, cp, cb, ct = outputs["compiled"]
        assert pa == ca and pp == cp and pb == cb and pt == ct
        print("outputs: exact match across backends\n")

    width = max(len(k) for k in results["pure"])
    header = f"{'kernel':<{width}}  {'pure (s)':>10}"
    if _core is not None:
        header += f"  {'compiled (s)':>12}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    total = {name: 0.0 for name in results}
    for key in results["pure"]:
        row = f"{key:<{width}}  {results['pure'][key]:>10.4f}"
        if _core is not None:
            row += f"  {results['compiled'][key]:>12.4f}"
            row += f"  {results['pure'][key] / results['compiled'][key]:>7.1f}x"
        print(row)
        for name in results:
            total[name] += results[name][key]
    row = f"{'total':<{width}}  {total['pure']:>10.4f}"
    if _core is not None:
        row += f"  {total['compiled']:>12.4f}  {total['pure'] / total['compiled']:>7.1f}x"
    print(row)


if __name__ == "__main__":
    main()
