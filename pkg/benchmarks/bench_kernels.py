"""Benchmark: compiled kernels versus the pure-Python fallback.

Micro-benchmarks exercise each kernel on inputs large enough for the typed
loops to matter (the desk-scale test suite barely does).  The end-to-end
section re-runs a batch of solver calls in subprocesses with and without
``ODC_PURE_PYTHON=1``, measuring the whole stack.

Usage: python benchmarks/bench_kernels.py [--skip-end-to-end]
"""

import argparse
import os
import random
import statistics
import subprocess
import sys
import time

from odc import _kernels_py as pure

try:
    from odc import _kernels as compiled
except ImportError:
    compiled = None


def timed(fn, *args, repeat=5):
    best = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best.append(time.perf_counter() - t0)
    return statistics.median(best)


def rand_table(rng, n, k, density=0.8):
    return [rng.randrange(n) if rng.random() < density else -1 for _ in range(n * k)]


def workloads():
    rng = random.Random(2024)

    n, k = 300, 4
    da, db = rand_table(rng, n, k), rand_table(rng, n, k)
    yield "product_reach (300x300 states, 4 symbols)", "product_reach", (
        k, da, n, 0, db, n, 0, False,
    )

    n = 60
    moves = [
        tuple(sorted(rng.sample(range(n), rng.randint(0, 3)))) for _ in range(n * 4)
    ]
    eps = [tuple(sorted(rng.sample(range(n), rng.randint(0, 2)))) for _ in range(n)]
    yield "subset_reach (60-state NFA, 4 symbols)", "subset_reach", (n, moves, eps, (0,), 4)

    n, k = 40, 3
    delta = rand_table(rng, n, k, density=0.5)
    acc = [rng.random() < 0.3 for _ in range(n)]
    yield "enum_accepted (40 states, depth 10)", "enum_accepted", (k, delta, 0, acc, 10, None)

    n, k = 400, 4
    delta = rand_table(rng, n, k)
    acc = sorted(rng.sample(range(n), 40))
    yield "reachable/coaccessible masks (400 states)", "coaccessible_mask", (n, k, delta, acc)

    # Unsatisfiable constraint system: the search must scan all 2**20
    # assignments, which is the oracle's worst case.
    bits = 20
    masks = [(1 << i) | (1 << ((i + 7) % bits)) for i in range(bits)]
    reqs = [1] * (bits - 1) + [0]
    masks.append(masks[0])
    reqs.append(1)
    masks[-2], reqs[-2] = masks[0], 0  # direct contradiction with the first
    yield "assignment_search (2^20 full scan)", "assignment_search", (bits, True, masks, reqs)


def run_micro():
    print(f"{'workload':<48} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for label, name, args in workloads():
        t_pure = timed(getattr(pure, name), *args)
        if compiled is None:
            print(f"{label:<48} {t_pure*1e3:>8.2f}ms {'-':>10} {'-':>8}")
            continue
        t_comp = timed(getattr(compiled, name), *args)
        assert getattr(pure, name)(*args) == getattr(compiled, name)(*args)
        speedup = t_pure / t_comp if t_comp else float("inf")
        print(f"{label:<48} {t_pure*1e3:>8.2f}ms {t_comp*1e3:>8.2f}ms {speedup:>7.1f}x")


END_TO_END = r"""
import random, time
from odc import backend_name, solve_obs, solve_con, oracle_solve_obs, enumerate_upto
from tests.gen import rand_obs_instance, rand_con_instance
rng = random.Random(77)
t0 = time.perf_counter()
for _ in range(150):
    o = rand_obs_instance(rng)
    solve_obs(o)
    words = enumerate_upto(o.plant, o.plant.n_states)
    spec = enumerate_upto(o.spec, o.spec.n_states)
    try:
        oracle_solve_obs(words, spec, o.observed, o.fusion, budget=1 << 14)
    except Exception:
        pass
    solve_con(rand_con_instance(rng))
print(f"{backend_name()}: {time.perf_counter() - t0:.2f}s for 150 solve+oracle rounds")
"""


def run_end_to_end(root):
    for env_extra in ({}, {"ODC_PURE_PYTHON": "1"}):
        env = dict(os.environ, **env_extra)
        proc = subprocess.run(
            [sys.executable, "-c", END_TO_END],
            cwd=root,
            env=env,
            capture_output=True,
            text=True,
        )
        sys.stdout.write(proc.stdout or proc.stderr)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--skip-end-to-end", action="store_true")
    args = parser.parse_args()
    if compiled is None:
        print("compiled extension not built; showing pure-Python timings only")
    run_micro()
    if not args.skip_end_to_end:
        print()
        run_end_to_end(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


if __name__ == "__main__":
    main()
