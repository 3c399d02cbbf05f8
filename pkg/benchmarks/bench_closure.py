"""Compare the jit-compiled and pure-numpy closure backends.

Runs the forcing closure on butterfly networks of increasing dimension,
seeded with the recursive edge-forcing construction, and reports per-call
wall time for both backends.  The numpy side runs in a subprocess with
EDGEFORCE_FORCE_NUMPY=1 so backend selection stays a process-level choice.

Usage: python3 benchmarks/bench_closure.py [--rmax 9] [--repeat 20]
"""

import argparse
import json
import os
import statistics
import subprocess
import sys
import time

WORKER = """
import json, sys, time
from edgeforce.butterfly import build_butterfly
from edgeforce.constructions import construct_edge_forcing
from edgeforce.engine import closure, matching_endpoints
from edgeforce.kernels import backend_name

r, repeat = int(sys.argv[1]), int(sys.argv[2])
g = build_butterfly(r)
black = matching_endpoints(construct_edge_forcing(r))
closure(g, black)  # warm-up (jit compile / cache touch)
times = []
for _ in range(repeat):
    t0 = time.perf_counter()
    result = closure(g, black)
    times.append(time.perf_counter() - t0)
assert len(result.final) == g.vertex_count
print(json.dumps({"backend": backend_name(), "times": times}))
"""


def run(r: int, repeat: int, force_numpy: bool) -> dict:
    env = dict(os.environ)
    if force_numpy:
        env["EDGEFORCE_FORCE_NUMPY"] = "1"
    else:
        env.pop("EDGEFORCE_FORCE_NUMPY", None)
    out = subprocess.run([sys.executable, "-c", WORKER, str(r), str(repeat)],
                         capture_output=True, text=True, env=env, check=True)
    return json.loads(out.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rmax", type=int, default=9)
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()

    print(f"{'r':>3} {'vertices':>9} {'edges':>8} "
          f"{'jit (ms)':>10} {'numpy (ms)':>11} {'speedup':>8}")
    for r in range(3, args.rmax + 1):
        fast = run(r, args.repeat, force_numpy=False)
        slow = run(r, args.repeat, force_numpy=True)
        t_fast = statistics.median(fast["times"]) * 1000
        t_slow = statistics.median(slow["times"]) * 1000
        n, m = (r + 1) * 2 ** r, r * 2 ** (r + 1)
        label = fast["backend"]
        speed = t_slow / t_fast if t_fast > 0 else float("inf")
        print(f"{r:>3} {n:>9} {m:>8} {t_fast:>10.3f} {t_slow:>11.3f} "
              f"{speed:>7.1f}x  ({label} vs {slow['backend']})")


if __name__ == "__main__":
    main()
