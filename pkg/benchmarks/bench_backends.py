"""Time the compiled kernels against the pure-Python fallback.

Each workload runs in a fresh subprocess with SIGNEDNU_BACKEND pinned, so
the measurement includes exactly one backend and no warm caches leak
between the two runs.  Usage:

    python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import textwrap

WORKLOADS = {
    "canonical-keys": """
        import random
        from signednu import SignedGraph, canonical_key
        rng = random.Random(11)
        graphs = []
        for _ in range(120):
            n = rng.randint(4, 8)
            pairs = set()
            while len(pairs) < rng.randint(n, min(12, n * 2)):
                u, v = rng.sample(range(1, n + 1), 2)
                pairs.add((min(u, v), max(u, v), rng.random() < 0.5))
            graphs.append(SignedGraph.from_pairs(n, sorted(pairs)))
        t0 = time.perf_counter()
        for g in graphs:
            canonical_key(g)
        elapsed = time.perf_counter() - t0
    """,
    "face-search": """
        import random
        from signednu import SignedGraph, two_odd_faces
        from signednu.families import cycle_graph, double_prism
        rng = random.Random(7)
        graphs = [double_prism()]
        for _ in range(30):
            g = cycle_graph(rng.randint(4, 7), 1)
            extra = [(u, u + 2, rng.random() < 0.5)
                     for u in range(1, g.n_vertices - 1, 2)]
            pairs = [(min(e.u, e.v), max(e.u, e.v), e.odd) for e in g.edges]
            graphs.append(SignedGraph.from_pairs(g.n_vertices, pairs + extra))
        t0 = time.perf_counter()
        for g in graphs:
            two_odd_faces(g)
        elapsed = time.perf_counter() - t0
    """,
    "full-decide": """
        import random
        from signednu import SignedGraph
        from signednu.pipeline import decide_nu
        rng = random.Random(3)
        graphs = []
        for _ in range(40):
            n = rng.randint(3, 7)
            pairs = set()
            for _ in range(rng.randint(2, 11)):
                u, v = rng.sample(range(1, n + 1), 2)
                pairs.add((min(u, v), max(u, v), rng.random() < 0.5))
            graphs.append(SignedGraph.from_pairs(n, sorted(pairs)))
        t0 = time.perf_counter()
        for g in graphs:
            decide_nu(g)
        elapsed = time.perf_counter() - t0
    """,
}

DRIVER = """
import json, sys, time
from signednu import kernels
{body}
print(json.dumps({{"backend": kernels.backend_name(), "elapsed": elapsed}}))
"""


def run_workload(name: str, backend: str, repeat: int) -> float:
    body = textwrap.dedent(WORKLOADS[name])
    env = dict(os.environ, SIGNEDNU_BACKEND=backend)
    best = None
    for _ in range(repeat):
        proc = subprocess.run(
            [sys.executable, "-c", DRIVER.format(body=body)],
            env=env, capture_output=True, text=True, check=True)
        payload = json.loads(proc.stdout.strip().splitlines()[-1])
        if payload["backend"] != backend:
            raise RuntimeError(
                f"asked for backend {backend!r}, got {payload['backend']!r}")
        if best is None or payload["elapsed"] < best:
            best = payload["elapsed"]
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="take the best of N runs per cell (default 3)")
    args = ap.parse_args()

    from signednu import kernels
    backends = ["python"]
    if kernels.have_compiled():
        backends.append("compiled")
    else:
        print("note: compiled kernels unavailable; timing the fallback only")

    width = max(len(k) for k in WORKLOADS)
    header = f"{'workload'.ljust(width)}  " + "  ".join(
        f"{b:>10}" for b in backends)
    if len(backends) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name in WORKLOADS:
        cells = [run_workload(name, b, args.repeat) for b in backends]
        row = f"{name.ljust(width)}  " + "  ".join(
            f"{c * 1000:8.1f}ms" for c in cells)
        if len(cells) == 2 and cells[1] > 0:
            row += f"  {cells[0] / cells[1]:7.2f}x"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
