"""Compare the compiled and numpy evaluation backends.

Times three paths on both backends: raw program evaluation over a large
vector, batched Gauss-Kronrod panel sums, and a full adaptive
integration of a representative integrand.  The compiled core dispatches
per point, so it wins the adaptive driver's small-batch regime (few
panels per refinement round) while vectorized numpy wins bulk
throughput; the integrate column is the workload the verifiers spend
their time in.

Run from the repository root:

    python3 benchmarks/bench_backends.py [--repeats 5] [--points 200000]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from gafrac import _kernels
from gafrac.expr.parser import parse
from gafrac.expr.program import compile_ast
from gafrac.quadrature import integrate

EXPR = "exp(1.0 + 0.7*x)*abs(2*(0.3 + x*(1.1 - 0.4*x)) - 1.9) + ln(1 + exp(x))"


def _timeit(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--points", type=int, default=200_000)
    ap.add_argument("--panels", type=int, default=4096)
    args = ap.parse_args()

    program = compile_ast(parse(EXPR))
    xs = np.linspace(0.0, 1.0, args.points)
    los = np.linspace(0.0, 1.0, args.panels + 1)[:-1]
    his = los + 1.0 / args.panels

    rows = []
    for name in _kernels.available_backends():
        _kernels.set_backend(name)
        kern = _kernels.kernels()

        t_eval = _timeit(
            lambda: kern.eval_program(program.ops, program.args,
                                      program.consts, program.stack_need, xs),
            args.repeats,
        )
        t_panel = _timeit(
            lambda: kern.panel_eval(program.ops, program.args, program.consts,
                                    program.stack_need, los, his),
            args.repeats,
        )
        t_quad = _timeit(lambda: integrate(program, 0.0, 1.0), args.repeats)
        rows.append((name, t_eval, t_panel, t_quad))

    print(f"integrand: {EXPR}")
    print(f"{args.points} points, {args.panels} panels, "
          f"best of {args.repeats}\n")
    header = f"{'backend':<10}{'eval_program':>14}{'panel_eval':>14}" \
             f"{'integrate':>14}"
    print(header)
    print("-" * len(header))
    for name, t_eval, t_panel, t_quad in rows:
        print(f"{name:<10}{t_eval * 1e3:>12.2f}ms{t_panel * 1e3:>12.2f}ms"
              f"{t_quad * 1e3:>12.2f}ms")
    by_name = {r[0]: r for r in rows}
    if "fast" in by_name and "pure" in by_name:
        f, p = by_name["fast"], by_name["pure"]
        print(f"\npure/fast time ratio: eval {p[1] / f[1]:.2f}, "
              f"panels {p[2] / f[2]:.2f}, integrate {p[3] / f[3]:.2f}")


if __name__ == "__main__":
    main()
