"""Benchmark the compiled polynomial kernel against the pure-Python fallback.

Micro benchmarks call both backends directly on the dense F_p[x] primitives;
the macro benchmark reruns a Carlitz height computation in a subprocess with
DRINHEIGHTS_PURE=1 to force the fallback.

Run:  python benchmarks/bench_backends.py
"""

import os
import random
import subprocess
import sys
import time


def timeit(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def micro():
    rng = random.Random(0)
    p = 3
    sizes = (256, 1024, 4096)
    backends = []
    try:
        from drinheights import _fastpoly as fast
        backends.append(("c", fast))
    except ImportError:
        pass
    from drinheights import _purepoly as pure
    backends.append(("python", pure))

    print("%-10s %-8s %10s %10s %10s" % ("op", "backend", *["n=%d" % n for n in sizes]))
    for op in ("mul", "divmod", "gcd"):
        for name, impl in backends:
            cols = []
            for n in sizes:
                a = [rng.randrange(p) for _ in range(n)]
                b = [rng.randrange(p) for _ in range(n // 2 + 1)]
                if op == "mul":
                    fn = lambda: impl.poly_mul(a, b, p)
                elif op == "divmod":
                    fn = lambda: impl.poly_divmod(a, b, p)
                else:
                    fn = lambda: impl.poly_gcd(a, b, p)
                cols.append("%.4fs" % timeit(fn))
            print("%-10s %-8s %10s %10s %10s" % (op, name, *cols))


MACRO = r"""
import time
from fractions import Fraction
from drinheights import backend_name, finite_field, DrinfeldModule
from drinheights.heights import global_height
from drinheights.ratfunc import parse_ratfunc
from drinheights.verify import run_verify

F3 = finite_field(3)
mod = DrinfeldModule(F3, [parse_ratfunc(F3, "t"), parse_ratfunc(F3, "1")])
t0 = time.perf_counter()
for i in range(40):
    x = parse_ratfunc(F3, "(t^3+%d*t+1)/(t^2+%d)" % (i %% 3, (i + 1) %% 3))
    global_height(mod, mod.act(parse_ratfunc(F3, "t^2+t").num, x))
h_time = time.perf_counter() - t0
t0 = time.perf_counter()
run_verify(seed=0, count=60)
v_time = time.perf_counter() - t0
print("%-8s heights: %6.2fs   verify(60): %6.2fs" % (backend_name(), h_time, v_time))
"""


def macro():
    print()
    print("macro: 40 canonical heights of phi_{t^2+t}(x) + verify suite")
    sys.stdout.flush()
    for pure in ("", "1"):
        env = dict(os.environ)
        if pure:
            env["DRINHEIGHTS_PURE"] = "1"
        else:
            env.pop("DRINHEIGHTS_PURE", None)
        subprocess.run([sys.executable, "-c", MACRO.replace("%%", "%")],
                       env=env, check=True)


if __name__ == "__main__":
    micro()
    macro()
