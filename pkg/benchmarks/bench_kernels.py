"""Compare the compiled and pure-Python kernel backends.

Each backend runs in a fresh interpreter (the backend is chosen at import
and the mode-product memo would otherwise be shared).  Usage:

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
from fractions import Fraction
from vazhu import kernels
from vazhu.voa import Algebra
from vazhu.twistzhu import TwistParams, ideal_span, clear_span_cache

out = {"backend": kernels.BACKEND}

t = time.perf_counter()
alg = Algebra("heis", automorphism="neg1", T=2)
ideal_span(alg, TwistParams(2, 1, 0), "tilde", 9)
out["heis_span_P9"] = time.perf_counter() - t

t = time.perf_counter()
alg = Algebra("vir", Fraction(1, 2))
ideal_span(alg, TwistParams(1, 1, 0), "tilde", 12)
out["vir_span_P12"] = time.perf_counter() - t

t = time.perf_counter()
alg = Algebra("vir", Fraction(7, 10))
for w in range(2, 9):
    for u in alg.basis(w):
        for v in alg.basis(w):
            alg.product_vec({u: 1}, 0, {v: 1})
out["vir_modes_w8"] = time.perf_counter() - t
print(json.dumps(out))
"""


def run(pure):
    env = dict(os.environ)
    env.pop("VAZHU_PURE_PYTHON", None)
    if pure:
        env["VAZHU_PURE_PYTHON"] = "1"
    res = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, check=True,
                         capture_output=True, text=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    best = {}
    for pure in (True, False):
        for _ in range(args.repeat):
            r = run(pure)
            b = best.setdefault(r.pop("backend"), {})
            for k, v in r.items():
                b[k] = min(v, b.get(k, v))
    names = sorted(next(iter(best.values())))
    print(f"{'workload':<16}" + "".join(f"{b:>12}" for b in best))
    for n in names:
        print(f"{n:<16}" + "".join(f"{best[b][n]:>11.3f}s" for b in best))
    if "cython" not in best:
        print("compiled backend not built; run: python3 setup.py build_ext --inplace")


if __name__ == "__main__":
    main()
