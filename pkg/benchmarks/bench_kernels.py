"""Time the hot kernels with numba and with the pure-Python fallback.

Each mode runs in its own interpreter because INCEHEUN_DISABLE_NUMBA is read
at import. Compilation is excluded: every case is called once before timing.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def cases():
    from inceheun import _kernels as k
    from inceheun import solutions as S
    from inceheun.equations import InceGsweParams

    rng = np.random.default_rng(1)
    ys = rng.uniform(-0.9, 0.9, 200) + 1j * rng.uniform(-0.3, 0.3, 200)
    xis = rng.uniform(0.5, 20, 200) + 1j * rng.uniform(-5, 5, 200)
    n = 400
    a = np.ones(n, dtype=np.complex128)
    b = np.full(n, 2.0 + 0.1j)
    diag = 2.0 + rng.uniform(0, 1, n) + 0j
    off = np.ones(n, dtype=np.complex128)
    pg = InceGsweParams(0.6 + 0.1j, 1.3, 0.4, 1.0, 0.8)
    zs = [0.3 + 0.2j, 0.5 - 0.1j, 0.7 + 0.05j]

    def gauss():
        for y in ys:
            k.hyp2f1(0.3 + 0.1j, 1.7, 2.2 - 0.3j, complex(y), 1e-15, 4000)

    def bessel():
        for xi in xis:
            k.besselk(1.3 + 0.4j, complex(xi), 1e-14)

    def cfrac():
        for _ in range(200):
            k.lentz(a, b, 1e-15, 1e-300)

    def hill():
        for _ in range(200):
            k.hill_determinant(off, diag, off)

    def series():
        z, _ = S.build_pair("InceGswe-nu-1", pg)
        for x in zs:
            z(x)

    return {"hyp2f1 x200": gauss, "besselk x200": bessel, "lentz x200": cfrac,
            "hill determinant x200": hill, "build + evaluate IG pair": series}


def worker(repeat):
    out = {}
    for name, fn in cases().items():
        fn()
        ts = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            ts.append(time.perf_counter() - t0)
        out[name] = min(ts)
    json.dump(out, sys.stdout)


def run(disabled, repeat):
    env = dict(os.environ, INCEHEUN_DISABLE_NUMBA="1" if disabled else "0")
    r = subprocess.run([sys.executable, __file__, "--worker", "--repeat", str(repeat)],
                       env=env, capture_output=True, text=True, check=True)
    return json.loads(r.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--worker", action="store_true")
    args = ap.parse_args()
    if args.worker:
        return worker(args.repeat)
    jit, py = run(False, args.repeat), run(True, args.repeat)
    print(f"{'case':28s} {'numba [ms]':>12s} {'python [ms]':>12s} {'speedup':>8s}")
    for name in jit:
        print(f"{name:28s} {1e3 * jit[name]:12.2f} {1e3 * py[name]:12.2f} {py[name] / jit[name]:8.1f}")


if __name__ == "__main__":
    main()
