"""Compare the compiled and pure-Python integration kernels.

Run:  python benchmarks/bench_kernel.py
"""

import time

import numpy as np

from homoflow._integrate import _dopri_py

try:
    from homoflow._integrate import _dopri_cy
except ImportError:
    _dopri_cy = None

CASES = [
    # (form, nu, c1, c2, c3, t0, t1, u0)
    (0, 1.0, 0.0, 0.0, 0.5, -0.95, 0.95, 1.0),
    (0, 0.05, 25.0 / 9.0, 1.0 / 9.0, -2.0, -0.95, 0.95, 0.0),
    (1, 1.0, -1.0, 8.0, -1.5, np.log(0.05), np.log(1e-12), 2.0),
    (2, 0.5, 0.0, 0.0, 0.5, np.log(0.05), np.log(1e-12), -2.0),
]


def bench(mod, repeats=200):
    t = time.perf_counter()
    for _ in range(repeats):
        for form, nu, c1, c2, c3, t0, t1, u0 in CASES:
            mod.integrate_riccati(
                form, nu, c1, c2, c3, t0, t1, u0, 1e-10, 1e-12, 1e6
            )
    return (time.perf_counter() - t) / repeats


def main():
    t_py = bench(_dopri_py)
    print(f"pure python : {t_py * 1e3:8.3f} ms per case set")
    if _dopri_cy is None:
        print("compiled    : not built")
        return
    t_cy = bench(_dopri_cy)
    print(f"compiled    : {t_cy * 1e3:8.3f} ms per case set")
    print(f"speedup     : {t_py / t_cy:8.1f}x")
    # twins must agree exactly
    for case in CASES:
        form, nu, c1, c2, c3, t0, t1, u0 = case
        rp = _dopri_py.integrate_riccati(
            form, nu, c1, c2, c3, t0, t1, u0, 1e-10, 1e-12, 1e6
        )
        rc = _dopri_cy.integrate_riccati(
            form, nu, c1, c2, c3, t0, t1, u0, 1e-10, 1e-12, 1e6
        )
        assert rp[0] == rc[0] and np.array_equal(rp[1], rc[1]) and np.array_equal(
            rp[2], rc[2]
        ), f"kernel mismatch for {case}"
    print("twins agree bit-for-bit on all benchmark cases")


if __name__ == "__main__":
    main()
