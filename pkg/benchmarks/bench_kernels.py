"""Compare the compiled and numpy kernels on representative workloads.

Run with ``python3 benchmarks/bench_kernels.py``. Prints the best of several
repeats per backend and the speedup.
"""

import argparse
import math
import timeit

import numpy as np

from centralqfi._backend import available_backends
from centralqfi.bath import BathSpec, sector_arrays
from centralqfi.model import ModelParams
from centralqfi.qfi import EstimatedParameter, central_derivative
from centralqfi.state import qubit_amplitudes


def sweep_inputs(n_bath, theta2=math.pi / 3):
    p = ModelParams(0.1, 0.1, 0.5, 0.1)
    thetas = np.linspace(0, math.pi, 201)
    times = np.linspace(0, 15, 601)
    if n_bath:
        deltas, w = sector_arrays(BathSpec(n_bath, p.g), p)
        weights = np.tile(w, (len(thetas), 1))
    else:
        deltas = np.array([p.delta_minus, p.delta_plus])
        weights = np.tile([math.cos(theta2) ** 2, math.sin(theta2) ** 2], (len(thetas), 1))
    q0 = np.array([qubit_amplitudes(th, math.pi) for th in thetas])
    dq0 = np.array([central_derivative(th, math.pi, EstimatedParameter.WEIGHT) for th in thetas])
    return (deltas, weights, p.omega1, p.omega, True, q0, dq0, times, True)


def rk4_inputs(batch=400, t_end=10.0):
    rng = np.random.default_rng(0)
    v0 = np.zeros((batch, 2), dtype=complex)
    v0[::2, 0] = 1
    v0[1::2, 1] = 1
    return (rng.uniform(-3, 3, batch), rng.uniform(-2, 2, batch), rng.uniform(-2, 2, batch), v0, t_end, 1e-3)


WORKLOADS = {
    "single-spin sweep 201x601": ("mixture_sweep", lambda: sweep_inputs(0)),
    "bath n=7 sweep 201x601": ("mixture_sweep", lambda: sweep_inputs(7)),
    "rk4 400 trajectories t=10": ("rk4_lab_batch", rk4_inputs),
}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    backends = available_backends()
    print(f"backends: {', '.join(sorted(backends))}")
    for label, (fn_name, make) in WORKLOADS.items():
        inputs = make()
        times = {}
        for name, mod in sorted(backends.items()):
            fn = getattr(mod, fn_name)
            times[name] = min(timeit.repeat(lambda: fn(*inputs), number=1, repeat=args.repeat))
        cells = "  ".join(f"{name} {t * 1e3:9.2f} ms" for name, t in sorted(times.items()))
        speedup = ""
        if "cython" in times:
            speedup = f"  speedup x{times['python'] / times['cython']:.1f}"
        print(f"{label:28s} {cells}{speedup}")


if __name__ == "__main__":
    main()
