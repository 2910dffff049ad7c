"""Run GCD circuits on classical inputs and check them against math.gcd."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit
from .gcd import GcdLayout, GcdOptions, build_gcd
from .simulator import SimulationError, apply_batch, load, read

EXHAUSTIVE_CAP = 5


@dataclass(frozen=True)
class GcdRunResult:
    gcd_out: int
    inputs_restored: bool
    ancillae_clear: bool
    active_steps: int


@dataclass
class BatchRun:
    a: np.ndarray
    b: np.ndarray
    gcd_out: np.ndarray
    inputs_restored: np.ndarray
    ancillae_clear: np.ndarray
    active_steps: np.ndarray

    def result(self, i: int) -> GcdRunResult:
        return GcdRunResult(int(self.gcd_out[i]), bool(self.inputs_restored[i]),
                            bool(self.ancillae_clear[i]), int(self.active_steps[i]))


def _check_inputs(layout: GcdLayout, a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.atleast_1d(np.asarray(a, dtype=np.int64))
    b = np.atleast_1d(np.asarray(b, dtype=np.int64))
    hi = 1 << layout.n
    if np.any((a < 0) | (a >= hi) | (b < 0) | (b >= hi)):
        raise SimulationError(f"inputs must lie in [0, {hi})")
    return np.broadcast_arrays(a, b)


def _ancilla_bits(layout: GcdLayout, states: np.ndarray) -> np.ndarray:
    cols = [q for name, reg in layout.registers.items() if reg.ancilla for q in reg.qubits]
    return states[:, cols]


def run_gcd_batch(circuit: Circuit, layout: GcdLayout, a, b) -> BatchRun:
    a, b = _check_inputs(layout, a, b)
    start = load(circuit, len(a), A=a, B=b, R=1)
    # the a_nonzero flags are final once the forward half has run
    mid = apply_batch(circuit, start, 0, layout.forward_layers)
    flag_cols = [layout.a_nonzero(s) for s in range(layout.steps)]
    active = mid[:, flag_cols].sum(axis=1)
    end = apply_batch(circuit, mid, layout.forward_layers)
    restored = (read(circuit, end, "A") == a) & (read(circuit, end, "B") == b) & (read(circuit, end, "R") == 1)
    clear = ~_ancilla_bits(layout, end).any(axis=1)
    return BatchRun(a, b, read(circuit, end, "OUT"), restored, clear, active)


def run_gcd(circuit: Circuit, layout: GcdLayout, a: int, b: int) -> GcdRunResult:
    return run_gcd_batch(circuit, layout, [a], [b]).result(0)


def trace_steps(circuit: Circuit, layout: GcdLayout, a, b) -> dict[str, np.ndarray]:
    """(A, B, R) at every step boundary of the forward pass, shape (steps + 1, batch)."""
    a, b = _check_inputs(layout, a, b)
    st = load(circuit, len(a), A=a, B=b, R=1)
    if layout.step_spans:
        st = apply_batch(circuit, st, 0, layout.step_spans[0][0])
    out = {k: [read(circuit, st, k)] for k in ("A", "B", "R")}
    for lo, hi in layout.step_spans:
        st = apply_batch(circuit, st, lo, hi)
        for k in out:
            out[k].append(read(circuit, st, k))
    return {k: np.array(v) for k, v in out.items()}


def oracle_gcd(a, b) -> np.ndarray:
    return np.gcd(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))


@dataclass
class VerifyReport:
    n: int
    pairs: int
    failures: list[tuple[int, int, GcdRunResult]] = field(default_factory=list)
    max_active_steps: int = 0
    steps: int = 0
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures)} failures"
        return (f"n={self.n} pairs={self.pairs} {status} "
                f"max_active_steps={self.max_active_steps}/{self.steps} time={self.seconds:.2f}s")


def _verify(n: int, a: np.ndarray, b: np.ndarray, opts: GcdOptions | None, chunk: int = 4096) -> VerifyReport:
    t0 = time.perf_counter()
    circuit, layout = build_gcd(n, opts)
    report = VerifyReport(n, len(a), steps=layout.steps)
    for lo in range(0, len(a), chunk):
        run = run_gcd_batch(circuit, layout, a[lo:lo + chunk], b[lo:lo + chunk])
        good = (run.gcd_out == oracle_gcd(run.a, run.b)) & run.inputs_restored & run.ancillae_clear
        for i in np.flatnonzero(~good):
            report.failures.append((int(run.a[i]), int(run.b[i]), run.result(i)))
        report.max_active_steps = max(report.max_active_steps, int(run.active_steps.max()))
    report.seconds = time.perf_counter() - t0
    return report


def exhaustive_verify(n: int, opts: GcdOptions | None = None, cap: int = EXHAUSTIVE_CAP) -> VerifyReport:
    if n > cap:
        raise ValueError(f"exhaustive verification is capped at n={cap}; use random_verify for n={n}")
    a, b = np.divmod(np.arange(1 << (2 * n)), 1 << n)
    return _verify(n, a, b, opts)


def random_verify(n: int, trials: int, opts: GcdOptions | None = None, seed: int = 0) -> VerifyReport:
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 1 << n, trials)
    b = rng.integers(0, 1 << n, trials)
    return _verify(n, a, b, opts)
