"""Closed-form resource expectations, block comparisons and scaling studies."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .blocks import build_block
from .gcd import GcdOptions, build_gcd
from .resources import ResourceReport, resource_report


def w(x: int) -> int:
    """Number of ones in the binary expansion of x."""
    return bin(x).count("1")


def floor_log2(x) -> int:
    """floor(log2 x) for a positive int or Fraction, computed exactly."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError(f"log of non-positive value {x}")
    k = x.numerator.bit_length() - x.denominator.bit_length()
    # 2**k is now within a factor of two of x either way
    if Fraction(2) ** k > x:
        k -= 1
    elif Fraction(2) ** (k + 1) <= x:
        k += 1
    return k


def ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x > 0 else 0


def _comparison(n: int) -> ResourceReport:
    return ResourceReport(
        cnot_count=2 * n - 2,
        toffoli_count=6 * n - w(n - 1) - 2 * floor_log2(n - 1) - 7,
        cnot_depth=2,
        toffoli_depth=2 * floor_log2(n) + 5,
        ancillae=2 * n - floor_log2(n - 1) - 3,
    )


def _subtraction(n: int) -> ResourceReport:
    return ResourceReport(
        cnot_count=2 * n,
        toffoli_count=14 * n - 11,
        cnot_depth=2,
        toffoli_depth=3 * floor_log2(n - 1) + floor_log2(Fraction(n - 1, 3)) + 16,
        ancillae=2 * n - 2,
    )


def _shift_like(n: int) -> ResourceReport:
    return ResourceReport(
        cnot_count=4 * n - 2,
        toffoli_count=n - 1,
        cnot_depth=2 * ceil_log2(n) + 4,
        toffoli_depth=2,
        ancillae=n,
    )


FORMULAS: dict[str, Callable[[int], ResourceReport]] = {
    "comparison": _comparison,
    "conditional-subtraction": _subtraction,
    "conditional-shift": _shift_like,
    "conditional-swap": _shift_like,
}

FIELDS = ("cnot_count", "toffoli_count", "cnot_depth", "toffoli_depth", "ancillae")


def expected_resources(block: str, n: int) -> ResourceReport:
    if block not in FORMULAS:
        raise KeyError(f"no resource formula for block {block!r}; known: {', '.join(FORMULAS)}")
    if n < 2:
        raise ValueError(f"resource formulas are defined for n >= 2, got {n}")
    return FORMULAS[block](n)


@dataclass(frozen=True)
class FieldDiff:
    name: str
    expected: int
    actual: int

    @property
    def delta(self) -> int:
        return self.actual - self.expected


@dataclass(frozen=True)
class BlockComparison:
    block: str
    n: int
    fields: tuple[FieldDiff, ...]
    actual: ResourceReport

    @property
    def ok(self) -> bool:
        return all(f.delta == 0 for f in self.fields)

    def format(self) -> str:
        lines = [f"block={self.block} n={self.n}",
                 f"{'field':<14}{'expected':>10}{'actual':>10}{'delta':>8}"]
        for f in self.fields:
            mark = "" if f.delta == 0 else "  MISMATCH"
            lines.append(f"{f.name:<14}{f.expected:>10}{f.actual:>10}{f.delta:>+8}{mark}")
        lines.append(f"total_depth   {self.actual.total_depth:>20}")
        lines.append("result: " + ("match" if self.ok else
                                   f"{sum(f.delta != 0 for f in self.fields)} field(s) differ"))
        return "\n".join(lines)


def compare_block(block: str, n: int) -> BlockComparison:
    expected = expected_resources(block, n)
    actual = resource_report(build_block(block, n))
    diffs = tuple(FieldDiff(f, getattr(expected, f), getattr(actual, f)) for f in FIELDS)
    return BlockComparison(block, n, diffs, actual)


@dataclass(frozen=True)
class ScalingRow:
    n: int
    depth: int
    size: int
    ancillae: int
    qubits: int

    @property
    def depth_ratio(self) -> float:
        return self.depth / (self.n * ceil_log2(self.n))

    @property
    def size_ratio(self) -> float:
        return self.size / self.n ** 2


def scaling_row(n: int, opts: GcdOptions | None = None) -> ScalingRow:
    circuit, _ = build_gcd(n, opts)
    rep = resource_report(circuit)
    return ScalingRow(n, rep.total_depth, rep.gate_count, rep.ancillae, circuit.qubit_count)


def scaling_study(max_n: int, opts: GcdOptions | None = None) -> list[ScalingRow]:
    if max_n < 8:
        raise ValueError(f"scaling study starts at n=8, got max_n={max_n}")
    sizes = [1 << k for k in range(3, int(math.log2(max_n)) + 1)]
    return [scaling_row(n, opts) for n in sizes]


def format_scaling(rows: list[ScalingRow]) -> str:
    out = ["n,depth,size,ancillae,qubits,depth/(n*log n),size/n^2"]
    for r in rows:
        out.append(f"{r.n},{r.depth},{r.size},{r.ancillae},{r.qubits},{r.depth_ratio:.4f},{r.size_ratio:.4f}")
    return "\n".join(out)
