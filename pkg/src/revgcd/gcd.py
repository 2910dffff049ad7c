"""Reversible binary GCD: step pipeline, B*R multiplication, copy-out, reversal.

Each step runs Stein's case analysis on (A, B) with every branch gated by
flag bits that are written once and kept until the final uncompute::

    a_nz   = A != 0
    b_even = B is even            ; B /= 2 if b_even and a_nz
    a_even = A is even            ; A /= 2 if a_even
    a_lt_b = A < B                ; swap A, B if a_lt_b and both odd
                                  ; A -= B, then A /= 2 if both odd
                                  ; R *= 2 if both even and a_nz

Once A is 0 every later step is a no-op, B holds the odd part of the GCD and
R the common power of two, so B * R is the answer.  R is one-hot, so the
product is a single rotation of B selected by R's set bit.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .blocks import (
    comparator_layers,
    comparator_work,
    cond_block_work,
    cond_shift_layers,
    cond_subtract_layers,
    cond_swap_layers,
    nonzero_layers,
    nonzero_work,
    subtractor_work,
)
from .circuit import Circuit, CircuitError, Fragment, RegisterMap, X, neg

FLAGS_PER_STEP = 4
_A_NZ, _B_EVEN, _A_EVEN, _A_LT_B = range(FLAGS_PER_STEP)


class SynthesisError(CircuitError):
    pass


@dataclass(frozen=True)
class GcdOptions:
    steps: int | None = None  # None means 2n
    handle_zero_b: bool = True
    pack_mode: str = "strict_layers"

    def __post_init__(self):
        if self.steps is not None and self.steps < 1:
            raise SynthesisError(f"steps must be at least 1, got {self.steps}")
        if self.pack_mode != "strict_layers":
            raise SynthesisError(f"unsupported pack mode {self.pack_mode!r}")


def workspace_width(n: int) -> int:
    """Largest workspace any block of the pipeline asks for."""
    return max(
        nonzero_work(n),
        comparator_work(n),
        subtractor_work(n, 2),
        cond_block_work(n, 3),
    )


@dataclass(frozen=True)
class GcdLayout:
    n: int
    steps: int
    handle_zero_b: bool
    registers: RegisterMap
    # filled in by build_gcd
    forward_layers: int = 0
    step_spans: tuple[tuple[int, int], ...] = field(default=())

    @classmethod
    def create(cls, n: int, opts: GcdOptions | None = None) -> "GcdLayout":
        opts = opts or GcdOptions()
        if n < 2:
            raise SynthesisError(f"GCD circuits need n >= 2, got {n}")
        steps = opts.steps if opts.steps is not None else 2 * n
        flags = FLAGS_PER_STEP * steps + (1 if opts.handle_zero_b else 0)
        regs = RegisterMap.sequential(
            ("A", n), ("B", n), ("R", n), ("OUT", n),
            ("flags", flags, True), ("W", workspace_width(n), True),
        )
        return cls(n, steps, opts.handle_zero_b, regs)

    @property
    def qubit_count(self) -> int:
        return self.registers.total_width

    def q(self, name: str) -> list[int]:
        return self.registers.qubits(name)

    def flag(self, step: int, which: int) -> int:
        if not 0 <= step < self.steps:
            raise SynthesisError(f"step {step} outside [0, {self.steps})")
        return self.registers["flags"].offset + FLAGS_PER_STEP * step + which

    def a_nonzero(self, s: int) -> int:
        return self.flag(s, _A_NZ)

    def b_even(self, s: int) -> int:
        return self.flag(s, _B_EVEN)

    def a_even(self, s: int) -> int:
        return self.flag(s, _A_EVEN)

    def a_less_b(self, s: int) -> int:
        return self.flag(s, _A_LT_B)

    @property
    def b_nonzero(self) -> int:
        if not self.handle_zero_b:
            raise SynthesisError("layout has no zero-B flag")
        reg = self.registers["flags"]
        return reg.offset + reg.width - 1

    def empty_circuit(self) -> Circuit:
        return Circuit(self.qubit_count, self.registers)


def _step_fragment(layout: GcdLayout, s: int) -> Fragment:
    A, B, R, W = layout.q("A"), layout.q("B"), layout.q("R"), layout.q("W")
    n = layout.n
    a_nz, b_ev = layout.a_nonzero(s), layout.b_even(s)
    a_ev, a_lt = layout.a_even(s), layout.a_less_b(s)
    half = n - 1  # rotation by n-1 moves every bit one place down
    both_odd = [neg(a_ev), neg(b_ev)]
    frag: Fragment = []
    frag += nonzero_layers(A, a_nz, W)
    frag += [[X(b_ev, neg(B[0]))]]
    frag += cond_shift_layers([b_ev, a_nz], B, half, W)
    frag += [[X(a_ev, neg(A[0]))]]
    frag += cond_shift_layers([a_ev], A, half, W)
    frag += comparator_layers(A, B, a_lt, W)
    frag += cond_swap_layers([a_lt] + both_odd, A, B, W)
    frag += cond_subtract_layers(both_odd, A, B, W)
    frag += cond_shift_layers(both_odd, A, half, W)
    frag += cond_shift_layers([a_ev, b_ev, a_nz], R, 1, W)
    return frag


def synthesize_step(layout: GcdLayout, step_index: int) -> Circuit:
    """One iteration of the restructured step on the layout's qubit pool."""
    layout.flag(step_index, 0)  # range check
    return layout.empty_circuit().extend(_step_fragment(layout, step_index))


def _zero_b_fragment(layout: GcdLayout) -> Fragment:
    A, B, W = layout.q("A"), layout.q("B"), layout.q("W")
    flag = layout.b_nonzero
    return nonzero_layers(B, flag, W) + cond_swap_layers([neg(flag)], A, B, W)


def _multiply_fragment(layout: GcdLayout) -> Fragment:
    B, R, W = layout.q("B"), layout.q("R"), layout.q("W")
    frag: Fragment = []
    for i in range(1, layout.n):
        frag += cond_shift_layers([R[i]], B, i, W)
    return frag


def multiply_B_by_R(layout: GcdLayout) -> Circuit:
    """B <- B * R for one-hot R, as controlled rotations by 1..n-1 in sequence."""
    return layout.empty_circuit().extend(_multiply_fragment(layout))


def build_gcd(n: int, opts: GcdOptions | None = None) -> tuple[Circuit, GcdLayout]:
    """Full circuit and its layout, with layer spans of each step recorded."""
    layout = GcdLayout.create(n, opts)
    forward = layout.empty_circuit()
    if layout.handle_zero_b:
        forward.extend(_zero_b_fragment(layout))
    spans = []
    for s in range(layout.steps):
        start = forward.depth
        forward.extend(_step_fragment(layout, s))
        spans.append((start, forward.depth))
    forward.extend(_multiply_fragment(layout))
    n_forward = forward.depth

    full = layout.empty_circuit()
    full.extend(forward.layers)
    full.add_layer([X(o, b) for o, b in zip(layout.q("OUT"), layout.q("B"))])
    full.extend(reversed(forward.layers))
    return full, replace(layout, forward_layers=n_forward, step_spans=tuple(spans))


def synthesize_gcd(n: int, opts: GcdOptions | None = None) -> Circuit:
    return build_gcd(n, opts)[0]
