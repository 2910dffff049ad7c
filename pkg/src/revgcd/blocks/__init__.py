"""Reusable reversible blocks.

The ``*_layers`` functions emit fragments onto caller-chosen qubits and are
what the GCD synthesizer composes.  The functions below wrap each of them in
a self-contained :class:`~revgcd.circuit.Circuit` with its own registers,
which is what tests, resource comparisons and the CLI look at.
"""
from __future__ import annotations

from typing import Callable

from ..circuit import Circuit, RegisterMap
from .controlled import (
    and_layers,
    and_work,
    cond_block_work,
    cond_permute_layers,
    cond_shift_layers,
    cond_swap_layers,
    fanout_layers,
)
from .lookahead import (
    carry_network_work,
    carry_rounds,
    comparator_layers,
    comparator_work,
    cond_subtract_layers,
    nonzero_layers,
    nonzero_work,
    subtractor_work,
)
from .permutation import (
    BlockError,
    Permutation,
    ancilla_permutation_layers,
    decompose_to_transposition_layers,
    shift_layers,
    swap_layers,
)

__all__ = [
    "BlockError", "Permutation", "BLOCKS", "build_block",
    "decompose_to_transposition_layers", "permutation_via_ancillae", "circular_shift", "fanout",
    "conditional_circular_shift", "conditional_swap_registers", "comparator_less_than",
    "is_nonzero", "conditional_subtract_inplace",
    "and_layers", "and_work", "cond_block_work", "cond_permute_layers", "cond_shift_layers",
    "cond_swap_layers", "fanout_layers", "comparator_layers", "comparator_work",
    "cond_subtract_layers", "nonzero_layers", "nonzero_work", "subtractor_work",
    "carry_rounds", "carry_network_work", "ancilla_permutation_layers", "shift_layers", "swap_layers",
]


def _circuit(layout, fragment_fn) -> Circuit:
    regs = RegisterMap.sequential(*[s for s in layout if s[1] > 0])
    c = Circuit(regs.total_width, regs)
    q = {name: regs.qubits(name) if name in regs else [] for name, *_ in layout}
    c.extend(fragment_fn(q))
    return c


def _check_width(n: int, least: int = 1) -> None:
    if n < least:
        raise BlockError(f"width must be at least {least}, got {n}")


def permutation_via_ancillae(perm: Permutation) -> Circuit:
    """Registers ``D`` (data) and ``anc``; four CNOT layers."""
    w = len(perm)
    return _circuit([("D", w), ("anc", w, True)],
                    lambda q: ancilla_permutation_layers(perm, q["D"], q["anc"]))


def circular_shift(n: int, k: int) -> Circuit:
    """Register ``T``; bit i moves to (i + k) mod n in two SWAP layers."""
    _check_width(n)
    return _circuit([("T", n)], lambda q: shift_layers(q["T"], k))


def fanout(m: int) -> Circuit:
    """Register ``c`` (one bit) copied onto ancilla register ``anc`` of width m."""
    _check_width(m)
    return _circuit([("c", 1), ("anc", m, True)], lambda q: fanout_layers(q["c"][0], q["anc"]))


def conditional_circular_shift(n: int, k: int = 1, n_controls: int = 1) -> Circuit:
    """Registers ``ctl``, ``T`` and workspace ``W``; rotates T by k when all of ctl is 1."""
    _check_width(n)
    return _circuit(
        [("ctl", n_controls), ("T", n), ("W", cond_block_work(n, n_controls), True)],
        lambda q: cond_shift_layers(q["ctl"], q["T"], k, q["W"]),
    )


def conditional_swap_registers(n: int, n_controls: int = 1) -> Circuit:
    """Registers ``ctl``, ``A``, ``B`` and workspace ``W``."""
    _check_width(n)
    return _circuit(
        [("ctl", n_controls), ("A", n), ("B", n), ("W", cond_block_work(n, n_controls), True)],
        lambda q: cond_swap_layers(q["ctl"], q["A"], q["B"], q["W"]),
    )


def comparator_less_than(n: int) -> Circuit:
    """Registers ``A``, ``B``, one-bit ``result`` and workspace ``W``."""
    _check_width(n)
    return _circuit(
        [("A", n), ("B", n), ("result", 1), ("W", comparator_work(n), True)],
        lambda q: comparator_layers(q["A"], q["B"], q["result"][0], q["W"]),
    )


def is_nonzero(n: int) -> Circuit:
    """Registers ``A``, one-bit ``result`` and workspace ``W``."""
    _check_width(n)
    return _circuit(
        [("A", n), ("result", 1), ("W", nonzero_work(n), True)],
        lambda q: nonzero_layers(q["A"], q["result"][0], q["W"]),
    )


def conditional_subtract_inplace(n: int, n_controls: int = 1) -> Circuit:
    """Registers ``ctl``, ``A``, ``B`` and workspace ``W``; A -= B when ctl holds."""
    _check_width(n)
    return _circuit(
        [("ctl", n_controls), ("A", n), ("B", n), ("W", subtractor_work(n, n_controls), True)],
        lambda q: cond_subtract_layers(q["ctl"], q["A"], q["B"], q["W"]),
    )


BLOCKS: dict[str, Callable[[int], Circuit]] = {
    "comparison": comparator_less_than,
    "conditional-subtraction": conditional_subtract_inplace,
    "conditional-shift": conditional_circular_shift,
    "conditional-swap": conditional_swap_registers,
    "is-nonzero": is_nonzero,
    "fanout": fanout,
    "circular-shift": lambda n: circular_shift(n, 1 % n),
}


def build_block(name: str, n: int) -> Circuit:
    try:
        builder = BLOCKS[name]
    except KeyError:
        raise KeyError(f"unknown block {name!r}; known: {', '.join(sorted(BLOCKS))}") from None
    return builder(n)
