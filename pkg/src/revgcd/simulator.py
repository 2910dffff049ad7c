"""Bit-exact simulation of Toffoli-class circuits.

All gates here permute computational basis states, so a state is just a bit
string.  The batch entry point pushes many bit strings through a circuit at
once, one numpy row per qubit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import Circuit, Layer


class SimulationError(ValueError):
    pass


@dataclass(frozen=True)
class BitState:
    bits: tuple[int, ...]

    @classmethod
    def zeros(cls, n: int) -> "BitState":
        return cls((0,) * n)

    @classmethod
    def from_registers(cls, circuit: Circuit, **values: int) -> "BitState":
        bits = [0] * circuit.qubit_count
        for name, value in values.items():
            reg = circuit.registers[name]
            if not 0 <= value < (1 << reg.width):
                raise SimulationError(f"{value} does not fit register {name} of width {reg.width}")
            for i in range(reg.width):
                bits[reg.offset + i] = (value >> i) & 1
        return cls(tuple(bits))

    def register_value(self, circuit: Circuit, name: str) -> int:
        reg = circuit.registers[name]
        return sum(self.bits[reg.offset + i] << i for i in range(reg.width))

    def __len__(self) -> int:
        return len(self.bits)


def _run_layers(layers: Sequence[Layer], st: np.ndarray) -> None:
    for layer in layers:
        for g in layer:
            mask = None
            for c in g.controls:
                row = st[c.qubit] if c.positive else ~st[c.qubit]
                mask = row.copy() if mask is None else (mask & row)
            if g.kind.is_swap:
                a, b = g.targets
                diff = st[a] ^ st[b]
                if mask is not None:
                    diff &= mask
                st[a] ^= diff
                st[b] ^= diff
            else:
                t = g.targets[0]
                if mask is None:
                    np.logical_not(st[t], out=st[t])
                else:
                    st[t] ^= mask


def apply_batch(circuit: Circuit, states: np.ndarray, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Apply layers ``start:stop`` to each row of a ``(batch, qubits)`` 0/1 array."""
    states = np.asarray(states)
    if states.ndim != 2 or states.shape[1] != circuit.qubit_count:
        raise SimulationError(
            f"expected states of shape (batch, {circuit.qubit_count}), got {states.shape}"
        )
    st = np.ascontiguousarray(states.astype(bool).T)
    _run_layers(circuit.layers[start:stop], st)
    return st.T.astype(np.uint8)


def apply(circuit: Circuit, state: BitState) -> BitState:
    if len(state) != circuit.qubit_count:
        raise SimulationError(f"state has {len(state)} bits, circuit has {circuit.qubit_count} qubits")
    out = apply_batch(circuit, np.array([state.bits], dtype=np.uint8))
    return BitState(tuple(int(b) for b in out[0]))


def encode(values: Sequence[int], width: int) -> np.ndarray:
    """Little-endian bit matrix of shape (len(values), width)."""
    v = np.asarray(values, dtype=np.int64)[:, None]
    return ((v >> np.arange(width)) & 1).astype(np.uint8)


def decode(bits: np.ndarray) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.int64)
    return (bits << np.arange(bits.shape[1])).sum(axis=1)


def load(circuit: Circuit, batch: int, **values) -> np.ndarray:
    """Zero batch with the named registers filled from integer arrays."""
    st = np.zeros((batch, circuit.qubit_count), dtype=np.uint8)
    for name, vals in values.items():
        reg = circuit.registers[name]
        vals = np.broadcast_to(np.asarray(vals, dtype=np.int64), (batch,))
        if np.any(vals < 0) or np.any(vals >= (1 << reg.width)):
            raise SimulationError(f"value out of range for register {name}")
        st[:, reg.offset:reg.offset + reg.width] = encode(vals, reg.width)
    return st


def read(circuit: Circuit, states: np.ndarray, name: str) -> np.ndarray:
    reg = circuit.registers[name]
    return decode(states[:, reg.offset:reg.offset + reg.width])
