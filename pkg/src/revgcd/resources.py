"""Canonical decomposition to NOT/CNOT/Toffoli and resource accounting.

SWAP becomes three CNOTs and a singly-controlled SWAP becomes CNOT, Toffoli,
CNOT.  Gates with three or more X-controls, or two or more SWAP-controls, are
lowered through a balanced AND tree of Toffolis into scratch qubits, which is
undone after the core gate.

Depth is reported two ways.  ``total_depth`` is the number of layers in the
circuit as built.  ``cnot_depth`` and ``toffoli_depth`` count the sub-layers
obtained after decomposing each layer, left-aligned; a sub-layer counts
towards ``toffoli_depth`` when it holds at least one Toffoli, otherwise
towards ``cnot_depth``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import zip_longest

from .circuit import (
    Circuit,
    Control,
    Gate,
    GateKind,
    Register,
    RegisterMap,
    X,
)


@dataclass(frozen=True)
class ResourceReport:
    not_count: int = 0
    cnot_count: int = 0
    toffoli_count: int = 0
    cnot_depth: int = 0
    toffoli_depth: int = 0
    total_depth: int = 0
    ancillae: int = 0

    @property
    def gate_count(self) -> int:
        return self.not_count + self.cnot_count + self.toffoli_count

    def __add__(self, other: "ResourceReport") -> "ResourceReport":
        return ResourceReport(
            not_count=self.not_count + other.not_count,
            cnot_count=self.cnot_count + other.cnot_count,
            toffoli_count=self.toffoli_count + other.toffoli_count,
            cnot_depth=self.cnot_depth + other.cnot_depth,
            toffoli_depth=self.toffoli_depth + other.toffoli_depth,
            total_depth=self.total_depth + other.total_depth,
            ancillae=max(self.ancillae, other.ancillae),
        )

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


def scratch_needed(gate: Gate) -> int:
    m = len(gate.controls)
    if gate.kind is GateKind.MCX:
        return m - 2
    if gate.kind is GateKind.MCSWAP:
        return m - 1
    return 0


def _reduce(controls: list[Control], scratch: list[int], keep: int) -> tuple[list[list[Gate]], list[Control]]:
    """AND controls pairwise into scratch qubits until ``keep`` remain."""
    levels: list[list[Gate]] = []
    cur = list(controls)
    free = iter(scratch)
    while len(cur) > keep:
        nxt, layer = [], []
        i = 0
        while i + 1 < len(cur) and len(nxt) + (len(cur) - i) > keep:
            a = next(free)
            layer.append(X(a, cur[i], cur[i + 1]))
            nxt.append(Control(a, True))
            i += 2
        nxt.extend(cur[i:])
        levels.append(layer)
        cur = nxt
    return levels, cur


def expand(gate: Gate, scratch: list[int] | None = None, keep_fredkin: bool = False) -> list[list[Gate]]:
    """Sub-layers implementing ``gate`` with CNOT/Toffoli-class gates.

    ``scratch`` must hold at least :func:`scratch_needed` zeroed qubits; they
    are returned to zero.
    """
    kind = gate.kind
    if kind in (GateKind.NOT, GateKind.CNOT, GateKind.TOFFOLI):
        return [[gate]]
    if kind is GateKind.SWAP:
        a, b = gate.targets
        return [[X(b, a)], [X(a, b)], [X(b, a)]]
    if kind is GateKind.FREDKIN:
        if keep_fredkin:
            return [[gate]]
        a, b = gate.targets
        return [[X(b, a)], [X(a, gate.controls[0], b)], [X(b, a)]]
    scratch = list(scratch or [])
    if len(scratch) < scratch_needed(gate):
        raise ValueError(f"{gate} needs {scratch_needed(gate)} scratch qubits")
    if kind is GateKind.MCX:
        up, rest = _reduce(list(gate.controls), scratch, 2)
        core = [[X(gate.targets[0], *rest)]]
    else:
        up, rest = _reduce(list(gate.controls), scratch, 1)
        core = expand(Gate(GateKind.FREDKIN, tuple(rest), gate.targets), keep_fredkin=keep_fredkin)
    return up + core + [list(l) for l in reversed(up)]


_FAST = {
    GateKind.NOT: ("C",),
    GateKind.CNOT: ("C",),
    GateKind.TOFFOLI: ("T",),
    GateKind.SWAP: ("C", "C", "C"),
    GateKind.FREDKIN: ("C", "T", "C"),
}
_FAST_COUNTS = {
    GateKind.NOT: (1, 0, 0),
    GateKind.CNOT: (0, 1, 0),
    GateKind.TOFFOLI: (0, 0, 1),
    GateKind.SWAP: (0, 3, 0),
    GateKind.FREDKIN: (0, 2, 1),
}
_FAKE = list(range(1 << 40, (1 << 40) + 256))


def _profile(gate: Gate) -> tuple[tuple[str, ...], tuple[int, int, int]]:
    if gate.kind in _FAST:
        return _FAST[gate.kind], _FAST_COUNTS[gate.kind]
    # wide gates: materialise on placeholder scratch qubits
    subs = expand(gate, _FAKE[: scratch_needed(gate)])
    stages, counts = [], [0, 0, 0]
    for layer in subs:
        stage = "C"
        for g in layer:
            k = _FAST_COUNTS[g.kind]
            counts = [c + d for c, d in zip(counts, k)]
            if g.kind is GateKind.TOFFOLI:
                stage = "T"
        stages.append(stage)
    return tuple(stages), tuple(counts)


def resource_report(circuit: Circuit) -> ResourceReport:
    nots = cnots = toffs = 0
    cdepth = tdepth = 0
    for layer in circuit.layers:
        profiles = []
        for g in layer:
            stages, (a, b, c) = _profile(g)
            nots += a
            cnots += b
            toffs += c
            profiles.append(stages)
        for column in zip_longest(*profiles, fillvalue="C"):
            if "T" in column:
                tdepth += 1
            else:
                cdepth += 1
    return ResourceReport(
        not_count=nots,
        cnot_count=cnots,
        toffoli_count=toffs,
        cnot_depth=cdepth,
        toffoli_depth=tdepth,
        total_depth=circuit.depth,
        ancillae=circuit.registers.ancilla_width,
    )


def decompose(circuit: Circuit, keep_fredkin: bool = False) -> Circuit:
    """Rewrite ``circuit`` with NOT/CNOT/Toffoli (and optionally Fredkin) only.

    Wide gates borrow zeroed qubits from an extra ancilla register named
    ``decomp`` appended to the pool; it is absent when nothing needs it.
    """
    need = 0
    for layer in circuit.layers:
        need = max(need, sum(scratch_needed(g) for g in layer))
    registers = circuit.registers
    qubits = circuit.qubit_count
    if need:
        name = "decomp"
        while name in registers:
            name = "_" + name
        entries = dict(registers.items())
        entries[name] = Register(qubits, need, True)
        registers = RegisterMap(entries)
        scratch_pool = list(range(qubits, qubits + need))
        qubits += need
    out = Circuit(qubits, registers)
    for layer in circuit.layers:
        pieces, pos = [], 0
        for g in layer:
            k = scratch_needed(g)
            pieces.append(expand(g, scratch_pool[pos:pos + k] if k else None, keep_fredkin))
            pos += k
        for column in zip_longest(*pieces, fillvalue=[]):
            out.add_layer([g for part in column for g in part])
    return out
