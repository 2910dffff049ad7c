"""Layered intermediate representation for Toffoli-class reversible circuits.

A :class:`Circuit` is a fixed pool of qubits split into named registers and an
ordered list of layers.  Gates inside one layer never share a qubit, so a layer
is one time step of parallel execution and the layer count is the depth.

Every gate kind supported here is its own inverse, which keeps inversion a
matter of reversing the layer order.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Sequence, Union


class CircuitError(ValueError):
    """Base class for malformed circuits, gates and registers."""


class GateError(CircuitError):
    pass


class RegisterError(CircuitError):
    pass


class CompositionError(CircuitError):
    pass


class GateKind(str, Enum):
    NOT = "NOT"
    CNOT = "CNOT"
    TOFFOLI = "TOFFOLI"
    MCX = "MCX"
    SWAP = "SWAP"
    FREDKIN = "FREDKIN"
    MCSWAP = "MCSWAP"

    @property
    def is_swap(self) -> bool:
        return self in (GateKind.SWAP, GateKind.FREDKIN, GateKind.MCSWAP)


_X_KINDS = {0: GateKind.NOT, 1: GateKind.CNOT, 2: GateKind.TOFFOLI}
_SWAP_KINDS = {0: GateKind.SWAP, 1: GateKind.FREDKIN}


def x_kind(n_controls: int) -> GateKind:
    return _X_KINDS.get(n_controls, GateKind.MCX)


def swap_kind(n_controls: int) -> GateKind:
    return _SWAP_KINDS.get(n_controls, GateKind.MCSWAP)


class Control(NamedTuple):
    """A control line; ``positive=False`` conditions on the qubit being 0."""

    qubit: int
    positive: bool = True

    def __invert__(self) -> "Control":
        return Control(self.qubit, not self.positive)


ControlLike = Union[int, Control]


def neg(qubit: int) -> Control:
    return Control(qubit, False)


def _as_control(c: ControlLike) -> Control:
    if isinstance(c, Control):
        return c
    return Control(int(c), True)


@dataclass(frozen=True, slots=True)
class Gate:
    kind: GateKind
    controls: tuple[Control, ...]
    targets: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.controls)
        if self.kind.is_swap:
            if len(self.targets) != 2:
                raise GateError(f"{self.kind.value} needs 2 targets, got {len(self.targets)}")
            expected = swap_kind(n)
        else:
            if len(self.targets) != 1:
                raise GateError(f"{self.kind.value} needs 1 target, got {len(self.targets)}")
            expected = x_kind(n)
        if expected is not self.kind:
            raise GateError(f"{self.kind.value} cannot have {n} controls")
        support = self.support
        if len(set(support)) != len(support):
            raise GateError(f"gate {self} repeats a qubit")
        if min(support) < 0:
            raise GateError(f"gate {self} uses a negative qubit index")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(c.qubit for c in self.controls) + self.targets

    def __str__(self) -> str:
        ctl = ",".join(f"{'' if c.positive else '~'}{c.qubit}" for c in self.controls)
        tgt = ",".join(str(t) for t in self.targets)
        return f"{self.kind.value}({ctl}->{tgt})" if ctl else f"{self.kind.value}({tgt})"


def X(target: int, *controls: ControlLike) -> Gate:
    """Multi-controlled NOT; the kind follows from the number of controls."""
    ctl = tuple(_as_control(c) for c in controls)
    return Gate(x_kind(len(ctl)), ctl, (int(target),))


def SWAP(a: int, b: int, *controls: ControlLike) -> Gate:
    """Multi-controlled SWAP of ``a`` and ``b``."""
    ctl = tuple(_as_control(c) for c in controls)
    return Gate(swap_kind(len(ctl)), ctl, (int(a), int(b)))


class Register(NamedTuple):
    offset: int
    width: int
    ancilla: bool = False

    @property
    def qubits(self) -> range:
        return range(self.offset, self.offset + self.width)


class RegisterMap:
    """Named, non-overlapping qubit ranges covering a circuit's qubit pool."""

    def __init__(self, entries: dict[str, Register] | None = None):
        self._entries: dict[str, Register] = {}
        for name, reg in (entries or {}).items():
            self._entries[name] = Register(*reg)

    @classmethod
    def sequential(cls, *layout: tuple) -> "RegisterMap":
        """Lay registers out back to back: ``("A", 4), ("work", 3, True)``."""
        entries, offset = {}, 0
        for name, width, *rest in layout:
            entries[name] = Register(offset, width, bool(rest and rest[0]))
            offset += width
        return cls(entries)

    def __getitem__(self, name: str) -> Register:
        return self._entries[name]

    def __contains__(self, name: object) -> bool:
        return name in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def items(self):
        return self._entries.items()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RegisterMap) and self._entries == other._entries

    def __repr__(self) -> str:
        return f"RegisterMap({self._entries!r})"

    def qubits(self, name: str) -> list[int]:
        return list(self._entries[name].qubits)

    @property
    def total_width(self) -> int:
        return sum(r.width for r in self._entries.values())

    @property
    def ancilla_width(self) -> int:
        return sum(r.width for r in self._entries.values() if r.ancilla)

    def validate(self, qubit_count: int) -> None:
        owner: dict[int, str] = {}
        for name, reg in self._entries.items():
            if reg.width <= 0:
                raise RegisterError(f"register {name} has non-positive width {reg.width}")
            if reg.offset < 0 or reg.offset + reg.width > qubit_count:
                raise RegisterError(
                    f"register {name} [{reg.offset}, {reg.offset + reg.width}) "
                    f"is outside the {qubit_count}-qubit pool"
                )
            for q in reg.qubits:
                if q in owner:
                    raise RegisterError(f"registers overlap at qubit {q} ({owner[q]}, {name})")
                owner[q] = name
        missing = [q for q in range(qubit_count) if q not in owner]
        if missing:
            raise RegisterError(f"qubits {missing} belong to no register")


Layer = tuple[Gate, ...]
Fragment = list[list[Gate]]


class Circuit:
    """Ordered layers of gates over a fixed, register-partitioned qubit pool.

    Circuits are built by appending and are treated as read-only afterwards;
    :func:`compose` and :func:`inverse` always return new objects.
    """

    def __init__(self, qubit_count: int, registers: RegisterMap | None = None,
                 layers: Iterable[Sequence[Gate]] = ()):
        if qubit_count <= 0:
            raise RegisterError("qubit_count must be positive")
        if registers is None:
            registers = RegisterMap({"q": Register(0, qubit_count)})
        registers.validate(qubit_count)
        self.qubit_count = qubit_count
        self.registers = registers
        self.layers: list[Layer] = []
        self._last = [-1] * qubit_count  # latest layer touching each qubit
        for layer in layers:
            self.add_layer(layer)

    def __len__(self) -> int:
        return len(self.layers)

    @property
    def depth(self) -> int:
        return len(self.layers)

    def gates(self) -> Iterator[Gate]:
        for layer in self.layers:
            yield from layer

    @property
    def gate_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def _check_range(self, gate: Gate) -> None:
        for q in gate.support:
            if q >= self.qubit_count:
                raise GateError(f"{gate} references qubit {q} outside the {self.qubit_count}-qubit pool")

    def append(self, gate: Gate, mode: str = "pack") -> "Circuit":
        """Add one gate.

        ``pack`` puts the gate right after the last layer that touches any of
        its qubits (a new layer if that is the final one); ``new_layer``
        always opens a fresh layer.
        """
        self._check_range(gate)
        if mode == "new_layer":
            idx = len(self.layers)
        elif mode == "pack":
            idx = max(self._last[q] for q in gate.support) + 1
        else:
            raise ValueError(f"unknown append mode {mode!r}")
        if idx == len(self.layers):
            self.layers.append((gate,))
        else:
            self.layers[idx] = self.layers[idx] + (gate,)
        for q in gate.support:
            self._last[q] = idx
        return self

    def add_layer(self, gates: Sequence[Gate]) -> "Circuit":
        """Append ``gates`` as one explicit layer; empty input is ignored."""
        if not gates:
            return self
        seen: set[int] = set()
        for g in gates:
            self._check_range(g)
            for q in g.support:
                if q in seen:
                    raise GateError(f"qubit {q} used twice in one layer")
                seen.add(q)
        idx = len(self.layers)
        self.layers.append(tuple(gates))
        for q in seen:
            self._last[q] = idx
        return self

    def extend(self, fragment: Iterable[Sequence[Gate]]) -> "Circuit":
        for layer in fragment:
            self.add_layer(layer)
        return self

    def empty_like(self) -> "Circuit":
        return Circuit(self.qubit_count, self.registers)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Circuit)
            and self.qubit_count == other.qubit_count
            and self.registers == other.registers
            and self.layers == other.layers
        )

    def __repr__(self) -> str:
        return f"<Circuit qubits={self.qubit_count} layers={len(self.layers)} gates={self.gate_count}>"


def new_circuit(qubit_count: int, registers: RegisterMap | dict) -> Circuit:
    if not isinstance(registers, RegisterMap):
        registers = RegisterMap(registers)
    return Circuit(qubit_count, registers)


def append_gate(circuit: Circuit, gate: Gate, mode: str = "pack") -> Circuit:
    return circuit.append(gate, mode)


def compose(first: Circuit, second: Circuit) -> Circuit:
    """Layers of ``second`` after those of ``first``, without repacking."""
    if first.qubit_count != second.qubit_count or first.registers != second.registers:
        raise CompositionError("circuits act on different qubit pools")
    out = first.empty_like()
    out.layers = list(first.layers) + list(second.layers)
    out._last = _last_touch(out.layers, out.qubit_count)
    return out


def inverse(circuit: Circuit) -> Circuit:
    # every supported gate is an involution
    out = circuit.empty_like()
    out.layers = list(reversed(circuit.layers))
    out._last = _last_touch(out.layers, out.qubit_count)
    return out


def _last_touch(layers: Sequence[Layer], qubit_count: int) -> list[int]:
    last = [-1] * qubit_count
    for i, layer in enumerate(layers):
        for g in layer:
            for q in g.support:
                last[q] = i
    return last


class Violation(NamedTuple):
    layer: int
    first: int
    second: int
    qubits: tuple[int, ...]


def validate_layers(circuit: Circuit | Sequence[Sequence[Gate]]) -> list[Violation]:
    """Every pair of gates sharing a qubit inside a layer; empty means valid."""
    layers = circuit.layers if isinstance(circuit, Circuit) else circuit
    found = []
    for li, layer in enumerate(layers):
        users: dict[int, list[int]] = {}
        for gi, g in enumerate(layer):
            for q in g.support:
                users.setdefault(q, []).append(gi)
        shared: dict[tuple[int, int], list[int]] = {}
        for q, idx in users.items():
            for a in range(len(idx)):
                for b in range(a + 1, len(idx)):
                    shared.setdefault((idx[a], idx[b]), []).append(q)
        for (i, j), qs in sorted(shared.items()):
            found.append(Violation(li, i, j, tuple(sorted(qs))))
    return found


def pack(gates: Iterable[Gate]) -> Fragment:
    """Greedy as-soon-as-possible layering of a gate sequence."""
    layers: Fragment = []
    last: dict[int, int] = {}
    for g in gates:
        idx = max((last.get(q, -1) for q in g.support), default=-1) + 1
        if idx == len(layers):
            layers.append([])
        layers[idx].append(g)
        for q in g.support:
            last[q] = idx
    return layers


def fuse(fragment: Fragment, following: Fragment) -> Fragment:
    """Concatenate, merging the boundary layers when they share no qubit."""
    if not fragment or not following:
        return [list(l) for l in fragment] + [list(l) for l in following]
    tail, head = fragment[-1], following[0]
    used = {q for g in tail for q in g.support}
    if any(q in used for g in head for q in g.support):
        return [list(l) for l in fragment] + [list(l) for l in following]
    return [list(l) for l in fragment[:-1]] + [list(tail) + list(head)] + [list(l) for l in following[1:]]


def reverse_fragment(fragment: Fragment) -> Fragment:
    return [list(layer) for layer in reversed(fragment)]
