"""JSON and OpenQASM 2.0 serialisation, plus a small QASM reader for round trips."""
from __future__ import annotations

import json
import re

from .circuit import Circuit, CircuitError, Control, Gate, GateKind, Register, RegisterMap, SWAP, X
from .resources import decompose


class FormatError(CircuitError):
    pass


# --- JSON ------------------------------------------------------------------

def to_dict(circuit: Circuit) -> dict:
    regs = {}
    for name, reg in circuit.registers.items():
        regs[name] = [reg.offset, reg.width, "ancilla"] if reg.ancilla else [reg.offset, reg.width]
    layers = [
        [{"kind": g.kind.value,
          "controls": [[c.qubit, "+" if c.positive else "-"] for c in g.controls],
          "targets": list(g.targets)} for g in layer]
        for layer in circuit.layers
    ]
    return {"qubits": circuit.qubit_count, "registers": regs, "layers": layers}


def to_json(circuit: Circuit) -> str:
    return json.dumps(to_dict(circuit), separators=(",", ":"))


def from_dict(data: dict) -> Circuit:
    try:
        regs = {}
        for name, entry in data["registers"].items():
            if len(entry) == 3 and entry[2] != "ancilla":
                raise FormatError(f"unknown register flag {entry[2]!r} on {name}")
            regs[name] = Register(int(entry[0]), int(entry[1]), len(entry) == 3)
        circuit = Circuit(int(data["qubits"]), RegisterMap(regs))
        for layer in data["layers"]:
            gates = []
            for g in layer:
                controls = []
                for q, pol in g["controls"]:
                    if pol not in ("+", "-"):
                        raise FormatError(f"bad control polarity {pol!r}")
                    controls.append(Control(int(q), pol == "+"))
                gates.append(Gate(GateKind(g["kind"]), tuple(controls), tuple(int(t) for t in g["targets"])))
            # keep empty layers out, same as the builder does
            circuit.add_layer(gates)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CircuitError):
            raise
        raise FormatError(f"malformed circuit JSON: {exc}") from exc
    return circuit


def from_json(text: str) -> Circuit:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return from_dict(data)


# --- OpenQASM 2.0 -----------------------------------------------------------

_QASM_NAMES = {GateKind.NOT: "x", GateKind.CNOT: "cx", GateKind.TOFFOLI: "ccx", GateKind.FREDKIN: "cswap"}


def to_qasm(circuit: Circuit) -> str:
    """OpenQASM 2.0 text over one register ``q``.

    Wide gates are lowered first (scratch qubits are appended to the pool),
    and negative controls are conjugated by ``x`` on the control wire.
    """
    low = decompose(circuit, keep_fredkin=True)
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{low.qubit_count}];"]
    for layer in low.layers:
        for g in layer:
            flips = [c.qubit for c in g.controls if not c.positive]
            lines += [f"x q[{q}];" for q in flips]
            args = ",".join(f"q[{q}]" for q in [c.qubit for c in g.controls] + list(g.targets))
            lines.append(f"{_QASM_NAMES[g.kind]} {args};")
            lines += [f"x q[{q}];" for q in flips]
    return "\n".join(lines) + "\n"


_STMT = re.compile(r"^(x|cx|ccx|cswap)\s+((?:q\[\d+\]\s*,\s*)*q\[\d+\])\s*;$")
_QREG = re.compile(r"^qreg\s+q\[(\d+)\]\s*;$")


def parse_qasm(text: str) -> Circuit:
    """Read the subset of OpenQASM 2.0 that :func:`to_qasm` writes."""
    circuit = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("//")[0].strip()
        if not line or line.startswith(("OPENQASM", "include")):
            continue
        m = _QREG.match(line)
        if m:
            if circuit is not None:
                raise FormatError(f"line {lineno}: only one qreg is supported")
            circuit = Circuit(int(m.group(1)))
            continue
        m = _STMT.match(line)
        if not m:
            raise FormatError(f"line {lineno}: unsupported statement {line!r}")
        if circuit is None:
            raise FormatError(f"line {lineno}: gate before qreg declaration")
        qs = [int(x) for x in re.findall(r"\d+", m.group(2))]
        name = m.group(1)
        expected = {"x": 1, "cx": 2, "ccx": 3, "cswap": 3}[name]
        if len(qs) != expected:
            raise FormatError(f"line {lineno}: {name} takes {expected} operands, got {len(qs)}")
        gate = SWAP(qs[1], qs[2], qs[0]) if name == "cswap" else X(qs[-1], *qs[:-1])
        circuit.append(gate, "new_layer")
    if circuit is None:
        raise FormatError("no qreg declaration found")
    return circuit


def export(circuit: Circuit, fmt: str) -> str:
    if fmt == "json":
        return to_json(circuit)
    if fmt == "qasm2":
        return to_qasm(circuit)
    raise FormatError(f"unknown format {fmt!r}; use qasm2 or json")
