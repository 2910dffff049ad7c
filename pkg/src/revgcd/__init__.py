"""Reversible binary-GCD circuits with O(n log n) depth and O(n) ancillae."""
from .circuit import (
    Circuit,
    CircuitError,
    CompositionError,
    Control,
    Gate,
    GateError,
    GateKind,
    Register,
    RegisterError,
    RegisterMap,
    SWAP,
    X,
    append_gate,
    compose,
    inverse,
    neg,
    new_circuit,
    validate_layers,
)
from .gcd import GcdLayout, GcdOptions, SynthesisError, build_gcd, multiply_B_by_R, synthesize_gcd, synthesize_step
from .resources import ResourceReport, decompose, resource_report
from .simulator import BitState, SimulationError, apply, apply_batch
from .verify import GcdRunResult, exhaustive_verify, random_verify, run_gcd

__version__ = "0.1.0"
