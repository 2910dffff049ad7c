"""Fanout and fanout-driven conditional blocks (permutations, shifts, swaps)."""
from __future__ import annotations

from typing import Sequence

from ..circuit import Control, ControlLike, Fragment, X, fuse, reverse_fragment, _as_control
from .permutation import BlockError, Permutation, decompose_to_transposition_layers


def fanout_layers(control: int, ancillae: Sequence[int]) -> Fragment:
    """Copy ``control`` onto every ancilla with a doubling tree of CNOTs.

    Each layer, every qubit already holding the value copies it to the next
    free ancilla, so ``m`` ancillae take ceil(log2(m + 1)) layers.
    """
    sources = [control]
    filled = 0
    layers: Fragment = []
    while filled < len(ancillae):
        layer, fresh = [], []
        for s in sources:
            if filled == len(ancillae):
                break
            a = ancillae[filled]
            filled += 1
            layer.append(X(a, s))
            fresh.append(a)
        sources += fresh
        layers.append(layer)
    return layers


def and_layers(controls: Sequence[ControlLike], work: Sequence[int]) -> tuple[Fragment, Control, int]:
    """Reduce a conjunction of controls to one bit with a balanced Toffoli tree.

    Returns the compute layers, the resulting control and the number of work
    qubits used.  A single control is passed through untouched.
    """
    cur = [_as_control(c) for c in controls]
    if not cur:
        raise BlockError("at least one control is required")
    layers: Fragment = []
    used = 0
    while len(cur) > 1:
        layer, nxt = [], []
        for i in range(0, len(cur) - 1, 2):
            if used >= len(work):
                raise BlockError(f"{len(controls)} controls need {len(controls) - 1} work qubits")
            a = work[used]
            used += 1
            layer.append(X(a, cur[i], cur[i + 1]))
            nxt.append(Control(a, True))
        if len(cur) % 2:
            nxt.append(cur[-1])
        layers.append(layer)
        cur = nxt
    return layers, cur[0], used


def and_work(n_controls: int) -> int:
    return max(n_controls - 1, 0)


def _take(work: Sequence[int], start: int, count: int, what: str) -> list[int]:
    if len(work) - start < count:
        raise BlockError(f"{what} needs {start + count} work qubits, got {len(work)}")
    return list(work[start:start + count])


def _fredkin_stages(ctls: Sequence[Control], pairs: Sequence[tuple[int, int]]) -> Fragment:
    # CNOT, Toffoli, CNOT per exchange; the CNOT stages never read the control
    pre = [X(b, a) for a, b in pairs]
    mid = [X(a, c, b) for c, (a, b) in zip(ctls, pairs)]
    return [pre, mid, list(pre)]


def _conditioned(controls, work, n_copies: int, body, what: str) -> Fragment:
    up, ctl, used = and_layers(controls, work)
    copies = _take(work, used, n_copies, what)
    fan = fanout_layers(ctl.qubit, copies)
    inner = body([Control(q, ctl.positive) for q in copies])
    out = fuse(fuse(fan, inner), reverse_fragment(fan))
    return up + out + reverse_fragment(up)


def cond_permute_layers(controls: Sequence[ControlLike], target: Sequence[int], perm: Permutation,
                        work: Sequence[int]) -> Fragment:
    """Apply ``perm`` to ``target`` when every control is satisfied.

    The (reduced) control is fanned out to ``len(target)`` work qubits and each
    swap of the two-layer decomposition becomes a Fredkin on its own copy.
    Work qubits are zero again on exit.
    """
    n = len(target)
    if len(perm) != n:
        raise BlockError(f"permutation width {len(perm)} does not match target width {n}")
    first, second = decompose_to_transposition_layers(perm)
    if not first and not second:
        return []

    def body(copies):
        it = iter(copies)
        frag: Fragment = []
        for pairs in (first, second):
            if pairs:
                frag += _fredkin_stages([next(it) for _ in pairs],
                                        [(target[a], target[b]) for a, b in pairs])
        return frag

    return _conditioned(controls, work, n, body, "conditional permutation")


def cond_shift_layers(controls: Sequence[ControlLike], target: Sequence[int], k: int,
                      work: Sequence[int]) -> Fragment:
    n = len(target)
    if not 0 <= k < n:
        raise BlockError(f"shift offset {k} outside [0, {n})")
    if k == 0:
        return []
    return cond_permute_layers(controls, target, Permutation.rotation(n, k), work)


def cond_swap_layers(controls: Sequence[ControlLike], a: Sequence[int], b: Sequence[int],
                     work: Sequence[int]) -> Fragment:
    """Exchange registers ``a`` and ``b`` when every control is satisfied."""
    if len(a) != len(b):
        raise BlockError(f"cannot swap registers of widths {len(a)} and {len(b)}")

    def body(copies):
        return _fredkin_stages(copies, list(zip(a, b)))

    return _conditioned(controls, work, len(a), body, "conditional swap")


def cond_block_work(n: int, n_controls: int) -> int:
    return and_work(n_controls) + n
