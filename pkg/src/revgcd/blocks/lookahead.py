"""Logarithmic-depth comparison, zero test and controlled subtraction.

The comparator and the subtractor are built on carry-lookahead prefix
trees.  Bit i of an addend pair generates ``g_i = x_i & y_i`` and
propagates ``p_i = x_i ^ y_i``; a block [lo, hi) combines as
``G = G_hi ^ P_hi & G_lo`` and ``P = P_hi & P_lo``.  Propagate values of
blocks starting at bit 0 are never needed.
"""
from __future__ import annotations

from typing import Sequence

from ..circuit import Control, ControlLike, Fragment, X, neg, pack, reverse_fragment
from .controlled import and_layers, and_work, fanout_layers
from .permutation import BlockError


def _floor_log2(x: int) -> int:
    return x.bit_length() - 1


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _need(work: Sequence[int], count: int, what: str) -> None:
    if len(work) < count:
        raise BlockError(f"{what} needs {count} work qubits, got {len(work)}")


# --- zero test -------------------------------------------------------------

def nonzero_work(n: int) -> int:
    return max(n - 1, 0)


def nonzero_layers(a: Sequence[int], result: int, work: Sequence[int]) -> Fragment:
    """``result ^= (a != 0)`` via a Toffoli tree over the negated bits."""
    n = len(a)
    if n == 1:
        return [[X(result, a[0])]]
    _need(work, nonzero_work(n), "zero test")
    up, all_zero, _ = and_layers([neg(q) for q in a], work)
    return up + [[X(result, ~all_zero)]] + reverse_fragment(up)


# --- comparator ------------------------------------------------------------

def _split(size: int) -> int:
    # largest power of two strictly below size
    return 1 << _floor_log2(size - 1)


def _tree_propagates(n: int) -> int:
    """Internal nodes of the comparison tree that need a propagate bit."""
    def count(lo, hi):
        if hi - lo == 1:
            return 0
        mid = lo + _split(hi - lo)
        return count(lo, mid) + count(mid, hi) + (1 if lo > 0 else 0)
    return count(0, n)


def comparator_work(n: int) -> int:
    return 0 if n == 1 else (n - 1) + _tree_propagates(n)


def comparator_layers(a: Sequence[int], b: Sequence[int], result: int, work: Sequence[int]) -> Fragment:
    """``result ^= (a < b)`` for unsigned registers, leaving a, b, work intact.

    ``a < b`` is the carry out of ``~a + b``.  Generate bits go to work
    qubits, except the top one, which goes straight to ``result``; every
    combine along the right spine of the tree then also lands on ``result``.
    Nothing reads ``result``, so the uncompute pass replays everything else.
    """
    n = len(a)
    if len(b) != n:
        raise BlockError(f"cannot compare registers of widths {n} and {len(b)}")
    if n == 1:
        return [[X(result, neg(a[0]), b[0])]]
    _need(work, comparator_work(n), "comparator")
    gen = list(work[:n - 1]) + [result]
    spare = iter(work[n - 1:])
    props, combines = [], []

    def build(lo, hi):
        if hi - lo == 1:
            return Control(b[lo]) if lo > 0 else None
        mid = lo + _split(hi - lo)
        left = build(lo, mid)
        right = build(mid, hi)
        combines.append(X(gen[hi - 1], right, Control(gen[mid - 1])))
        if lo > 0:
            p = next(spare)
            props.append(X(p, left, right))
            return Control(p)
        return None

    build(0, n)
    forward = [
        [X(gen[i], neg(a[i]), b[i]) for i in range(n)],
        [X(b[i], neg(a[i])) for i in range(1, n)],
    ]
    forward += pack(props + combines)
    backward = []
    for layer in reversed(forward):
        kept = [g for g in layer if g.targets[0] != result]
        if kept:
            backward.append(kept)
    return forward + backward


# --- carry network and subtractor ------------------------------------------

def carry_network_work(m: int) -> int:
    """Propagate ancillae for all carries of an m-bit addition."""
    if m < 2:
        return 0
    return m - _popcount(m) - _floor_log2(m)


def carry_rounds(p: Sequence[int], gen: Sequence[int], work: Sequence[int]) -> list:
    """Gates turning generate bits into carries, given propagates in ``p``.

    On entry ``gen[i]`` holds ``g_i`` and ``p[j]`` holds ``p_j`` for the m
    bits; on exit ``gen[i]`` holds the carry into bit ``i + 1``.  Propagate
    products for aligned power-of-two blocks live in ``work`` and are cleared
    again at the end.
    """
    m = len(gen)
    if m < 2:
        return []
    top = _floor_log2(m)
    spare = iter(work)
    prop: dict[tuple[int, int], int] = {}

    def P(t, j):
        return Control(p[j] if t == 0 else prop[(t, j)])

    p_gates = []
    for t in range(1, top):
        for j in range(1, (m >> t)):
            q = next(spare)
            prop[(t, j)] = q
            p_gates.append(X(q, P(t - 1, 2 * j), P(t - 1, 2 * j + 1)))
    g_gates = []
    for t in range(1, top + 1):
        for j in range(m >> t):
            hi = (j << t) + (1 << t) - 1
            lo = (j << t) + (1 << (t - 1)) - 1
            g_gates.append(X(gen[hi], Control(gen[lo]), P(t - 1, 2 * j + 1)))
    c_gates = []
    t = 0
    while 3 << t <= m:  # largest t with 3 * 2**(t-1) <= m, then count down
        t += 1
    for t in range(t, 0, -1):
        for j in range(1, (m - (1 << (t - 1))) // (1 << t) + 1):
            dst = (j << t) + (1 << (t - 1)) - 1
            src = (j << t) - 1
            c_gates.append(X(gen[dst], Control(gen[src]), P(t - 1, 2 * j)))
    return p_gates + g_gates + c_gates + list(reversed(p_gates))


def subtractor_work(n: int, n_controls: int = 1) -> int:
    if n == 1:
        return and_work(n_controls)
    # carries plus one shared area for control copies or propagate products
    return and_work(n_controls) + 2 * (n - 1)


def _gates(fragment: Fragment) -> list:
    return [g for layer in fragment for g in layer]


def cond_subtract_layers(controls: Sequence[ControlLike], a: Sequence[int], b: Sequence[int],
                         work: Sequence[int]) -> Fragment:
    """``a <- (a - b) mod 2**n`` when every control holds; b and work unchanged.

    With x = (ctl ? ~a : a), the carries of x + b are computed, the sum bits
    are written under the control, and the same carry circuit run backwards
    erases the carries: carries of (~s) + b equal those of x + b when
    s = x + b.  Since ~(~a + b) = a - b, no final complement is needed.

    The control is fanned out twice, once for the complement and once for
    the writes, so its copies can share qubits with the propagate products
    of the carry network.
    """
    n = len(a)
    if len(b) != n:
        raise BlockError(f"cannot subtract registers of widths {n} and {len(b)}")
    _need(work, subtractor_work(n, len(controls)), "conditional subtraction")
    up, ctl, used = and_layers(controls, work)
    down = reverse_fragment(up)
    if n == 1:
        return up + [[X(a[0], ctl, b[0])]] + down
    m = n - 1
    gen = list(work[used:used + m])
    shared = list(work[used + m:used + 2 * m])
    copies = [ctl] + [Control(q, ctl.positive) for q in shared]
    fan = fanout_layers(ctl.qubit, shared)
    unfan = reverse_fragment(fan)

    carries = [
        [X(gen[i], a[i], b[i]) for i in range(m)],
        [X(a[i], b[i]) for i in range(n)],
    ]
    # propagate products take the copies that the unfanout clears first and
    # the refanout fills last, so fanout and carry rounds overlap
    carries += pack(carry_rounds(a[:m], gen, shared[::-1]))
    flip = [[X(a[i], copies[i]) for i in range(n)]]
    write = pack(
        [X(a[i], copies[i], Control(gen[i - 1])) for i in range(1, n)]
        + [X(a[i], copies[i], neg(b[i])) for i in range(n)]
    )
    seq = fan + flip + unfan + carries + fan + write + unfan + reverse_fragment(carries)
    return up + pack(_gates(seq)) + down
