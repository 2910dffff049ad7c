import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from block_cases import BLOCK_CASES
from oracles import check_block, rotate
from revgcd.blocks import (
    BlockError,
    Permutation,
    build_block,
    circular_shift,
    comparator_less_than,
    cond_shift_layers,
    cond_subtract_layers,
    cond_swap_layers,
    conditional_subtract_inplace,
    decompose_to_transposition_layers,
    fanout,
    is_nonzero,
    permutation_via_ancillae,
    shift_layers,
)
from revgcd.circuit import Circuit, RegisterMap, neg, validate_layers
from revgcd.resources import resource_report
from revgcd.simulator import apply_batch, load, read


def _compose_pairs(layers, w):
    pos = list(range(w))  # pos[i]: where the value starting at i now sits
    for pairs in layers:
        swap = {a: b for a, b in pairs} | {b: a for a, b in pairs}
        pos = [swap.get(p, p) for p in pos]
    return tuple(pos)


def _disjoint(pairs):
    flat = [q for p in pairs for q in p]
    return len(flat) == len(set(flat))


def test_identity_gives_no_swaps():
    assert decompose_to_transposition_layers(Permutation(tuple(range(5)))) == ([], [])


def test_four_cycle():
    perm = Permutation.from_cycles(4, (0, 3, 1, 2))
    assert perm.images == (3, 2, 0, 1)
    layers = decompose_to_transposition_layers(perm)
    assert _compose_pairs(layers, 4) == perm.images
    c = circular_shift(4, 1)
    assert resource_report(Circuit(4).extend(
        [[__import__("revgcd").SWAP(a, b) for a, b in l] for l in layers])).cnot_depth == 6
    assert c.depth == 2


def test_one_bit_rotation_pairs():
    first, second = decompose_to_transposition_layers(Permutation.rotation(8, 1))
    assert first == [(0, 1), (2, 7), (3, 6), (4, 5)]
    assert second == [(0, 2), (3, 7), (4, 6)]


def test_non_bijection_rejected():
    with pytest.raises(BlockError):
        Permutation((0, 0, 1))


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 33).flatmap(lambda w: st.permutations(range(w))))
def test_transposition_layers_compose_to_permutation(images):
    perm = Permutation(tuple(images))
    first, second = decompose_to_transposition_layers(perm)
    assert _disjoint(first) and _disjoint(second)
    assert _compose_pairs((first, second), len(images)) == perm.images


def test_permutation_via_ancillae_identity():
    c = permutation_via_ancillae(Permutation(tuple(range(4))))
    assert c.depth == 4 and all(len(l) == 4 for l in c.layers)


def test_permutation_via_ancillae_four_cycle():
    perm = Permutation.from_cycles(4, (0, 3, 1, 2))
    c = permutation_via_ancillae(perm)
    r = resource_report(c)
    assert (r.total_depth, r.cnot_count) == (4, 16)
    v = np.arange(16)
    out = apply_batch(c, load(c, 16, D=v))
    want = sum(((v >> i) & 1) << perm.images[i] for i in range(4))
    assert np.array_equal(read(c, out, "D"), want)
    assert not read(c, out, "anc").any()


@pytest.mark.parametrize("seed", range(50))
def test_permutation_via_ancillae_random(seed):
    rng = np.random.default_rng(seed)
    perm = Permutation(tuple(int(i) for i in rng.permutation(8)))
    c = permutation_via_ancillae(perm)
    v = rng.integers(0, 256, 64)
    out = apply_batch(c, load(c, 64, D=v))
    want = sum(((v >> i) & 1) << perm.images[i] for i in range(8))
    assert np.array_equal(read(c, out, "D"), want)
    assert not read(c, out, "anc").any()


def test_permutation_via_ancillae_width_mismatch():
    from revgcd.blocks import ancilla_permutation_layers
    with pytest.raises(BlockError):
        ancilla_permutation_layers(Permutation((1, 0)), [0, 1], [2])


@pytest.mark.parametrize("k", [0, 1, 3, 7])
def test_circular_shift_all_inputs(k):
    c = circular_shift(8, k)
    assert c.depth == (0 if k == 0 else 2)
    v = np.arange(256)
    out = apply_batch(c, load(c, 256, T=v))
    assert np.array_equal(read(c, out, "T"), rotate(v, k, 8))


def test_shift_by_one_doubles():
    c = circular_shift(4, 1)
    out = apply_batch(c, load(c, 1, T=0b0001))
    assert read(c, out, "T")[0] == 0b0010


def test_shift_offset_out_of_range():
    with pytest.raises(BlockError):
        circular_shift(8, 8)
    with pytest.raises(BlockError):
        shift_layers([0, 1], -1)


@pytest.mark.parametrize("m,depth", [(1, 1), (3, 2), (7, 3), (8, 4)])
def test_fanout_depth(m, depth):
    c = fanout(m)
    assert c.depth == depth
    assert resource_report(c).cnot_count == m


def test_fanout_three_layout():
    c = fanout(3)
    # c is qubit 0, ancillae are 1, 2, 3
    assert [sorted((g.controls[0].qubit, g.targets[0]) for g in l) for l in c.layers] == [[(0, 1)], [(0, 2), (1, 3)]]


@pytest.mark.parametrize("case", BLOCK_CASES, ids=lambda c: c.name)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_block_exhaustive(case, n):
    assert check_block(case, n) == []


@pytest.mark.parametrize("case", BLOCK_CASES, ids=lambda c: c.name)
@pytest.mark.parametrize("n", [8, 16])
def test_block_random(case, n):
    assert check_block(case, n, trials=1000, seed=n) == []


def test_swap_example():
    c = build_block("conditional-swap", 4)
    out = apply_batch(c, load(c, 1, ctl=1, A=0b0101, B=0b0011))
    assert (read(c, out, "A")[0], read(c, out, "B")[0]) == (0b0011, 0b0101)


def test_comparator_equal_values():
    c = comparator_less_than(6)
    v = np.arange(64)
    out = apply_batch(c, load(c, 64, A=v, B=v))
    assert not read(c, out, "result").any()


def test_nonzero_depth_bound():
    assert is_nonzero(4).depth <= 2 * 2 + 2


def _mixed_polarity_circuit(n, make):
    regs = RegisterMap.sequential(("ctl", 2), ("A", n), ("B", n), ("W", 2 * n + 2, True))
    c = Circuit(regs.total_width, regs)
    q = regs.qubits
    c.extend(make([q("ctl")[0], neg(q("ctl")[1])], q("A"), q("B"), q("W")))
    return c


@pytest.mark.parametrize("kind", ["shift", "swap", "subtract"])
def test_negative_controls(kind):
    n = 4
    make = {
        "shift": lambda ctl, a, b, w: cond_shift_layers(ctl, a, 3, w),
        "swap": cond_swap_layers,
        "subtract": cond_subtract_layers,
    }[kind]
    c = _mixed_polarity_circuit(n, make)
    grid = np.array(list(itertools.product(range(4), range(16), range(16))))
    ctl, a, b = grid.T
    out = apply_batch(c, load(c, len(grid), ctl=ctl, A=a, B=b))
    on = ctl == 0b01  # first control set, second clear
    want_a = {"shift": rotate(a, 3, n), "swap": b, "subtract": (a - b) % 16}[kind]
    want_b = b if kind != "swap" else a
    assert np.array_equal(read(c, out, "A"), np.where(on, want_a, a))
    assert np.array_equal(read(c, out, "B"), np.where(on, want_b, b))
    assert not read(c, out, "W").any()


def test_width_mismatch_errors():
    with pytest.raises(BlockError):
        cond_swap_layers([0], [1, 2], [3], list(range(4, 10)))
    with pytest.raises(BlockError):
        cond_subtract_layers([0], [1, 2], [3], list(range(4, 10)))
    with pytest.raises(BlockError):
        cond_shift_layers([0], [1, 2], 1, [])


def test_unknown_block_name():
    with pytest.raises(KeyError):
        build_block("multiplier", 4)


@pytest.mark.parametrize("name", ["comparison", "conditional-subtraction", "conditional-shift",
                                  "conditional-swap", "is-nonzero", "fanout", "circular-shift"])
def test_blocks_are_layer_valid(name):
    for n in range(2, 33):
        assert validate_layers(build_block(name, n)) == []


@pytest.mark.parametrize("name", ["comparison", "conditional-subtraction"])
def test_toffoli_depth_grows_logarithmically(name):
    depths = [resource_report(build_block(name, n)).toffoli_depth for n in (8, 16, 32, 64)]
    steps = np.diff(depths)
    assert all(0 <= s <= 4 for s in steps), depths


def test_multi_control_subtractor_ancillae():
    assert resource_report(conditional_subtract_inplace(8, 2)).ancillae == 15
