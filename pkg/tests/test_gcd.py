import numpy as np
import pytest

from oracles import euclid, gcd_run, gcd_step
from revgcd.circuit import validate_layers
from revgcd.gcd import GcdLayout, GcdOptions, SynthesisError, build_gcd, multiply_B_by_R, synthesize_step, workspace_width
from revgcd.resources import resource_report
from revgcd.simulator import apply_batch, load, read
from revgcd.verify import exhaustive_verify, random_verify, run_gcd, run_gcd_batch, trace_steps


@pytest.fixture(scope="module")
def gcd5():
    return build_gcd(5)


def _run_step(n, s, a, b, r=1):
    layout = GcdLayout.create(n)
    c = synthesize_step(layout, s)
    out = apply_batch(c, load(c, 1, A=a, B=b, R=r))
    flags = tuple(int(out[0, q]) for q in
                  (layout.a_nonzero(s), layout.b_even(s), layout.a_even(s), layout.a_less_b(s)))
    return (int(read(c, out, "A")[0]), int(read(c, out, "B")[0]), int(read(c, out, "R")[0])), flags, out, layout


def test_step_even_even():
    vals, flags, _, _ = _run_step(5, 0, 12, 18)
    assert vals == (6, 9, 2)
    assert flags[:3] == (1, 1, 1)


def test_step_frozen_on_zero_a():
    vals, flags, _, _ = _run_step(5, 0, 0, 5)
    assert vals == (0, 5, 1)
    assert flags[0] == 0


def test_step_both_odd():
    vals, _, _, _ = _run_step(5, 0, 9, 3)
    assert vals == (3, 3, 1)


def test_step_workspace_clean():
    _, _, out, layout = _run_step(5, 2, 21, 14, 4)
    w = layout.registers["W"]
    assert not out[0, w.offset:w.offset + w.width].any()


def test_step_matches_oracle_exhaustively():
    n = 4
    layout = GcdLayout.create(n)
    c = synthesize_step(layout, 0)
    grid = np.array([(a, b, r) for a in range(16) for b in range(16) for r in (1, 2, 4, 8)])
    out = apply_batch(c, load(c, len(grid), A=grid[:, 0], B=grid[:, 1], R=grid[:, 2]))
    got = np.stack([read(c, out, k) for k in ("A", "B", "R")], axis=1)
    flag_q = [layout.a_nonzero(0), layout.b_even(0), layout.a_even(0), layout.a_less_b(0)]
    for row, g, f in zip(grid, got, out[:, flag_q]):
        want, flags = gcd_step(*map(int, row), n)
        assert tuple(g) == want, row
        assert tuple(f) == flags, row


def test_step_index_checked():
    layout = GcdLayout.create(4)
    with pytest.raises(SynthesisError):
        synthesize_step(layout, layout.steps)


@pytest.mark.parametrize("r,b,want", [(1, 3, 3), (4, 3, 12), (16, 1, 16), (2, 7, 14)])
def test_multiply_b_by_r(r, b, want):
    layout = GcdLayout.create(5)
    c = multiply_B_by_R(layout)
    out = apply_batch(c, load(c, 1, B=b, R=r))
    assert read(c, out, "B")[0] == want


def test_multiply_size_quadratic():
    sizes = [resource_report(multiply_B_by_R(GcdLayout.create(n))).gate_count for n in (8, 16, 32)]
    ratios = [s / n ** 2 for s, n in zip(sizes, (8, 16, 32))]
    assert max(ratios) / min(ratios) < 1.5
    assert sizes[2] / sizes[1] > 3  # genuinely superlinear


@pytest.mark.parametrize("a,b,want", [(12, 18, 6), (0, 9, 9), (7, 0, 7), (5, 5, 5), (0, 0, 0), (31, 1, 1)])
def test_run_gcd(gcd5, a, b, want):
    r = run_gcd(*gcd5, a, b)
    assert r.gcd_out == want
    assert r.inputs_restored and r.ancillae_clear


def test_without_zero_b_fix_b_zero_gives_zero():
    circuit, layout = build_gcd(5, GcdOptions(handle_zero_b=False))
    assert run_gcd(circuit, layout, 7, 0).gcd_out == 0
    assert run_gcd(circuit, layout, 12, 18).gcd_out == 6


def test_without_swap_gating_the_output_would_be_lost():
    # the pair that motivates gating the swap on both-odd: A=0 must never swap B away
    circuit, layout = build_gcd(4)
    assert run_gcd(circuit, layout, 0, 3).gcd_out == 3


def test_active_steps_match_oracle(gcd5):
    circuit, layout = gcd5
    a, b = np.divmod(np.arange(1024), 32)
    run = run_gcd_batch(circuit, layout, a, b)
    want = [gcd_run(int(x), int(y), 5, layout.steps)[1] for x, y in zip(a, b)]
    assert run.active_steps.tolist() == want


def test_trace_matches_oracle_and_freezes(gcd5):
    circuit, layout = gcd5
    a, b = np.divmod(np.arange(1024), 32)
    tr = trace_steps(circuit, layout, a, b)
    assert tr["A"].shape == (layout.steps + 1, 1024)
    for i in range(0, 1024, 7):
        _, _, trace = gcd_run(int(a[i]), int(b[i]), 5, layout.steps)
        assert [tuple(int(tr[k][s, i]) for k in "ABR") for s in range(layout.steps + 1)] == trace
    # once A hits zero at a boundary, nothing moves again
    for s in range(layout.steps):
        frozen = tr["A"][s] == 0
        for k in "ABR":
            assert np.array_equal(tr[k][s + 1][frozen], tr[k][s][frozen])


def test_oracle_agrees_with_euclid():
    for a in range(64):
        for b in range(64):
            assert gcd_run(a, b, 6, 12)[0] == euclid(a, b)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_exhaustive(n):
    rep = exhaustive_verify(n)
    assert rep.ok and rep.pairs == 4 ** n


def test_exhaustive_cap():
    with pytest.raises(ValueError, match="capped"):
        exhaustive_verify(6)


def test_random_mode():
    rep = random_verify(8, 300, seed=1)
    assert rep.ok and rep.pairs == 300


def test_input_range_checked(gcd5):
    with pytest.raises(ValueError):
        run_gcd(*gcd5, 32, 1)


def test_options_and_layout_errors():
    with pytest.raises(SynthesisError):
        GcdOptions(steps=0)
    with pytest.raises(SynthesisError):
        build_gcd(1)
    with pytest.raises(SynthesisError):
        GcdLayout.create(4, GcdOptions(handle_zero_b=False)).b_nonzero


def test_custom_steps():
    circuit, layout = build_gcd(4, GcdOptions(steps=3))
    assert layout.steps == 3 and len(layout.step_spans) == 3
    assert layout.registers["flags"].width == 13


@pytest.mark.parametrize("n", [4, 8, 16, 32])
def test_qubit_count_linear(n):
    layout = GcdLayout.create(n)
    # A, B, R, OUT, four flags per step, workspace, zero-B flag
    assert layout.qubit_count == 4 * n + 4 * layout.steps + workspace_width(n) + 1
    assert workspace_width(n) <= 2 * n


def test_registers_and_layers_valid():
    circuit, layout = build_gcd(6)
    assert validate_layers(circuit) == []
    assert circuit.depth == 2 * layout.forward_layers + 1
