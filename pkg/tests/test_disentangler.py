import math

import numpy as np
import pytest

from impsprep import disentangler, schedules, statevec, targets
from impsprep.circuits import simulate
from impsprep.disentangler import (
    TruncationMode,
    disentangle_step,
    run_schedule,
    truncate_and_renormalize,
)

from conftest import dense_two_qubit_operator, random_real_state, random_state


class TestDisentangleStep:
    def test_bell_state_fully_disentangles(self):
        bell = statevec.from_amplitudes([1, 0, 0, 1])
        step, post = disentangle_step(bell, 0, 1)
        assert abs(step.retained_weight - 1.0) < 1e-14
        # the 4x1 block [1,0,0,1]/sqrt(2) has the single singular value 1
        assert np.allclose(np.sort(step.singular_values)[::-1], [1, 0, 0, 0], atol=1e-14)
        assert abs(abs(post.amps[0]) - 1.0) < 1e-12

    def test_product_state_keeps_all_weight(self, rng):
        rest = random_state(3, rng)
        amps = np.concatenate([rest.amps, np.zeros(8)])  # qubit 0 already |0>
        s = statevec.from_amplitudes(amps)
        step, post = disentangle_step(s, 0, 1)
        assert abs(step.retained_weight - 1.0) < 1e-12
        assert np.abs(post.amps[8:]).max() < 1e-12

    def test_uniform_state_rank_one_block(self):
        s = statevec.from_amplitudes(np.ones(8))
        step, _ = disentangle_step(s, 0, 1)
        assert abs(step.retained_weight - 1.0) < 1e-14
        assert np.allclose(np.sort(step.singular_values)[::-1][1:], 0.0, atol=1e-14)

    def test_unitary_is_unitary_and_deterministic(self, rng):
        s = random_state(4, rng)
        step1, _ = disentangle_step(s, 2, 0)
        step2, _ = disentangle_step(s, 2, 0)
        assert np.array_equal(step1.unitary, step2.unitary)
        assert np.abs(step1.unitary @ step1.unitary.conj().T - np.eye(4)).max() < 1e-10
        assert abs(np.linalg.det(step1.unitary) - 1.0) < 1e-10

    def test_retained_is_top_two_mass(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 7))
            s = random_state(n, rng)
            a, b = (int(x) for x in rng.choice(n, size=2, replace=False))
            step, post = disentangle_step(s, a, b)
            lam = np.sort(step.singular_values)[::-1]
            assert step.retained_weight >= lam[2] ** 2 + lam[3] ** 2 - 1e-12
            assert 0.0 <= step.retained_weight <= 1.0 + 1e-12
            # mass on the source qubit's |1> half equals 1 - retained
            blk = statevec.extract_block(post, a, b)
            bottom = np.linalg.norm(blk.rows[2:]) ** 2
            assert abs(bottom - (1.0 - step.retained_weight)) < 1e-10

    def test_real_states_give_special_orthogonal_gates(self, rng):
        for _ in range(10):
            s = random_real_state(4, rng)
            a, b = (int(x) for x in rng.choice(4, size=2, replace=False))
            step, _ = disentangle_step(s, a, b)
            assert np.abs(step.unitary.imag).max() < 1e-12
            assert abs(np.linalg.det(step.unitary).real - 1.0) < 1e-10


class TestTruncate:
    def test_noop_when_already_zero(self, rng):
        rest = random_state(2, rng)
        s = statevec.from_amplitudes(np.concatenate([rest.amps, np.zeros(4)]))
        out, discarded = truncate_and_renormalize(s, 0)
        assert discarded == 0.0
        assert np.abs(out.amps - s.amps).max() < 1e-15

    def test_ninety_ten_split(self):
        amps = np.concatenate([np.full(4, math.sqrt(0.9) / 2), np.full(4, math.sqrt(0.1) / 2)])
        s = statevec.from_amplitudes(amps)
        out, discarded = truncate_and_renormalize(s, 0)
        assert abs(discarded - 0.1) < 1e-12
        assert np.allclose(out.amps[:4], amps[:4] / math.sqrt(0.9))
        assert np.abs(out.amps[4:]).max() == 0.0

    def test_bell_after_step_unchanged(self):
        bell = statevec.from_amplitudes([1, 0, 0, 1])
        _, post = disentangle_step(bell, 0, 1)
        out, discarded = truncate_and_renormalize(post, 0)
        assert discarded < 1e-14
        assert statevec.infidelity(out, post) < 1e-12

    def test_degenerate_truncation_rejected(self):
        s = statevec.basis_state(2, 0b10)  # all mass on qubit0 = 1
        with pytest.raises(ValueError):
            truncate_and_renormalize(s, 0)


def canonical_mps_reference(target: statevec.StateVector):
    """Independent sequential canonical-MPS preparation (explicit loops only).

    Sweeps pairs (i, i+1) in order, applying each SVD inverse and projecting
    qubit i onto |0>, then builds the reversed circuit as dense matrices and
    returns the prepared state's infidelity against the target.
    """
    n = target.n
    dim = 1 << n
    state = np.array(target.amps, dtype=complex)
    gates = []  # (a, b, u_inverse)
    for i in range(n - 1):
        rows = np.zeros((4, dim // 4), dtype=complex)
        for k in range(dim):
            xa = (k >> (n - 1 - i)) & 1
            xb = (k >> (n - 1 - (i + 1))) & 1
            rest = 0
            for q in range(n):
                if q not in (i, i + 1):
                    rest = (rest << 1) | ((k >> (n - 1 - q)) & 1)
            rows[2 * xa + xb, rest] = state[k]
        u, s, vh = np.linalg.svd(rows, full_matrices=rows.shape[1] < 4)
        u_inv = u.conj().T
        gates.append((i, i + 1, u_inv))
        state = dense_two_qubit_operator(u_inv, n, i, i + 1) @ state
        # project qubit i onto |0> and renormalize
        for k in range(dim):
            if (k >> (n - 1 - i)) & 1:
                state[k] = 0.0
        state = state / np.linalg.norm(state)
    # absorb the survivor's residual superposition with one 2x2 rotation
    i1 = 1
    v0, v1 = state[0], state[i1]
    nv = math.hypot(abs(v0), abs(v1))
    rot = np.array([[v0.conjugate() / nv, v1.conjugate() / nv], [-v1 / nv, v0 / nv]])
    # build the preparation state: reversed, inverted gate list applied to |0...0>
    prep = np.zeros(dim, dtype=complex)
    prep[0] = 1.0
    full_rot = np.kron(np.eye(dim // 2), rot.conj().T)  # survivor = last qubit
    prep = full_rot @ prep
    for a, b, u_inv in reversed(gates):
        prep = dense_two_qubit_operator(u_inv.conj().T, n, a, b) @ prep
    overlap = abs(np.vdot(prep, target.amps)) ** 2
    return 1.0 - overlap


class TestRunSchedule:
    def test_zero_target_stays_exact(self):
        target = statevec.zero_state(5)
        for sched in (schedules.chain_schedule(5), schedules.htn_schedule(5)):
            res = run_schedule(target, sched, 1, TruncationMode.PER_ROUND)
            assert res.final_infidelity < 1e-12

    def test_ghz8_htn_exact(self):
        ghz = targets.ghz_state(8)
        res = run_schedule(ghz, schedules.htn_schedule(8), 1, TruncationMode.PER_ROUND)
        assert res.final_infidelity < 1e-10

    def test_layering_never_hurts(self):
        f1 = targets.discretize(targets.make_spec("f1", 10))
        sched = schedules.htn_schedule(10)
        one = run_schedule(f1, sched, 1, TruncationMode.PER_ROUND).final_infidelity
        two = run_schedule(f1, sched, 2, TruncationMode.PER_ROUND).final_infidelity
        assert two <= one + 1e-9

    def test_circuit_gate_count_matches_steps(self, rng):
        target = random_state(5, rng)
        sched = schedules.ttn_schedule(5)
        res = run_schedule(target, sched, 2, TruncationMode.PER_LAYER)
        assert res.circuit.two_qubit_count() == len(res.steps)
        assert res.circuit.u_depth == 2 * sched.u_depth
        assert len(res.per_round_weights) == 2 * sched.u_depth

    def test_self_consistency_with_fresh_simulation(self, rng):
        target = random_state(5, rng)
        res = run_schedule(target, schedules.hen_schedule(5), 1, TruncationMode.PER_ROUND)
        prepared = simulate(res.circuit)
        assert abs(statevec.infidelity(prepared, target) - res.final_infidelity) < 1e-10

    def test_matches_canonical_mps_reference(self, rng):
        # chain schedule with per-layer truncation == sequential canonical MPS
        for trial in range(50):
            n = int(rng.integers(2, 5))
            target = random_state(n, rng)
            res = run_schedule(
                target, schedules.chain_schedule(n), 1, TruncationMode.PER_LAYER
            )
            ref = canonical_mps_reference(target)
            assert abs(res.final_infidelity - ref) < 1e-12, trial

    def test_round_pairs_commute(self, rng):
        # steps of one round are computed from the pre-round state, so a
        # reversed application order must give the same result
        target = random_state(6, rng)
        sched = schedules.htn_schedule(6)
        res = run_schedule(target, sched, 1, TruncationMode.PER_ROUND)
        flipped = schedules.Schedule(
            n=6, rounds=tuple(tuple(reversed(r)) for r in sched.rounds), scheme="htn-flipped"
        )
        res2 = run_schedule(target, flipped, 1, TruncationMode.PER_ROUND)
        assert abs(res.final_infidelity - res2.final_infidelity) < 1e-12

    def test_dimension_mismatch_rejected(self, rng):
        with pytest.raises(ValueError):
            run_schedule(random_state(3, rng), schedules.chain_schedule(4), 1)

    def test_bad_layers_rejected(self, rng):
        with pytest.raises(ValueError):
            run_schedule(random_state(3, rng), schedules.chain_schedule(3), 0)

    def test_rewrite_2cx_keeps_exact_targets_exact(self):
        ghz = targets.ghz_state(8)
        res = run_schedule(ghz, schedules.htn_schedule(8), 1, TruncationMode.PER_ROUND,
                           rewrite_2cx=True)
        assert res.final_infidelity < 1e-10

    def test_rewrite_2cx_is_equally_good_compilation(self, rng):
        # the rewritten pipeline keeps every per-layer retained weight (the
        # truncated sweep only differs by partner-qubit rotations) and lands
        # at the same error scale
        target = random_state(5, rng)
        sched = schedules.chain_schedule(5)
        plain = run_schedule(target, sched, 1, TruncationMode.PER_LAYER)
        rewritten = run_schedule(target, sched, 1, TruncationMode.PER_LAYER, rewrite_2cx=True)
        for w1, w2 in zip(plain.per_round_weights, rewritten.per_round_weights):
            assert abs(w1 - w2) < 1e-10
        assert rewritten.final_infidelity < 10 * plain.final_infidelity + 1e-9

    def test_rewrite_2cx_self_consistency(self, rng):
        target = random_state(5, rng)
        res = run_schedule(target, schedules.hen_schedule(5), 1, TruncationMode.PER_ROUND,
                           rewrite_2cx=True)
        prepared = simulate(res.circuit)
        assert abs(statevec.infidelity(prepared, target) - res.final_infidelity) < 1e-10


class TestRankOneAndRankTwoExactness:
    @pytest.mark.parametrize("kind", ["ghz", "w", "cos", "linear"])
    @pytest.mark.parametrize("build", [schedules.chain_schedule, schedules.ttn_schedule, schedules.htn_schedule])
    def test_rank2_exact_single_layer(self, kind, build):
        n = 8
        target = targets.discretize(targets.make_spec(kind, n))
        assert targets.mps_rank(target).chi <= 2
        sched = build(n)
        mode = disentangler.default_truncation_mode(sched.scheme)
        res = run_schedule(target, sched, 1, mode)
        assert res.final_infidelity < 1e-9

    @pytest.mark.parametrize(
        "build", [schedules.chain_schedule, schedules.ttn_schedule, schedules.htn_schedule, schedules.hen_schedule]
    )
    def test_rank1_exact_everywhere(self, build):
        n = 8
        target = targets.discretize(targets.make_spec("exp", n))
        assert targets.mps_rank(target).chi == 1
        sched = build(n)
        res = run_schedule(target, sched, 1, disentangler.default_truncation_mode(sched.scheme))
        assert res.final_infidelity < 1e-9
        # every single step keeps all the weight, starting with round one
        for step in res.steps:
            assert step.retained_weight > 1.0 - 1e-12
