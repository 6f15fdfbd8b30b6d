"""Acceptance suite: ten end-to-end criteria, one pass/fail line each.

Each test prints a single summary line directly to the terminal (bypassing
capture) and then asserts the criterion, including its runtime budget.
"""
import json
import time
from fractions import Fraction
from math import comb, sqrt

import numpy as np
import pytest

from certdel.bitvec import BitString
from certdel.bounds import binary_entropy, epsilon_nu, serfling_bound
from certdel.games import (AdversaryStrategy, DeletionCertificate,
                           HonestDeleter, check_uncertainty_relation,
                           ciphertext_distribution_exact, epr_honest_adversary,
                           estimate_gap, fabricated_certificate_rate,
                           hoeffding_width, make_strategy,
                           product_zero_adversary, run_epr_game_oracle,
                           run_game1, serfling_empirical)
from certdel.qsim import (COMPUTATIONAL_POVM, HADAMARD_POVM, NoiseModel,
                          apply_noise, povm_overlap)
from certdel.scheme import (SchemeParams, decrypt, delete, encrypt, keygen,
                            verify)
from instances import M3, uncertainty_instances

GAP_PARAMS = SchemeParams(n=128, m=512, s=384, k=128, tau=32, mu=192,
                          delta=0.05)


@pytest.fixture
def announce(request):
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def _announce(criterion, ok, detail):
        line = f"ACCEPTANCE CRITERION {criterion}: " \
               f"{'PASS' if ok else 'FAIL'} ({detail})"
        if capman is not None:
            with capman.global_and_fixture_disabled():
                print(line, flush=True)
        else:  # pragma: no cover
            print(line, flush=True)
    return _announce


class ZeroCertificateStrategy(AdversaryStrategy):
    name = "zero-certificate"

    def phase1(self, view, state, rng):
        return DeletionCertificate(BitString.zeros(view.m))

    def phase2(self, key, view, state, params, rng):
        return 1


def test_criterion_1_correctness(announce):
    t0 = time.perf_counter()
    rng = np.random.default_rng(1001)
    failures = 0
    for _ in range(1000):
        aux, key = keygen(GAP_PARAMS, rng)
        msg = BitString.random(GAP_PARAMS.n, rng)
        out = decrypt(key, encrypt(msg, aux, key, GAP_PARAMS), GAP_PARAMS, rng)
        failures += not (out.flag == 1 and out.plaintext == msg)
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 5.0
    announce(1, ok, f"{1000 - failures}/1000 exact decrypts, {elapsed:.2f}s < 5s")
    assert failures == 0
    assert elapsed < 5.0


def test_criterion_2_verification(announce):
    t0 = time.perf_counter()
    rng = np.random.default_rng(1002)
    passes = 0
    for _ in range(1000):
        aux, key = keygen(GAP_PARAMS, rng)
        ct = encrypt(BitString.random(GAP_PARAMS.n, rng), aux, key, GAP_PARAMS)
        passes += verify(aux, key, delete(ct, GAP_PARAMS, rng), GAP_PARAMS)
    elapsed = time.perf_counter() - t0
    ok = passes == 1000 and elapsed < 5.0
    announce(2, ok, f"{passes}/1000 honest verifications, {elapsed:.2f}s < 5s")
    assert passes == 1000
    assert elapsed < 5.0


def test_criterion_3_robustness(announce):
    params = SchemeParams(n=128, m=512, s=384, k=128, tau=16, mu=192,
                          delta=0.05)
    trials = 100000
    threshold = 2.0 ** -16 + 3.0 * sqrt(2.0 ** -16 / trials)
    t0 = time.perf_counter()
    rng = np.random.default_rng(1003)
    noise = NoiseModel(0.25)
    bad = 0
    for _ in range(trials):
        aux, key = keygen(params, rng)
        msg = BitString.random(params.n, rng)
        ct = encrypt(msg, aux, key, params)
        apply_noise(ct.quantum, noise, rng)
        out = decrypt(key, ct, params, rng)
        bad += out.flag == 1 and out.plaintext != msg
    elapsed = time.perf_counter() - t0
    ok = bad / trials <= threshold and elapsed < 60.0
    announce(3, ok, f"{bad} undetected corruptions in {trials} "
                    f"(limit {threshold * trials:.1f}), {elapsed:.1f}s < 60s")
    assert bad / trials <= threshold
    assert elapsed < 60.0


def test_criterion_4_exact_indistinguishability(announce):
    params = SchemeParams(n=1, m=4, s=2, k=2, tau=1, mu=1, delta=0.05)
    t0 = time.perf_counter()
    dist0 = ciphertext_distribution_exact(params, BitString(0, 1))
    dist1 = ciphertext_distribution_exact(params, BitString(1, 1))
    elapsed = time.perf_counter() - t0
    equal = dist0 == dist1
    ok = equal and elapsed < 60.0
    announce(4, ok, f"msg=0 and msg=1 distributions "
                    f"{'identical' if equal else 'differ'} over "
                    f"{len(dist0)} cells (integer weights), {elapsed:.1f}s < 60s")
    assert equal
    assert elapsed < 60.0


def test_criterion_5_deletion_gap(announce):
    specs = (["honest", "full-computational"]
             + [f"partial:f={f / 10:.1f}" for f in range(1, 10)]
             + ["forging"])
    trials = 100000
    t0 = time.perf_counter()
    worst = None
    all_ok = True
    for seed, spec in enumerate(specs, start=2000):
        report = estimate_gap(GAP_PARAMS, make_strategy(spec), trials, seed)
        margin = report.eta_bound + hoeffding_width(trials)
        within = report.gap <= margin
        all_ok &= within
        if worst is None or report.gap > worst[1]:
            worst = (spec, report.gap, margin)
    elapsed = time.perf_counter() - t0
    ok = all_ok and elapsed < 600.0
    announce(5, ok, f"{len(specs)} strategies, max gap {worst[1]:.4f} "
                    f"(limit {worst[2]:.4f}, at {worst[0]}), "
                    f"{elapsed:.0f}s < 600s")
    assert all_ok
    assert elapsed < 600.0


def test_criterion_6_tradeoff_wall(announce):
    # Exact bound: a fabricated certificate passes only if fewer than
    # k*delta = 6.4 of 128 fair coins mismatch.
    exact = sum(Fraction(comb(128, i)) for i in range(7)) / Fraction(2) ** 128
    trials = 1000000
    t0 = time.perf_counter()
    rate = fabricated_certificate_rate(GAP_PARAMS, trials,
                                       np.random.default_rng(1006))
    elapsed = time.perf_counter() - t0
    ok = rate == 0.0 and exact < Fraction(1, 10 ** 25) and elapsed < 60.0
    announce(6, ok, f"0 passes expected, {int(rate * trials)} observed in "
                    f"{trials}; exact rate {float(exact):.2e} < 1e-25, "
                    f"{elapsed:.1f}s < 60s")
    assert rate == 0.0
    assert exact < Fraction(1, 10 ** 25)
    assert elapsed < 60.0


def test_criterion_7_noise_tolerance(announce):
    params = SchemeParams(n=128, m=640, s=384, k=256, tau=32, mu=192,
                          delta=0.05)
    p = 0.02
    trials = 10000
    t0 = time.perf_counter()
    rng = np.random.default_rng(1007)
    verify_passes = 0
    light_trials = 0
    light_correct = 0
    for _ in range(trials):
        aux, key = keygen(params, rng)
        msg = BitString.random(params.n, rng)

        ct = encrypt(msg, aux, key, params)
        flips = BitString.from_array((rng.random(params.m) < p).astype(np.uint8))
        ct.quantum.values ^= flips.value
        verify_passes += verify(aux, key, delete(ct, params, rng), params)

        ct = encrypt(msg, aux, key, params)
        flips = BitString.from_array((rng.random(params.m) < p).astype(np.uint8))
        ct.quantum.values ^= flips.value
        out = decrypt(key, ct, params, rng)
        per_block = flips.select(key.theta, 0).to_array().reshape(-1, 8)
        if per_block.sum(axis=1).max() <= 1:
            light_trials += 1
            light_correct += out.flag == 1 and out.plaintext == msg
    elapsed = time.perf_counter() - t0
    freq = verify_passes / trials
    ok = (freq >= 0.99 and light_correct == light_trials and elapsed < 60.0)
    announce(7, ok, f"verify rate {freq:.4f} >= 0.99; "
                    f"{light_correct}/{light_trials} decrypts exact when "
                    f"<=1 flip per block, {elapsed:.1f}s < 60s")
    assert freq >= 0.99
    assert light_correct == light_trials
    assert elapsed < 60.0


def test_criterion_8_formula_layer(announce):
    t0 = time.perf_counter()
    rng = np.random.default_rng(1008)
    identity_ok = True
    for _ in range(100):
        s = int(rng.integers(1, 10000))
        k = int(rng.integers(1, 10000))
        nu = float(rng.uniform(0.0, 0.5))
        identity_ok &= abs(epsilon_nu(s, k, s + k, nu) ** 2
                           - serfling_bound(s, k, s + k, nu)) <= 1e-12
    overlap_err = abs(povm_overlap(COMPUTATIONAL_POVM, HADAMARD_POVM) - 0.5)
    elapsed = time.perf_counter() - t0
    # 0.811278 is h(1/4) quoted to six places; compare against the
    # high-precision value so the 1e-9 tolerance is meaningful.
    h_exact_err = abs(binary_entropy(0.25) - 0.81127812445913286391)
    ok = identity_ok and h_exact_err <= 1e-9 and overlap_err <= 1e-12 \
        and elapsed < 1.0
    announce(8, ok, f"100/100 epsilon^2=serfling; |h(1/4)-golden|="
                    f"{h_exact_err:.1e} <= 1e-9; |overlap-1/2|="
                    f"{overlap_err:.1e} <= 1e-12, {elapsed:.2f}s < 1s")
    assert identity_ok
    assert h_exact_err <= 1e-9
    assert overlap_err <= 1e-12
    assert elapsed < 1.0


def test_criterion_9_serfling_monte_carlo(announce):
    t0 = time.perf_counter()
    rng = np.random.default_rng(1009)
    delta = 0.1
    all_ok = True
    points = []
    for m in (64, 128):
        k = m // 4
        s = m - k
        z = BitString.from_array((np.arange(m) < int(0.2 * m)).astype(np.uint8))
        for nu in (0.05, 0.1, 0.15):
            freq = serfling_empirical(z, s, k, delta, nu, 100000, rng)
            bound = serfling_bound(s, k, m, nu)
            all_ok &= freq <= bound
            points.append((m, nu, freq, bound))
    elapsed = time.perf_counter() - t0
    ok = all_ok and elapsed < 60.0
    worst = max(points, key=lambda t: t[2] - t[3])
    announce(9, ok, f"6/6 grid points within bound "
                    f"(tightest: m={worst[0]}, nu={worst[1]}, "
                    f"{worst[2]:.3f} <= {worst[3]:.3f}), {elapsed:.1f}s < 60s")
    assert all_ok
    assert elapsed < 60.0


def test_criterion_10_oracle_and_uncertainty(announce):
    t0 = time.perf_counter()
    relation_ok = True
    for inst in uncertainty_instances():
        hmin, hmax, rhs = check_uncertainty_relation(inst)
        relation_ok &= hmin + hmax >= rhs - 1e-9

    trials = 100000
    pairs = [(HonestDeleter(), epr_honest_adversary(M3.m)),
             (ZeroCertificateStrategy(), product_zero_adversary(M3.m))]
    max_tv = 0.0
    for seed, (strategy, adversary) in enumerate(pairs, start=3000):
        exact = run_epr_game_oracle(M3, adversary)
        counts = {key: 0 for key in exact}
        for t in range(trials):
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=seed, spawn_key=(0, t)))
            counts[run_game1(M3, strategy, 0, rng)] += 1
        tv = 0.5 * sum(abs(counts[key] / trials - exact[key])
                       for key in exact)
        max_tv = max(max_tv, tv)
    elapsed = time.perf_counter() - t0
    ok = relation_ok and max_tv <= 0.02 and elapsed < 120.0
    announce(10, ok, f"{len(uncertainty_instances())}/"
                     f"{len(uncertainty_instances())} uncertainty instances "
                     f"hold; max game TV {max_tv:.4f} <= 0.02, "
                     f"{elapsed:.0f}s < 120s")
    assert relation_ok
    assert max_tv <= 0.02
    assert elapsed < 120.0
