"""Executable security games for the certified-deletion scheme.

Contains the prepare-and-measure deletion game with pluggable adversary
strategies, Monte-Carlo gap estimation, the exact entanglement-based game
oracle for tiny instances, exhaustive ciphertext-distribution enumeration,
and classical-side-information entropy calculators.

Strategies interact with the ciphertext only through CiphertextView, which
exposes the classical part and qubit measurement; the hidden (value, basis)
fields stand in for unclonable quantum state and are not readable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bitvec import BitString, IndexSet, index_sets_from_basis
from .bounds import best_eta
from .hashcode import ToeplitzHash
from .qsim import StateVector
from .scheme import (Ciphertext, DecKey, DeletionCertificate, SchemeParams,
                     code_for_params, encrypt, keygen, verify)

__all__ = [
    "CiphertextView",
    "AdversaryStrategy",
    "HonestDeleter",
    "FullComputationalMeasurer",
    "PartialMeasurer",
    "ForgingNonMeasurer",
    "make_strategy",
    "STRATEGY_NAMES",
    "GameReport",
    "run_game1",
    "estimate_gap",
    "hoeffding_width",
    "EprAdversary",
    "epr_honest_adversary",
    "product_zero_adversary",
    "run_epr_game_oracle",
    "ciphertext_distribution_exact",
    "fabricated_certificate_rate",
    "ClassicalJoint",
    "hmin_classical",
    "hmax_classical",
    "UncertaintyInstance",
    "check_uncertainty_relation",
    "check_leftover_hash",
    "serfling_empirical",
]


class CiphertextView:
    """Adversary-facing handle on a ciphertext.

    Grants the classical part and measurement access to the qubits; the
    underlying register is intentionally unreachable so a simulated
    adversary cannot read preparation data it could never clone.
    """

    def __init__(self, ct: Ciphertext, params: SchemeParams):
        self._register = ct.quantum
        self.c = ct.c
        self.p = ct.p
        self.q = ct.q
        self.m = params.m

    def measure_all(self, bases: BitString, rng: np.random.Generator) -> BitString:
        return self._register.measure_all(bases, rng)

    def measure_masked(self, mask: BitString, bases: BitString,
                       rng: np.random.Generator) -> BitString:
        return self._register.measure_masked(mask, bases, rng)

    def measure(self, i: int, basis: int, rng: np.random.Generator) -> int:
        one = BitString(1 << i, self.m)
        bases = BitString((basis & 1) << i, self.m)
        return self._register.measure_masked(one, bases, rng)[i]


def _random_nonzero(n: int, rng: np.random.Generator) -> BitString:
    msg = BitString.random(n, rng)
    while msg.weight() == 0:
        msg = BitString.random(n, rng)
    return msg


class AdversaryStrategy:
    """Three-phase adversary interface.

    phase0 chooses the candidate plaintext, phase1 turns the ciphertext
    into a deletion certificate plus retained state, phase2 sees the
    decryption key and guesses the challenge bit.  The state dict is
    opaque to the harness; a fresh one is created every trial.
    """

    name = "abstract"

    def phase0(self, params: SchemeParams, rng: np.random.Generator):
        return _random_nonzero(params.n, rng), {}

    def phase1(self, view: CiphertextView, state: dict,
               rng: np.random.Generator) -> DeletionCertificate:
        raise NotImplementedError

    def phase2(self, key: DecKey, view: CiphertextView, state: dict,
               params: SchemeParams, rng: np.random.Generator) -> int:
        raise NotImplementedError


def _guess_bit(view: CiphertextView, key: DecKey, r_i_guess: BitString,
               params: SchemeParams, msg0: BitString) -> int:
    """Decrypt with a guessed restriction of r and output 1 iff the result
    equals the candidate plaintext."""
    code = code_for_params(params)
    r_prime = code.corr(r_i_guess, view.q ^ key.e)
    plaintext = view.c ^ key.h_pa(r_prime) ^ key.u
    return 1 if plaintext == msg0 else 0


class HonestDeleter(AdversaryStrategy):
    """Measures everything in the Hadamard basis and reports deletion."""

    name = "honest"

    def phase1(self, view, state, rng):
        hadamard = ~BitString.zeros(view.m)
        return DeletionCertificate(view.measure_all(hadamard, rng))

    def phase2(self, key, view, state, params, rng):
        return 1


class FullComputationalMeasurer(AdversaryStrategy):
    """Measures everything computationally (keeping the data), fabricates a
    uniformly random certificate, and tries to decrypt once keyed."""

    name = "full-computational"

    def phase1(self, view, state, rng):
        state["outcomes"] = view.measure_all(BitString.zeros(view.m), rng)
        return DeletionCertificate(BitString.random(view.m, rng))

    def phase2(self, key, view, state, params, rng):
        r_i = state["outcomes"].select(key.theta, 0)
        return _guess_bit(view, key, r_i, params, state["msg0"])

    def phase0(self, params, rng):
        msg0 = _random_nonzero(params.n, rng)
        return msg0, {"msg0": msg0}


class PartialMeasurer(AdversaryStrategy):
    """Measures each qubit computationally with probability f and in the
    Hadamard basis otherwise; the certificate reuses Hadamard outcomes and
    fabricates the rest."""

    name = "partial"

    def __init__(self, fraction: float):
        if not 0.0 <= fraction <= 1.0:
            raise ValueError("fraction must lie in [0, 1]")
        self.fraction = fraction

    def phase0(self, params, rng):
        msg0 = _random_nonzero(params.n, rng)
        return msg0, {"msg0": msg0}

    def phase1(self, view, state, rng):
        comp_mask = BitString.from_array(
            (rng.random(view.m) < self.fraction).astype(np.uint8))
        bases = ~comp_mask  # Hadamard wherever not computationally measured
        outcomes = view.measure_all(bases, rng)
        state["comp_mask"] = comp_mask
        state["outcomes"] = outcomes
        # Hadamard outcomes reported as-is; computationally measured
        # positions get fabricated coin flips.
        fabricated = BitString.random(view.m, rng)
        y = BitString((outcomes.value & ~comp_mask.value)
                      | (fabricated.value & comp_mask.value), view.m)
        return DeletionCertificate(y)

    def phase2(self, key, view, state, params, rng):
        known = state["comp_mask"].value & ~key.theta.value
        guess = ((state["outcomes"].value & known)
                 | (BitString.random(view.m, rng).value & ~known))
        full = BitString(guess & ((1 << view.m) - 1), view.m)
        r_i = full.select(key.theta, 0)
        return _guess_bit(view, key, r_i, params, state["msg0"])


class ForgingNonMeasurer(AdversaryStrategy):
    """Leaves the qubits untouched, forges a random certificate, and only
    measures (in the revealed basis) if verification somehow passed.

    Shows that the security event is a conjunction: this adversary would
    decrypt perfectly given the key, but essentially never gets there."""

    name = "forging"

    def phase0(self, params, rng):
        msg0 = _random_nonzero(params.n, rng)
        return msg0, {"msg0": msg0}

    def phase1(self, view, state, rng):
        return DeletionCertificate(BitString.random(view.m, rng))

    def phase2(self, key, view, state, params, rng):
        r = view.measure_all(key.theta, rng)
        return _guess_bit(view, key, r.select(key.theta, 0), params,
                          state["msg0"])


STRATEGY_NAMES = ("honest", "full-computational", "partial", "forging")


def make_strategy(spec: str) -> AdversaryStrategy:
    """Parse a strategy spec such as 'honest' or 'partial:f=0.3'."""
    name, _, args = spec.partition(":")
    if name == "honest":
        return HonestDeleter()
    if name == "full-computational":
        return FullComputationalMeasurer()
    if name == "forging":
        return ForgingNonMeasurer()
    if name == "partial":
        fraction = 0.5
        for part in filter(None, args.split(",")):
            k, _, v = part.partition("=")
            if k != "f":
                raise ValueError(f"unknown strategy argument {k!r}")
            fraction = float(v)
        return PartialMeasurer(fraction)
    raise ValueError(f"unknown strategy {name!r}")


def run_game1(params: SchemeParams, strategy: AdversaryStrategy, b: int,
              rng: np.random.Generator) -> tuple[int, int]:
    """One round of the deletion game; returns (ok, b')."""
    msg0, state = strategy.phase0(params, rng)
    aux, key = keygen(params, rng)
    msg = msg0 if b else BitString.zeros(params.n)
    ct = encrypt(msg, aux, key, params)
    view = CiphertextView(ct, params)
    cert = strategy.phase1(view, state, rng)
    ok = verify(aux, key, cert, params)
    if not ok:
        return 0, 0
    return 1, strategy.phase2(key, view, state, params, rng)


def hoeffding_width(trials: int, alpha: float = 0.01) -> float:
    """Half-width of a two-sided (1 - alpha) Hoeffding interval."""
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * trials))


@dataclass(frozen=True)
class GameReport:
    strategy: str
    trials: int
    successes: tuple        # count of (ok=1 and b'=1) per arm b=0,1
    p_hat: tuple
    interval_width: float   # per-arm two-sided 99% Hoeffding half-width
    eta_bound: float
    nu_star: float

    @property
    def gap(self) -> float:
        return abs(self.p_hat[0] - self.p_hat[1])

    @property
    def violation(self) -> bool:
        return self.gap - 2.0 * self.interval_width > self.eta_bound

    def as_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "trials": self.trials,
            "successes": list(self.successes),
            "p0_hat": self.p_hat[0],
            "p1_hat": self.p_hat[1],
            "gap": self.gap,
            "interval_width": self.interval_width,
            "eta": self.eta_bound,
            "nu_star": self.nu_star,
            "violation": self.violation,
        }


def _arm_successes(params, strategy, b, trials, master_seed) -> int:
    count = 0
    for t in range(trials):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=master_seed, spawn_key=(b, t)))
        ok, b_prime = run_game1(params, strategy, b, rng)
        count += ok & b_prime
    return count


def estimate_gap(params: SchemeParams, strategy: AdversaryStrategy,
                 trials: int, master_seed: int, workers: int = 1) -> GameReport:
    """Monte-Carlo estimate of |p0 - p1| with independent per-trial
    substreams derived from (master seed, arm, trial index)."""
    if trials < 1:
        raise ValueError("need at least one trial")
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        chunks = []
        per = [trials // workers + (1 if i < trials % workers else 0)
               for i in range(workers)]
        offsets = np.cumsum([0] + per[:-1])
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = []
            for b in (0, 1):
                for off, cnt in zip(offsets, per):
                    futures.append((b, pool.submit(
                        _arm_chunk, params, strategy, b, int(off), int(cnt),
                        master_seed)))
            successes = [0, 0]
            for b, fut in futures:
                successes[b] += fut.result()
    else:
        successes = [_arm_successes(params, strategy, b, trials, master_seed)
                     for b in (0, 1)]
    eta_val, nu = best_eta(params.s, params.k, params.n, params.delta)
    return GameReport(
        strategy=getattr(strategy, "name", type(strategy).__name__),
        trials=trials,
        successes=tuple(successes),
        p_hat=(successes[0] / trials, successes[1] / trials),
        interval_width=hoeffding_width(trials),
        eta_bound=eta_val,
        nu_star=nu,
    )


def _arm_chunk(params, strategy, b, offset, count, master_seed) -> int:
    total = 0
    for t in range(offset, offset + count):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=master_seed, spawn_key=(b, t)))
        ok, b_prime = run_game1(params, strategy, b, rng)
        total += ok & b_prime
    return total


# -- exact entanglement-based game oracle -----------------------------------

@dataclass(frozen=True)
class EprAdversary:
    """Adversary for the entanglement-based game at oracle scale.

    state spans qubits [0, m) for the system sent to the challenger,
    [m, 2m) for the system measured in the Hadamard basis to produce the
    certificate, and any remaining qubits for the retained system, which
    is measured computationally before the decision.  decide maps
    (certificate bits, retained-system outcome bits) to the output bit.
    """

    state: StateVector
    m: int
    decide: object  # callable (BitString, BitString) -> int

    @property
    def n_retained(self) -> int:
        return self.state.n_qubits - 2 * self.m


def epr_honest_adversary(m: int) -> EprAdversary:
    """Sends halves of EPR pairs, keeps and Hadamard-measures the twins,
    always claims success."""
    pairs = make_interleaved_epr(m)
    return EprAdversary(state=pairs, m=m, decide=lambda y, w: 1)


def make_interleaved_epr(m: int) -> StateVector:
    """EPR pairs arranged so qubit i is entangled with qubit m + i:
    the maximally correlated state sum_r |r>|r> / 2^(m/2)."""
    amps = np.zeros(1 << (2 * m), dtype=np.complex128)
    scale = 2.0 ** (-m / 2.0)
    for r in range(1 << m):
        amps[r | (r << m)] = scale
    return StateVector(amps)


def product_zero_adversary(m: int) -> EprAdversary:
    """Sends |0...0>, keeps |+...+> so the certificate is deterministically
    all-zero, always claims success."""
    amps = np.zeros(1 << m, dtype=np.complex128)
    amps[0] = 1.0
    plus = np.full(1 << m, 1.0 / math.sqrt(1 << m), dtype=np.complex128)
    return EprAdversary(state=StateVector(np.kron(plus, amps)), m=m,
                        decide=lambda y, w: 1)


def run_epr_game_oracle(params: SchemeParams, adversary: EprAdversary) -> dict:
    """Exact joint distribution of (ok, b') for the entanglement-based game.

    The decision table sees only data that is independent of the challenge
    bit, so the returned distribution is identical for both arms; it is
    reported once with a total-probability check.
    """
    m, k, delta = params.m, params.k, params.delta
    if adversary.m != m:
        raise ValueError("adversary system size does not match params")
    nq = adversary.state.n_qubits
    joint = {(0, 0): 0.0, (0, 1): 0.0, (1, 0): 0.0, (1, 1): 0.0}
    thetas = list(combinations(range(m), k))
    weight = 1.0 / len(thetas)
    retained = adversary.n_retained
    idx = np.arange(1 << nq)
    for ones in thetas:
        theta_mask = sum(1 << i for i in ones)
        # Hadamard-rotate the challenger's Hadamard-measured qubits and the
        # whole certificate system; then the computational distribution of
        # the rotated state is the joint outcome distribution.
        h_mask = theta_mask | (((1 << m) - 1) << m)
        probs = adversary.state.apply_hadamards(h_mask).probabilities()
        for j in np.nonzero(probs > 1e-15)[0]:
            r = int(j) & ((1 << m) - 1)
            y = (int(j) >> m) & ((1 << m) - 1)
            w = int(j) >> (2 * m)
            ok = 1 if ((y ^ r) & theta_mask).bit_count() < k * delta else 0
            if ok:
                b_prime = int(adversary.decide(BitString(y, m),
                                               BitString(w, retained)))
            else:
                b_prime = 0
            joint[(ok, b_prime)] += weight * float(probs[j])
    return joint


# -- exhaustive ciphertext distribution -------------------------------------

def ciphertext_distribution_exact(params: SchemeParams, msg: BitString) -> dict:
    """Key-averaged distribution of the observable ciphertext at micro scale.

    For every measurement basis choice, enumerates all keys, hash seeds,
    and measurement outcomes exactly.  Returns integer weights keyed by
    (bases, outcome, c, p, q); weights share one global denominator, so
    two distributions are equal iff the dicts are equal.
    """
    n, m, s, k, tau, mu = (params.n, params.m, params.s, params.k,
                           params.tau, params.mu)
    code = code_for_params(params)
    if s > 8 or m > 8:
        raise ValueError("exhaustive enumeration capped at 8 qubits")

    def hash_table(in_len, out_len):
        seeds = 1 << (in_len + out_len - 1)
        return [[ToeplitzHash(in_len, out_len, BitString(sd, in_len + out_len - 1))
                 (BitString(x, in_len)).value
                 for x in range(1 << in_len)] for sd in range(seeds)]

    hpa_tab = hash_table(s, n)
    hec_tab = hash_table(s, tau)
    synd_tab = [code.synd(BitString(x, s)).value for x in range(1 << s)]

    thetas = [sum(1 << i for i in ones) for ones in combinations(range(m), k)]
    submasks = {}
    for mask in range(1 << m):
        subs = []
        sub = mask
        while True:
            subs.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & mask
        submasks[mask] = subs

    counts = {}
    msg_v = msg.value
    for theta in thetas:
        comp_positions = [i for i in range(m) if not (theta >> i) & 1]
        for r in range(1 << m):
            r_i = sum(((r >> p) & 1) << j for j, p in enumerate(comp_positions))
            for hpa_seed in range(len(hpa_tab)):
                x = hpa_tab[hpa_seed][r_i]
                for hec_seed in range(len(hec_tab)):
                    base_p = hec_tab[hec_seed][r_i]
                    base_q = synd_tab[r_i]
                    for u in range(1 << n):
                        c = msg_v ^ x ^ u
                        for d in range(1 << tau):
                            p = base_p ^ d
                            for e in range(1 << mu):
                                q = base_q ^ e
                                for bases in range(1 << m):
                                    match = ~(theta ^ bases) & ((1 << m) - 1)
                                    forced = r & match
                                    free = ~match & ((1 << m) - 1)
                                    w = 1 << match.bit_count()
                                    for sub in submasks[free]:
                                        cell = (bases, forced | sub, c, p, q)
                                        counts[cell] = counts.get(cell, 0) + w
    return counts


# -- classical-side-information entropies -----------------------------------

@dataclass
class ClassicalJoint:
    """Finite joint distribution over named discrete variables."""

    variables: tuple
    probs: np.ndarray

    def __post_init__(self):
        self.probs = np.asarray(self.probs, dtype=float)
        if self.probs.ndim != len(self.variables):
            raise ValueError("one axis per variable required")
        if np.any(self.probs < -1e-15):
            raise ValueError("negative probability")
        if abs(self.probs.sum() - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to 1")

    def _axes(self, names) -> tuple:
        return tuple(self.variables.index(v) for v in names)

    def marginal_over(self, target, side) -> np.ndarray:
        """2-D table P(target, side) with all other variables summed out."""
        t_ax, = self._axes((target,))
        s_ax, = self._axes((side,)) if side is not None else (None,)
        axes = [a for a in range(self.probs.ndim)
                if a not in (t_ax, s_ax)]
        p = self.probs.sum(axis=tuple(axes)) if axes else self.probs
        if side is None:
            return p.reshape(-1, 1)
        if t_ax > s_ax:
            p = p.T
        return p


def hmin_classical(joint: ClassicalJoint, target: str, side: str | None) -> float:
    """Conditional min-entropy -log2 of the optimal guessing probability."""
    table = joint.marginal_over(target, side)
    p_guess = float(table.max(axis=0).sum())
    return -math.log2(p_guess)


def hmax_classical(joint: ClassicalJoint, target: str,
                   side: str | None) -> tuple[float, float]:
    """Conditional max-entropy (Renyi-1/2) and the log-support-size upper
    bound used to bound it."""
    table = joint.marginal_over(target, side)
    p_side = table.sum(axis=0)
    total = 0.0
    support_bound = 0.0
    for j in range(table.shape[1]):
        if p_side[j] <= 0.0:
            continue
        cond = table[:, j] / p_side[j]
        total += p_side[j] * float(np.sqrt(cond).sum()) ** 2
        support_bound = max(support_bound,
                            math.log2(int(np.count_nonzero(cond > 1e-15))))
    return math.log2(total), support_bound


@dataclass(frozen=True)
class UncertaintyInstance:
    """Tripartite pure state for checking the uncertainty relation.

    Qubits [0, s) go to the challenger; [s, s + n_side) form the side
    system measured in per-qubit bases side_bases to produce classical
    side information; [s + n_side, s + n_side + s) form the system whose
    Hadamard outcomes serve as the reconstruction data.
    """

    state: StateVector
    s: int
    n_side: int
    side_bases: BitString

    def __post_init__(self):
        if self.state.n_qubits != 2 * self.s + self.n_side:
            raise ValueError("state size must be 2s + n_side qubits")
        if self.side_bases.length != self.n_side:
            raise ValueError("one basis bit per side qubit required")


def _measured_joint(state: StateVector, groups, h_mask: int) -> ClassicalJoint:
    """Joint distribution of computational outcomes after Hadamard-rotating
    the masked qubits, split into named bit groups [(name, lo, width), ...]."""
    probs = state.apply_hadamards(h_mask).probabilities()
    shape = tuple(1 << w for _, _, w in groups)
    table = np.zeros(shape)
    for j, pr in enumerate(probs):
        if pr <= 1e-18:
            continue
        idx = tuple((j >> lo) & ((1 << w) - 1) for _, lo, w in groups)
        table[idx] += pr
    table /= table.sum()
    return ClassicalJoint(tuple(name for name, _, _ in groups), table)


def check_uncertainty_relation(inst: UncertaintyInstance) -> tuple[float, float, float]:
    """Returns (min-entropy term, max-entropy term, lower bound s).

    Both joints come from exact enumeration: the min-entropy term from
    measuring the challenger system computationally against the measured
    side system, the max-entropy term from Hadamard measurements on both
    the challenger and reconstruction systems.
    """
    s, ns = inst.s, inst.n_side
    groups = [("X", 0, s), ("E", s, ns), ("B", s + ns, s)]
    joint_xe = _measured_joint(inst.state, groups,
                               inst.side_bases.value << s)
    hmin = hmin_classical(joint_xe, "X", "E" if ns else None)
    full = (1 << s) - 1
    h_mask = full | (inst.side_bases.value << s) | (full << (s + ns))
    joint_zy = _measured_joint(inst.state, groups, h_mask)
    # relabel: challenger Hadamard outcomes vs reconstruction outcomes
    hmax, _ = hmax_classical(joint_zy, "X", "B")
    return hmin, hmax, float(s)


def check_leftover_hash(joint: ClassicalJoint, target: str, side: str | None,
                        out_len: int) -> tuple[float, float]:
    """Exact total-variation distance of (hash output, seed, side info)
    from uniform, over the full Toeplitz family, against the extraction
    bound 1/2 * 2^(-(Hmin - out_len)/2)."""
    table = joint.marginal_over(target, side)
    in_len = int(math.log2(table.shape[0]))
    if 1 << in_len != table.shape[0]:
        raise ValueError("input alphabet must be a power of two")
    n_seeds = 1 << (in_len + out_len - 1)
    distance = 0.0
    uniform = 2.0 ** -out_len
    for seed in range(n_seeds):
        h = ToeplitzHash(in_len, out_len, BitString(seed, in_len + out_len - 1))
        out = np.array([h(BitString(x, in_len)).value
                        for x in range(1 << in_len)])
        for e in range(table.shape[1]):
            p_e = table[:, e].sum()
            hashed = np.bincount(out, weights=table[:, e],
                                 minlength=1 << out_len)
            distance += 0.5 * float(np.abs(hashed - uniform * p_e).sum()) / n_seeds
    hmin = hmin_classical(joint, target, side)
    bound = 0.5 * 2.0 ** (-0.5 * (hmin - out_len))
    return distance, bound


def fabricated_certificate_rate(params: SchemeParams, trials: int,
                                rng: np.random.Generator,
                                chunk: int = 1 << 14) -> float:
    """Fraction of trials in which a certificate fabricated uniformly at
    random passes verification.

    Each trial draws a fresh r, a fresh weight-k basis string, and a fresh
    fabricated y, and evaluates the verification predicate on the checked
    positions; trials are processed in vectorized chunks.
    """
    m, k, delta = params.m, params.k, params.delta
    hits = 0
    done = 0
    while done < trials:
        batch = min(chunk, trials - done)
        r = rng.integers(0, 2, size=(batch, m), dtype=np.uint8)
        y = rng.integers(0, 2, size=(batch, m), dtype=np.uint8)
        # Uniform weight-k subset per row: the k smallest of m iid uniforms.
        checked = np.argpartition(rng.random((batch, m)), k - 1, axis=1)[:, :k]
        mismatches = np.take_along_axis(r ^ y, checked, axis=1).sum(axis=1)
        hits += int((mismatches < k * delta).sum())
        done += batch
    return hits / trials


# -- subset-sampling concentration check ------------------------------------

def serfling_empirical(z: BitString, s: int, k: int, delta: float, nu: float,
                       samples: int, rng: np.random.Generator) -> float:
    """Empirical probability of the two-sided event: a random k-subset sees
    at most k*delta ones while its complement sees at least s*(delta+nu)."""
    m = z.length
    if m != s + k:
        raise ValueError("m must equal s + k")
    arr = z.to_array().astype(np.int64)
    hits = 0
    for _ in range(samples):
        perm = rng.permutation(m)
        in_small = arr[perm[:k]].sum()
        in_large = arr[perm[k:]].sum()
        if in_small <= k * delta and in_large >= s * (delta + nu):
            hits += 1
    return hits / samples
