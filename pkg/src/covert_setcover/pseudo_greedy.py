"""Covert set cover by sampled greedy simulation.

The algorithm never sees set contents up front. Each round it estimates
which sets are still large by Bernoulli-sampling the uncovered elements
and issuing one hitting query per sampled element; sets holding at least
alpha*log2(N) sampled elements are shortlisted, then filtered sequentially
in canonical order so that each accepted set still holds a threshold worth
of not-yet-claimed samples. Accepted sets are the only ones whose contents
are ever fetched. Once the round scale drops to alpha*log2(N) the residue
is reconstructed outright (one hitting query per remaining element) and
finished with the explicit greedy algorithm.

N = n' + m' throughout, and log means log2: the scale s_i halves per
round, so the base case is reached within ceil(log2 n') + 1 rounds.
"""

from __future__ import annotations

import math
import random
from typing import Iterable, Mapping, Sequence

from .errors import UncoverableInstanceError
from .oracle import CovertOracle
from .results import CoverResult, RoundState
from .setsystem import Cover, build_set_system, greedy_cover

DEFAULT_ALPHA = 8.0


def sample_probability(s_i: float, alpha: float, n_total: int) -> float:
    """Per-element inclusion probability min(1, 4*alpha*log2(N)/s_i)."""
    return min(1.0, 4.0 * alpha * math.log2(n_total) / s_i)


def draw_round_sample(uncovered, s_i: float, alpha: float, n_total: int, rng: random.Random) -> list:
    """Bernoulli sample of the uncovered elements at the round's probability.

    Each element is included independently, so the expected sample size is
    (4*alpha*n_i/s_i)*log2(N); when the probability clips to 1 the sample is
    the whole population. Elements are visited in sorted order so a seeded
    generator reproduces the sample exactly. Works on any sortable element
    type (the discovery simulator samples vertex pairs with it).
    """
    p = sample_probability(s_i, alpha, n_total)
    return [e for e in sorted(uncovered) if rng.random() < p]


def shortlist_sets(
    sample: Sequence[int], oracle: CovertOracle, alpha: float, n_total: int
) -> tuple[list[int], dict[int, set[int]]]:
    """Hitting-query every sampled element and keep the heavily hit sets.

    Returns the shortlist in canonical order together with the tally
    (set index -> sampled elements it contains), which the sequential
    filter reuses so no element is ever charged twice in a round.
    """
    threshold = alpha * math.log2(n_total)
    hits: dict[int, set[int]] = {}
    for e in sample:
        for s in oracle.hitting_query(e):
            hits.setdefault(s, set()).add(e)
    shortlist = sorted(s for s, h in hits.items() if len(h) >= threshold)
    return shortlist, hits


def sequential_filter(
    shortlist: Sequence[int],
    sample_hits: Mapping[int, set[int]],
    oracle: CovertOracle,
    alpha: float,
    n_total: int,
) -> tuple[list[int], set[int]]:
    """Walk the shortlist in order, accepting sets that still own enough samples.

    A set is accepted iff its sampled elements outside those claimed by
    earlier acceptances still number >= alpha*log2(N). Acceptance fetches the
    set's full contents (one set query); those answers double as the round's
    coverage update, so the returned element set costs nothing extra.
    """
    threshold = alpha * math.log2(n_total)
    accepted: list[int] = []
    claimed: set[int] = set()
    newly_covered: set[int] = set()
    for s in shortlist:
        if len(sample_hits[s] - claimed) >= threshold:
            accepted.append(s)
            newly_covered.update(oracle.set_query(s))
            claimed |= sample_hits[s]
    return accepted, newly_covered


def base_case_explicit(oracle: CovertOracle, uncovered: Iterable[int]) -> list[int]:
    """Reconstruct the residual instance and finish it with explicit greedy.

    Issues exactly one hitting query per remaining element (all of them,
    even if an early answer already dooms the instance, so the ledger stays
    reconstructible from the trace), rebuilds the residual sub-instance with
    the canonical set order preserved, and runs the classic greedy cover on
    it. Raises :class:`UncoverableInstanceError` naming the smallest element
    contained in no set.
    """
    order = sorted(uncovered)
    residual: dict[int, set[int]] = {}
    orphan: int | None = None
    for e in order:
        containing = oracle.hitting_query(e)
        if not containing and orphan is None:
            orphan = e
        for s in containing:
            residual.setdefault(s, set()).add(e)
    if orphan is not None:
        raise UncoverableInstanceError(orphan)
    relabel = {e: i for i, e in enumerate(order, start=1)}
    sub_sets = [
        sorted(relabel[e] for e in residual.get(s, ()))
        for s in range(1, oracle.n_sets + 1)
    ]
    sub_system = build_set_system(sub_sets, universe_size=len(order))
    return list(greedy_cover(sub_system, theta=1.0).set_indices)


def run_pseudo_greedy(
    oracle: CovertOracle, alpha: float = DEFAULT_ALPHA, rng_seed: int = 0
) -> CoverResult:
    """Run the sampled covert cover algorithm against a query oracle.

    ``alpha`` scales every threshold (sample rate, shortlist cut, base-case
    entry); the run is fully reproducible from (rng_seed, alpha, instance).
    Returns a :class:`CoverResult` whose per-round trace reconstructs the
    ledger exactly: hitting queries = sum of sample sizes + base-case n_i,
    set queries = number of accepted sets.

    On an uncoverable instance the base case flags failure and the result
    carries the witness element and the partial cover accepted so far.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    rng = random.Random(rng_seed)
    n_prime, m_prime = oracle.n_elements, oracle.n_sets
    n_total = n_prime + m_prime
    base_entry = alpha * math.log2(n_total)

    uncovered = set(range(1, n_prime + 1))
    chosen: list[int] = []
    rounds: list[RoundState] = []
    base_case_entered = False
    failed = False
    witness: int | None = None

    i = 0
    while uncovered:
        n_i = len(uncovered)
        s_i = min(n_prime / 2**i, n_i)
        before = oracle.ledger_snapshot()
        if s_i <= base_entry:
            base_case_entered = True
            oracle.mark_phase("base-case")
            try:
                picks = base_case_explicit(oracle, uncovered)
            except UncoverableInstanceError as exc:
                failed = True
                witness = exc.element
                picks = []
            rounds.append(
                RoundState(
                    i=i,
                    n_i=n_i,
                    s_i=s_i,
                    sample=(),
                    shortlist=(),
                    chosen=tuple(picks),
                    ledger_delta=oracle.ledger.delta_since(before),
                    base_case=True,
                )
            )
            chosen.extend(picks)
            if not failed:
                uncovered.clear()
            break
        oracle.mark_phase(f"round-{i}")
        sample = draw_round_sample(uncovered, s_i, alpha, n_total, rng)
        shortlist: list[int] = []
        accepted: list[int] = []
        newly: set[int] = set()
        if sample:
            shortlist, hits = shortlist_sets(sample, oracle, alpha, n_total)
            if shortlist:
                accepted, newly = sequential_filter(
                    shortlist, hits, oracle, alpha, n_total
                )
        rounds.append(
            RoundState(
                i=i,
                n_i=n_i,
                s_i=s_i,
                sample=tuple(sample),
                shortlist=tuple(shortlist),
                chosen=tuple(accepted),
                ledger_delta=oracle.ledger.delta_since(before),
            )
        )
        chosen.extend(accepted)
        uncovered -= newly
        i += 1

    covered = frozenset(range(1, n_prime + 1)) - uncovered
    return CoverResult(
        cover=Cover(set_indices=tuple(chosen), covered=covered),
        rounds=rounds,
        ledger=oracle.ledger_snapshot(),
        base_case_entered=base_case_entered,
        failed=failed,
        uncovered_element=witness,
    )
