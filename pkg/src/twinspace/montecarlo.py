r"""Operational validation of the ABL rule by Born-rule simulation.

A separable two-state vector |pre> (x) <post| has a direct laboratory
reading: prepare ``pre``, perform the intermediate projective measurement,
then post-select on ``post``.  Each simulated trial samples outcome i with
probability <pre|P_i|pre>, collapses to P_i|pre>/||.||, and accepts the
trial with probability |<post|collapsed>|^2.  Conditioned on acceptance,
the outcome frequencies must converge to the ABL probabilities of the
story (|pre> (x) <post|, measurement); ``validate_abl`` checks this with
per-outcome binomial standard-error bounds.

Trials are processed in fixed-size blocks; block b draws its generator
from the seed material (base seed, b).  Totals are sums over blocks, so a
run is reproducible bit-for-bit and independent of how blocks would be
distributed across workers.

Mixtures of separable vectors are simulated by drawing the pre/post pair
per trial from the mixture weights.  Note that conditioning on
post-selection reweights components by their success rates; this agrees
with the distinguish module's plain convex rule only when all components
share one per-measurement success rate (as in the bundled symmetric
demos).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, StateVector, TwoStateVector
from .errors import (
    DimensionMismatchError,
    NoSuccessesError,
    NotAStoryError,
    ShapeMismatchError,
)
from .measurement import (
    Measurement,
    OutcomeDistribution,
    abl_probabilities,
    forms_story,
)

#: Trials per RNG block (the shard granularity of the seeding contract).
BLOCK_SIZE = 8192

#: Unit-norm slack accepted for pre/post states.
_NORM_TOL = 1e-9


def _check_unit(state: StateVector, name: str) -> None:
    if abs(state.norm - 1.0) > _NORM_TOL:
        raise ShapeMismatchError(
            f"{name} state must be normalized (norm = {state.norm!r})"
        )


@dataclass(frozen=True, eq=False)
class PrePostExperiment:
    """One pre-selection / measurement / post-selection experiment.

    ``pre`` and ``post`` are unit vectors of the measurement's dimension;
    the separable vector |pre> (x) <post| must form a story with the
    measurement, otherwise no trial can ever be post-selected on an
    outcome (NotAStory).
    """

    pre: StateVector
    post: StateVector
    measurement: Measurement
    trials: int
    seed: int

    def __post_init__(self):
        if self.pre.dim != self.measurement.dim or self.post.dim != self.measurement.dim:
            raise DimensionMismatchError(
                f"state dims ({self.pre.dim}, {self.post.dim}) != "
                f"measurement dim {self.measurement.dim}"
            )
        _check_unit(self.pre, "pre")
        _check_unit(self.post, "post")
        if self.trials < 1:
            raise ShapeMismatchError(f"trials must be >= 1, got {self.trials}")
        if not forms_story(self.story_vector(), self.measurement):
            raise NotAStoryError(
                "|pre> (x) <post| forms no story with the measurement; "
                "post-selection would never succeed"
            )

    def story_vector(self) -> TwoStateVector:
        """The separable two-state vector |pre> (x) <post|."""
        return TwoStateVector.separable(self.pre, self.post)


@dataclass(frozen=True, eq=False)
class TrialLog:
    """Joint counts of (outcome observed AND post-selection succeeded)."""

    outcome_counts: np.ndarray
    trials: int

    def __post_init__(self):
        counts = np.array(self.outcome_counts, dtype=np.int64, copy=True)
        counts.setflags(write=False)
        if counts.ndim != 1:
            raise ShapeMismatchError("outcome counts must be one-dimensional")
        if int(counts.sum()) > self.trials or np.any(counts < 0):
            raise ShapeMismatchError("counts exceed trials or are negative")
        object.__setattr__(self, "outcome_counts", counts)

    @property
    def successes(self) -> int:
        return int(self.outcome_counts.sum())

    def to_json(self) -> dict:
        return {
            "outcome_counts": [int(c) for c in self.outcome_counts],
            "trials": self.trials,
            "successes": self.successes,
        }


def merge_logs(a: TrialLog, b: TrialLog) -> TrialLog:
    """Combine shard results by addition."""
    if a.outcome_counts.shape != b.outcome_counts.shape:
        raise ShapeMismatchError("logs have different outcome counts")
    return TrialLog(a.outcome_counts + b.outcome_counts, a.trials + b.trials)


def _outcome_model(pre: StateVector, post: StateVector,
                   m: Measurement) -> tuple[np.ndarray, np.ndarray]:
    """Per-outcome sampling probabilities p and success probabilities q."""
    p = np.einsum("i,kij,j->k", pre.amplitudes.conj(), m._stacked,
                  pre.amplitudes).real
    p = np.clip(p, 0.0, None)
    p = p / p.sum()
    overlap = np.einsum("i,kij,j->k", post.amplitudes.conj(), m._stacked,
                        pre.amplitudes)
    joint = np.abs(overlap) ** 2
    q = np.divide(joint, p, out=np.zeros_like(joint), where=p > 0)
    return p, np.clip(q, 0.0, 1.0)


def joint_probabilities(exp: PrePostExperiment) -> np.ndarray:
    """Per-outcome probability of (outcome AND successful post-selection)."""
    p, q = _outcome_model(exp.pre, exp.post, exp.measurement)
    return p * q


def success_probability(exp: PrePostExperiment) -> float:
    """Predicted post-selection success rate (sum of joint probabilities)."""
    return float(np.sum(joint_probabilities(exp)))


def _simulate_blocks(seed: int, trials: int, draw_block) -> np.ndarray:
    counts = None
    offset = 0
    block_index = 0
    while offset < trials:
        n = min(BLOCK_SIZE, trials - offset)
        rng = np.random.default_rng([seed, block_index])
        block_counts = draw_block(rng, n)
        counts = block_counts if counts is None else counts + block_counts
        offset += n
        block_index += 1
    return counts


def simulate(exp: PrePostExperiment) -> TrialLog:
    """Run the experiment; returns joint success counts per outcome.

    Deterministic in the experiment seed, and identical to merging
    per-block runs because block b always draws from (seed, b).
    """
    p, q = _outcome_model(exp.pre, exp.post, exp.measurement)
    cum = np.cumsum(p)
    k = exp.measurement.num_outcomes

    def draw_block(rng: np.random.Generator, n: int) -> np.ndarray:
        outcomes = np.searchsorted(cum, rng.random(n), side="right")
        outcomes = np.minimum(outcomes, k - 1)
        accepted = rng.random(n) < q[outcomes]
        return np.bincount(outcomes[accepted], minlength=k)

    counts = _simulate_blocks(exp.seed, exp.trials, draw_block)
    return TrialLog(counts, exp.trials)


def empirical_distribution(log: TrialLog) -> OutcomeDistribution:
    """Joint counts divided by total successes."""
    if log.successes == 0:
        raise NoSuccessesError("no post-selection successes recorded")
    return OutcomeDistribution(log.outcome_counts / log.successes)


@dataclass(frozen=True, eq=False)
class ValidationRow:
    outcome: int
    label: str | None
    predicted: float
    empirical: float
    deviation_sigmas: float
    ok: bool


@dataclass(frozen=True, eq=False)
class AblValidation:
    """Comparison of empirical frequencies against the ABL prediction."""

    rows: tuple[ValidationRow, ...]
    trials: int
    successes: int
    sigma_bound: float

    @property
    def passed(self) -> bool:
        return all(row.ok for row in self.rows)

    def format_table(self) -> str:
        lines = [
            f"{'outcome':<10}{'predicted':>16}{'empirical':>16}"
            f"{'sigma':>10}  status"
        ]
        for row in self.rows:
            name = row.label if row.label is not None else str(row.outcome)
            sigma = ("inf" if np.isinf(row.deviation_sigmas)
                     else f"{row.deviation_sigmas:.2f}")
            lines.append(
                f"{name:<10}{row.predicted:>16.12f}{row.empirical:>16.12f}"
                f"{sigma:>10}  {'ok' if row.ok else 'FAIL'}"
            )
        lines.append(
            f"successes {self.successes}/{self.trials}; "
            f"bound {self.sigma_bound:g} sigma; "
            f"{'pass' if self.passed else 'FAIL'}"
        )
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "rows": [
                {
                    "outcome": row.outcome,
                    "label": row.label,
                    "predicted": row.predicted,
                    "empirical": row.empirical,
                    "deviation_sigmas": row.deviation_sigmas,
                    "ok": row.ok,
                }
                for row in self.rows
            ],
            "trials": self.trials,
            "successes": self.successes,
            "sigma_bound": self.sigma_bound,
            "passed": self.passed,
        }


def _check_expected_successes(joint: np.ndarray, trials: int) -> None:
    expected = trials * joint
    low = (joint > 1e-12) & (expected < 100.0)
    if np.any(low):
        i = int(np.argmax(low))
        raise ValueError(
            f"outcome {i} expects only {expected[i]:.1f} successes at "
            f"{trials} trials; need >= 100 for the sigma bound to be "
            "meaningful"
        )


def _build_validation(counts: np.ndarray, trials: int,
                      predicted: OutcomeDistribution,
                      labels: tuple[str, ...] | None,
                      sigma_bound: float) -> AblValidation:
    successes = int(counts.sum())
    if successes == 0:
        raise NoSuccessesError("no post-selection successes recorded")
    rows = []
    for i, p_hat in enumerate(predicted):
        freq = counts[i] / successes
        se = float(np.sqrt(p_hat * (1.0 - p_hat) / successes))
        if se == 0.0:
            dev = 0.0 if freq == p_hat else float("inf")
        else:
            dev = abs(freq - p_hat) / se
        rows.append(ValidationRow(
            i, labels[i] if labels else None, float(p_hat), float(freq),
            dev, dev < sigma_bound,
        ))
    return AblValidation(tuple(rows), trials, successes, sigma_bound)


def validate_abl(exp: PrePostExperiment, sigma_bound: float = 4.0) -> AblValidation:
    """Simulate and compare against the ABL probabilities of the story.

    Requires every predicted nonzero outcome to expect at least 100
    successes at the configured trial count (ValueError otherwise).
    Passes iff every outcome frequency deviates by less than
    ``sigma_bound`` binomial standard errors.
    """
    _check_expected_successes(joint_probabilities(exp), exp.trials)
    log = simulate(exp)
    predicted = abl_probabilities(exp.story_vector(), exp.measurement)
    return _build_validation(log.outcome_counts, exp.trials, predicted,
                             exp.measurement.labels, sigma_bound)


# ---------------------------------------------------------------------------
# Mixtures of separable experiments
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MixtureExperiment:
    """Per-trial draw of a (pre, post) pair from classical weights."""

    components: tuple[tuple[float, StateVector, StateVector], ...]
    measurement: Measurement
    trials: int
    seed: int

    def __post_init__(self):
        comps = tuple((float(w), pre, post) for w, pre, post in self.components)
        if not comps:
            raise ShapeMismatchError("mixture experiment needs components")
        total = 0.0
        story = False
        for w, pre, post in comps:
            if w < 0.0:
                raise ShapeMismatchError(f"negative weight {w!r}")
            total += w
            if pre.dim != self.measurement.dim or post.dim != self.measurement.dim:
                raise DimensionMismatchError(
                    "component dims do not match the measurement"
                )
            _check_unit(pre, "pre")
            _check_unit(post, "post")
            story = story or forms_story(
                TwoStateVector.separable(pre, post), self.measurement
            )
        if abs(total - 1.0) > 1e-9:
            raise ShapeMismatchError(f"weights sum to {total!r}, not 1")
        if self.trials < 1:
            raise ShapeMismatchError(f"trials must be >= 1, got {self.trials}")
        if not story:
            raise NotAStoryError(
                "no mixture component forms a story with the measurement"
            )
        object.__setattr__(self, "components", comps)


def simulate_mixture(mexp: MixtureExperiment) -> TrialLog:
    """Simulate with the pre/post pair redrawn from the weights per trial."""
    k = mexp.measurement.num_outcomes
    weights = np.array([w for w, _, _ in mexp.components])
    cum_w = np.cumsum(weights / weights.sum())
    models = [_outcome_model(pre, post, mexp.measurement)
              for _, pre, post in mexp.components]
    cum_p = np.stack([np.cumsum(p) for p, _ in models])
    q = np.stack([qi for _, qi in models])
    n_comp = len(mexp.components)

    def draw_block(rng: np.random.Generator, n: int) -> np.ndarray:
        comp = np.searchsorted(cum_w, rng.random(n), side="right")
        comp = np.minimum(comp, n_comp - 1)
        outcomes = np.sum(cum_p[comp] < rng.random(n)[:, None], axis=1)
        outcomes = np.minimum(outcomes, k - 1)
        accepted = rng.random(n) < q[comp, outcomes]
        return np.bincount(outcomes[accepted], minlength=k)

    counts = _simulate_blocks(mexp.seed, mexp.trials, draw_block)
    return TrialLog(counts, mexp.trials)


def validate_mixture_abl(mexp: MixtureExperiment,
                         sigma_bound: float = 4.0) -> AblValidation:
    """Simulate a mixture and compare against mixture_statistics.

    Only meaningful when all story-forming components share one
    post-selection success rate (see the module docstring); the bundled
    symmetric demos satisfy this.
    """
    from .distinguish import Mixture, mixture_statistics

    joint = np.zeros(mexp.measurement.num_outcomes)
    for w, pre, post in mexp.components:
        p, q = _outcome_model(pre, post, mexp.measurement)
        joint += w * p * q
    _check_expected_successes(joint, mexp.trials)
    log = simulate_mixture(mexp)
    mix = Mixture(tuple(
        (w, TwoStateVector.separable(pre, post))
        for w, pre, post in mexp.components
    ))
    predicted = mixture_statistics(mix, mexp.measurement)
    return _build_validation(log.outcome_counts, mexp.trials, predicted,
                             mexp.measurement.labels, sigma_bound)
