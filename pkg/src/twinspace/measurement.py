r"""Projective measurements, outcome amplitudes, stories, and the ABL rule.

A measurement is an ordered partition of unity into orthogonal projectors
{P_1, ..., P_k}.  Applied between a preparation and a post-selection the
relevant quantity is the complex outcome amplitude

    A_i(v) = Tr(P_i matrix(v)),

the trace functional evaluated on P_i v.  For a separable v = |pre> (x) <post|
this is the transition amplitude <post|P_i|pre>.  A pair (v, m) *forms a
story* when at least one outcome amplitude is nonzero (numerically: above
tol * ||v||); in that case the ABL rule assigns conditional outcome
probabilities

    Prob(i) = |A_i(v)|^2 / sum_j |A_j(v)|^2 .

All predicates are scale-invariant in v.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    StateVector,
    TwoStateVector,
    _frozen,
    _frozen_real,
    matrix_from_json,
    matrix_to_json,
)
from .errors import (
    DimensionMismatchError,
    NotAStoryError,
    NotCompleteError,
    NotHermitianError,
    NotIdempotentError,
    NotOrthogonalError,
    ShapeMismatchError,
)


@dataclass(frozen=True, eq=False)
class Projector:
    """An orthogonal projector: Hermitian and idempotent, checked on
    construction at relative tolerance ``tol``."""

    matrix: np.ndarray
    tol: InitVar[float] = DEFAULT_TOL

    def __post_init__(self, tol: float):
        arr = np.asarray(self.matrix)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ShapeMismatchError(
                f"projector must be square, got shape {arr.shape}"
            )
        arr = _frozen(arr)
        scale = max(1.0, float(np.max(np.abs(arr))))
        if float(np.max(np.abs(arr - arr.conj().T))) > tol * scale:
            raise NotHermitianError("projector is not Hermitian")
        if float(np.max(np.abs(arr @ arr - arr))) > tol * scale:
            raise NotIdempotentError("projector is not idempotent")
        object.__setattr__(self, "matrix", arr)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        """Rank of the projector (its trace, rounded)."""
        return int(round(float(np.trace(self.matrix).real)))

    @classmethod
    def onto_state(cls, state: StateVector, tol: float = DEFAULT_TOL) -> "Projector":
        """Rank-one projector |s><s| / <s|s> onto the given state."""
        a = state.amplitudes / state.norm
        return cls(np.outer(a, a.conj()), tol)


@dataclass(frozen=True, eq=False)
class Measurement:
    """An ordered complete family of mutually orthogonal projectors.

    Construction validates every projector, pairwise orthogonality
    (naming the first failing pair) and completeness sum_i P_i = 1.
    ``labels``, when given, are outcome names of the same length.
    """

    projectors: tuple[Projector, ...]
    labels: tuple[str, ...] | None = None
    tol: InitVar[float] = DEFAULT_TOL

    def __post_init__(self, tol: float):
        projs = tuple(self.projectors)
        if not projs:
            raise ShapeMismatchError("measurement needs at least one projector")
        dim = projs[0].dim
        for i, p in enumerate(projs):
            if p.dim != dim:
                raise DimensionMismatchError(
                    f"projector {i} has dim {p.dim}, expected {dim}"
                )
        for i in range(len(projs)):
            for j in range(i + 1, len(projs)):
                err = float(np.max(np.abs(projs[i].matrix @ projs[j].matrix)))
                if err > tol:
                    raise NotOrthogonalError(
                        f"projectors {i} and {j} are not orthogonal "
                        f"(max |P_{i} P_{j}| = {err:.3e})",
                        pair=(i, j),
                    )
        total = sum(p.matrix for p in projs)
        if float(np.max(np.abs(total - np.eye(dim)))) > tol:
            raise NotCompleteError("projectors do not sum to the identity")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != len(projs):
                raise ShapeMismatchError(
                    f"{len(labels)} labels for {len(projs)} outcomes"
                )
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "projectors", projs)
        stacked = np.stack([p.matrix for p in projs])
        stacked.setflags(write=False)
        object.__setattr__(self, "_stacked", stacked)

    @property
    def dim(self) -> int:
        return self.projectors[0].dim

    @property
    def num_outcomes(self) -> int:
        return len(self.projectors)

    @classmethod
    def trivial(cls, dim: int) -> "Measurement":
        """The single-outcome measurement {identity}."""
        return cls((Projector(np.eye(dim)),))

    def to_json(self) -> dict:
        obj = {
            "dim": self.dim,
            "projectors": [matrix_to_json(p.matrix) for p in self.projectors],
        }
        if self.labels is not None:
            obj["labels"] = list(self.labels)
        return obj

    @classmethod
    def from_json(cls, obj: dict, tol: float = DEFAULT_TOL) -> "Measurement":
        projs = tuple(
            Projector(matrix_from_json(rows), tol) for rows in obj["projectors"]
        )
        labels = tuple(obj["labels"]) if "labels" in obj else None
        m = cls(projs, labels, tol)
        if m.dim != obj["dim"]:
            raise ShapeMismatchError(
                f"declared dim {obj['dim']} != projector dim {m.dim}"
            )
        return m

    def __repr__(self):
        return f"Measurement(dim={self.dim}, outcomes={self.num_outcomes})"


def validate_measurement(projectors: Sequence, tol: float = DEFAULT_TOL,
                         labels: Sequence[str] | None = None) -> Measurement:
    """Validate raw projector matrices into a :class:`Measurement`.

    Raises NotHermitian / NotIdempotent / NotOrthogonal / NotComplete on
    the first violated invariant; never repairs the input.
    """
    projs = tuple(
        p if isinstance(p, Projector) else Projector(p, tol) for p in projectors
    )
    return Measurement(projs, tuple(labels) if labels is not None else None, tol)


def measurement_from_basis_grouping(
    basis: Sequence[StateVector],
    grouping: Sequence[Sequence[int]],
    labels: Sequence[str] | None = None,
    tol: float = DEFAULT_TOL,
) -> Measurement:
    """Build a measurement from an orthonormal basis and an index partition.

    ``grouping`` must list every basis index exactly once across nonempty
    groups; outcome g gets the projector sum_{j in g} |b_j><b_j|.
    """
    dim = basis[0].dim
    if len(basis) != dim:
        raise ShapeMismatchError(f"{len(basis)} basis vectors for dim {dim}")
    b = np.column_stack([s.amplitudes for s in basis])
    gram = b.conj().T @ b
    err = np.abs(gram - np.eye(dim))
    if float(np.max(err)) > tol:
        i, j = np.unravel_index(int(np.argmax(err)), err.shape)
        raise NotOrthogonalError(
            f"basis vectors {i} and {j} fail orthonormality "
            f"(|<b_{i}|b_{j}> - delta| = {err[i, j]:.3e})",
            pair=(int(i), int(j)),
        )
    seen: list[int] = []
    for g, group in enumerate(grouping):
        if len(group) == 0:
            raise ShapeMismatchError(f"group {g} is empty")
        seen.extend(int(i) for i in group)
    if sorted(seen) != list(range(dim)):
        raise ShapeMismatchError(
            f"grouping {grouping!r} is not a partition of range({dim})"
        )
    projs = []
    for group in grouping:
        cols = b[:, list(group)]
        projs.append(Projector(cols @ cols.conj().T, tol))
    return Measurement(tuple(projs),
                       tuple(labels) if labels is not None else None, tol)


def measurement_from_observable(
    matrix, degeneracy_tol: float = 1e-8, tol: float = DEFAULT_TOL
) -> Measurement:
    """Spectral measurement of a Hermitian observable.

    Eigenvalues are clustered greedily in ascending order: a new outcome
    starts whenever the gap to the previous eigenvalue exceeds
    degeneracy_tol * (spectral range).  Outcome labels are the cluster
    mean eigenvalues.  A zero spectral range collapses everything to the
    single-outcome measurement {identity}.
    """
    arr = np.asarray(matrix, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeMismatchError(f"observable must be square, got {arr.shape}")
    scale = max(1.0, float(np.max(np.abs(arr))))
    if float(np.max(np.abs(arr - arr.conj().T))) > tol * scale:
        raise NotHermitianError("observable is not Hermitian")
    vals, vecs = np.linalg.eigh(arr)
    spread = float(vals[-1] - vals[0])
    if spread == 0.0:
        return Measurement.trivial(arr.shape[0])
    clusters: list[list[int]] = [[0]]
    for i in range(1, len(vals)):
        if vals[i] - vals[i - 1] > degeneracy_tol * spread:
            clusters.append([])
        clusters[-1].append(i)
    projs, labels = [], []
    for idxs in clusters:
        cols = vecs[:, idxs]
        projs.append(Projector(cols @ cols.conj().T, tol))
        labels.append(repr(float(np.mean(vals[idxs]))))
    return Measurement(tuple(projs), tuple(labels), tol)


def outcome_amplitudes(v: TwoStateVector, m: Measurement) -> np.ndarray:
    """Complex amplitudes A_i = Tr(P_i matrix(v)), one per outcome."""
    if v.dim != m.dim:
        raise DimensionMismatchError(
            f"vector dim {v.dim} != measurement dim {m.dim}"
        )
    return np.einsum("kij,ji->k", m._stacked, v.matrix)


def forms_story(v: TwoStateVector, m: Measurement,
                tol: float = DEFAULT_TOL) -> bool:
    """True iff some outcome amplitude exceeds tol * ||v|| in magnitude."""
    amps = outcome_amplitudes(v, m)
    return float(np.max(np.abs(amps))) > tol * v.hs_norm


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Conditional outcome probabilities of one story (sum to one)."""

    probabilities: np.ndarray

    def __post_init__(self):
        arr = _frozen_real(np.asarray(self.probabilities, dtype=np.float64))
        if arr.ndim != 1:
            raise ShapeMismatchError("distribution must be one-dimensional")
        if float(np.min(arr)) < -1e-12:
            raise ShapeMismatchError("negative probability")
        if abs(float(np.sum(arr)) - 1.0) > 1e-9:
            raise ShapeMismatchError(
                f"probabilities sum to {float(np.sum(arr))!r}, not 1"
            )
        object.__setattr__(self, "probabilities", arr)

    def __len__(self):
        return self.probabilities.shape[0]

    def __getitem__(self, i) -> float:
        return float(self.probabilities[i])

    def __iter__(self):
        return iter(float(p) for p in self.probabilities)

    def to_json(self) -> list:
        return [float(p) for p in self.probabilities]


def abl_probabilities(v: TwoStateVector, m: Measurement,
                      tol: float = DEFAULT_TOL) -> OutcomeDistribution:
    """Conditional probabilities |A_i|^2 / sum_j |A_j|^2 of the story (v, m).

    Raises NotAStory when the normalizing sum is at or below
    (tol * ||v||)^2, i.e. when no outcome amplitude survives.
    """
    amps = outcome_amplitudes(v, m)
    weights = np.abs(amps) ** 2
    denom = float(np.sum(weights))
    if denom <= (tol * v.hs_norm) ** 2:
        raise NotAStoryError(
            "every outcome amplitude vanishes; conditional probabilities "
            "are undefined"
        )
    return OutcomeDistribution(weights / denom)


def random_measurement(dim: int, num_outcomes: int, rng_seed: int) -> Measurement:
    """Haar-random projective measurement with the given outcome count.

    Draws a Haar-distributed unitary (QR of a complex Gaussian matrix with
    the standard phase fix), shuffles the column order, and splits it into
    ``num_outcomes`` contiguous nonempty groups with uniformly chosen cut
    points.  Deterministic in ``rng_seed``.
    """
    if not 1 <= num_outcomes <= dim:
        raise ShapeMismatchError(
            f"num_outcomes must lie in [1, {dim}], got {num_outcomes}"
        )
    rng = np.random.default_rng(rng_seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    phases = np.diag(r) / np.abs(np.diag(r))
    q = q * phases
    order = rng.permutation(dim)
    cuts = np.sort(rng.choice(dim - 1, size=num_outcomes - 1, replace=False) + 1) \
        if num_outcomes > 1 else np.array([], dtype=int)
    bounds = [0, *cuts.tolist(), dim]
    projs = []
    for a, b in zip(bounds[:-1], bounds[1:]):
        cols = q[:, order[a:b]]
        projs.append(Projector(cols @ cols.conj().T))
    return Measurement(tuple(projs))
