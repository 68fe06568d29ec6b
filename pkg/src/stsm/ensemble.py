"""Configuration ensembles for fixed preparation/measurement arrangements.

An arrangement fixes the macroscopic parameters: the prepared eigenstate
and the measured observable(s).  Together they determine a finite
distribution over objective configurations, one per outcome pattern.
Which configuration a given run realizes is fixed by the run's
microscopic parameters, modeled here as the pair (seed, run index) fed
to a counter-based random stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import rng
from .bloch import (
    BlochDirection,
    bell_joint_probability,
    transition_probability,
)
from .errors import WrongKindError

SINGLE = "single-qubit"
BELL = "bell-pair"
BELL_PREP_LABEL = "psi"
_SUM_TOL = 1e-12


def sign_char(r: int) -> str:
    return "+" if r == 1 else "-"


class ConfigLabel(NamedTuple):
    """Preparation label plus the outcome signs that close the configuration."""

    preparation: str
    outcomes: tuple

    def __str__(self):
        return self.preparation + "|" + "".join(sign_char(r) for r in self.outcomes)


@dataclass(frozen=True)
class Arrangement:
    kind: str
    observables: tuple
    preparation: BlochDirection | None = None
    preparation_sign: int = 1

    def __post_init__(self):
        obs = tuple(self.observables)
        object.__setattr__(self, "observables", obs)
        if self.kind == SINGLE:
            if len(obs) != 1:
                raise ValueError("single-qubit arrangement takes exactly one observable")
            if self.preparation is None:
                raise ValueError("single-qubit arrangement needs a preparation direction")
            if self.preparation_sign not in (1, -1):
                raise ValueError("preparation sign must be +1 or -1")
        elif self.kind == BELL:
            if len(obs) != 2:
                raise ValueError("bell-pair arrangement takes exactly two observables")
        else:
            raise ValueError(f"unknown arrangement kind {self.kind!r}")

    @classmethod
    def single(cls, preparation: BlochDirection, observable: BlochDirection, sign: int = 1):
        return cls(SINGLE, (observable,), preparation, sign)

    @classmethod
    def bell(cls, first: BlochDirection, second: BlochDirection):
        return cls(BELL, (first, second))

    def preparation_label(self) -> str:
        if self.kind == BELL:
            return BELL_PREP_LABEL
        return self.preparation.label() + sign_char(self.preparation_sign)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "observables": [[o.theta, o.phi] for o in self.observables],
        }
        if self.kind == SINGLE:
            out["preparation"] = [
                self.preparation.theta,
                self.preparation.phi,
                sign_char(self.preparation_sign),
            ]
        return out


@dataclass(frozen=True)
class ConfigurationDistribution:
    labels: tuple
    probabilities: tuple
    arrangement: Arrangement | None = field(default=None, compare=False)

    def __post_init__(self):
        labels = tuple(ConfigLabel(lab.preparation, tuple(lab.outcomes)) for lab in self.labels)
        probs = tuple(float(p) for p in self.probabilities)
        if len(labels) != len(probs):
            raise ValueError("labels and probabilities differ in length")
        if len(labels) not in (2, 4):
            raise ValueError("a configuration distribution has 2 or 4 cells")
        if min(probs) < 0.0:
            raise ValueError("negative probability")
        if abs(math.fsum(probs) - 1.0) > _SUM_TOL:
            raise ValueError(f"probabilities sum to {math.fsum(probs)!r}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "probabilities", probs)

    def as_dict(self) -> dict:
        return {str(lab): p for lab, p in zip(self.labels, self.probabilities)}

    def to_dict(self) -> dict:
        return {
            "labels": [str(lab) for lab in self.labels],
            "probabilities": list(self.probabilities),
        }


@dataclass(frozen=True)
class RunRecord:
    arrangement: Arrangement | None
    seed: int
    run_index: int
    realized: ConfigLabel


@dataclass(frozen=True, eq=False)
class SampleResult:
    """Outcome of ``sample``: realized cell index per run plus the count table."""

    distribution: ConfigurationDistribution
    seed: int
    indices: np.ndarray
    counts: tuple

    @property
    def n(self) -> int:
        return len(self.indices)

    @property
    def records(self) -> list[RunRecord]:
        labels = self.distribution.labels
        arr = self.distribution.arrangement
        return [
            RunRecord(arr, self.seed, i, labels[k]) for i, k in enumerate(self.indices.tolist())
        ]

    def frequencies(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.n

    def to_dict(self) -> dict:
        out = self.distribution.to_dict()
        out["counts"] = list(self.counts)
        out["seed"] = self.seed
        out["n"] = self.n
        return out


@dataclass(frozen=True)
class StateAsDistributionSet:
    """A prepared state listed as one outcome distribution per observable."""

    preparation: BlochDirection
    preparation_sign: int
    entries: dict

    def probabilities(self, observable: BlochDirection) -> tuple:
        return self.entries[observable].probabilities


def ensemble_single(arr: Arrangement) -> ConfigurationDistribution:
    if arr.kind != SINGLE:
        raise WrongKindError(f"ensemble_single needs a {SINGLE} arrangement, got {arr.kind}")
    (obs,) = arr.observables
    prep = arr.preparation_label()
    labels, probs = [], []
    for r in (1, -1):
        labels.append(ConfigLabel(prep, (r,)))
        probs.append(transition_probability(arr.preparation, obs, r, arr.preparation_sign))
    return ConfigurationDistribution(tuple(labels), tuple(probs), arr)


def ensemble_bell(arr: Arrangement) -> ConfigurationDistribution:
    if arr.kind != BELL:
        raise WrongKindError(f"ensemble_bell needs a {BELL} arrangement, got {arr.kind}")
    a, b = arr.observables
    labels, probs = [], []
    for ra in (1, -1):
        for rb in (1, -1):
            labels.append(ConfigLabel(BELL_PREP_LABEL, (ra, rb)))
            probs.append(bell_joint_probability(a, b, ra, rb))
    return ConfigurationDistribution(tuple(labels), tuple(probs), arr)


def ensemble(arr: Arrangement) -> ConfigurationDistribution:
    return ensemble_bell(arr) if arr.kind == BELL else ensemble_single(arr)


def state_as_distribution_set(
    preparation: BlochDirection,
    observables: Sequence[BlochDirection],
    sign: int = 1,
) -> StateAsDistributionSet:
    observables = list(observables)
    if not observables:
        raise ValueError("at least one observable is required")
    entries = {
        obs: ensemble_single(Arrangement.single(preparation, obs, sign)) for obs in observables
    }
    return StateAsDistributionSet(preparation, sign, entries)


def sample(
    dist: ConfigurationDistribution, seed: int, n: int, workers: int = 1
) -> SampleResult:
    """Realize ``n`` runs of the arrangement behind ``dist``.

    Run ``i`` realizes the cell selected by inverse CDF from the ``i``-th
    draw of the seeded stream; the output is a pure function of
    ``(dist, seed, n)`` whatever ``workers`` is.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    seed = rng.check_seed(seed)
    u = rng.uniforms(seed, n, stream=0, workers=workers)
    idx = rng.inverse_cdf(dist.probabilities, u)
    counts = np.bincount(idx, minlength=len(dist.labels))
    return SampleResult(dist, seed, idx, tuple(int(c) for c in counts))
