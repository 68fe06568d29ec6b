"""Single-photon beamsplitter experiments with arrangement-dependent paths.

Four layouts: the bare source and detector, one 50/50 beamsplitter, a
balanced Mach-Zehnder (two beamsplitters), and the delayed-choice variant
where the detector pair goes either behind the first or the second
beamsplitter.  Detector statistics come from composing 2x2 unitaries on
the (arm A, arm B) amplitudes.  Each run is also assigned the arm the
photon occupies between the first beamsplitter and detection, drawn from
a distribution that depends on the *whole* setup, including the final
detector placement.

Conventions: the photon enters on arm A; a beamsplitter is
``[[1, i], [i, 1]] / sqrt(2)``; the mirrors between the two beamsplitters
exchange the arms; detector D1 watches output A and D2 watches output B.
With these, the balanced interferometer sends every photon to D1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from . import rng

_UNIT_TOL = 1e-12

# kept unscaled so compositions stay exact; k splitters carry a factor 2^{-k/2}
_SPLITTER_UNSCALED = np.array([[1, 1j], [1j, 1]], dtype=complex)
BEAMSPLITTER = _SPLITTER_UNSCALED / math.sqrt(2)
MIRROR_PAIR = np.array([[0, 1], [1, 0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

# stream ids: one independent counter stream per random decision of a run
STREAM_PLACEMENT = 0
STREAM_DETECTOR = 1
STREAM_PATH = 2


class Layout(str, Enum):
    DIRECT = "direct"
    SINGLE_BS = "single-bs"
    DOUBLE_BS = "double-bs"
    DELAYED_CHOICE = "delayed-choice"


class Placement(str, Enum):
    AFTER_FIRST = "after-first-bs"
    AFTER_SECOND = "after-second-bs"


@dataclass(frozen=True)
class OpticalSetup:
    layout: Layout
    placement: Placement | None = None

    def __post_init__(self):
        layout = Layout(self.layout)
        placement = None if self.placement is None else Placement(self.placement)
        if (layout is Layout.DELAYED_CHOICE) != (placement is not None):
            raise ValueError("detector placement is given iff the layout is delayed-choice")
        object.__setattr__(self, "layout", layout)
        object.__setattr__(self, "placement", placement)

    @property
    def name(self) -> str:
        if self.placement is None:
            return self.layout.value
        return f"{self.layout.value}/{self.placement.value}"

    @property
    def effective_layout(self) -> Layout:
        """The fixed layout whose optics coincide with this setup."""
        if self.layout is not Layout.DELAYED_CHOICE:
            return self.layout
        if self.placement is Placement.AFTER_FIRST:
            return Layout.SINGLE_BS
        return Layout.DOUBLE_BS


@dataclass(frozen=True)
class PathAmplitudes:
    a: complex
    b: complex

    def __post_init__(self):
        norm = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(norm - 1.0) > _UNIT_TOL:
            raise ValueError(f"path amplitudes are not normalized ({norm!r})")

    @property
    def probabilities(self) -> tuple:
        return (abs(self.a) ** 2, abs(self.b) ** 2)


@dataclass(frozen=True)
class PhotonRun:
    run_index: int
    setup: OpticalSetup
    detector: int
    path: str

    def __post_init__(self):
        if self.detector not in (1, 2):
            raise ValueError("exactly one of D1, D2 clicks")
        if self.path not in ("A", "B"):
            raise ValueError("path is A or B")


@dataclass
class RunSummary:
    setup: str
    n: int
    detector_counts: dict
    path_counts: dict
    runs: list = field(default_factory=list, repr=False)
    by_placement: dict | None = None

    def to_dict(self) -> dict:
        out = {
            "setup": self.setup,
            "n": self.n,
            "detector_counts": dict(self.detector_counts),
            "path_counts": dict(self.path_counts),
        }
        if self.by_placement is not None:
            out["by_placement"] = {k: dict(v) for k, v in self.by_placement.items()}
        return out


def transfer_matrix(setup: OpticalSetup) -> np.ndarray:
    layout = setup.effective_layout
    if layout is Layout.DIRECT:
        return IDENTITY.copy()
    if layout is Layout.SINGLE_BS:
        return BEAMSPLITTER.copy()
    return 0.5 * (_SPLITTER_UNSCALED @ MIRROR_PAIR @ _SPLITTER_UNSCALED)


def output_amplitudes(setup: OpticalSetup) -> PathAmplitudes:
    out = transfer_matrix(setup) @ np.array([1, 0], dtype=complex)
    return PathAmplitudes(complex(out[0]), complex(out[1]))


def detector_distribution(setup: OpticalSetup) -> tuple:
    """(P(D1), P(D2)) for a single photon."""
    p1, p2 = output_amplitudes(setup).probabilities
    total = p1 + p2
    return (p1 / total, p2 / total)


def path_distribution(setup: OpticalSetup, detector: int) -> tuple:
    """(P(A), P(B)) for the intermediate arm given the setup and the click.

    With detection right behind the first beamsplitter the arm is read off
    the detector.  In the balanced interferometer quantum mechanics fixes no
    path, and both arms get weight 1/2 by the symmetry of the arrangement.
    """
    layout = setup.effective_layout
    if layout is Layout.DIRECT:
        return (1.0, 0.0)
    if layout is Layout.SINGLE_BS:
        return (1.0, 0.0) if detector == 1 else (0.0, 1.0)
    return (0.5, 0.5)


def _tally(runs_detector, runs_path) -> tuple:
    det = {"D1": int(np.sum(runs_detector == 1)), "D2": int(np.sum(runs_detector == 2))}
    path = {"A": int(np.sum(runs_path == 0)), "B": int(np.sum(runs_path == 1))}
    return det, path


def _simulate(setups: Sequence[OpticalSetup], seed: int, workers: int):
    n = len(setups)
    u_det = rng.uniforms(seed, n, STREAM_DETECTOR, workers)
    u_path = rng.uniforms(seed, n, STREAM_PATH, workers)
    detector = np.empty(n, dtype=np.int64)
    path = np.empty(n, dtype=np.int64)
    index_of = {}
    for i, s in enumerate(setups):
        index_of.setdefault(s, []).append(i)
    for setup, idx in index_of.items():
        idx = np.asarray(idx)
        det = rng.inverse_cdf(detector_distribution(setup), u_det[idx]) + 1
        detector[idx] = det
        for d in (1, 2):
            sel = idx[det == d]
            if len(sel):
                path[sel] = rng.inverse_cdf(path_distribution(setup, d), u_path[sel])
    return detector, path


def run_schedule(
    setups: Sequence[OpticalSetup], seed: int, workers: int = 1, name: str = "schedule"
) -> RunSummary:
    """One photon per entry of ``setups``; run ``i`` uses setup ``setups[i]``."""
    setups = list(setups)
    if not setups:
        raise ValueError("at least one run is required")
    seed = rng.check_seed(seed)
    detector, path = _simulate(setups, seed, workers)
    runs = [
        PhotonRun(i, s, int(d), "AB"[p])
        for i, (s, d, p) in enumerate(zip(setups, detector.tolist(), path.tolist()))
    ]
    det, pth = _tally(detector, path)
    by_placement = None
    placements = {s.placement for s in setups}
    if placements != {None}:
        by_placement = {}
        for pl in Placement:
            mask = np.array([s.placement is pl for s in setups])
            if mask.any():
                d, p = _tally(detector[mask], path[mask])
                by_placement[pl.value] = {
                    "n": int(mask.sum()),
                    "detector_counts": d,
                    "path_counts": p,
                }
    return RunSummary(name, len(setups), det, pth, runs, by_placement)


def run_experiment(setup: OpticalSetup, seed: int, n: int, workers: int = 1) -> RunSummary:
    if n < 1:
        raise ValueError("n must be at least 1")
    return run_schedule([setup] * n, seed, workers, name=setup.name)


def delayed_choice_report(seed: int, n: int, workers: int = 1) -> RunSummary:
    """Delayed-choice runs with the detector placement decided per photon.

    The simulation schedule emits the photon first and only then draws the
    placement coin, so the choice is made while the photon is in flight.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    seed = rng.check_seed(seed)
    coin = rng.uniforms(seed, n, STREAM_PLACEMENT, workers)
    setups = [
        OpticalSetup(Layout.DELAYED_CHOICE, Placement.AFTER_FIRST if c < 0.5 else Placement.AFTER_SECOND)
        for c in coin.tolist()
    ]
    return run_schedule(setups, seed, workers, name=Layout.DELAYED_CHOICE.value)
