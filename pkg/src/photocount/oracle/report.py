"""Side-by-side comparison of two evaluations."""

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ComparisonReport:
    per_m_abs_err: tuple
    max_abs_err: float
    tolerance: float
    passed: bool
    metadata: dict = field(default_factory=dict)

    @classmethod
    def from_errors(cls, errors, tolerance, **metadata):
        errors = tuple(float(e) for e in np.atleast_1d(errors))
        worst = max(errors) if errors else 0.0
        # NaN errors must fail
        passed = bool(worst <= tolerance) and not any(math.isnan(e) for e in errors)
        return cls(errors, worst, float(tolerance), passed, dict(metadata))

    def to_dict(self):
        return {
            "per_m_abs_err": list(self.per_m_abs_err),
            "max_abs_err": self.max_abs_err,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "metadata": self.metadata,
        }


def compare(values, reference, tolerance, **metadata):
    """Absolute per-index errors between two probability vectors."""
    values = np.asarray(values, dtype=float)
    reference = np.asarray(reference, dtype=float)
    if values.shape != reference.shape:
        raise ValueError(f"shape mismatch {values.shape} vs {reference.shape}")
    return ComparisonReport.from_errors(np.abs(values - reference), tolerance, **metadata)


def compare_histogram(freqs, reference, samples, sigmas=4.0, min_expected=25.0, **metadata):
    """Compare empirical frequencies with exact probabilities bin by bin.

    Errors are reported in units of the binomial standard deviation
    sqrt(p(1-p)/N); bins with fewer than ``min_expected`` expected events
    are skipped (score 0) and listed in the metadata.
    """
    freqs = np.asarray(freqs, dtype=float)
    p = np.clip(np.asarray(reference, dtype=float), 0.0, 1.0)
    expected = p * samples
    usable = expected >= min_expected
    sigma = np.sqrt(p * (1 - p) / samples)
    scores = np.zeros_like(p)
    scores[usable] = np.abs(freqs[usable] - p[usable]) / sigma[usable]
    metadata.setdefault("error_unit", "sigma")
    metadata["samples"] = int(samples)
    metadata["skipped_bins"] = [int(m) for m in np.flatnonzero(~usable)]
    return ComparisonReport.from_errors(scores, sigmas, **metadata)
