"""Signal container and the bundled reference signal generators.

The two mixture recipes reproduce the package's period-estimation test
signals: a hidden random periodic component plus a probe cosine, with
additive white Gaussian noise. The hidden components are pinned by
documented component seeds (they are part of the fixture, exactly as a
recorded signal would be); the noise seed varies per trial.

Noise convention: `snr_db` is referenced to the probe tone's per-line power
(a/2)^2, i.e. the power of each complex exponential in its conjugate pair,
so sigma^2 = (a/2)^2 * 10^(-snr_db/10). Referencing total signal power makes
the published coefficient perturbations and significance tables
irreproducible; see the repository notes for the calibration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Signal", "samples_of",
    "X1_COMPONENT_SEED", "X1_NOISE_SEED", "X2_COMPONENT_SEED", "X2_NOISE_SEED",
    "hidden_periodic_component", "line_noise_sigma", "tone",
    "x1_clean", "x2_clean", "make_x1", "make_x2",
    "synthetic_ecg",
]

X1_COMPONENT_SEED = 99
X1_NOISE_SEED = 0
X2_COMPONENT_SEED = 10
X2_NOISE_SEED = 10010

ECG_SEED = 625


@dataclass(frozen=True)
class Signal:
    """A finite sample sequence with an optional sample rate in Hz."""

    samples: np.ndarray
    sample_rate: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "samples", np.asarray(self.samples))
        if self.samples.ndim != 1 or len(self.samples) < 1:
            raise ValueError("a signal is a nonempty 1-D sample sequence")

    def __len__(self) -> int:
        return len(self.samples)


def samples_of(x) -> np.ndarray:
    """Accept a Signal or any array-like and return the sample array."""
    if isinstance(x, Signal):
        return x.samples
    return np.asarray(x)


def hidden_periodic_component(period: int, length: int, seed: int) -> np.ndarray:
    """One period of standard-normal data, tiled (and truncated) to length."""
    one = np.random.default_rng(seed).standard_normal(period)
    reps = -(-length // period)
    return np.tile(one, reps)[:length]


def tone(amplitude: float, freq_hz: float, fs: float, length: int, phase: float = 0.0) -> np.ndarray:
    n = np.arange(length)
    return amplitude * np.cos(2 * np.pi * freq_hz * n / fs + phase)


def line_noise_sigma(amplitude: float, snr_db: float) -> float:
    """Noise standard deviation for the line-power SNR convention."""
    return float((amplitude / 2.0) * 10 ** (-snr_db / 20.0))


def x1_clean(component_seed: int = X1_COMPONENT_SEED) -> Signal:
    """Noiseless mixture: hidden 9-periodic random component plus a
    0.6-amplitude 100 Hz cosine (phase pi/3) sampled at 360 Hz, 54 samples.
    Overall period 18."""
    x = hidden_periodic_component(9, 54, component_seed) + tone(0.6, 100.0, 360.0, 54, np.pi / 3)
    return Signal(x, sample_rate=360.0)


def x2_clean(component_seed: int = X2_COMPONENT_SEED) -> Signal:
    """Noiseless mixture: hidden 5-periodic random component plus a
    0.3-amplitude 45 Hz cosine (phase pi/4) sampled at 360 Hz, 54 samples.
    Overall period 40, not a divisor of 54."""
    x = hidden_periodic_component(5, 54, component_seed) + tone(0.3, 45.0, 360.0, 54, np.pi / 4)
    return Signal(x, sample_rate=360.0)


def make_x1(noise_seed: int = X1_NOISE_SEED, snr_db: float = 6.0,
            component_seed: int = X1_COMPONENT_SEED) -> Signal:
    clean = x1_clean(component_seed)
    sigma = line_noise_sigma(0.6, snr_db)
    noise = np.random.default_rng(noise_seed).normal(0.0, sigma, len(clean))
    return Signal(clean.samples + noise, sample_rate=clean.sample_rate)


def make_x2(noise_seed: int = X2_NOISE_SEED, snr_db: float = 6.0,
            component_seed: int = X2_COMPONENT_SEED) -> Signal:
    clean = x2_clean(component_seed)
    sigma = line_noise_sigma(0.3, snr_db)
    noise = np.random.default_rng(noise_seed).normal(0.0, sigma, len(clean))
    return Signal(clean.samples + noise, sample_rate=clean.sample_rate)


def synthetic_ecg(seed: int = ECG_SEED, length: int = 625, fs: float = 62.5) -> Signal:
    """ECG-like fixture: QRS-shaped spikes every 48 samples plus P/T bumps,
    slow baseline wander and a little noise. Stands in for a recorded lead
    in the band-filter workflow tests."""
    rng = np.random.default_rng(seed)
    t = np.arange(length)
    x = 0.15 * np.sin(2 * np.pi * 0.35 * t / fs) + 0.05 * np.sin(2 * np.pi * 0.12 * t / fs + 1.0)

    def bump(center, width, amp):
        return amp * np.exp(-0.5 * ((t - center) / width) ** 2)

    beat = 10.0
    while beat < length + 24:
        jitter = rng.normal(0.0, 0.4)
        c = beat + jitter
        x += bump(c - 6.0, 2.2, -0.12)          # Q dip
        x += bump(c, 1.3, 1.0)                  # R spike
        x += bump(c + 5.0, 2.0, -0.18)          # S dip
        x += bump(c - 12.0, 3.0, 0.12)          # P wave
        x += bump(c + 16.0, 4.5, 0.25)          # T wave
        beat += 48.0
    x += rng.normal(0.0, 0.02, length)
    return Signal(x, sample_rate=fs)
