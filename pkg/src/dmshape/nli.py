"""Effective-SNR model for the WDM link: ASE + kurtosis-dependent NLI.

The nonlinear interference power is eta(Phi, Psi) * P^3 with an affine
modulation correction

    eta = eta0 + eta1 * Phi + eta2 * Psi,      Phi = kurtosis - 2,

so a circular-Gaussian constellation (Phi = 0) sees the baseline eta0 and
sub-Gaussian constellations generate less NLI.  eta0 can come from the
incoherent closed-form Gaussian-noise estimate below, or the (eta0, eta1)
pair can be calibrated from per-scheme SNR anchor points; the sixth-order
slope eta2 stays 0 unless explicitly set.  Effective SNR of one shaped
block is then

    SNR = P / (sigma_ase^2 + eta * P^3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.constants import c as C_LIGHT, h as H_PLANCK

from .combinatorics import block_moments, pmf_of
from .errors import CalibrationError, ModelDomainError
from .schemes import CompositionSet


@dataclass(frozen=True)
class LinkConfig:
    """Span-and-amplifier description of the fibre link."""

    gamma_per_w_km: float = 1.3
    beta2_ps2_per_km: float = -21.8
    alpha_db_per_km: float = 0.2
    span_km: float = 80.0
    n_spans: int = 30
    nf_db: float = 5.0
    wavelength_nm: float = 1550.0

    def __post_init__(self):
        if self.beta2_ps2_per_km == 0:
            raise ValueError("beta2 must be nonzero")
        for name in ("gamma_per_w_km", "alpha_db_per_km", "span_km",
                     "nf_db", "wavelength_nm"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.n_spans < 1:
            raise ValueError("n_spans must be >= 1")


@dataclass(frozen=True)
class WdmConfig:
    """Comb layout; the centre channel is the one evaluated."""

    n_channels: int = 11
    spacing_ghz: float = 50.0
    symbol_rate_gbaud: float = 45.0
    rolloff: float = 0.05

    def __post_init__(self):
        if self.n_channels < 1 or self.n_channels % 2 == 0:
            raise ValueError("n_channels must be a positive odd integer")
        if not 0 <= self.rolloff <= 1:
            raise ValueError("rolloff must lie in [0, 1]")
        if self.spacing_ghz < self.symbol_rate_gbaud * (1 + self.rolloff):
            raise ValueError("channel spacing below the occupied bandwidth")


@dataclass(frozen=True)
class NliModel:
    """Frozen SNR-model coefficients at a fixed launch power."""

    eta0: float
    eta1: float
    ase_variance_w: float
    launch_power_w: float
    eta2: float = 0.0

    def __post_init__(self):
        if self.eta0 <= 0 or self.eta1 < 0:
            raise ValueError("need eta0 > 0 and eta1 >= 0")
        if self.ase_variance_w <= 0 or self.launch_power_w <= 0:
            raise ValueError("ASE variance and launch power must be positive")


def ase_variance(link: LinkConfig, wdm: WdmConfig) -> float:
    """Closed-form amplifier noise variance in the symbol-rate bandwidth (W)."""
    noise_figure = 10 ** (link.nf_db / 10)
    gain = 10 ** (link.alpha_db_per_km * link.span_km / 10)
    photon = H_PLANCK * C_LIGHT / (link.wavelength_nm * 1e-9)
    bandwidth = wdm.symbol_rate_gbaud * 1e9
    return link.n_spans * noise_figure * photon * (gain - 1.0) * bandwidth


def gn_eta0(link: LinkConfig, wdm: WdmConfig) -> float:
    """Incoherent closed-form Gaussian-noise NLI coefficient, centre channel.

    Self-channel term through the asinh expression, cross-channel terms as a
    log sum over the co-propagating channels; spans add incoherently.
    """
    alpha = link.alpha_db_per_km * math.log(10) / 10 / 1e3  # 1/m
    span = link.span_km * 1e3
    l_eff = (1 - math.exp(-alpha * span)) / alpha
    l_asym = 1 / alpha
    gamma = link.gamma_per_w_km * 1e-3
    beta2 = abs(link.beta2_ps2_per_km) * 1e-27  # s^2/m
    bw = wdm.symbol_rate_gbaud * 1e9
    df = wdm.spacing_ghz * 1e9
    if df <= bw:
        raise ModelDomainError("channel spacing must exceed the symbol rate")
    bracket = math.asinh(math.pi**2 / 2 * beta2 * l_asym * bw**2)
    for i in range(1, (wdm.n_channels - 1) // 2 + 1):
        bracket += 2 * math.log((i * df + bw / 2) / (i * df - bw / 2))
    per_span = (8 / 27) * (gamma * l_eff) ** 2 / (math.pi * beta2 * l_asym * bw**2)
    return link.n_spans * per_span * bracket


def snr_eff(kurtosis: float, psi: float, model: NliModel) -> float:
    """Effective SNR (dB) of a block with the given 2D-symbol moments."""
    phi = kurtosis - 2.0
    eta = model.eta0 + model.eta1 * phi + model.eta2 * psi
    p = model.launch_power_w
    denom = model.ase_variance_w + eta * p**3
    if denom <= 0:
        raise ModelDomainError(
            f"non-positive noise power at kurtosis {kurtosis}")
    return 10 * math.log10(p / denom)


def optimal_power(ase_variance_w: float, eta: float) -> float:
    """Launch power maximising P/(sigma^2 + eta*P^3): (sigma^2 / 2 eta)^(1/3)."""
    if ase_variance_w <= 0 or eta <= 0:
        raise ModelDomainError("need positive ASE variance and eta")
    return (ase_variance_w / (2 * eta)) ** (1 / 3)


def calibrate(anchors: Sequence[tuple[float, float]], ase_variance_w: float,
              launch_power_w: float) -> NliModel:
    """Fit (eta0, eta1) to (kurtosis, snr_db) anchor points, least squares.

    Each anchor contributes P/snr - sigma^2 = (eta0 + eta1*Phi) * P^3; two
    anchors with distinct kurtosis give the exact two-point solution.
    """
    if len(anchors) < 2:
        raise CalibrationError("need at least two anchors")
    kurts = [a[0] for a in anchors]
    if len(set(kurts)) < 2:
        raise CalibrationError("anchors must have distinct kurtosis")
    p = launch_power_w
    a = np.array([[1.0, q - 2.0] for q, _ in anchors])
    y = np.array([(p / 10 ** (s / 10) - ase_variance_w) / p**3
                  for _, s in anchors])
    (eta0, eta1), *_ = np.linalg.lstsq(a, y, rcond=None)
    if eta0 <= 0 or eta1 < 0:
        raise CalibrationError(
            f"calibration left the model domain: eta0={eta0}, eta1={eta1}")
    return NliModel(eta0=float(eta0), eta1=float(eta1),
                    ase_variance_w=ase_variance_w, launch_power_w=p)


@dataclass(frozen=True)
class SnrEntry:
    composition_id: str
    kurtosis: float
    weight: float
    snr_db: float


@dataclass(frozen=True)
class SnrReport:
    """Per-composition SNR records with weighted aggregates."""

    entries: tuple[SnrEntry, ...]
    min_db: float
    max_db: float
    avg_db: float
    histogram: tuple[tuple[float, float], ...]  # (bin centre dB, weight)
    cdf: tuple[tuple[float, float], ...]        # (snr dB, cumulative weight)

    @property
    def p2p_db(self) -> float:
        return self.max_db - self.min_db


def composition_id(counts) -> str:
    return ":".join(str(c) for c in counts)


def analyze(built: CompositionSet, model: NliModel,
            bin_width_db: float = 0.01) -> SnrReport:
    """Weighted per-block SNR statistics of a scheme under the model.

    Zero-weight leaves (unused boundary shells) are excluded; aggregates are
    weighted by leaf usage, min/max are unweighted extremes over the carried
    leaves.  Histogram bins have the given width; the CDF is cumulative
    weight over ascending SNR.
    """
    entries = []
    for leaf in built.leaves:
        if leaf.weight <= 0:
            continue
        mom = block_moments(pmf_of(leaf.counts), built.alphabet)
        snr = snr_eff(mom.kurtosis_2d, mom.psi_2d, model)
        entries.append(SnrEntry(composition_id(leaf.counts),
                                mom.kurtosis_2d, leaf.weight, snr))
    snrs = [e.snr_db for e in entries]
    weights = [e.weight for e in entries]
    mn, mx = min(snrs), max(snrs)
    avg = sum(s * w for s, w in zip(snrs, weights))
    bins: dict[int, float] = {}
    for s, w in zip(snrs, weights):
        bins[math.floor(s / bin_width_db)] = bins.get(
            math.floor(s / bin_width_db), 0.0) + w
    histogram = tuple(((i + 0.5) * bin_width_db, bins[i]) for i in sorted(bins))
    by_snr: dict[float, float] = {}
    for s, w in zip(snrs, weights):
        by_snr[s] = by_snr.get(s, 0.0) + w
    cdf = []
    cum = 0.0
    for s in sorted(by_snr):
        cum += by_snr[s]
        cdf.append((s, cum))
    return SnrReport(entries=tuple(entries), min_db=mn, max_db=mx, avg_db=avg,
                     histogram=histogram, cdf=tuple(cdf))
