"""Flat key-value run configuration.

One ``key=value`` pair per line, ``#`` comments and blank lines ignored.
Recognised keys (defaults are the reference link of the study):

    gamma_per_w_km, beta2_ps2_per_km, alpha_db_per_km, span_km, n_spans,
    nf_db, wavelength_nm, n_channels, spacing_ghz, symbol_rate_gbaud,
    rolloff, launch_power_dbm (optional), eta0 (optional), eta1 (optional),
    anchor1_kurtosis, anchor1_snr_db, anchor2_kurtosis, anchor2_snr_db

When eta0/eta1 are absent the model is calibrated from the two anchors;
anchor2's kurtosis defaults to the minimum kurtosis of the pairwise scheme
built at the same (n, k), which is how the second reference point is
defined.  Unknown keys are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CalibrationError, SchemeFileError
from .nli import LinkConfig, NliModel, WdmConfig, ase_variance, calibrate, gn_eta0, optimal_power

_FLOAT_KEYS = {
    "gamma_per_w_km", "beta2_ps2_per_km", "alpha_db_per_km", "span_km",
    "nf_db", "wavelength_nm", "spacing_ghz", "symbol_rate_gbaud", "rolloff",
    "launch_power_dbm", "eta0", "eta1",
    "anchor1_kurtosis", "anchor1_snr_db", "anchor2_kurtosis", "anchor2_snr_db",
}
_INT_KEYS = {"n_spans", "n_channels"}

DEFAULT_ANCHOR1 = (1.82, 14.26)
DEFAULT_ANCHOR2_SNR_DB = 14.44


@dataclass(frozen=True)
class RunConfig:
    link: LinkConfig
    wdm: WdmConfig
    launch_power_dbm: float | None = None
    eta0: float | None = None
    eta1: float | None = None
    anchor1_kurtosis: float = DEFAULT_ANCHOR1[0]
    anchor1_snr_db: float = DEFAULT_ANCHOR1[1]
    anchor2_kurtosis: float | None = None
    anchor2_snr_db: float = DEFAULT_ANCHOR2_SNR_DB

    def launch_power_w(self) -> float:
        """Configured launch power, or the GN-optimal power at Gaussian kurtosis."""
        if self.launch_power_dbm is not None:
            return 10 ** (self.launch_power_dbm / 10) * 1e-3
        ase = ase_variance(self.link, self.wdm)
        eta0 = self.eta0 if self.eta0 is not None else gn_eta0(self.link, self.wdm)
        return optimal_power(ase, eta0)

    def resolve_model(self, anchor2_kurtosis: float | None = None) -> NliModel:
        """Build the SNR model: eta overrides win, otherwise anchor calibration."""
        ase = ase_variance(self.link, self.wdm)
        power = self.launch_power_w()
        if self.eta0 is not None or self.eta1 is not None:
            eta0 = self.eta0 if self.eta0 is not None else gn_eta0(self.link, self.wdm)
            eta1 = self.eta1 if self.eta1 is not None else 0.0
            return NliModel(eta0=eta0, eta1=eta1, ase_variance_w=ase,
                            launch_power_w=power)
        a2k = self.anchor2_kurtosis if self.anchor2_kurtosis is not None \
            else anchor2_kurtosis
        if a2k is None:
            raise CalibrationError(
                "calibration requires anchor2_kurtosis (or eta0/eta1 overrides)")
        anchors = [(self.anchor1_kurtosis, self.anchor1_snr_db),
                   (a2k, self.anchor2_snr_db)]
        return calibrate(anchors, ase, power)


def parse_config(path: str | None) -> RunConfig:
    """Read a key-value file into a RunConfig; missing file keys use defaults."""
    raw: dict[str, float | int] = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemeFileError(f"cannot read config {path}: {exc}") from exc
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SchemeFileError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key in _INT_KEYS:
                raw[key] = int(value)
            elif key in _FLOAT_KEYS:
                raw[key] = float(value)
            else:
                raise SchemeFileError(f"{path}:{lineno}: unknown key {key!r}")
    link_kwargs = {k: raw.pop(k) for k in list(raw)
                   if k in LinkConfig.__dataclass_fields__}
    wdm_kwargs = {k: raw.pop(k) for k in list(raw)
                  if k in WdmConfig.__dataclass_fields__}
    try:
        link = LinkConfig(**link_kwargs)
        wdm = WdmConfig(**wdm_kwargs)
        return RunConfig(link=link, wdm=wdm, **raw)
    except ValueError as exc:
        raise SchemeFileError(f"invalid configuration: {exc}") from exc


def snr_db_to_linear(snr_db: float) -> float:
    return 10 ** (snr_db / 10)


def w_to_dbm(power_w: float) -> float:
    return 10 * math.log10(power_w * 1e3)
