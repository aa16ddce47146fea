"""Sphere shaping at the composition level.

All compositions whose block energy fits inside the smallest radius that
admits 2^k sequences form the scheme; shells are consumed lowest energy
first (colex within equal energy), with the boundary-energy shells
truncated so that exactly 2^k sequences are used.  Shell weights are exact
used-count ratios rather than dyadic payloads: sphere-shaped sets carry no
prefix tree.

Energies are put on an exact integer grid (levels are binary rationals, so
their squares have a finite common denominator); the radius search and the
shell membership test are therefore free of float boundary artefacts.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from . import kernels
from .combinatorics import (
    DEFAULT_ALPHABET,
    AmplitudeAlphabet,
    Counts,
    colex_key,
    rate_loss as _rate_loss,
)
from .errors import RateInfeasibleError
from .schemes import AddressedComposition, CompositionSet


@dataclass(frozen=True)
class EnergyShellIndex:
    """Energy-sorted shell table inside the selected radius.

    shells are (counts, energy, multinomial count) sorted by energy then
    colex; cumulative[i] is the exact number of sequences in shells[:i+1].
    """

    e_max: float
    shells: tuple[tuple[Counts, float, int], ...]
    cumulative: tuple[int, ...]


@functools.lru_cache(maxsize=64)
def _integer_radius(n: int, k: int, alphabet: AmplitudeAlphabet) -> int:
    units, _ = alphabet.integer_energies()
    need = 1 << k
    totals, _counts = kernels.energy_totals(n, units)
    cum = 0
    for e, t in enumerate(totals):
        if t == 0:
            continue
        cum += t
        if cum >= need:
            return e
    raise RateInfeasibleError(
        f"alphabet admits only {cum} sequences at n={n}, need 2^{k}")


def select_emax(n: int, k: int,
                alphabet: AmplitudeAlphabet = DEFAULT_ALPHABET) -> float:
    """Smallest achievable energy radius admitting at least 2^k sequences."""
    if k < 0:
        raise RateInfeasibleError("k must be >= 0")
    _, scale = alphabet.integer_energies()
    return float(_integer_radius(n, k, alphabet) * scale)


def shell_index(n: int, k: int,
                alphabet: AmplitudeAlphabet = DEFAULT_ALPHABET) -> EnergyShellIndex:
    """Enumerate every shell inside the minimal radius, energy-sorted."""
    units, scale = alphabet.integer_energies()
    e_int = _integer_radius(n, k, alphabet)
    raw = kernels.shells_upto(n, units, e_int)
    raw.sort(key=lambda s: (s[1], colex_key(s[0])))
    cumulative = []
    cum = 0
    shells = []
    for counts, e, mc in raw:
        cum += mc
        cumulative.append(cum)
        shells.append((counts, float(e * scale), mc))
    return EnergyShellIndex(e_max=float(e_int * scale), shells=tuple(shells),
                            cumulative=tuple(cumulative))


def build_ess(n: int, k: int,
              alphabet: AmplitudeAlphabet = DEFAULT_ALPHABET) -> CompositionSet:
    """Weight every in-sphere shell by its used-sequence count.

    Interior shells are fully used; the boundary-energy shells are consumed
    in colex order with the crossing shell partially used, so the used total
    is exactly 2^k.  Shells after the crossing keep zero weight but remain
    part of the scheme (they are inside the sphere).
    """
    index = shell_index(n, k, alphabet)
    need = 1 << k
    leaves = []
    avg = [0.0] * alphabet.m
    prev = 0
    for (counts, _e, mc), cum in zip(index.shells, index.cumulative):
        used = min(mc, need - prev) if prev < need else 0
        prev += used
        w = used / need if used else 0.0
        leaves.append(AddressedComposition(counts=counts, weight=w,
                                           used_count=used))
        if used:
            for i, c in enumerate(counts):
                avg[i] += w * c / n
    avg_pmf = tuple(avg)
    built = CompositionSet(scheme="ess", n=n, k=k, alphabet=alphabet,
                           leaves=tuple(leaves), avg_pmf=avg_pmf,
                           rate_loss=_rate_loss(avg_pmf, k, n),
                           e_max=index.e_max)
    built.validate()
    return built


def ess_kurtosis_range(built: CompositionSet) -> tuple[float, float]:
    """Kurtosis spread over the shells that actually carry probability."""
    return built.kurtosis_range()
