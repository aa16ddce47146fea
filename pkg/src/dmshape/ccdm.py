"""Constant-composition scheme: Maxwell-Boltzmann target selection.

The target composition is the n-type quantisation of a Maxwell-Boltzmann
PMF over the amplitude alphabet.  The shaping parameter is swept from the
most-shaped end (largest lambda, lowest entropy) downwards on a fine fixed
grid, and the first composition that carries the requested number of input
bits wins.  Feasibility is not monotone in lambda at quantisation
boundaries, which is why a sweep over the grid replaces naive bisection:
the sweep returns the largest feasible grid point by construction.
"""

from __future__ import annotations

import functools
import math

from .combinatorics import (
    DEFAULT_ALPHABET,
    AmplitudeAlphabet,
    Counts,
    Pmf,
    input_bits,
)
from .errors import RateInfeasibleError
from .schemes import CompositionSet, CoverItem, exact_cover, tree_scheme

LAMBDA_MAX = 2.0
LAMBDA_GRID = 1 << 16


def mb_pmf(lam: float, alphabet: AmplitudeAlphabet = DEFAULT_ALPHABET) -> Pmf:
    """Maxwell-Boltzmann PMF: p_i proportional to exp(-lam * level_i^2)."""
    if lam < 0:
        raise ValueError("shaping parameter must be >= 0")
    es = alphabet.energies
    w = [math.exp(-lam * (e - es[0])) for e in es]
    z = sum(w)
    return tuple(x / z for x in w)


def quantize_pmf(pmf, n: int) -> Counts:
    """Largest-remainder n-type approximation of a PMF.

    Start from floor(n*p_i); hand the remaining units to the entries with
    the largest remainder, ties to the lower index.  Deterministic.
    """
    scaled = [n * p for p in pmf]
    counts = [math.floor(x) for x in scaled]
    order = sorted(range(len(pmf)), key=lambda i: (-(scaled[i] - counts[i]), i))
    for i in order[: n - sum(counts)]:
        counts[i] += 1
    return tuple(counts)


@functools.lru_cache(maxsize=16)
def mb_composition_chain(n: int, alphabet: AmplitudeAlphabet) -> tuple[tuple[float, Counts], ...]:
    """Distinct quantised MB compositions for descending lambda.

    Each entry is (lambda, composition) for the largest grid lambda whose
    quantised PMF yields that composition.  The grid step (2 / 2^16) is far
    below the quantisation granularity at practical block lengths.
    """
    segs = []
    prev = None
    for i in range(LAMBDA_GRID, -1, -1):
        lam = LAMBDA_MAX * i / LAMBDA_GRID
        comp = quantize_pmf(mb_pmf(lam, alphabet), n)
        if comp != prev:
            segs.append((lam, comp))
            prev = comp
    return tuple(segs)


def select_ccdm(n: int, k: int,
                alphabet: AmplitudeAlphabet = DEFAULT_ALPHABET) -> Counts:
    """Lowest-entropy MB-family composition carrying at least k input bits."""
    if k < 0 or k > n * math.log2(alphabet.m):
        raise RateInfeasibleError(f"k={k} outside [0, n*log2(m)]")
    for _, comp in mb_composition_chain(n, alphabet):
        if input_bits(comp) >= k:
            return comp
    raise RateInfeasibleError(
        f"no constant composition at n={n} carries {k} input bits")


def build_ccdm(n: int, k: int,
               alphabet: AmplitudeAlphabet = DEFAULT_ALPHABET) -> CompositionSet:
    """Single-leaf scheme on the selected target, operated at exactly k bits."""
    target = select_ccdm(n, k, alphabet)
    cover = exact_cover([CoverItem((target,), min(input_bits(target), k))], k)
    return tree_scheme("ccdm", n, k, alphabet, cover)
