"""Exact composition arithmetic and block moments.

A *composition* is the vector of occurrence counts of each amplitude level
in one shaped block of n one-dimensional symbols.  Everything that counts
sequences does so in exact arbitrary-precision integers; base-2 logarithms
of counts are taken through the integer bit length, never through floats,
so ``input_bits`` is an exact floor.

Moments are reported for the complex (2D) QAM symbol X = A_I + j*A_Q built
from two independent amplitude draws:

    E|X|^2 = 2*mu2           E|X|^4 = 2*mu4 + 2*mu2^2    (mu_k = E[A^k])
    kurtosis_2d = E|X|^4 / E|X|^2^2 = (mu4/mu2^2 + 1) / 2

which equals 2 for a circular Gaussian and 1 for any constant-modulus
constellation.  The sixth-order term follows E|X|^6 = 2*mu6 + 6*mu4*mu2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import kernels
from .errors import ConstructionBugError, DegeneratePmfError

Counts = tuple[int, ...]
Pmf = tuple[float, ...]


@dataclass(frozen=True)
class AmplitudeAlphabet:
    """Ascending positive amplitude levels of the shaped constellation."""

    levels: tuple[float, ...] = (1.0, 3.0, 5.0, 7.0)

    def __post_init__(self):
        levels = tuple(float(x) for x in self.levels)
        object.__setattr__(self, "levels", levels)
        if len(levels) < 2:
            raise ValueError("alphabet needs at least two levels")
        if any(x <= 0 for x in levels):
            raise ValueError("levels must be positive")
        if any(a >= b for a, b in zip(levels, levels[1:])):
            raise ValueError("levels must be strictly ascending")

    @property
    def m(self) -> int:
        return len(self.levels)

    @property
    def energies(self) -> tuple[float, ...]:
        return tuple(x * x for x in self.levels)

    def integer_energies(self) -> tuple[tuple[int, ...], Fraction]:
        """Exact integer energy grid: (units, scale) with energy_i = units_i * scale.

        Floats are binary rationals, so the squares have exact Fraction
        values; the common denominator is bounded to keep grids practical.
        """
        fracs = [Fraction(x) ** 2 for x in self.levels]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        if den > 1 << 20:
            raise ValueError("amplitude energies need a modest common denominator")
        units = tuple(int(f * den) for f in fracs)
        return units, Fraction(1, den)


DEFAULT_ALPHABET = AmplitudeAlphabet()


def colex_key(counts: Sequence[int]) -> tuple[int, ...]:
    """Sort key realising colexicographic order (last coordinate first)."""
    return tuple(reversed(counts))


def validate_composition(counts: Sequence[int], n: int | None = None,
                         m: int | None = None) -> Counts:
    c = tuple(int(x) for x in counts)
    if any(x < 0 for x in c):
        raise ValueError("composition counts must be non-negative")
    if m is not None and len(c) != m:
        raise ValueError(f"composition has {len(c)} parts, expected {m}")
    if n is not None and sum(c) != n:
        raise ValueError(f"composition sums to {sum(c)}, expected {n}")
    return c


def multinomial_coefficient(counts: Sequence[int]) -> int:
    """Number of distinct arrangements of the composition, exact."""
    return kernels.mc_counts(tuple(counts))


def input_bits(counts: Sequence[int]) -> int:
    """floor(log2(MC)) via the bit length of the exact count."""
    return kernels.mc_counts(tuple(counts)).bit_length() - 1


def log2_exact_floor(x: int) -> float:
    """float log2 of a positive big integer from its top 64 bits.

    The integer part comes from the bit length and the result is clamped
    below the next power of two, so floor(log2_exact_floor(x)) equals
    x.bit_length() - 1 even where float log2 would round up (e.g. 2^49 - 1).
    """
    if x <= 0:
        raise ValueError("log2 of non-positive count")
    nbits = x.bit_length()
    shift = max(0, nbits - 64)
    approx = shift + math.log2(x >> shift)
    return min(approx, math.nextafter(float(nbits), 0.0))


def pmf_of(counts: Sequence[int]) -> Pmf:
    n = sum(counts)
    if n <= 0:
        raise ValueError("empty composition has no PMF")
    return tuple(x / n for x in counts)


def entropy(pmf: Sequence[float]) -> float:
    """Shannon entropy in bits per 1D symbol, with 0*log(0) = 0."""
    return -sum(p * math.log2(p) for p in pmf if p > 0)


def energy(counts: Sequence[int], alphabet: AmplitudeAlphabet = DEFAULT_ALPHABET) -> float:
    """Total block energy sum(counts_i * level_i^2)."""
    return sum(c * e for c, e in zip(counts, alphabet.energies))


@dataclass(frozen=True)
class BlockMoments:
    """Raw 1D amplitude moments and the derived 2D-symbol statistics."""

    mu2_1d: float
    mu4_1d: float
    mu6_1d: float
    kurtosis_2d: float
    psi_2d: float

    @property
    def kurtosis_1d(self) -> float:
        """Amplitude-only moment ratio mu4/mu2^2 (diagnostic)."""
        return self.mu4_1d / self.mu2_1d**2


def block_moments(pmf: Sequence[float],
                  alphabet: AmplitudeAlphabet = DEFAULT_ALPHABET) -> BlockMoments:
    if len(pmf) != alphabet.m:
        raise ValueError("PMF length does not match alphabet")
    total = sum(pmf)
    if abs(total - 1.0) > 1e-12:
        raise DegeneratePmfError(f"PMF sums to {total!r}")
    es = alphabet.energies
    mu2 = sum(p * e for p, e in zip(pmf, es))
    mu4 = sum(p * e * e for p, e in zip(pmf, es))
    mu6 = sum(p * e * e * e for p, e in zip(pmf, es))
    if mu2 <= 0:
        raise DegeneratePmfError("zero second moment")
    kurt2d = (mu4 / mu2**2 + 1.0) / 2.0
    # E|X|^6 / E|X|^2^3 for X = A_I + j*A_Q
    sixth = (2.0 * mu6 + 6.0 * mu4 * mu2) / (2.0 * mu2) ** 3
    psi = sixth - 9.0 * kurt2d + 12.0
    return BlockMoments(mu2, mu4, mu6, kurt2d, psi)


def kurtosis_of(counts: Sequence[int],
                alphabet: AmplitudeAlphabet = DEFAULT_ALPHABET) -> float:
    """2D-symbol kurtosis of a composition's empirical PMF."""
    return block_moments(pmf_of(counts), alphabet).kurtosis_2d


def rate_loss(avg_pmf: Sequence[float], k: int, n: int) -> float:
    """entropy(avg_pmf) - k/n in bits per 1D symbol; negative values are bugs."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    value = entropy(avg_pmf) - k / n
    if value < -1e-12:
        raise ConstructionBugError(
            f"negative rate loss {value!r}: scheme addresses more sequences "
            "than its average distribution permits")
    return value


def enumerate_compositions(
    n: int,
    alphabet: AmplitudeAlphabet = DEFAULT_ALPHABET,
    predicate: Callable[[Counts], bool] | None = None,
) -> Iterator[Counts]:
    """All compositions of n into alphabet.m parts, colexicographic order.

    The stream is deterministic; the predicate filters (it does not prune),
    e.g. ``lambda c: energy(c, a) <= e_max``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    m = alphabet.m
    counts = [0] * m
    counts[0] = n
    while True:
        c = tuple(counts)
        if predicate is None or predicate(c):
            yield c
        if counts[0] > 0:
            counts[0] -= 1
            counts[1] += 1
            continue
        for j in range(1, m - 1):
            if counts[j] > 0:
                t = counts[j]
                counts[j] = 0
                counts[j + 1] += 1
                counts[0] = t - 1
                break
        else:
            return


def composition_count(n: int, m: int) -> int:
    """Number of compositions of n into m parts: C(n+m-1, m-1)."""
    return math.comb(n + m - 1, m - 1)
