"""Pairwise multi-composition scheme around a Maxwell-Boltzmann target.

Every used composition C comes with its complement 2*C0 - C so that each
full pair averages exactly to the target C0; both members carry the same
payload, which keeps the scheme's average PMF pinned to the target's.  The
pair population is every complement pair whose payload (the smaller member
capacity) is within PAIR_WINDOW_BITS of the target's own bit count.

The prefix tree is depth-balanced: all items operate at the smallest
payload cap that still reaches 2^k addresses, which spreads the input space
over the whole pair population instead of a handful of top pairs, and the
greedy exact cover then trims the boundary class.  Tree depths follow as
k - payload.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from . import kernels
from .ccdm import mb_composition_chain
from .combinatorics import (
    DEFAULT_ALPHABET,
    AmplitudeAlphabet,
    Counts,
    input_bits,
)
from .errors import RateInfeasibleError
from .schemes import (
    CompositionSet,
    CoverItem,
    exact_cover,
    smallest_feasible_cap,
    tree_scheme,
)

PAIR_WINDOW_BITS = 40


@dataclass(frozen=True)
class CompositionPair:
    """An unordered complement pair; c is the colex-smaller canonical member."""

    c: Counts
    c_bar: Counts
    payload_bits: int


def min_pair_payload(c0: Counts) -> int:
    return max(0, input_bits(c0) - PAIR_WINDOW_BITS)


@functools.lru_cache(maxsize=4)
def _pair_list_cached(c0: Counts, min_payload: int):
    return kernels.pair_list(c0, min_payload)


def enumerate_pairs(c0: Counts, min_payload: int) -> list[CompositionPair]:
    """Every complement pair {C, 2*C0-C} with payload >= min_payload.

    Both members non-negative, C != C0, each unordered pair once with the
    colex-smaller member canonical; payload = min of the members' input bits.
    """
    return [CompositionPair(c, cb, p)
            for c, cb, p in _pair_list_cached(tuple(c0), min_payload)]


@functools.lru_cache(maxsize=1024)
def _pair_space(c0: Counts) -> tuple[int, int]:
    """(target input bits, total pair address space in the payload window)."""
    k0 = input_bits(c0)
    return k0, kernels.pair_capacity(c0, max(0, k0 - PAIR_WINDOW_BITS))


def select_mpdm_target(n: int, k: int,
                       alphabet: AmplitudeAlphabet = DEFAULT_ALPHABET) -> Counts:
    """Most-shaped MB-family target whose pair-augmented space reaches 2^k.

    Sweeps the quantised MB chain from the largest shaping parameter down
    and returns the first composition where the singleton plus all pairs in
    the payload window supply at least 2^k addresses.
    """
    if k < 0 or k > n * math.log2(alphabet.m):
        raise RateInfeasibleError(f"k={k} outside [0, n*log2(m)]")
    need = 1 << k
    for _, comp in mb_composition_chain(n, alphabet):
        k0, pair_space = _pair_space(comp)
        if (1 << min(k0, k)) + pair_space >= need:
            return comp
    raise RateInfeasibleError(f"no MPDM target reaches k={k} at n={n}")


def assemble_tree(target: Counts, pairs, k: int) -> list[tuple[Counts, int]]:
    """Depth-balanced exact cover over the singleton and its pairs.

    Returns (counts, payload) leaves in take order; the target keeps a leaf
    whenever anything is taken, and every retained pair keeps both members
    at equal payload, so the average PMF equals the target's exactly.
    """
    items = [CoverItem((tuple(target),), min(input_bits(target), k))]
    items += [CoverItem((p.c, p.c_bar), p.payload_bits) for p in pairs]
    cap = smallest_feasible_cap(items, k)
    return exact_cover(items, k, payload_cap=cap)


def build_mpdm(n: int, k: int,
               alphabet: AmplitudeAlphabet = DEFAULT_ALPHABET) -> CompositionSet:
    target = select_mpdm_target(n, k, alphabet)
    pairs = enumerate_pairs(target, min_pair_payload(target))
    cover = assemble_tree(target, pairs, k)
    return tree_scheme("mpdm", n, k, alphabet, cover)
