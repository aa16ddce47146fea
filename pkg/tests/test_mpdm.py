import itertools

import pytest

import dmshape as d
from dmshape.combinatorics import colex_key
from dmshape.errors import RateInfeasibleError
from dmshape.mpdm import assemble_tree, min_pair_payload
from dmshape.schemes import CoverItem, exact_cover, smallest_feasible_cap

A4 = d.DEFAULT_ALPHABET
A2 = d.AmplitudeAlphabet((1, 3))


def brute_force_pairs(c0, min_payload):
    """Oracle: enumerate the whole simplex and pair by complement."""
    n = sum(c0)
    m = len(c0)
    seen = set()
    out = []
    for c in itertools.product(range(n + 1), repeat=m):
        if sum(c) != n or c == tuple(c0):
            continue
        cb = tuple(2 * a - b for a, b in zip(c0, c))
        if any(x < 0 for x in cb):
            continue
        key = frozenset((c, cb))
        if key in seen:
            continue
        seen.add(key)
        canon, other = sorted((c, cb), key=colex_key)
        p = min(d.input_bits(canon), d.input_bits(other))
        if p >= min_payload:
            out.append((canon, other, p))
    return sorted(out)


class TestEnumeratePairs:
    def test_examples(self):
        pairs = {(p.c, p.c_bar): p.payload_bits
                 for p in d.enumerate_pairs((2, 1, 1), 0)}
        assert ((3, 1, 0), (1, 1, 2)) in pairs
        assert ((4, 0, 0), (0, 2, 2)) in pairs

    def test_min_payload_example(self):
        pairs = d.enumerate_pairs((1, 0, 1), 0)
        entry = [p for p in pairs if p.c == (2, 0, 0)]
        assert entry and entry[0].c_bar == (0, 0, 2)
        assert entry[0].payload_bits == 0

    @pytest.mark.parametrize("c0", [(2, 1, 1), (3, 2, 1), (4, 2), (5, 3, 2, 1)])
    def test_against_brute_force(self, c0):
        for pmin in (0, 1):
            got = sorted((p.c, p.c_bar, p.payload_bits)
                         for p in d.enumerate_pairs(c0, pmin))
            assert got == brute_force_pairs(c0, pmin)

    def test_pair_arithmetic(self):
        c0 = (5, 3, 2, 1)
        for p in d.enumerate_pairs(c0, 0):
            assert tuple(a + b for a, b in zip(p.c, p.c_bar)) == \
                tuple(2 * x for x in c0)
            assert colex_key(p.c) < colex_key(p.c_bar)
            assert p.payload_bits == min(d.input_bits(p.c),
                                         d.input_bits(p.c_bar))


class TestSelectTarget:
    def test_toy_capacity_oracle(self):
        # exhaustive: (3,1) is the most-shaped composition of 4 into 2 whose
        # singleton + pair space reaches 2^2
        target = d.select_mpdm_target(4, 2, A2)
        assert target == (3, 1)
        space = 1 << d.input_bits(target)
        for p in d.enumerate_pairs(target, min_pair_payload(target)):
            space += 2 << p.payload_bits
        assert space >= 4

    def test_k0_degenerate(self):
        assert d.select_mpdm_target(4, 0, A2) == (4, 0)

    def test_infeasible(self):
        with pytest.raises(RateInfeasibleError):
            d.select_mpdm_target(4, 9, A2)

    def test_reference_rate(self, mpdm216):
        # target entropy ~= k/n + rate loss; the capped cover keeps the
        # average pinned to the target
        assert d.entropy(mpdm216.avg_pmf) == pytest.approx(
            349 / 216 + 0.02, abs=0.005)


class TestAssemble:
    def test_toy_cover_depths(self):
        items = [CoverItem(((2, 2),), 2), CoverItem(((3, 1), (1, 3)), 1)]
        cap = smallest_feasible_cap(items, 3)
        cover = exact_cover(items, 3, payload_cap=cap)
        assert sum(1 << p for _, p in cover) == 8
        depths = sorted(3 - p for _, p in cover)
        assert depths == [1, 2, 2]

    def test_singleton_alone_depth_zero(self):
        items = [CoverItem(((2, 2),), 2)]
        cover = exact_cover(items, 2, payload_cap=smallest_feasible_cap(items, 2))
        assert cover == [((2, 2), 2)]

    def test_toy_exact_cover_brute_force(self):
        # n=6, maximal k on {1,3}: hand-checked cover 8 + 4 + 4 = 2^4
        target = d.select_mpdm_target(6, 4, A2)
        assert target == (4, 2)
        built = d.build_mpdm(6, 4, A2)
        assert {(l.counts, l.payload_bits, l.depth) for l in built.leaves} == {
            ((4, 2), 3, 1), ((5, 1), 2, 2), ((3, 3), 2, 2)}
        assert sum(1 << l.payload_bits for l in built.leaves) == 16

    def test_average_preserved_exactly(self):
        built = d.build_mpdm(6, 4, A2)
        assert built.avg_pmf == pytest.approx(d.pmf_of((4, 2)), abs=1e-15)


class TestBuildInvariants:
    @pytest.mark.parametrize("n,k", [(4, 2), (6, 4), (8, 5), (12, 8)])
    def test_toy_invariants(self, n, k):
        built = d.build_mpdm(n, k, A2)
        built.validate()
        # Kraft equality through exact integers
        assert sum(1 << l.payload_bits for l in built.leaves) == 1 << k
        for leaf in built.leaves:
            assert (1 << leaf.payload_bits) <= d.multinomial_coefficient(leaf.counts)

    def test_determinism(self):
        a = d.build_mpdm(8, 5, A2)
        b = d.build_mpdm(8, 5, A2)
        assert [(l.counts, l.payload_bits) for l in a.leaves] == \
            [(l.counts, l.payload_bits) for l in b.leaves]

    def test_pair_symmetry(self, mpdm216):
        target = d.select_mpdm_target(216, 349, A4)
        by_counts = {l.counts: l for l in mpdm216.leaves}
        for leaf in mpdm216.leaves:
            if leaf.counts == target:
                continue
            partner = tuple(2 * a - b for a, b in zip(target, leaf.counts))
            assert partner in by_counts
            assert by_counts[partner].payload_bits == leaf.payload_bits

    def test_reference_scale(self, mpdm216):
        assert 1500 <= mpdm216.n_compositions <= 3000
        assert mpdm216.rate_loss == pytest.approx(0.02, abs=0.005)
        assert sum(1 << l.payload_bits for l in mpdm216.leaves) == 1 << 349
        kmin, kmax = mpdm216.kurtosis_range()
        assert kmax > kmin  # genuine spread

    def test_average_is_target_at_scale(self, mpdm216):
        target = d.select_mpdm_target(216, 349, A4)
        assert mpdm216.avg_pmf == pytest.approx(d.pmf_of(target), abs=1e-9)
