"""Pure-Python reference kernels.

These are the hot inner loops of the package: multiset rank/unrank walks,
full scans over the composition simplex, complement-pair scans and the
energy-bounded suffix-count table used by sphere-shaping codecs.  A compiled
Cython twin (``dmshape.kernels._speed``) implements the same functions; the
package picks whichever is importable (see ``dmshape.kernels``).  All
arithmetic that can overflow 64 bits is done with Python ints, so both
backends are exact.
"""

from math import comb

BACKEND = "pure"


def mc_counts(counts):
    """Multinomial coefficient n! / prod(counts_i!), exact."""
    n = sum(counts)
    r = 1
    rest = n
    for x in counts:
        r *= comb(rest, x)
        rest -= x
    return r


def cc_unrank(index, counts):
    """Lexicographic unranking of multiset permutations.

    Returns the sequence of level indices with the given rank among all
    arrangements of ``counts``.  Index 0 is the lexicographically smallest
    arrangement (lowest level indices first).
    """
    m = len(counts)
    rem = list(counts)
    n = sum(counts)
    total = mc_counts(counts)
    out = []
    for pos in range(n):
        r = n - pos
        for i in range(m):
            ci = rem[i]
            if ci == 0:
                continue
            cnt = total * ci // r
            if index < cnt:
                out.append(i)
                total = cnt
                rem[i] = ci - 1
                break
            index -= cnt
        else:
            raise ValueError("index out of range for composition")
    return out


def cc_rank(seq, counts):
    """Inverse of cc_unrank: rank of a level-index sequence."""
    m = len(counts)
    rem = list(counts)
    n = sum(counts)
    total = mc_counts(counts)
    index = 0
    for pos, s in enumerate(seq):
        r = n - pos
        if rem[s] == 0:
            raise ValueError("sequence does not match composition")
        for i in range(m):
            ci = rem[i]
            if ci == 0:
                continue
            cnt = total * ci // r
            if i == s:
                total = cnt
                rem[i] = ci - 1
                break
            index += cnt
    return index


def _scan_state(n, m):
    # colex-first composition: everything in the reservoir level 0
    counts = [0] * m
    counts[0] = n
    return counts


def _advance(counts, m):
    """Step to the next composition in colexicographic order.

    Returns the index pair (src, dst) of the single-unit move when the step
    is incremental, or None after a bulk reset (caller recomputes state), or
    False when the scan is complete.
    """
    if counts[0] > 0:
        counts[0] -= 1
        counts[1] += 1
        return (0, 1)
    for j in range(1, m - 1):
        if counts[j] > 0:
            t = counts[j]
            counts[j] = 0
            counts[j + 1] += 1
            counts[0] = t - 1
            return None
    return False


def energy_totals(n, int_energies):
    """Sum of multinomial coefficients per integer energy over all compositions.

    Returns (totals, comp_counts): lists indexed by raw integer energy, where
    totals[e] is the exact number of length-n sequences with energy e and
    comp_counts[e] the number of compositions at that energy.
    """
    m = len(int_energies)
    emax = n * max(int_energies)
    totals = [0] * (emax + 1)
    ncomp = [0] * (emax + 1)
    counts = _scan_state(n, m)
    mc = 1
    e = n * int_energies[0]
    while True:
        totals[e] += mc
        ncomp[e] += 1
        step = _advance(counts, m)
        if step is False:
            break
        if step is None:
            mc = mc_counts(counts)
            e = sum(c * w for c, w in zip(counts, int_energies))
        else:
            src, dst = step
            # counts already updated: move of one unit src -> dst
            mc = mc * (counts[src] + 1) // counts[dst]
            e += int_energies[dst] - int_energies[src]
    return totals, ncomp


def shells_upto(n, int_energies, e_cap):
    """All compositions with integer energy <= e_cap, in colex order.

    Returns a list of (counts tuple, energy, multinomial count).  The inner
    sweep (level 0 -> level 1 moves) has monotonically increasing energy, so
    each sweep is abandoned as soon as it leaves the cap; the scan then costs
    O(#sweeps + #shells) rather than a full simplex pass.
    """
    m = len(int_energies)
    d01 = int_energies[1] - int_energies[0]
    out = []
    counts = _scan_state(n, m)
    while True:
        # innermost sweep over counts[1], fed from the reservoir counts[0]
        e = sum(c * w for c, w in zip(counts, int_energies))
        if e <= e_cap:
            mc = mc_counts(counts)
            while True:
                out.append((tuple(counts), e, mc))
                if counts[0] == 0:
                    break
                counts[0] -= 1
                counts[1] += 1
                mc = mc * (counts[0] + 1) // counts[1]
                e += d01
                if e > e_cap:
                    break
        # finish the sweep positionally and carry
        counts[1] += counts[0]
        counts[0] = 0
        for j in range(1, m - 1):
            if counts[j] > 0:
                t = counts[j]
                counts[j] = 0
                counts[j + 1] += 1
                counts[0] = t - 1
                break
        else:
            return out


def pair_capacity(c0, min_payload):
    """Total address space of complement pairs around c0.

    Returns sum over unordered pairs {C, 2*c0 - C} with payload >= min_payload
    of 2 * 2^payload, where payload = min(input_bits(C), input_bits(C_bar)).
    """
    total = 0
    for _, _, p in _iter_pairs(c0, min_payload):
        total += 2 << p
    return total


def pair_list(c0, min_payload):
    """All complement pairs around c0 with payload >= min_payload.

    Returns a list of (canonical counts, complement counts, payload) with the
    canonical member the colexicographically smaller one; each unordered pair
    appears exactly once, the pair {c0, c0} never.
    """
    return list(_iter_pairs(c0, min_payload))


def _iter_pairs(c0, min_payload):
    m = len(c0)
    n = sum(c0)
    c0t = tuple(c0)
    box = [min(2 * c0t[i], n) for i in range(m)]

    # iterate over coordinates m-1 .. 1 (colex outer loops), coordinate 0 is
    # the remainder; innermost axis keeps incremental multinomials for both
    # members of the pair.
    def rec(i, rem, prefix):
        if i == 1:
            yield from _inner(rem, prefix)
            return
        for ci in range(0, min(box[i], rem) + 1):
            yield from rec(i - 1, rem - ci, (ci,) + prefix)

    def _inner(rem, suffix):
        # suffix holds coordinates 1..m-1; coordinate 1 varies here
        hi = min(box[1], rem)
        c1 = 0
        first = True
        mc = mcb = None
        for c1 in range(0, hi + 1):
            c0_ = rem - c1
            if c0_ > box[0]:
                continue
            C = (c0_, c1) + suffix
            Cb = tuple(2 * a - b for a, b in zip(c0t, C))
            if first:
                mc = mc_counts(C)
                mcb = mc_counts(Cb)
                first = False
            else:
                # one unit moved 0 -> 1 in C, and 1 -> 0 in Cb
                mc = mc * (C[0] + 1) // C[1]
                mcb = mcb * (Cb[1] + 1) // Cb[0]
            if C == c0t:
                continue
            if C[::-1] >= Cb[::-1]:
                continue
            p = min(mc.bit_length(), mcb.bit_length()) - 1
            if p >= min_payload:
                yield (C, Cb, p)

    yield from rec(m - 1, n, ())


def trellis_build(n, deltas, width):
    """Suffix counts over an energy-offset grid.

    counts[i][w] = number of length-(n - i) level sequences whose summed
    energy offsets (deltas, smallest first, deltas[0] == 0) are at most w.
    counts is cumulative in w, so counts[n][w] = 1 for every w.
    """
    m = len(deltas)
    row = [1] * (width + 1)
    table = [row]
    for _ in range(n):
        prev = table[-1]
        cur = [0] * (width + 1)
        for w in range(width + 1):
            s = 0
            for j in range(m):
                d = deltas[j]
                if d > w:
                    break
                s += prev[w - d]
            cur[w] = s
        table.append(cur)
    table.reverse()
    return table


def ess_unrank(index, n, deltas, width, table):
    """Enumerative decoding: index -> level-index sequence within the ball."""
    m = len(deltas)
    out = []
    w = width
    for i in range(n):
        nxt = table[i + 1]
        for j in range(m):
            d = deltas[j]
            if d > w:
                raise ValueError("index out of range for energy ball")
            band = nxt[w - d]
            if index < band:
                out.append(j)
                w -= d
                break
            index -= band
        else:
            raise ValueError("index out of range for energy ball")
    return out


def ess_rank(seq, n, deltas, width, table):
    """Inverse of ess_unrank."""
    index = 0
    w = width
    for i, s in enumerate(seq):
        nxt = table[i + 1]
        for j in range(s):
            d = deltas[j]
            if d <= w:
                index += nxt[w - d]
        d = deltas[s]
        if d > w:
            raise ValueError("sequence exceeds the energy ball")
        w -= d
    return index
