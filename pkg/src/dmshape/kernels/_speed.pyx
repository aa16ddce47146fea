# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels: same contracts as dmshape.kernels.pure.

Loop counters and small counts are C integers; sequence counts stay Python
ints (they exceed 64 bits at practical block lengths), so the results are
bit-identical to the pure backend.
"""

from math import comb

BACKEND = "cython"


def mc_counts(counts):
    """Multinomial coefficient n! / prod(counts_i!), exact."""
    cdef Py_ssize_t i, m = len(counts)
    cdef long rest = 0, x
    r = 1
    for i in range(m):
        rest += <long> counts[i]
    for i in range(m):
        x = <long> counts[i]
        r *= comb(rest, x)
        rest -= x
    return r


def cc_unrank(index, counts):
    """Lexicographic unranking of multiset permutations (level indices)."""
    cdef Py_ssize_t m = len(counts)
    cdef long[32] rem
    cdef Py_ssize_t i
    cdef long n = 0, r, ci, pos
    if m > 32:
        raise ValueError("alphabet too large for the compiled kernel")
    for i in range(m):
        rem[i] = <long> counts[i]
        n += rem[i]
    total = mc_counts(counts)
    out = []
    cdef bint found
    for pos in range(n):
        r = n - pos
        found = False
        for i in range(m):
            ci = rem[i]
            if ci == 0:
                continue
            cnt = total * ci // r
            if index < cnt:
                out.append(i)
                total = cnt
                rem[i] = ci - 1
                found = True
                break
            index = index - cnt
        if not found:
            raise ValueError("index out of range for composition")
    return out


def cc_rank(seq, counts):
    """Inverse of cc_unrank."""
    cdef Py_ssize_t m = len(counts)
    cdef long[32] rem
    cdef Py_ssize_t j
    cdef long n = 0, r, ci, pos, s
    if m > 32:
        raise ValueError("alphabet too large for the compiled kernel")
    for j in range(m):
        rem[j] = <long> counts[j]
        n += rem[j]
    total = mc_counts(counts)
    index = 0
    for pos in range(n):
        s = <long> seq[pos]
        r = n - pos
        if rem[s] == 0:
            raise ValueError("sequence does not match composition")
        for j in range(m):
            ci = rem[j]
            if ci == 0:
                continue
            cnt = total * ci // r
            if j == s:
                total = cnt
                rem[j] = ci - 1
                break
            index = index + cnt
    return index


def energy_totals(long n, int_energies):
    """Per-energy sequence and composition totals over the whole simplex."""
    cdef Py_ssize_t m = len(int_energies)
    cdef long[32] w, cnts
    cdef Py_ssize_t i, j
    cdef long e, emax, t
    if m > 32:
        raise ValueError("alphabet too large for the compiled kernel")
    for i in range(m):
        w[i] = <long> int_energies[i]
        cnts[i] = 0
    cnts[0] = n
    emax = n * w[m - 1]
    totals = [0] * (emax + 1)
    ncomp = [0] * (emax + 1)
    mc = 1
    e = n * w[0]
    while True:
        totals[e] = totals[e] + mc
        ncomp[e] = ncomp[e] + 1
        if cnts[0] > 0:
            cnts[0] -= 1
            cnts[1] += 1
            mc = mc * (cnts[0] + 1) // cnts[1]
            e += w[1] - w[0]
            continue
        for j in range(1, m - 1):
            if cnts[j] > 0:
                t = cnts[j]
                cnts[j] = 0
                cnts[j + 1] += 1
                cnts[0] = t - 1
                break
        else:
            return totals, ncomp
        mc = mc_counts([cnts[i] for i in range(m)])
        e = 0
        for i in range(m):
            e += cnts[i] * w[i]


def shells_upto(long n, int_energies, long e_cap):
    """Compositions with energy <= e_cap, colex order, sweep-pruned."""
    cdef Py_ssize_t m = len(int_energies)
    cdef long[32] w, cnts
    cdef Py_ssize_t i, j
    cdef long e, d01, t
    if m > 32:
        raise ValueError("alphabet too large for the compiled kernel")
    for i in range(m):
        w[i] = <long> int_energies[i]
        cnts[i] = 0
    cnts[0] = n
    d01 = w[1] - w[0]
    out = []
    while True:
        e = 0
        for i in range(m):
            e += cnts[i] * w[i]
        if e <= e_cap:
            mc = mc_counts([cnts[i] for i in range(m)])
            while True:
                out.append((tuple(cnts[i] for i in range(m)), e, mc))
                if cnts[0] == 0:
                    break
                cnts[0] -= 1
                cnts[1] += 1
                mc = mc * (cnts[0] + 1) // cnts[1]
                e += d01
                if e > e_cap:
                    break
        cnts[1] += cnts[0]
        cnts[0] = 0
        for j in range(1, m - 1):
            if cnts[j] > 0:
                t = cnts[j]
                cnts[j] = 0
                cnts[j + 1] += 1
                cnts[0] = t - 1
                break
        else:
            return out


cdef _pair_visit(c0, long min_payload, bint collect, need):
    """Shared complement-pair walk: collects pairs and/or accumulates capacity."""
    cdef Py_ssize_t m = len(c0)
    cdef long[32] c0a, box, cur
    cdef Py_ssize_t i, axis
    cdef long n = 0, rem, c1lim, c0_, c1v
    if m > 32:
        raise ValueError("alphabet too large for the compiled kernel")
    for i in range(m):
        c0a[i] = <long> c0[i]
        n += c0a[i]
    for i in range(m):
        box[i] = 2 * c0a[i] if 2 * c0a[i] < n else n
    pairs = [] if collect else None
    total = 0
    c0t = tuple(c0)

    # odometer over coordinates m-1 .. 2; inner loop over coordinate 1
    for i in range(m):
        cur[i] = 0
    while True:
        rem = n
        for i in range(2, m):
            rem -= cur[i]
        if rem >= 0:
            # inner sweep over c1 with incremental multinomials
            c1lim = box[1] if box[1] < rem else rem
            first = True
            mc = None
            mcb = None
            for c1v in range(0, c1lim + 1):
                c0_ = rem - c1v
                if c0_ > box[0]:
                    continue
                C = (c0_, c1v) + tuple(cur[i] for i in range(2, m))
                Cb = tuple(2 * c0a[i] - C[i] for i in range(m))
                if first:
                    mc = mc_counts(C)
                    mcb = mc_counts(Cb)
                    first = False
                else:
                    mc = mc * (C[0] + 1) // C[1]
                    mcb = mcb * (Cb[1] + 1) // Cb[0]
                if C == c0t:
                    continue
                if C[::-1] >= Cb[::-1]:
                    continue
                pb = mc.bit_length()
                pbb = mcb.bit_length()
                p = (pb if pb < pbb else pbb) - 1
                if p >= min_payload:
                    if collect:
                        pairs.append((C, Cb, p))
                    total += 2 << p
        # advance the outer odometer (coordinates 2 .. m-1, colex)
        axis = 2
        while axis < m:
            if cur[axis] < box[axis]:
                cur[axis] += 1
                break
            cur[axis] = 0
            axis += 1
        if axis == m:
            break
    return pairs, total


def pair_capacity(c0, min_payload):
    """Total pair address space (2 * 2^payload per unordered pair)."""
    _, total = _pair_visit(c0, min_payload, False, None)
    return total


def pair_list(c0, min_payload):
    """All complement pairs (canonical, complement, payload)."""
    pairs, _ = _pair_visit(c0, min_payload, True, None)
    return pairs


def trellis_build(long n, deltas, long width):
    """Cumulative suffix-count table over the energy-offset grid."""
    cdef Py_ssize_t m = len(deltas)
    cdef long[32] d
    cdef Py_ssize_t i, j
    cdef long w, step
    if m > 32:
        raise ValueError("alphabet too large for the compiled kernel")
    for i in range(m):
        d[i] = <long> deltas[i]
    row = [1] * (width + 1)
    table = [row]
    for step in range(n):
        prev = table[len(table) - 1]
        cur = [0] * (width + 1)
        for w in range(width + 1):
            s = 0
            for j in range(m):
                if d[j] > w:
                    break
                s = s + prev[w - d[j]]
            cur[w] = s
        table.append(cur)
    table.reverse()
    return table


def ess_unrank(index, long n, deltas, long width, table):
    """Enumerative decoding within the energy ball (level indices)."""
    cdef Py_ssize_t m = len(deltas)
    cdef long[32] d
    cdef Py_ssize_t i, j
    cdef long w = width
    cdef bint found
    if m > 32:
        raise ValueError("alphabet too large for the compiled kernel")
    for i in range(m):
        d[i] = <long> deltas[i]
    out = []
    for i in range(n):
        nxt = table[i + 1]
        found = False
        for j in range(m):
            if d[j] > w:
                break
            band = nxt[w - d[j]]
            if index < band:
                out.append(j)
                w -= d[j]
                found = True
                break
            index = index - band
        if not found:
            raise ValueError("index out of range for energy ball")
    return out


def ess_rank(seq, long n, deltas, long width, table):
    """Inverse of ess_unrank."""
    cdef Py_ssize_t m = len(deltas)
    cdef long[32] d
    cdef Py_ssize_t i, j
    cdef long w = width, s
    if m > 32:
        raise ValueError("alphabet too large for the compiled kernel")
    for i in range(m):
        d[i] = <long> deltas[i]
    index = 0
    for i in range(len(seq)):
        s = <long> seq[i]
        nxt = table[i + 1]
        for j in range(s):
            if d[j] <= w:
                index = index + nxt[w - d[j]]
        if d[s] > w:
            raise ValueError("sequence exceeds the energy ball")
        w -= d[s]
    return index
