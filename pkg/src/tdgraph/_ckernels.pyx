# cython: language_level=3
"""Compiled query kernels; same classes and semantics as ``_pykernels``."""

from libc.stdint cimport uint8_t, uint64_t, int64_t
from libc.stdlib cimport malloc, free

BACKEND_NAME = "cython"

cdef enum:
    SELECT_SAMPLE_C = 512
    RMQ_BLOCK_C = 16

SELECT_SAMPLE = SELECT_SAMPLE_C
RMQ_BLOCK = RMQ_BLOCK_C

STAT_PAIRS = 0
STAT_RMQ = 1
STAT_INV = 2
STAT_REPORTS = 3

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil


cdef inline int _select_in_word(uint64_t word, int64_t k) noexcept nogil:
    cdef int64_t i
    for i in range(k - 1):
        word &= word - 1
    return __builtin_ctzll(word)


cdef class BitRank:
    cdef const uint64_t[::1] words
    cdef const uint64_t[::1] supers
    cdef const uint64_t[::1] sel0
    cdef const uint64_t[::1] sel1
    cdef readonly int64_t n
    cdef int64_t nsup

    def __init__(self, words, int64_t n, supers, sel0, sel1):
        self.words = words
        self.n = n
        self.supers = supers
        self.sel0 = sel0
        self.sel1 = sel1
        self.nsup = len(supers) - 1

    cdef inline int c_access(self, int64_t i) noexcept nogil:
        return <int>((self.words[i >> 6] >> (i & 63)) & 1)

    cdef inline int64_t c_rank1(self, int64_t i) noexcept nogil:
        cdef int64_t s = i >> 9
        cdef int64_t r = <int64_t>self.supers[s]
        cdef int64_t w = s << 3
        cdef int64_t end = i >> 6
        cdef int off = i & 63
        while w < end:
            r += __builtin_popcountll(self.words[w])
            w += 1
        if off:
            r += __builtin_popcountll(self.words[end] & ((<uint64_t>1 << off) - 1))
        return r

    cdef int64_t c_select1(self, int64_t k) noexcept nogil:
        cdef int64_t idx = (k - 1) // SELECT_SAMPLE_C
        cdef int64_t lo = <int64_t>self.sel1[idx]
        cdef int64_t hi = <int64_t>self.sel1[idx + 1]
        cdef int64_t mid, rem, w, c
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            if <int64_t>self.supers[mid] < k:
                lo = mid
            else:
                hi = mid - 1
        rem = k - <int64_t>self.supers[lo]
        w = lo << 3
        while True:
            c = __builtin_popcountll(self.words[w])
            if rem <= c:
                return (w << 6) + _select_in_word(self.words[w], rem)
            rem -= c
            w += 1

    cdef int64_t c_select0(self, int64_t k) noexcept nogil:
        cdef int64_t idx = (k - 1) // SELECT_SAMPLE_C
        cdef int64_t lo = <int64_t>self.sel0[idx]
        cdef int64_t hi = <int64_t>self.sel0[idx + 1]
        cdef int64_t mid, rem, w, c
        cdef uint64_t inv
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            if (mid << 9) - <int64_t>self.supers[mid] < k:
                lo = mid
            else:
                hi = mid - 1
        rem = k - ((lo << 9) - <int64_t>self.supers[lo])
        w = lo << 3
        while True:
            inv = ~self.words[w]
            c = __builtin_popcountll(inv)
            if rem <= c:
                return (w << 6) + _select_in_word(inv, rem)
            rem -= c
            w += 1

    def access(self, int64_t i):
        return self.c_access(i)

    def rank1(self, int64_t i):
        return self.c_rank1(i)

    def select1(self, int64_t k):
        return self.c_select1(k)

    def select0(self, int64_t k):
        return self.c_select0(k)


cdef class Packed:
    cdef const uint64_t[::1] words
    cdef readonly int width
    cdef uint64_t mask
    cdef readonly int64_t n

    def __init__(self, words, int width, int64_t n):
        self.words = words
        self.width = width
        self.mask = (<uint64_t>1 << width) - 1 if width < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
        self.n = n

    cdef inline int64_t c_get(self, int64_t i) noexcept nogil:
        cdef int w = self.width
        if w == 0:
            return 0
        cdef int64_t bit = i * w
        cdef int64_t q = bit >> 6
        cdef int off = bit & 63
        cdef uint64_t v = self.words[q] >> off
        if off + w > 64:
            v |= self.words[q + 1] << (64 - off)
        return <int64_t>(v & self.mask)

    def get(self, int64_t i):
        return self.c_get(i)


cdef class Wavelet:
    cdef list levels
    cdef int64_t zeros[8]
    cdef int64_t starts[256]
    cdef readonly int nlev
    cdef readonly int64_t n

    def __init__(self, levels, zeros, starts, int64_t n):
        cdef int i
        self.levels = list(levels)
        self.nlev = len(self.levels)
        if self.nlev > 8:
            raise ValueError("alphabet too large for compiled wavelet kernel")
        for i in range(self.nlev):
            self.zeros[i] = zeros[i]
        for i in range(len(starts)):
            self.starts[i] = starts[i]
        self.n = n

    cdef int64_t c_access(self, int64_t i):
        cdef int64_t c = 0, r1
        cdef int lev, b
        cdef BitRank bv
        for lev in range(self.nlev):
            bv = <BitRank>self.levels[lev]
            b = bv.c_access(i)
            c = (c << 1) | b
            r1 = bv.c_rank1(i)
            if b:
                i = self.zeros[lev] + r1
            else:
                i = i - r1
        return c

    cdef int64_t c_rank(self, int64_t c, int64_t i):
        cdef int lev
        cdef int64_t r1
        cdef BitRank bv
        for lev in range(self.nlev):
            bv = <BitRank>self.levels[lev]
            r1 = bv.c_rank1(i)
            if (c >> (self.nlev - 1 - lev)) & 1:
                i = self.zeros[lev] + r1
            else:
                i = i - r1
        return i - self.starts[c]

    cdef int64_t c_select(self, int64_t c, int64_t k):
        cdef int64_t pos = self.starts[c] + k - 1
        cdef int lev
        cdef BitRank bv
        for lev in range(self.nlev - 1, -1, -1):
            bv = <BitRank>self.levels[lev]
            if (c >> (self.nlev - 1 - lev)) & 1:
                pos = bv.c_select1(pos - self.zeros[lev] + 1)
            else:
                pos = bv.c_select0(pos + 1)
        return pos

    def access(self, int64_t i):
        return self.c_access(i)

    def rank(self, int64_t c, int64_t i):
        return self.c_rank(c, i)

    def select(self, int64_t c, int64_t k):
        return self.c_select(c, k)


cdef class Perm:
    cdef Packed fwd
    cdef BitRank marks
    cdef Packed back
    cdef readonly int64_t n

    def __init__(self, Packed fwd, BitRank marks, Packed back, int64_t n):
        self.fwd = fwd
        self.marks = marks
        self.back = back
        self.n = n

    cdef inline int64_t c_apply(self, int64_t i):
        return self.fwd.c_get(i)

    cdef int64_t c_inverse(self, int64_t j, int64_t* steps_out):
        cdef int64_t x = j, y
        cdef bint jumped = False
        cdef int64_t steps = 0
        while True:
            if not jumped and self.marks.c_access(x):
                x = self.back.c_get(self.marks.c_rank1(x))
                jumped = True
                steps += 1
                continue
            y = self.fwd.c_get(x)
            steps += 1
            if y == j:
                break
            x = y
        steps_out[0] += steps
        return x

    def apply(self, int64_t i):
        return self.fwd.c_get(i)

    def inverse(self, int64_t j, int64_t[::1] stats=None):
        cdef int64_t steps = 0
        cdef int64_t x = self.c_inverse(j, &steps)
        if stats is not None:
            stats[<Py_ssize_t>STAT_INV] += steps
        return x


cdef class Reporter:
    cdef Packed lrank
    cdef Packed table
    cdef int64_t nblocks
    cdef readonly int64_t n

    def __init__(self, Packed lrank, Packed table, int64_t nblocks, int64_t n):
        self.lrank = lrank
        self.table = table
        self.nblocks = nblocks
        self.n = n

    cdef int64_t _scan(self, int64_t lo, int64_t hi):
        cdef int64_t best = lo, i, v
        cdef int64_t bv = self.lrank.c_get(lo)
        for i in range(lo + 1, hi + 1):
            v = self.lrank.c_get(i)
            if v < bv:
                best = i
                bv = v
        return best

    cdef int64_t c_argmin(self, int64_t lo, int64_t hi):
        cdef int64_t bl = lo // RMQ_BLOCK_C
        cdef int64_t bh = hi // RMQ_BLOCK_C
        cdef int64_t best, bv, x, y, m1, m2, v1, v2, m, v
        cdef int k
        if bl == bh:
            return self._scan(lo, hi)
        best = self._scan(lo, bl * RMQ_BLOCK_C + RMQ_BLOCK_C - 1)
        bv = self.lrank.c_get(best)
        if bh - bl > 1:
            x = bl + 1
            y = bh - 1
            k = 63 - __builtin_clzll(<unsigned long long>(y - x + 1))
            m1 = self.table.c_get(k * self.nblocks + x)
            m2 = self.table.c_get(k * self.nblocks + y - (<int64_t>1 << k) + 1)
            v1 = self.lrank.c_get(m1)
            v2 = self.lrank.c_get(m2)
            if v1 <= v2:
                m = m1
                v = v1
            else:
                m = m2
                v = v2
            if v < bv:
                best = m
                bv = v
        m = self._scan(bh * RMQ_BLOCK_C, hi)
        if self.lrank.c_get(m) < bv:
            best = m
        return best

    cdef list c_report(self, int64_t a, int64_t c, int64_t* nodes_out):
        cdef list out = []
        cdef int64_t n = self.n
        cdef int64_t lo, hi, m, top
        cdef int64_t* stack
        if a >= n or c <= 0:
            return out
        stack = <int64_t*>malloc(2 * (2 * n + 4) * sizeof(int64_t))
        if stack == NULL:
            raise MemoryError()
        try:
            top = 0
            stack[0] = a
            stack[1] = n - 1
            top = 1
            while top > 0:
                top -= 1
                lo = stack[2 * top]
                hi = stack[2 * top + 1]
                if lo > hi:
                    continue
                nodes_out[0] += 1
                m = self.c_argmin(lo, hi)
                if self.lrank.c_get(m) >= c:
                    continue
                out.append(m)
                stack[2 * top] = m + 1
                stack[2 * top + 1] = hi
                stack[2 * top + 2] = lo
                stack[2 * top + 3] = m - 1
                top += 2
        finally:
            free(stack)
        return out

    def argmin(self, int64_t lo, int64_t hi):
        return self.c_argmin(lo, hi)

    def report(self, int64_t a, int64_t c, int64_t[::1] stats=None):
        cdef int64_t nodes = 0
        out = self.c_report(a, c, &nodes)
        if stats is not None:
            stats[STAT_RMQ] += nodes
        return out


cdef class GraphCore:
    cdef readonly int64_t n
    cdef readonly int t
    cdef readonly int d
    cdef list seqs
    cdef list pis
    cdef list rhos
    cdef list reporters
    cdef readonly int64_t real_end

    def __init__(self, int64_t n, int t, int d, seqs, pis, rhos, reporters, int64_t real_end):
        self.n = n
        self.t = t
        self.d = d
        self.seqs = list(seqs)
        self.pis = list(pis)
        self.rhos = list(rhos)
        self.reporters = list(reporters)
        self.real_end = real_end

    cdef inline int64_t c_left(self, int64_t v, int p, int j):
        if p == 0 and j == 0:
            return (<Wavelet>self.seqs[0]).c_select(0, v + 1)
        return (<Wavelet>self.seqs[j]).c_select(
            2 * p, (<Perm>self.pis[p * self.d + j]).c_apply(v) + 1)

    cdef inline int64_t c_right(self, int64_t v, int p, int j):
        return (<Wavelet>self.seqs[j]).c_select(
            2 * p + 1, (<Perm>self.rhos[p * self.d + j]).c_apply(v) + 1)

    cdef bint _boxes_meet(self, int64_t u, int p, int64_t v, int q):
        cdef int j
        for j in range(1, self.d):
            if self.c_left(u, p, j) > self.c_right(v, q, j):
                return False
            if self.c_left(v, q, j) > self.c_right(u, p, j):
                return False
        return True

    cdef bint c_adj(self, int64_t u, int64_t v, int64_t* checks_out):
        cdef int p = 0, q = 0
        cdef int64_t lu, ru, lv, rv
        cdef int64_t checks = 0
        cdef bint found = False
        if u == v:
            return True
        lu = self.c_left(u, 0, 0)
        ru = self.c_right(u, 0, 0)
        lv = self.c_left(v, 0, 0)
        rv = self.c_right(v, 0, 0)
        while True:
            checks += 1
            if lu <= rv and lv <= ru and self._boxes_meet(u, p, v, q):
                found = True
                break
            if ru < rv:
                p += 1
                if p == self.t:
                    break
                lu = self.c_left(u, p, 0)
                ru = self.c_right(u, p, 0)
            else:
                q += 1
                if q == self.t:
                    break
                lv = self.c_left(v, q, 0)
                rv = self.c_right(v, q, 0)
        checks_out[0] += checks
        return found

    def left(self, int64_t v, int p, int j):
        return self.c_left(v, p, j)

    def right(self, int64_t v, int p, int j):
        return self.c_right(v, p, j)

    def adj(self, int64_t u, int64_t v, int64_t[::1] stats=None):
        cdef int64_t checks = 0
        cdef bint r = self.c_adj(u, v, &checks)
        if stats is not None:
            stats[STAT_PAIRS] += checks
        return r

    def adj_row(self, int64_t u, uint8_t[::1] row, int64_t[::1] checks):
        """row[v] = adj(u, v) and checks[v] = pairs examined, for every v."""
        cdef int64_t v, c
        for v in range(self.n):
            c = 0
            row[v] = self.c_adj(u, v, &c)
            checks[v] = c

    def neighbors_naive(self, int64_t u, int64_t[::1] stats=None):
        cdef int64_t checks = 0
        cdef int64_t v
        cdef list out = []
        for v in range(self.n):
            if v != u and self.c_adj(u, v, &checks):
                out.append(v)
        if stats is not None:
            stats[STAT_PAIRS] += checks
        return out

    def neighbors_fast(self, int64_t u, int64_t[::1] marker, int64_t stamp,
                       int64_t[::1] stats=None):
        cdef list out = []
        cdef Wavelet s1 = <Wavelet>self.seqs[0]
        cdef int p, q
        cdef int64_t lo, hi, a, c, m, v
        cdef int64_t nodes = 0, steps = 0, reports = 0
        cdef Perm rho
        cdef list hits
        for p in range(self.t):
            lo = self.c_left(u, p, 0)
            if lo >= self.real_end:
                continue
            hi = self.c_right(u, p, 0)
            for q in range(self.t):
                a = s1.c_rank(2 * q + 1, lo)
                c = s1.c_rank(2 * q, hi + 1)
                rho = <Perm>self.rhos[q]
                hits = (<Reporter>self.reporters[q]).c_report(a, c, &nodes)
                for m in hits:
                    reports += 1
                    v = rho.c_inverse(m, &steps)
                    if v != u and marker[v] != stamp:
                        marker[v] = stamp
                        out.append(v)
        if stats is not None:
            stats[STAT_RMQ] += nodes
            stats[<Py_ssize_t>STAT_INV] += steps
            stats[STAT_REPORTS] += reports
        return out
