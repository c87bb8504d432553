"""Pure-Python query kernels.

Operation-for-operation mirror of ``_ckernels.pyx``; used when the compiled
extension is unavailable or when ``TDGRAPH_PURE_PYTHON=1``. All positions,
ranks and vertex ids here are 0-based; the public layer converts.

Statistics are accumulated into a caller-owned integer array indexed by the
``STAT_*`` constants.
"""

BACKEND_NAME = "python"

SUPER_WORDS = 8  # words per rank superblock (512 bits)
SELECT_SAMPLE = 512  # one select sample per this many ones/zeros
RMQ_BLOCK = 16

STAT_PAIRS = 0
STAT_RMQ = 1
STAT_INV = 2
STAT_REPORTS = 3


def _select_in_word(word, k):
    # position of the k-th (1-based) set bit of a 64-bit word
    for _ in range(k - 1):
        word &= word - 1
    return (word & -word).bit_length() - 1


_MASK64 = (1 << 64) - 1


class BitRank:
    """Rank/select over a packed bit array with a precomputed index."""

    __slots__ = ("words", "n", "supers", "sel0", "sel1", "nsup")

    def __init__(self, words, n, supers, sel0, sel1):
        self.words = [int(w) for w in words]
        self.n = n
        self.supers = [int(s) for s in supers]
        self.sel0 = [int(s) for s in sel0]
        self.sel1 = [int(s) for s in sel1]
        self.nsup = len(self.supers) - 1

    def access(self, i):
        return (self.words[i >> 6] >> (i & 63)) & 1

    def rank1(self, i):
        """Number of ones in positions [0, i)."""
        s = i >> 9
        r = self.supers[s]
        words = self.words
        w = s << 3
        end = i >> 6
        while w < end:
            r += words[w].bit_count()
            w += 1
        off = i & 63
        if off:
            r += (words[end] & ((1 << off) - 1)).bit_count()
        return r

    def select1(self, k):
        """Position of the k-th one (k >= 1)."""
        supers = self.supers
        idx = (k - 1) // SELECT_SAMPLE
        lo = self.sel1[idx]
        hi = self.sel1[idx + 1]
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            if supers[mid] < k:
                lo = mid
            else:
                hi = mid - 1
        rem = k - supers[lo]
        w = lo << 3
        words = self.words
        while True:
            c = words[w].bit_count()
            if rem <= c:
                return (w << 6) + _select_in_word(words[w], rem)
            rem -= c
            w += 1

    def select0(self, k):
        """Position of the k-th zero (k >= 1)."""
        supers = self.supers
        idx = (k - 1) // SELECT_SAMPLE
        lo = self.sel0[idx]
        hi = self.sel0[idx + 1]
        while lo < hi:
            mid = (lo + hi + 1) >> 1
            if (mid << 9) - supers[mid] < k:
                lo = mid
            else:
                hi = mid - 1
        rem = k - ((lo << 9) - supers[lo])
        w = lo << 3
        words = self.words
        while True:
            inv = ~words[w] & _MASK64
            c = inv.bit_count()
            if rem <= c:
                return (w << 6) + _select_in_word(inv, rem)
            rem -= c
            w += 1


class Packed:
    """Fixed-width unsigned integers packed into 64-bit words."""

    __slots__ = ("words", "width", "mask", "n")

    def __init__(self, words, width, n):
        self.words = [int(w) for w in words]
        self.width = width
        self.mask = (1 << width) - 1
        self.n = n

    def get(self, i):
        w = self.width
        if w == 0:
            return 0
        bit = i * w
        q = bit >> 6
        off = bit & 63
        v = self.words[q] >> off
        if off + w > 64:
            v |= self.words[q + 1] << (64 - off)
        return v & self.mask


class Wavelet:
    """Wavelet matrix over a small integer alphabet."""

    __slots__ = ("levels", "zeros", "nlev", "starts", "n")

    def __init__(self, levels, zeros, starts, n):
        self.levels = list(levels)
        self.zeros = [int(z) for z in zeros]
        self.nlev = len(self.levels)
        self.starts = [int(s) for s in starts]
        self.n = n

    def access(self, i):
        c = 0
        for lev in range(self.nlev):
            bv = self.levels[lev]
            b = bv.access(i)
            c = (c << 1) | b
            r1 = bv.rank1(i)
            i = self.zeros[lev] + r1 if b else i - r1
        return c

    def rank(self, c, i):
        """Occurrences of symbol c in positions [0, i)."""
        nlev = self.nlev
        for lev in range(nlev):
            bv = self.levels[lev]
            r1 = bv.rank1(i)
            if (c >> (nlev - 1 - lev)) & 1:
                i = self.zeros[lev] + r1
            else:
                i = i - r1
        return i - self.starts[c]

    def select(self, c, k):
        """Position of the k-th occurrence of c (k >= 1)."""
        pos = self.starts[c] + k - 1
        nlev = self.nlev
        for lev in range(nlev - 1, -1, -1):
            bv = self.levels[lev]
            if (c >> (nlev - 1 - lev)) & 1:
                pos = bv.select1(pos - self.zeros[lev] + 1)
            else:
                pos = bv.select0(pos + 1)
        return pos


class Perm:
    """Forward array plus sampled cycle back-pointers."""

    __slots__ = ("fwd", "marks", "back", "n")

    def __init__(self, fwd, marks, back, n):
        self.fwd = fwd
        self.marks = marks
        self.back = back
        self.n = n

    def apply(self, i):
        return self.fwd.get(i)

    def inverse(self, j, stats=None):
        fwd = self.fwd
        marks = self.marks
        x = j
        jumped = False
        steps = 0
        while True:
            if not jumped and marks.access(x):
                x = self.back.get(marks.rank1(x))
                jumped = True
                steps += 1
                continue
            y = fwd.get(x)
            steps += 1
            if y == j:
                break
            x = y
        if stats is not None:
            stats[STAT_INV] += steps
        return x


class Reporter:
    """Range-minimum reporting over left ranks indexed by right rank."""

    __slots__ = ("lrank", "table", "nblocks", "n")

    def __init__(self, lrank, table, nblocks, n):
        self.lrank = lrank
        self.table = table
        self.nblocks = nblocks
        self.n = n

    def _scan(self, lo, hi):
        get = self.lrank.get
        best = lo
        bv = get(lo)
        for i in range(lo + 1, hi + 1):
            v = get(i)
            if v < bv:
                best, bv = i, v
        return best

    def argmin(self, lo, hi):
        bl = lo // RMQ_BLOCK
        bh = hi // RMQ_BLOCK
        if bl == bh:
            return self._scan(lo, hi)
        get = self.lrank.get
        best = self._scan(lo, bl * RMQ_BLOCK + RMQ_BLOCK - 1)
        bv = get(best)
        if bh - bl > 1:
            x, y = bl + 1, bh - 1
            k = (y - x + 1).bit_length() - 1
            nb = self.nblocks
            m1 = self.table.get(k * nb + x)
            m2 = self.table.get(k * nb + y - (1 << k) + 1)
            v1, v2 = get(m1), get(m2)
            m, v = (m1, v1) if v1 <= v2 else (m2, v2)
            if v < bv:
                best, bv = m, v
        m = self._scan(bh * RMQ_BLOCK, hi)
        if get(m) < bv:
            best = m
        return best

    def report(self, a, c, stats=None):
        """Right ranks m in [a, n) whose left rank is < c."""
        out = []
        n = self.n
        if a >= n or c <= 0:
            return out
        get = self.lrank.get
        nodes = 0
        stack = [(a, n - 1)]
        while stack:
            lo, hi = stack.pop()
            if lo > hi:
                continue
            nodes += 1
            m = self.argmin(lo, hi)
            if get(m) >= c:
                continue
            out.append(m)
            stack.append((m + 1, hi))
            stack.append((lo, m - 1))
        if stats is not None:
            stats[STAT_RMQ] += nodes
        return out


class GraphCore:
    """Query kernels over the encoded sequences and permutations."""

    __slots__ = ("n", "t", "d", "seqs", "pis", "rhos", "reporters", "real_end")

    def __init__(self, n, t, d, seqs, pis, rhos, reporters, real_end):
        self.n = n
        self.t = t
        self.d = d
        self.seqs = list(seqs)
        self.pis = list(pis)
        self.rhos = list(rhos)
        self.reporters = list(reporters)
        self.real_end = real_end

    def left(self, v, p, j):
        if p == 0 and j == 0:
            return self.seqs[0].select(0, v + 1)
        return self.seqs[j].select(2 * p, self.pis[p * self.d + j].apply(v) + 1)

    def right(self, v, p, j):
        return self.seqs[j].select(2 * p + 1, self.rhos[p * self.d + j].apply(v) + 1)

    def _boxes_meet(self, u, p, v, q):
        for j in range(1, self.d):
            if self.left(u, p, j) > self.right(v, q, j):
                return False
            if self.left(v, q, j) > self.right(u, p, j):
                return False
        return True

    def adj(self, u, v, stats=None):
        if u == v:
            return True
        t = self.t
        p = q = 0
        lu, ru = self.left(u, 0, 0), self.right(u, 0, 0)
        lv, rv = self.left(v, 0, 0), self.right(v, 0, 0)
        checks = 0
        found = False
        while True:
            checks += 1
            if lu <= rv and lv <= ru and self._boxes_meet(u, p, v, q):
                found = True
                break
            if ru < rv:
                p += 1
                if p == t:
                    break
                lu, ru = self.left(u, p, 0), self.right(u, p, 0)
            else:
                q += 1
                if q == t:
                    break
                lv, rv = self.left(v, q, 0), self.right(v, q, 0)
        if stats is not None:
            stats[STAT_PAIRS] += checks
        return found

    def adj_row(self, u, row, checks):
        """row[v] = adj(u, v) and checks[v] = pairs examined, for every v."""
        st = [0, 0, 0, 0]
        for v in range(self.n):
            st[STAT_PAIRS] = 0
            row[v] = self.adj(u, v, st)
            checks[v] = st[STAT_PAIRS]

    def neighbors_naive(self, u, stats=None):
        return [v for v in range(self.n) if v != u and self.adj(u, v, stats)]

    def neighbors_fast(self, u, marker, stamp, stats=None):
        out = []
        s1 = self.seqs[0]
        t = self.t
        reports = 0
        for p in range(t):
            lo = self.left(u, p, 0)
            if lo >= self.real_end:
                continue
            hi = self.right(u, p, 0)
            for q in range(t):
                a = s1.rank(2 * q + 1, lo)
                c = s1.rank(2 * q, hi + 1)
                rho = self.rhos[q]
                for m in self.reporters[q].report(a, c, stats):
                    reports += 1
                    v = rho.inverse(m, stats)
                    if v != u and marker[v] != stamp:
                        marker[v] = stamp
                        out.append(v)
        if stats is not None:
            stats[STAT_REPORTS] += reports
        return out
