# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled steady-state GA loop and Walsh kernel.

Mirrors the pure-Python engine draw for draw: every random decision goes
through the same primitives on the same PCG64 stream, so both backends return
identical results for a given seed.
"""

from cpython.pycapsule cimport PyCapsule_GetPointer, PyCapsule_IsValid
from libc.math cimport sqrt
from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t
from libc.string cimport memcpy, memset
from numpy.random cimport bitgen_t

import numpy as np

cdef uint64_t U64_MAX = 0xFFFFFFFFFFFFFFFFULL
cdef double INV53 = 1.0 / 9007199254740992.0

cdef enum:
    OP = 0
    CB = 1
    ZL = 2
    MOO = 3

cdef enum:
    BAL_NL = 0
    BENT = 1
    BIN_OA = 2


# -- random primitives ----------------------------------------------------

cdef inline uint64_t _next(bitgen_t* g) noexcept nogil:
    return g.next_uint64(g.state)


cdef inline int _coin(bitgen_t* g) noexcept nogil:
    return <int>(_next(g) >> 63)


cdef inline uint64_t _below(bitgen_t* g, uint64_t n) noexcept nogil:
    cdef uint64_t rem, r
    if n <= 1:
        return 0
    rem = (U64_MAX % n + 1) % n
    while True:
        r = _next(g)
        if rem == 0 or r < (<uint64_t>0) - rem:
            return r % n


cdef inline double _random(bitgen_t* g) noexcept nogil:
    return (_next(g) >> 11) * INV53


cdef inline void _permutation(bitgen_t* g, int32_t* perm, int n) noexcept nogil:
    cdef int i, j, tmp
    for i in range(n):
        perm[i] = i
    for i in range(n - 1, 0, -1):
        j = <int>_below(g, i + 1)
        tmp = perm[i]
        perm[i] = perm[j]
        perm[j] = tmp


# -- operators ------------------------------------------------------------

cdef void _random_balanced(bitgen_t* g, uint8_t* out, int n, int k) noexcept nogil:
    cdef int i, ones = 0, zeros = 0, b
    memset(out, 0, n)
    for i in range(n):
        if ones == k:
            break
        if zeros == n - k:
            out[i] = 1
            continue
        b = _coin(g)
        out[i] = b
        if b:
            ones += 1
        else:
            zeros += 1


cdef void _one_point(bitgen_t* g, uint8_t* p1, uint8_t* p2, uint8_t* c, int n) noexcept nogil:
    cdef int cut = 1 + <int>_below(g, n - 1)
    if _coin(g):
        memcpy(c, p2, cut)
        memcpy(c + cut, p1 + cut, n - cut)
    else:
        memcpy(c, p1, cut)
        memcpy(c + cut, p2 + cut, n - cut)


cdef void _counter(bitgen_t* g, uint8_t* p1, uint8_t* p2, uint8_t* c, int n, int k) noexcept nogil:
    cdef int i, ones = 0, zeros = 0
    cdef uint8_t b
    for i in range(n):
        if ones == k:
            c[i] = 0
        elif zeros == n - k:
            c[i] = 1
        else:
            b = p2[i] if _coin(g) else p1[i]
            c[i] = b
            if b:
                ones += 1
            else:
                zeros += 1


cdef void _zero_lengths_of(uint8_t* x, int n, int32_t* runs) noexcept nogil:
    cdef int i, j = 0
    runs[0] = 0
    for i in range(n):
        if x[i]:
            j += 1
            runs[j] = 0
        else:
            runs[j] += 1


cdef void _zero_lengths(bitgen_t* g, uint8_t* p1, uint8_t* p2, uint8_t* c, int n, int k,
                        int32_t* r1, int32_t* r2, int32_t* rc) noexcept nogil:
    cdef int i, j, pos, v, sumz = 0, quota = n - k
    _zero_lengths_of(p1, n, r1)
    _zero_lengths_of(p2, n, r2)
    for i in range(k):
        if sumz == quota:
            rc[i] = 0
            continue
        v = r2[i] if _coin(g) else r1[i]
        if sumz + v <= quota:
            rc[i] = v
            sumz += v
        else:
            rc[i] = quota - sumz
            sumz = quota
    rc[k] = quota - sumz
    memset(c, 0, n)
    pos = 0
    for i in range(k):
        pos += rc[i]
        c[pos] = 1
        pos += 1


cdef void _map_of_ones(bitgen_t* g, uint8_t* p1, uint8_t* p2, uint8_t* c, int n,
                       int32_t* a, int32_t* b, int32_t* loc_a, int32_t* loc_b) noexcept nogil:
    cdef int i, na = 0, nb = 0, k, idx, v, j, moved
    cdef bint from_b
    for i in range(n):
        if p1[i]:
            a[na] = i
            loc_a[i] = na
            na += 1
        else:
            loc_a[i] = -1
        if p2[i]:
            b[nb] = i
            loc_b[i] = nb
            nb += 1
        else:
            loc_b[i] = -1
    k = na
    memset(c, 0, n)
    for i in range(k):
        from_b = _coin(g)
        if from_b:
            idx = <int>_below(g, nb)
            v = b[idx]
            nb -= 1
            moved = b[nb]
            b[idx] = moved
            loc_b[moved] = idx
            loc_b[v] = -1
            j = loc_a[v]
            if j >= 0:
                na -= 1
                moved = a[na]
                a[j] = moved
                loc_a[moved] = j
                loc_a[v] = -1
        else:
            idx = <int>_below(g, na)
            v = a[idx]
            na -= 1
            moved = a[na]
            a[idx] = moved
            loc_a[moved] = idx
            loc_a[v] = -1
            j = loc_b[v]
            if j >= 0:
                nb -= 1
                moved = b[nb]
                b[j] = moved
                loc_b[moved] = j
                loc_b[v] = -1
        c[v] = 1


cdef void _swap_mutation(bitgen_t* g, uint8_t* x, int n, double pm) noexcept nogil:
    cdef int i, k = 0, r1, r0, i1 = -1, i0 = -1
    if not (_random(g) < pm):
        return
    for i in range(n):
        k += x[i]
    if k == 0 or k == n:
        return
    r1 = <int>_below(g, k)
    r0 = <int>_below(g, n - k)
    for i in range(n):
        if x[i]:
            if r1 == 0:
                i1 = i
            r1 -= 1
        else:
            if r0 == 0:
                i0 = i
            r0 -= 1
    x[i1] = 0
    x[i0] = 1


cdef void _bit_flip(bitgen_t* g, uint8_t* x, int n, double pm) noexcept nogil:
    if _random(g) < pm:
        x[_below(g, n)] ^= 1


# -- fitness --------------------------------------------------------------

cdef void _fwht(uint8_t* tt, int32_t* w, int n) noexcept nogil:
    cdef int i, j, h = 1
    cdef int32_t u, v
    for i in range(n):
        w[i] = 1 - 2 * tt[i]
    while h < n:
        i = 0
        while i < n:
            for j in range(i, i + h):
                u = w[j]
                v = w[j + h]
                w[j] = u + v
                w[j + h] = u - v
            i += 2 * h
        h *= 2


cdef double _boolfn_fitness(uint8_t* tt, int32_t* w, int n, int weight, bint penalized) noexcept nogil:
    cdef int i, wmax = 0, a, ones = 0, pen
    _fwht(tt, w, n)
    for i in range(n):
        a = w[i] if w[i] >= 0 else -w[i]
        if a > wmax:
            wmax = a
    cdef int nl = n // 2 - wmax // 2
    if not penalized:
        return nl
    for i in range(n):
        ones += tt[i]
    pen = weight - ones
    if pen < 0:
        pen = -pen
    return nl - pen


cdef double _oa_fitness(uint8_t* cols, int ncols, int n, int32_t* subsets, int nsub, int t,
                        int lam, int32_t* counts, bint penalized) noexcept nogil:
    cdef int s, j, row, idx, ntup = 1 << t, ones, d
    cdef int64_t sq
    cdef double total = 0.0
    for s in range(nsub):
        memset(counts, 0, ntup * sizeof(int32_t))
        for row in range(n):
            idx = 0
            for j in range(t):
                idx = (idx << 1) | cols[subsets[s * t + j] * n + row]
            counts[idx] += 1
        sq = 0
        for j in range(ntup):
            d = lam - counts[j]
            sq += d * d
        total += sqrt(<double>sq)
    if penalized:
        sq = 0
        for j in range(ncols):
            ones = 0
            for row in range(n):
                ones += cols[j * n + row]
            d = n // 2 - ones
            sq += d if d >= 0 else -d
        total += <double>sq
    return total


# -- public entry points --------------------------------------------------

def walsh_spectrum(tt):
    """Integer Walsh spectrum of a 0/1 truth table (uint8 array)."""
    cdef uint8_t[::1] t = np.ascontiguousarray(tt, dtype=np.uint8)
    cdef int n = t.shape[0]
    if n < 1 or n & (n - 1):
        raise ValueError(f"truth table length {n} is not a power of two")
    out = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] w = out
    with nogil:
        _fwht(&t[0], &w[0], n)
    return out


cdef bitgen_t* _bitgen(object bit_generator) except NULL:
    capsule = bit_generator.capsule
    if not PyCapsule_IsValid(capsule, "BitGenerator"):
        raise ValueError("invalid bit generator")
    return <bitgen_t*>PyCapsule_GetPointer(capsule, "BitGenerator")


cdef class _Run:
    cdef bitgen_t* g
    cdef int kind, tag, P, tsize, ncols, n, weight, lam, t, nsub
    cdef bint shuffled, penalized, maximize
    cdef double pm
    cdef uint8_t[:, :, ::1] pop
    cdef double[::1] fit
    cdef uint8_t[:, ::1] child, s1, s2, sc, best
    cdef int32_t[::1] idx, perm, w, r1, r2, rc, a, b, loc_a, loc_b, counts
    cdef int32_t[:, ::1] subsets
    cdef long evals, to_best
    cdef double best_fit

    cdef inline bint better(self, double x, double y) noexcept nogil:
        return x > y if self.maximize else x < y

    cdef double evaluate(self, uint8_t* cols) noexcept nogil:
        if self.kind == BIN_OA:
            return _oa_fitness(cols, self.ncols, self.n, &self.subsets[0, 0], self.nsub, self.t,
                               self.lam, &self.counts[0], self.penalized)
        return _boolfn_fitness(cols, &self.w[0], self.n, self.weight, self.penalized)

    cdef void observe(self, uint8_t* cols, double f) noexcept nogil:
        self.evals += 1
        if self.evals == 1 or self.better(f, self.best_fit):
            self.best_fit = f
            self.to_best = self.evals
            memcpy(&self.best[0, 0], cols, self.ncols * self.n)

    cdef void cross(self, uint8_t* p1, uint8_t* p2, uint8_t* c) noexcept nogil:
        cdef int i, n = self.n
        cdef uint8_t* q1 = p1
        cdef uint8_t* q2 = p2
        cdef uint8_t* out = c
        if self.tag == OP:
            _one_point(self.g, p1, p2, c, n)
            return
        if self.shuffled:
            _permutation(self.g, &self.perm[0], n)
            for i in range(n):
                self.s1[0, i] = p1[self.perm[i]]
                self.s2[0, i] = p2[self.perm[i]]
            q1 = &self.s1[0, 0]
            q2 = &self.s2[0, 0]
            out = &self.sc[0, 0]
        if self.tag == CB:
            _counter(self.g, q1, q2, out, n, self.weight)
        elif self.tag == ZL:
            _zero_lengths(self.g, q1, q2, out, n, self.weight,
                          &self.r1[0], &self.r2[0], &self.rc[0])
        else:
            _map_of_ones(self.g, q1, q2, out, n,
                         &self.a[0], &self.b[0], &self.loc_a[0], &self.loc_b[0])
        if self.shuffled:
            for i in range(n):
                c[self.perm[i]] = out[i]

    cdef void init_population(self) noexcept nogil:
        cdef int i, c, j
        cdef uint8_t* x
        for i in range(self.P):
            for c in range(self.ncols):
                x = &self.pop[i, c, 0]
                if self.tag == OP:
                    for j in range(self.n):
                        x[j] = _coin(self.g)
                else:
                    _random_balanced(self.g, x, self.n, self.weight)
            self.fit[i] = self.evaluate(&self.pop[i, 0, 0])
            self.observe(&self.pop[i, 0, 0], self.fit[i])

    cdef void step(self) noexcept nogil:
        cdef int i, j, x, c, P = self.P, ts = self.tsize, elite
        cdef double f
        for i in range(P):
            self.idx[i] = i
        for i in range(ts):
            j = i + <int>_below(self.g, P - i)
            x = self.idx[i]
            self.idx[i] = self.idx[j]
            self.idx[j] = x
        # stable insertion sort of the sample, best first
        for i in range(1, ts):
            x = self.idx[i]
            j = i - 1
            while j >= 0 and self.better(self.fit[x], self.fit[self.idx[j]]):
                self.idx[j + 1] = self.idx[j]
                j -= 1
            self.idx[j + 1] = x
        cdef int i1 = self.idx[0], i2 = self.idx[1]
        for c in range(self.ncols):
            self.cross(&self.pop[i1, c, 0], &self.pop[i2, c, 0], &self.child[c, 0])
        for c in range(self.ncols):
            if self.tag == OP:
                _bit_flip(self.g, &self.child[c, 0], self.n, self.pm)
            else:
                _swap_mutation(self.g, &self.child[c, 0], self.n, self.pm)
        f = self.evaluate(&self.child[0, 0])
        if self.better(f, self.fit[i1]) and self.better(f, self.fit[i2]):
            elite = 0
            for i in range(1, P):
                if self.better(self.fit[i], self.fit[elite]):
                    elite = i
            j = <int>_below(self.g, P - 1)
            if j >= elite:
                j += 1
            memcpy(&self.pop[j, 0, 0], &self.child[0, 0], self.ncols * self.n)
            self.fit[j] = f
        self.observe(&self.child[0, 0], f)


def run_ga(str kind, int nvars, int ncols, int weight, int lam, subsets, str tag,
           bint shuffled, bint penalized, int population_size, int tournament_size,
           double mutation_prob, long max_evaluations, bit_generator):
    """Full run; returns (best fitness, best columns, evaluations to best, evaluations)."""
    cdef _Run r = _Run()
    cdef int n = 1 << nvars
    r.g = _bitgen(bit_generator)
    r.kind = {"balnl": BAL_NL, "bent": BENT, "oa": BIN_OA}[kind]
    r.tag = {"op": OP, "cb": CB, "zl": ZL, "moo": MOO}[tag]
    r.shuffled = shuffled
    r.penalized = penalized
    r.maximize = r.kind != BIN_OA
    r.P = population_size
    r.tsize = tournament_size
    r.pm = mutation_prob
    r.ncols = ncols
    r.n = n
    r.weight = weight
    r.lam = lam
    r.subsets = np.ascontiguousarray(subsets, dtype=np.int32)
    r.nsub = r.subsets.shape[0]
    r.t = r.subsets.shape[1]
    r.pop = np.zeros((r.P, ncols, n), dtype=np.uint8)
    r.fit = np.zeros(r.P, dtype=np.float64)
    r.child = np.zeros((ncols, n), dtype=np.uint8)
    r.best = np.zeros((ncols, n), dtype=np.uint8)
    r.s1 = np.zeros((1, n), dtype=np.uint8)
    r.s2 = np.zeros((1, n), dtype=np.uint8)
    r.sc = np.zeros((1, n), dtype=np.uint8)
    r.idx = np.zeros(r.P, dtype=np.int32)
    r.perm = np.zeros(n, dtype=np.int32)
    r.w = np.zeros(n, dtype=np.int32)
    r.a = np.zeros(n, dtype=np.int32)
    r.b = np.zeros(n, dtype=np.int32)
    r.loc_a = np.zeros(n, dtype=np.int32)
    r.loc_b = np.zeros(n, dtype=np.int32)
    r.r1 = np.zeros(n + 1, dtype=np.int32)
    r.r2 = np.zeros(n + 1, dtype=np.int32)
    r.rc = np.zeros(n + 1, dtype=np.int32)
    r.counts = np.zeros(1 << r.t, dtype=np.int32)
    r.evals = 0
    r.to_best = 0
    with nogil:
        r.init_population()
        while r.evals < max_evaluations:
            r.step()
    return r.best_fit, np.asarray(r.best).copy(), r.to_best, r.evals
