# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled collector.  Same interface and results as ``_collect_py``."""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    MAXN = 64


cdef class Collector:
    cdef readonly int p
    cdef readonly int n
    cdef readonly object identity
    cdef int *letters
    cdef int *woff
    cdef int nwords
    # stack frames: word id, position, remaining repetitions
    cdef int *fw
    cdef int *fpos
    cdef int *freps
    cdef int cap

    backend = "cython"

    def __cinit__(self, int p, int n, power, conj):
        if n > MAXN:
            raise ValueError("too many generators for the compiled collector")
        self.p = p
        self.n = n
        self.identity = (0,) * n
        # word ids: [0, n) power words, [n, n + n*n) conjugate words (i, j),
        # [n + n*n, n + n*n + n) single letters
        self.nwords = n + n * n + n
        words = []
        for i in range(n):
            words.append(_letters(power[i]))
        for i in range(n):
            for j in range(n):
                w = conj.get((i, j)) if i < j else None
                words.append(_letters(w) if w is not None else [j])
        for j in range(n):
            words.append([j])
        total = sum(len(w) for w in words)
        self.letters = <int *> malloc(max(total, 1) * sizeof(int))
        self.woff = <int *> malloc((self.nwords + 1) * sizeof(int))
        cdef int pos = 0, k
        for k in range(self.nwords):
            self.woff[k] = pos
            for g in words[k]:
                self.letters[pos] = g
                pos += 1
        self.woff[self.nwords] = pos
        self.cap = 1024
        self.fw = <int *> malloc(self.cap * sizeof(int))
        self.fpos = <int *> malloc(self.cap * sizeof(int))
        self.freps = <int *> malloc(self.cap * sizeof(int))
        if not (self.letters and self.woff and self.fw and self.fpos and self.freps):
            raise MemoryError()

    def __dealloc__(self):
        free(self.letters)
        free(self.woff)
        free(self.fw)
        free(self.fpos)
        free(self.freps)

    cdef int _grow(self) except -1:
        cdef int newcap = self.cap * 2
        cdef int *a = <int *> realloc(self.fw, newcap * sizeof(int))
        if not a:
            raise MemoryError()
        self.fw = a
        a = <int *> realloc(self.fpos, newcap * sizeof(int))
        if not a:
            raise MemoryError()
        self.fpos = a
        a = <int *> realloc(self.freps, newcap * sizeof(int))
        if not a:
            raise MemoryError()
        self.freps = a
        self.cap = newcap
        return 0

    cdef inline int _push(self, int sp, int w, int reps) except -1:
        if sp >= self.cap:
            self._grow()
        self.fw[sp] = w
        self.fpos[sp] = 0
        self.freps[sp] = reps
        return sp + 1

    cdef int _run(self, int *ev, int sp) except -1:
        cdef int p = self.p, n = self.n
        cdef int top, w, pos, g, k, e
        cdef int conj_base = n
        while sp > 0:
            top = sp - 1
            w = self.fw[top]
            pos = self.fpos[top]
            if pos == self.woff[w + 1] - self.woff[w]:
                if self.freps[top] > 1:
                    self.freps[top] -= 1
                    self.fpos[top] = 0
                else:
                    sp -= 1
                continue
            self.fpos[top] = pos + 1
            g = self.letters[self.woff[w] + pos]
            k = n - 1
            while k > g:
                e = ev[k]
                if e:
                    ev[k] = 0
                    sp = self._push(sp, conj_base + g * n + k, e)
                k -= 1
            e = ev[g] + 1
            if e == p:
                ev[g] = 0
                if self.woff[g + 1] > self.woff[g]:
                    sp = self._push(sp, g, 1)
            else:
                ev[g] = e
        return 0

    cdef int _mul_into(self, int *ev, int *b) except -1:
        cdef int sp = 0, j
        cdef int single = self.n + self.n * self.n
        j = self.n - 1
        while j >= 0:
            if b[j]:
                sp = self._push(sp, single + j, b[j])
            j -= 1
        self._run(ev, sp)
        return 0

    cdef int _gen_into(self, int *ev, int g, int e) except -1:
        if e:
            self._run(ev, self._push(0, self.n + self.n * self.n + g, e))
        return 0

    cdef int _inv_into(self, int *a, int *y) except -1:
        # y <- a^-1, a is destroyed
        cdef int i, e
        for i in range(self.n):
            y[i] = 0
        for i in range(self.n):
            if a[i]:
                e = self.p - a[i]
                self._gen_into(a, i, e)
                self._gen_into(y, i, e)
        return 0

    def mul(self, a, b):
        cdef int ev[MAXN]
        cdef int bv[MAXN]
        _load(ev, a, self.n)
        _load(bv, b, self.n)
        self._mul_into(ev, bv)
        return _store(ev, self.n)

    def mul_gen(self, a, int g, int e=1):
        cdef int ev[MAXN]
        _load(ev, a, self.n)
        self._gen_into(ev, g, e)
        return _store(ev, self.n)

    def inv(self, a):
        cdef int ev[MAXN]
        cdef int y[MAXN]
        _load(ev, a, self.n)
        self._inv_into(ev, y)
        return _store(y, self.n)

    def pow(self, a, long k):
        cdef int base[MAXN]
        cdef int res[MAXN]
        cdef int tmp[MAXN]
        cdef int i
        _load(tmp, a, self.n)
        if k < 0:
            self._inv_into(tmp, base)
            k = -k
        else:
            memcpy(base, tmp, self.n * sizeof(int))
        for i in range(self.n):
            res[i] = 0
        while k:
            if k & 1:
                self._mul_into(res, base)
            k >>= 1
            if k:
                memcpy(tmp, base, self.n * sizeof(int))
                self._mul_into(base, tmp)
        return _store(res, self.n)

    def conj(self, a, g):
        """``g^-1 a g``."""
        cdef int gi[MAXN]
        cdef int tmp[MAXN]
        cdef int av[MAXN]
        cdef int gv[MAXN]
        _load(tmp, g, self.n)
        _load(av, a, self.n)
        _load(gv, g, self.n)
        self._inv_into(tmp, gi)
        self._mul_into(gi, av)
        self._mul_into(gi, gv)
        return _store(gi, self.n)

    def comm(self, a, b):
        """``a^-1 b^-1 a b``."""
        cdef int ba[MAXN]
        cdef int ab[MAXN]
        cdef int av[MAXN]
        cdef int bv[MAXN]
        cdef int res[MAXN]
        _load(av, a, self.n)
        _load(bv, b, self.n)
        memcpy(ba, bv, self.n * sizeof(int))
        self._mul_into(ba, av)
        memcpy(ab, av, self.n * sizeof(int))
        self._mul_into(ab, bv)
        self._inv_into(ba, res)
        self._mul_into(res, ab)
        return _store(res, self.n)

    # -- whole-group kernels -------------------------------------------------

    def encode(self, a):
        code = 0
        for e in a:
            code = code * self.p + e
        return code

    def decode(self, code):
        out = [0] * self.n
        for i in range(self.n - 1, -1, -1):
            code, out[i] = divmod(code, self.p)
        return tuple(out)

    cdef inline long _encode(self, int *ev):
        cdef long code = 0
        cdef int i
        for i in range(self.n):
            code = code * self.p + ev[i]
        return code

    cdef inline void _decode(self, long code, int *ev):
        cdef int i = self.n - 1
        while i >= 0:
            ev[i] = code % self.p
            code = code // self.p
            i -= 1

    def reachable(self, gens):
        """Mask over element codes reachable from the identity by right
        multiplication with ``gens``."""
        cdef long size = <long> self.p ** self.n
        cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(size, dtype=np.uint8)
        cdef cnp.ndarray[cnp.int64_t, ndim=1] queue = np.zeros(size, dtype=np.int64)
        cdef int ng = len(gens)
        cdef int *gv = <int *> malloc(max(ng, 1) * self.n * sizeof(int))
        cdef int ev[MAXN]
        cdef long head = 0, tail = 1, c
        cdef int k
        for k in range(ng):
            _load(gv + k * self.n, gens[k], self.n)
        try:
            seen[0] = 1
            queue[0] = 0
            while head < tail:
                x = queue[head]
                head += 1
                for k in range(ng):
                    self._decode(x, ev)
                    self._mul_into(ev, gv + k * self.n)
                    c = self._encode(ev)
                    if not seen[c]:
                        seen[c] = 1
                        queue[tail] = c
                        tail += 1
        finally:
            free(gv)
        return seen

    def class_labels(self, conjugators):
        """Label every element code by its conjugacy class.

        Classes are numbered in order of their least element, which is also
        the class representative.  Returns ``(labels, representative codes,
        sizes)``.
        """
        cdef long size = <long> self.p ** self.n
        cdef cnp.ndarray[cnp.int32_t, ndim=1] labels = np.full(size, -1, dtype=np.int32)
        cdef cnp.ndarray[cnp.int64_t, ndim=1] queue = np.zeros(size, dtype=np.int64)
        cdef int ng = len(conjugators)
        cdef int *gv = <int *> malloc(max(ng, 1) * self.n * sizeof(int))
        cdef int *giv = <int *> malloc(max(ng, 1) * self.n * sizeof(int))
        cdef int ev[MAXN]
        cdef int tmp[MAXN]
        cdef long start, head, tail, c, x
        cdef int k, cid = 0
        reps, sizes = [], []
        for k in range(ng):
            _load(gv + k * self.n, conjugators[k], self.n)
            _load(tmp, conjugators[k], self.n)
            self._inv_into(tmp, giv + k * self.n)
        try:
            for start in range(size):
                if labels[start] >= 0:
                    continue
                labels[start] = cid
                queue[0] = start
                head = 0
                tail = 1
                while head < tail:
                    x = queue[head]
                    head += 1
                    for k in range(ng):
                        self._decode(x, tmp)
                        memcpy(ev, giv + k * self.n, self.n * sizeof(int))
                        self._mul_into(ev, tmp)
                        self._mul_into(ev, gv + k * self.n)
                        c = self._encode(ev)
                        if labels[c] < 0:
                            labels[c] = cid
                            queue[tail] = c
                            tail += 1
                reps.append(start)
                sizes.append(tail)
                cid += 1
        finally:
            free(gv)
            free(giv)
        return labels, reps, sizes


cdef list _letters(vec):
    out = []
    if vec is None:
        return out
    for g, e in enumerate(vec):
        out.extend([g] * e)
    return out


cdef inline void _load(int *dst, src, int n):
    cdef int i
    for i in range(n):
        dst[i] = src[i]


cdef inline tuple _store(int *src, int n):
    return tuple([src[i] for i in range(n)])
