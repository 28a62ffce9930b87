"""Pure-Python collector; reference implementation of the compiled kernel.

Elements are exponent tuples of length ``n`` with entries in ``[0, p)``.
Both backends expose the same ``Collector`` class and must agree bit for bit.
"""

import numpy as np


class Collector:
    """Collection from the left for a prime-step pc presentation.

    ``power`` is a list of ``n`` exponent tuples (``g_i^p``) and ``conj`` maps
    ``(i, j)`` with ``i < j`` to the exponent tuple of ``g_j^{g_i}``.
    """

    backend = "python"

    def __init__(self, p, n, power, conj):
        self.p = p
        self.n = n
        self._power = [self._letters(w) for w in power]
        self._conj = {}
        for i in range(n):
            for j in range(i + 1, n):
                w = conj.get((i, j))
                self._conj[i, j] = self._letters(w) if w is not None else [j]
        self.identity = (0,) * n

    def _letters(self, vec):
        out = []
        for g, e in enumerate(vec):
            out.extend([g] * e)
        return out

    def _run(self, ev, stack):
        p, n = self.p, self.n
        power, conj = self._power, self._conj
        while stack:
            frame = stack[-1]
            word, pos, reps = frame
            if pos == len(word):
                if reps > 1:
                    frame[1] = 0
                    frame[2] = reps - 1
                else:
                    stack.pop()
                continue
            frame[1] = pos + 1
            g = word[pos]
            for k in range(n - 1, g, -1):
                e = ev[k]
                if e:
                    ev[k] = 0
                    stack.append([conj[g, k], 0, e])
            e = ev[g] + 1
            if e == p:
                ev[g] = 0
                if power[g]:
                    stack.append([power[g], 0, 1])
            else:
                ev[g] = e

    def mul(self, a, b):
        ev = list(a)
        stack = []
        for j in range(self.n - 1, -1, -1):
            if b[j]:
                stack.append([[j], 0, b[j]])
        self._run(ev, stack)
        return tuple(ev)

    def mul_gen(self, a, g, e=1):
        """``a * g_g^e`` for ``0 <= e``."""
        ev = list(a)
        if e:
            self._run(ev, [[[g], 0, e]])
        return tuple(ev)

    def inv(self, a):
        p = self.p
        r = list(a)
        y = list(self.identity)
        for i in range(self.n):
            if r[i]:
                e = p - r[i]
                self._run(r, [[[i], 0, e]])
                self._run(y, [[[i], 0, e]])
        return tuple(y)

    def pow(self, a, k):
        if k < 0:
            a = self.inv(a)
            k = -k
        result = self.identity
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def conj(self, a, g):
        """``g^-1 a g``."""
        return self.mul(self.mul(self.inv(g), a), g)

    def comm(self, a, b):
        """``a^-1 b^-1 a b``."""
        return self.mul(self.inv(self.mul(b, a)), self.mul(a, b))

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

    def reachable(self, gens):
        """Mask over element codes reachable from the identity by right
        multiplication with ``gens``."""
        size = self.p ** self.n
        seen = np.zeros(size, dtype=np.uint8)
        seen[0] = 1
        queue = [self.identity]
        while queue:
            x = queue.pop()
            for g in gens:
                y = self.mul(x, g)
                c = self.encode(y)
                if not seen[c]:
                    seen[c] = 1
                    queue.append(y)
        return seen

    def class_labels(self, conjugators):
        """Label every element code by its conjugacy class.

        Classes are numbered in order of their least element, which is also
        the class representative.  Returns ``(labels, representative codes,
        sizes)``.
        """
        size = self.p ** self.n
        labels = np.full(size, -1, dtype=np.int32)
        pairs = [(self.inv(g), g) for g in conjugators]
        reps, sizes = [], []
        for start in range(size):
            if labels[start] >= 0:
                continue
            cid = len(reps)
            labels[start] = cid
            queue = [self.decode(start)]
            count = 1
            while queue:
                x = queue.pop()
                for gi, g in pairs:
                    y = self.mul(self.mul(gi, x), g)
                    c = self.encode(y)
                    if labels[c] < 0:
                        labels[c] = cid
                        count += 1
                        queue.append(y)
            reps.append(start)
            sizes.append(count)
        return labels, reps, sizes
