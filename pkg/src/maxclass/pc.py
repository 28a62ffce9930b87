"""Prime-step polycyclic presentations, normal-form elements and collection.

Generators are numbered from 1 in words and in the file format; exponent
vectors are plain tuples indexed from 0.  The commutator convention is
``[a, b] = a^-1 b^-1 a b`` and conjugation is ``a^g = g^-1 a g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import _kernel


class PresentationError(ValueError):
    """Malformed presentation or operands from different presentations."""


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


@dataclass(frozen=True, eq=False)
class PcPresentation:
    """A pc presentation with every relative order equal to ``p``.

    ``power_rhs[i]`` is the exponent vector of ``g_{i+1}^p`` and
    ``conj_rhs[(i, j)]`` (``i < j``, 0-based) the exponent vector of
    ``g_{j+1}^{g_{i+1}}``.  Missing conjugate relations mean the two
    generators commute.  Construction validates the relation shapes but not
    confluence; see :func:`consistency_check`.
    """

    name: str
    p: int
    n: int
    power_rhs: tuple
    conj_rhs: dict = field(default_factory=dict)

    def __post_init__(self):
        p, n = self.p, self.n
        if not is_prime(p):
            raise PresentationError(f"relative order {p} is not prime")
        if n < 0 or len(self.power_rhs) != n:
            raise PresentationError("need one power relation per generator")
        power = tuple(tuple(int(e) for e in w) for w in self.power_rhs)
        for i, w in enumerate(power):
            _check_vec(w, p, n)
            if any(w[: i + 1]):
                raise PresentationError(f"g{i + 1}^p must lie in <g{i + 2},...>")
        conj = {}
        for (i, j), w in self.conj_rhs.items():
            if not 0 <= i < j < n:
                raise PresentationError(f"bad conjugate relation index ({i + 1}, {j + 1})")
            w = tuple(int(e) for e in w)
            _check_vec(w, p, n)
            if any(w[:j]) or w[j] != 1:
                raise PresentationError(
                    f"g{j + 1}^g{i + 1} must have the form g{j + 1} * (word in later generators)"
                )
            if any(w[j + 1 :]):
                conj[i, j] = w
        object.__setattr__(self, "power_rhs", power)
        object.__setattr__(self, "conj_rhs", conj)

    @cached_property
    def collector(self):
        return _kernel.Collector(self.p, self.n, list(self.power_rhs), dict(self.conj_rhs))

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def identity(self) -> "Element":
        return Element(self, (0,) * self.n)

    def gen(self, i: int) -> "Element":
        """The 1-based generator ``g_i``."""
        if not 1 <= i <= self.n:
            raise PresentationError(f"generator index {i} out of range 1..{self.n}")
        v = [0] * self.n
        v[i - 1] = 1
        return Element(self, tuple(v))

    @property
    def gens(self) -> list:
        return [self.gen(i) for i in range(1, self.n + 1)]

    def element(self, exps: Sequence[int]) -> "Element":
        exps = tuple(int(e) for e in exps)
        _check_vec(exps, self.p, self.n)
        return Element(self, exps)

    def conj_vec(self, i: int, j: int) -> tuple:
        """Exponent vector of ``g_j^{g_i}`` (0-based, ``i < j``)."""
        w = self.conj_rhs.get((i, j))
        if w is None:
            v = [0] * self.n
            v[j] = 1
            return tuple(v)
        return w

    def same_relations(self, other: "PcPresentation") -> bool:
        return (
            self.p == other.p
            and self.n == other.n
            and self.power_rhs == other.power_rhs
            and self.conj_rhs == other.conj_rhs
        )

    def __eq__(self, other):
        if not isinstance(other, PcPresentation):
            return NotImplemented
        return self.name == other.name and self.same_relations(other)

    def __hash__(self):
        return hash((self.name, self.p, self.n, self.power_rhs))

    def __repr__(self):
        return f"PcPresentation({self.name!r}, p={self.p}, n={self.n})"


def _check_vec(v, p, n):
    if len(v) != n:
        raise PresentationError(f"exponent vector {v} has length {len(v)}, expected {n}")
    if any(not 0 <= e < p for e in v):
        raise PresentationError(f"exponent vector {v} has entries outside [0, {p})")


class Element:
    """A group element in normal form ``g_1^e_1 ... g_n^e_n``."""

    __slots__ = ("pres", "exps")

    def __init__(self, pres: PcPresentation, exps: tuple):
        self.pres = pres
        self.exps = exps

    def _other(self, other):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.pres is not self.pres and not self.pres.same_relations(other.pres):
            raise PresentationError("elements belong to different presentations")
        return other.exps

    def __mul__(self, other):
        return Element(self.pres, self.pres.collector.mul(self.exps, self._other(other)))

    def inverse(self):
        return Element(self.pres, self.pres.collector.inv(self.exps))

    def __pow__(self, k: int):
        return Element(self.pres, self.pres.collector.pow(self.exps, k))

    def conj(self, g: "Element") -> "Element":
        """``g^-1 self g``."""
        return Element(self.pres, self.pres.collector.conj(self.exps, self._other(g)))

    def comm(self, b: "Element") -> "Element":
        """``[self, b] = self^-1 b^-1 self b``."""
        return Element(self.pres, self.pres.collector.comm(self.exps, self._other(b)))

    def is_identity(self) -> bool:
        return not any(self.exps)

    @property
    def depth(self):
        """0-based index of the first nonzero exponent, ``n`` for the identity."""
        return depth(self.exps)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.exps == other.exps and (
            self.pres is other.pres or self.pres.same_relations(other.pres)
        )

    def __hash__(self):
        return hash(self.exps)

    def __lt__(self, other):
        return self.exps < self._other(other)

    def __repr__(self):
        return f"<{format_word(self.exps)}>"


def depth(v) -> int:
    for i, e in enumerate(v):
        if e:
            return i
    return len(v)


def format_word(v) -> str:
    parts = [f"g{i + 1}" if e == 1 else f"g{i + 1}^{e}" for i, e in enumerate(v) if e]
    return " ".join(parts) if parts else "1"


# -- module-level operations -------------------------------------------------

Word = Sequence  # sequence of (1-based generator index, integer exponent)


def collect(pres: PcPresentation, word: Iterable) -> Element:
    """Normal form of a word given as ``(generator, exponent)`` pairs."""
    col = pres.collector
    ev = col.identity
    for g, e in word:
        if not 1 <= g <= pres.n:
            raise PresentationError(f"generator index {g} out of range 1..{pres.n}")
        if e >= 0:
            ev = col.mul_gen(ev, g - 1, 1) if e == 1 else col.mul(ev, col.pow(_unit(pres, g), e))
        else:
            ev = col.mul(ev, col.pow(_unit(pres, g), e))
    return Element(pres, ev)


def _unit(pres, g):
    v = [0] * pres.n
    v[g - 1] = 1
    return tuple(v)


def multiply(a: Element, b: Element) -> Element:
    return a * b


def invert(a: Element) -> Element:
    return a.inverse()


def power(a: Element, k: int) -> Element:
    return a**k


def conjugate(a: Element, g: Element) -> Element:
    return a.conj(g)


def commutator(a: Element, b: Element) -> Element:
    return a.comm(b)


def element_order(a: Element) -> int:
    p = a.pres.p
    col = a.pres.collector
    x, k = a.exps, 1
    while any(x):
        x = col.pow(x, p)
        k *= p
    return k


# -- consistency ---------------------------------------------------------------


@dataclass(frozen=True)
class Overlap:
    """A failed consistency test: two bracketings of one word disagree."""

    kind: str
    gens: tuple  # 1-based generator indices of the test word
    left: tuple
    right: tuple

    def __str__(self):
        word = " ".join(f"g{g}" for g in self.gens)
        return f"{self.kind} overlap {word}: {format_word(self.left)} != {format_word(self.right)}"


@dataclass(frozen=True)
class ConsistencyReport:
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.passed


def consistency_check(pres: PcPresentation) -> ConsistencyReport:
    """Run the overlap tests for a presentation with relative orders ``p``.

    The tests are ``(g_k g_j) g_i = g_k (g_j g_i)`` for ``k > j > i``,
    ``(g_j^p) g_i = g_j^(p-1) (g_j g_i)`` and ``g_j (g_i^p) = (g_j g_i) g_i^(p-1)``
    for ``j > i``, and ``g_i (g_i^p) = (g_i^p) g_i``.
    """
    col = pres.collector
    p, n = pres.p, pres.n
    unit = [_unit(pres, g + 1) for g in range(n)]
    failures = []

    def check(kind, gens, left, right):
        if left != right:
            failures.append(Overlap(kind, tuple(g + 1 for g in gens), left, right))

    for i in range(n):
        for j in range(i + 1, n):
            ji = col.mul(unit[j], unit[i])
            for k in range(j + 1, n):
                left = col.mul(col.mul(unit[k], unit[j]), unit[i])
                right = col.mul(unit[k], ji)
                check("associativity", (k, j, i), left, right)
            left = col.mul(pres.power_rhs[j], unit[i])
            right = col.mul(col.pow(unit[j], p - 1), ji)
            check("power-left", (j,) * p + (i,), left, right)
            left = col.mul(unit[j], pres.power_rhs[i])
            right = col.mul(ji, col.pow(unit[i], p - 1))
            check("power-right", (j,) + (i,) * p, left, right)
        left = col.mul(unit[i], pres.power_rhs[i])
        right = col.mul(pres.power_rhs[i], unit[i])
        check("power", (i,) * (p + 1), left, right)
    return ConsistencyReport(tuple(failures))
