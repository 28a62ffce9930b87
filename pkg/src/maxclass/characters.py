"""Linear characters of normal subgroups, Clifford orbits, induction and the
normally-monomial certificate.

Character values are never floats.  A linear character of ``N`` is a dual
vector ``a`` over the abelianization ``N/N' = Z/d_1 + ... + Z/d_m`` and its
value at ``x`` is the root of unity ``exp(2 pi i * sum a_i y_i / d_i)`` where
``y`` is the coordinate vector of ``x``.  We store only the exponent
``sum a_i y_i / d_i mod 1``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator

import numpy as np

from .pc import Element, PcPresentation, PresentationError
from .subgroups import (
    AbelianizationData,
    Subgroup,
    abelianization,
    derived_subgroup,
    generating_set,
    intersection,
    product,
    quotient_presentation,
    standardize,
    whole_group,
)


# -- exact roots of unity ------------------------------------------------------------


class RootOfUnityExponent:
    """``numerator / p^log_denominator mod 1``, stored reduced."""

    __slots__ = ("p", "numerator", "log_denominator")

    def __init__(self, p: int, numerator: int, log_denominator: int = 0):
        q = p**log_denominator
        numerator %= q
        while log_denominator and numerator % p == 0:
            numerator //= p
            log_denominator -= 1
        self.p = p
        self.numerator = numerator
        self.log_denominator = log_denominator

    @classmethod
    def zero(cls, p):
        return cls(p, 0, 0)

    def _align(self, other):
        if self.p != other.p:
            raise ValueError("roots of unity of different primes")
        e = max(self.log_denominator, other.log_denominator)
        a = self.numerator * self.p ** (e - self.log_denominator)
        b = other.numerator * self.p ** (e - other.log_denominator)
        return a, b, e

    def __add__(self, other):
        a, b, e = self._align(other)
        return RootOfUnityExponent(self.p, a + b, e)

    def __sub__(self, other):
        a, b, e = self._align(other)
        return RootOfUnityExponent(self.p, a - b, e)

    def __neg__(self):
        return RootOfUnityExponent(self.p, -self.numerator, self.log_denominator)

    def __mul__(self, k: int):
        return RootOfUnityExponent(self.p, self.numerator * k, self.log_denominator)

    def is_zero(self) -> bool:
        return self.numerator == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.p**self.log_denominator)

    def order(self) -> int:
        return self.p**self.log_denominator

    def _key(self):
        return (self.p, self.log_denominator, self.numerator)

    def __eq__(self, other):
        return isinstance(other, RootOfUnityExponent) and self._key() == other._key()

    def __lt__(self, other):
        return self.as_fraction() < other.as_fraction()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if not self.log_denominator:
            return "e(0)"
        return f"e({self.numerator}/{self.p}^{self.log_denominator})"


# -- linear characters --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LinearCharacter:
    domain: Subgroup
    ab: AbelianizationData
    dual: tuple

    def value(self, x) -> RootOfUnityExponent:
        """``lambda(x)`` as an exponent; ``x`` is an Element or exponent vector of ``N``."""
        y = self.ab.project(x)
        return _value_from_coords(self.domain.pres.p, self.ab.factors, self.dual, y)

    def is_trivial(self) -> bool:
        return not any(self.dual)

    def __eq__(self, other):
        return (
            isinstance(other, LinearCharacter)
            and self.dual == other.dual
            and self.domain == other.domain
        )

    def __hash__(self):
        return hash((self.dual, self.domain))

    def __repr__(self):
        return f"LinearCharacter(dual={self.dual}, factors={self.ab.factors})"


def _value_from_coords(p, factors, dual, y) -> RootOfUnityExponent:
    if not factors:
        return RootOfUnityExponent.zero(p)
    D = max(factors)
    e = 0
    while p**e < D:
        e += 1
    num = sum(a * c * (D // d) for a, c, d in zip(dual, y, factors))
    return RootOfUnityExponent(p, num, e)


def linear_characters(N: Subgroup, ab: AbelianizationData | None = None) -> Iterator[LinearCharacter]:
    """All ``|N/N'|`` linear characters in lexicographic order of their duals."""
    ab = abelianization(N) if ab is None else ab
    for dual in itertools.product(*(range(d) for d in ab.factors)):
        yield LinearCharacter(N, ab, dual)


def character_from_dual(N: Subgroup, dual, ab=None) -> LinearCharacter:
    ab = abelianization(N) if ab is None else ab
    if len(dual) != len(ab.factors) or any(not 0 <= a < d for a, d in zip(dual, ab.factors)):
        raise ValueError(f"dual {dual} does not match factors {ab.factors}")
    return LinearCharacter(N, ab, tuple(dual))


# -- conjugation ---------------------------------------------------------------------------


def _conjugation_matrix(ab: AbelianizationData, g) -> list:
    """Integer matrix ``T`` with ``dual(lambda^g) = T dual(lambda) mod d``."""
    pres = ab.source.pres
    col = pres.collector
    gv = g.exps if isinstance(g, Element) else tuple(g)
    gi = col.inv(gv)
    m = len(ab.factors)
    # A[j] = coordinates of g * section_j * g^-1
    A = [ab.project(col.mul(col.mul(gv, sec), gi)) for sec in ab.sections]
    d = ab.factors
    return [[A[j][i] * d[j] // d[i] for i in range(m)] for j in range(m)]


def _apply(T, a, factors):
    return tuple(sum(t * x for t, x in zip(row, a)) % d for row, d in zip(T, factors))


def conjugate_character(lam: LinearCharacter, g) -> LinearCharacter:
    """``lambda^g``, defined by ``lambda^g(x) = lambda(g x g^-1)``; a right action."""
    if not lam.domain.is_normal():
        raise PresentationError("conjugate_character: domain is not normal")
    T = _conjugation_matrix(lam.ab, g)
    return LinearCharacter(lam.domain, lam.ab, _apply(T, lam.dual, lam.ab.factors))


class _OrbitContext:
    """Conjugation matrices of ``N/N'`` for a generating set of the acting group."""

    def __init__(self, N: Subgroup, ab: AbelianizationData | None = None, acting=None):
        self.N = N
        self.ab = abelianization(N) if ab is None else ab
        G = whole_group(N.pres) if acting is None else acting
        self.acting = G
        self.gens = generating_set(G)
        self.mats = [np.array(_conjugation_matrix(self.ab, g), dtype=np.int64) for g in self.gens]
        self.factors = np.array(self.ab.factors, dtype=np.int64)
        self.radix = [int(x) for x in _radix(self.ab.factors)]

    def code(self, a) -> int:
        return sum(int(x) * r for x, r in zip(a, self.radix))

    def orbit(self, dual) -> list:
        start = tuple(int(x) for x in dual)
        seen = {start}
        queue = [start]
        k = 0
        while k < len(queue):
            a = np.array(queue[k], dtype=np.int64)
            k += 1
            for M in self.mats:
                b = tuple(int(x) for x in (M @ a) % self.factors)
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return queue


def _radix(factors):
    out = []
    r = 1
    for d in reversed(factors):
        out.append(r)
        r *= d
    return list(reversed(out))


def orbit_and_inertia(lam: LinearCharacter, acting: Subgroup | None = None):
    """``(orbit, |acting : I(lambda)|)``; the orbit is a list of characters
    starting with ``lambda``."""
    if not lam.domain.is_normal():
        raise PresentationError("orbit_and_inertia: domain is not normal")
    ctx = _OrbitContext(lam.domain, lam.ab, acting)
    orb = ctx.orbit(lam.dual)
    return [LinearCharacter(lam.domain, lam.ab, d) for d in orb], len(orb)


# -- kernels ---------------------------------------------------------------------------------


def _kernel_lattice(factors, functionals, p):
    """Generators of ``{y in A : f(y) = 0 for every f}`` in
    ``A = Z/d_1 + ... + Z/d_m``, each ``f`` a dual vector."""
    m = len(factors)
    if m == 0:
        return []
    D = max(factors)
    scale = [D // d for d in factors]
    gens = [tuple(int(i == j) for j in range(m)) for i in range(m)]
    for f in functionals:
        def ev(v):
            return sum(a * s * x for a, s, x in zip(f, scale, v)) % D

        vals = [ev(v) for v in gens]
        nz = [k for k, x in enumerate(vals) if x]
        if not nz:
            continue

        def val(x):
            k = 0
            while x % p == 0:
                x //= p
                k += 1
            return k

        k0 = min(nz, key=lambda k: val(vals[k]))
        v0, x0 = gens[k0], vals[k0]
        ord0 = D // math.gcd(D, x0)
        unit0 = x0 // p ** val(x0)
        new = []
        for k, v in enumerate(gens):
            if k == k0:
                continue
            x = vals[k]
            if x:
                # x = c * x0 mod D
                c = (x // p ** val(x0)) * pow(unit0, -1, D) % D
                v = tuple(a - c * b for a, b in zip(v, v0))
            new.append(v)
        new.append(tuple(ord0 * b for b in v0))
        gens = [tuple(a % d for a, d in zip(v, factors)) for v in new]
        gens = [v for v in gens if any(v)]
    return gens


def character_kernel(lam: LinearCharacter) -> Subgroup:
    return _kernel_from_duals(lam.domain, lam.ab, [lam.dual])


def _kernel_from_duals(N, ab, duals) -> Subgroup:
    p = N.pres.p
    lat = _kernel_lattice(ab.factors, duals, p)
    Nd = derived_subgroup(N)
    gens = [ab.from_coordinates(v) for v in lat] + list(Nd.vectors)
    return standardize(gens, N.pres)


@dataclass(frozen=True, eq=False)
class InducedCharacterRecord:
    source: Subgroup
    rep: LinearCharacter
    degree: int
    orbit_size: int
    orbit: tuple = field(repr=False)  # duals
    kernel: Subgroup = field(repr=False)

    def sort_key(self):
        return (self.degree, self.kernel.vectors, self.source.vectors, self.rep.dual)

    def to_dict(self):
        return {
            "degree": self.degree,
            "source_depths": [d + 1 for d in self.source.depths],
            "source_order_log": self.source.log_order,
            "rep_dual": list(self.rep.dual),
            "factors": list(self.rep.ab.factors),
            "kernel_order_log": self.kernel.log_order,
        }


def induced_kernel(rec: InducedCharacterRecord) -> Subgroup:
    return rec.kernel


def make_record(lam: LinearCharacter, ctx: _OrbitContext | None = None):
    """The record for ``lambda^G``, or None when the inertia group is larger
    than the domain."""
    N = lam.domain
    ctx = ctx or _OrbitContext(N, lam.ab)
    orb = ctx.orbit(lam.dual)
    index = N.pres.order // N.order
    if len(orb) != index:
        return None
    rep = min(orb)
    kernel = _kernel_from_duals(N, lam.ab, orb)
    return InducedCharacterRecord(N, LinearCharacter(N, lam.ab, rep), index, len(orb), tuple(orb), kernel)


# -- Mackey --------------------------------------------------------------------------------


def _transversal(pres, H: Subgroup) -> list:
    """Coset representatives of a normal subgroup ``H``."""
    Q, epi = quotient_presentation(pres, H)
    out = []
    for exps in itertools.product(range(pres.p), repeat=Q.n):
        out.append(epi.lift_vec(exps))
    return out


@lru_cache(maxsize=256)
def _mackey_frame(N: Subgroup, M: Subgroup) -> tuple:
    """``N & M`` and a transversal of ``NM`` paired with inverses."""
    pres = N.pres
    col = pres.collector
    pairs = tuple((t, col.inv(t)) for t in _transversal(pres, product(N, M)))
    return intersection(N, M), pairs


def mackey_inner_product(rec1: InducedCharacterRecord, rec2: InducedCharacterRecord) -> int:
    """``<lambda^G, mu^G> = #{t in G/NM : lambda^t = mu on N & M}``."""
    N, M = rec1.source, rec2.source
    col = N.pres.collector
    I, pairs = _mackey_frame(N, M)
    lam, mu = rec1.rep, rec2.rep
    targets = [mu.value(x) for x in I.vectors]
    count = 0
    for t, ti in pairs:
        # lambda^t(x) = lambda(t x t^-1)
        if all(lam.value(col.mul(col.mul(t, x), ti)) == v for x, v in zip(I.vectors, targets)):
            count += 1
    return count


# -- certificate ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormallyMonomial:
    cd: tuple
    degree_multiplicities: dict

    kind = "normally-monomial"


@dataclass(frozen=True)
class Deficit:
    missing: int

    kind = "deficit"


@dataclass(frozen=True, eq=False)
class NmCertificate:
    group: PcPresentation
    records: tuple
    linear_count: int
    degree_square_sum: int
    verdict: object
    candidates: int = 0  # records before deduplication

    @property
    def normally_monomial(self) -> bool:
        return isinstance(self.verdict, NormallyMonomial)

    @property
    def character_count(self) -> int:
        return self.linear_count + len(self.records)

    def degree_counts(self) -> dict:
        out = {1: self.linear_count}
        for r in self.records:
            out[r.degree] = out.get(r.degree, 0) + 1
        return dict(sorted(out.items()))

    def degrees(self) -> set:
        return set(self.degree_counts())

    def to_dict(self):
        v = self.verdict
        d = {
            "verdict": v.kind,
            "linear_count": self.linear_count,
            "record_count": len(self.records),
            "degree_square_sum": self.degree_square_sum,
            "group_order": self.group.order,
            "degree_counts": {str(k): c for k, c in self.degree_counts().items()},
        }
        if isinstance(v, NormallyMonomial):
            d["cd"] = list(v.cd)
        else:
            d["missing"] = v.missing
        return d


def candidate_records(pres: PcPresentation, N: Subgroup) -> list:
    """Records over ``N``: one per ``G``-orbit of linear characters with
    inertia group ``N``, represented by the least dual in the orbit."""
    index = pres.order // N.order
    ab = abelianization(N)
    if not ab.factors:
        return []
    ctx = _OrbitContext(N, ab)
    total = ab.order
    seen = np.zeros(total, dtype=bool)
    out = []
    radix = ctx.radix
    for code in range(total):
        if seen[code]:
            continue
        dual = _decode(code, ab.factors)
        orb = ctx.orbit(dual)
        for b in orb:
            seen[sum(x * r for x, r in zip(b, radix))] = True
        if len(orb) == index:
            kernel = _kernel_from_duals(N, ab, orb)
            out.append(InducedCharacterRecord(N, LinearCharacter(N, ab, dual), index, len(orb), tuple(orb), kernel))
    return out


def _decode(code, factors):
    out = []
    for d in reversed(factors):
        code, r = divmod(code, d)
        out.append(r)
    return tuple(reversed(out))


def nm_certify(pres: PcPresentation, normal_subgroups) -> NmCertificate:
    """Certify normal monomiality from a complete list of normal subgroups.

    Every record is irreducible by Clifford's theorem; duplicates across
    subgroups are removed with Mackey's formula inside buckets of equal
    degree and kernel.  The degree square sum reaches ``|G|`` exactly when
    every irreducible character has been produced.
    """
    order = pres.order
    G = whole_group(pres)
    linear = order // derived_subgroup(G).order
    cands = []
    seen_subgroups = set()
    for N in normal_subgroups:
        if N.pres is not pres and not N.pres.same_relations(pres):
            raise PresentationError("normal subgroup of another presentation")
        if N.vectors in seen_subgroups:
            continue
        seen_subgroups.add(N.vectors)
        index = order // N.order
        if index == 1 or index * index > order:
            continue
        cands.extend(candidate_records(pres, N))
    cands.sort(key=InducedCharacterRecord.sort_key)
    records = []
    bucket_key, bucket = None, []
    for rec in cands:
        key = (rec.degree, rec.kernel.vectors)
        if key != bucket_key:
            bucket_key, bucket = key, []
        if any(
            kept.source != rec.source and mackey_inner_product(kept, rec) for kept in bucket
        ):
            continue
        bucket.append(rec)
        records.append(rec)
    square_sum = linear + sum(r.degree**2 for r in records)
    if square_sum == order:
        counts = {1: linear}
        for r in records:
            counts[r.degree] = counts.get(r.degree, 0) + 1
        verdict = NormallyMonomial(tuple(sorted(counts)), dict(sorted(counts.items())))
    else:
        verdict = Deficit(order - square_sum)
    return NmCertificate(pres, tuple(records), linear, square_sum, verdict, len(cands))


def default_normal_subgroups(pres: PcPresentation) -> list:
    """Normal subgroups from the maximal-class shortcut, or by brute force
    for other small groups."""
    from .series import analyze, is_maximal_class, maximal_class_normal_subgroups

    if is_maximal_class(pres):
        return maximal_class_normal_subgroups(analyze(pres))
    from .oracle import normal_subgroups_bruteforce

    return normal_subgroups_bruteforce(pres)


class CdUndetermined(RuntimeError):
    pass


def certify(pres: PcPresentation) -> NmCertificate:
    return nm_certify(pres, default_normal_subgroups(pres))


def cd(pres: PcPresentation, cert: NmCertificate | None = None) -> set:
    cert = certify(pres) if cert is None else cert
    if not cert.normally_monomial:
        raise CdUndetermined(
            f"cd undetermined: group not normally monomial, deficit {cert.verdict.missing}"
        )
    return set(cert.verdict.cd)


def b(pres: PcPresentation, cert: NmCertificate | None = None) -> int:
    return max(cd(pres, cert))


def cd_of_quotient(pres: PcPresentation, N: Subgroup, cert: NmCertificate | None = None) -> set:
    """Degrees of the irreducible characters with ``N`` in their kernel."""
    cert = certify(pres) if cert is None else cert
    if not cert.normally_monomial:
        raise CdUndetermined("cd undetermined: group not normally monomial")
    return {1} | {r.degree for r in cert.records if N <= r.kernel}


def cd_of_quotient_recertified(pres: PcPresentation, N: Subgroup) -> set:
    """Second route: certify the quotient presentation ``G/N`` itself."""
    Q, _ = quotient_presentation(pres, N)
    return cd(Q)
