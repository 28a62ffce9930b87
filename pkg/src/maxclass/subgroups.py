"""Subgroups of a pc-presented p-group as canonical induced generating sequences.

An igs is stored as exponent vectors with strictly increasing depths and
leading exponent 1, fully reduced so that no member has a nonzero exponent at
another member's leading position.  That form is unique, so subgroups compare
by their igs.

Every presentation accepted by :class:`~maxclass.pc.PcPresentation` refines a
central series (``g_j^{g_i} = g_j * (later generators)``), and most algorithms
here lean on that: the map "read the exponent at position ``k``" is a
homomorphism on any subgroup whose elements vanish before ``k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .pc import Element, PcPresentation, PresentationError, depth
from .snf import invert_unimodular, smith_normal_form


@dataclass
class Caps:
    """Enumeration bounds; exceeding one raises :class:`UnsupportedError`."""

    exponent: int = 5**7
    intersection: int = 5**5
    center_bruteforce: int = 5**6


CAPS = Caps()


class UnsupportedError(RuntimeError):
    """The requested computation would exceed an enumeration cap."""


def _vec(a):
    return a.exps if isinstance(a, Element) else tuple(a)


# -- igs construction -----------------------------------------------------------


class IgsBuilder:
    """Incremental closure of a generating set into an induced pcgs."""

    def __init__(self, pres: PcPresentation, table=None):
        self.pres = pres
        self.col = pres.collector
        self.p = pres.p
        self.n = pres.n
        self.table = {}
        self._powers = {}
        for d, t in (table or {}).items():
            self._set(d, t)

    def _set(self, d, t):
        self.table[d] = t
        pw = [self.col.identity, t]
        for _ in range(self.p - 2):
            pw.append(self.col.mul(pw[-1], t))
        self._powers[d] = pw

    def sift(self, x):
        """Residue of ``x`` after clearing every depth present in the table."""
        p, n = self.p, self.n
        mul = self.col.mul
        d = depth(x)
        while d < n:
            pw = self._powers.get(d)
            if pw is None:
                return x
            x = mul(pw[p - x[d]], x)
            d = depth(x)
        return x

    def reduce(self, x):
        """Clear every table depth in ascending order.

        Left multiplication by an element of depth ``d`` leaves positions
        before ``d`` unchanged, so the result vanishes at all table depths and
        is the unique such element of the coset ``<table> x``.
        """
        p = self.p
        mul = self.col.mul
        for d in sorted(self._powers):
            e = x[d]
            if e:
                x = mul(self._powers[d][p - e], x)
        return x

    def add(self, x) -> list:
        """Add ``x`` and close under p-th powers and commutators.

        Returns the list of new table entries.
        """
        col, p, n = self.col, self.p, self.n
        queue = [x]
        new = []
        while queue:
            y = self.sift(queue.pop())
            d = depth(y)
            if d == n:
                continue
            e = y[d]
            if e != 1:
                y = col.pow(y, pow(e, -1, p))
            others = list(self.table.values())
            self._set(d, y)
            new.append(y)
            queue.append(col.pow(y, p))
            for t in others:
                queue.append(col.comm(y, t))
        return new

    def subgroup(self) -> "Subgroup":
        return Subgroup._from_table(self.pres, self.table)


class Subgroup:
    """A subgroup of ``pres`` held as its canonical igs."""

    __slots__ = ("pres", "_igs", "_depths", "_builder", "_inv_powers")

    def __init__(self, pres: PcPresentation, igs: tuple):
        self.pres = pres
        self._igs = igs
        self._depths = tuple(depth(h) for h in igs)
        self._builder = None
        self._inv_powers = None

    @classmethod
    def _from_table(cls, pres, table):
        col, p = pres.collector, pres.p
        depths = sorted(table)
        hs = [table[d] for d in depths]
        for i in range(len(hs)):
            h = hs[i]
            for j in range(i + 1, len(hs)):
                e = h[depths[j]]
                if e:
                    h = col.mul(h, col.pow(hs[j], p - e))
            hs[i] = h
        return cls(pres, tuple(hs))

    # -- basic queries ------------------------------------------------------------

    @property
    def igs(self) -> tuple:
        return tuple(Element(self.pres, h) for h in self._igs)

    @property
    def vectors(self) -> tuple:
        return self._igs

    @property
    def depths(self) -> tuple:
        return self._depths

    @property
    def order(self) -> int:
        return self.pres.p ** len(self._igs)

    @property
    def log_order(self) -> int:
        return len(self._igs)

    def _table(self) -> IgsBuilder:
        if self._builder is None:
            self._builder = IgsBuilder(self.pres, dict(zip(self._depths, self._igs)))
        return self._builder

    def sift(self, a):
        return self._table().sift(_vec(a))

    def __contains__(self, a) -> bool:
        return depth(self.sift(a)) == self.pres.n

    def residue(self, a):
        """Canonical representative of the coset ``a H`` (``H`` normal):
        the unique element of the coset vanishing at every depth of ``H``."""
        return self._table().reduce(_vec(a))

    def exponents(self, a):
        """Exponents ``c`` with ``a = h_1^c_1 ... h_r^c_r``, or None if ``a`` is
        not in the subgroup."""
        col = self.pres.collector
        if self._inv_powers is None:
            self._inv_powers = []
            for h in self._igs:
                hi = col.inv(h)
                pw = [col.identity]
                for _ in range(self.pres.p - 1):
                    pw.append(col.mul(pw[-1], hi))
                self._inv_powers.append(pw)
        x = _vec(a)
        out = []
        for d, pw in zip(self._depths, self._inv_powers):
            if depth(x) < d:
                return None
            c = x[d]
            out.append(c)
            if c:
                x = col.mul(pw[c], x)
        return tuple(out) if not any(x) else None

    def element_from_exponents(self, c) -> tuple:
        col = self.pres.collector
        x = col.identity
        for h, e in zip(self._igs, c):
            if e:
                x = col.mul(x, col.pow(h, e))
        return x

    def elements(self):
        """All elements as exponent vectors (``|H|`` of them)."""
        col = self.pres.collector
        out = [col.identity]
        for h in reversed(self._igs):
            pw = [col.identity, h]
            for _ in range(self.pres.p - 2):
                pw.append(col.mul(pw[-1], h))
            out = [col.mul(q, x) for q in pw for x in out]
        return out

    def issubgroup(self, other: "Subgroup") -> bool:
        return all(h in other for h in self._igs)

    __le__ = issubgroup

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self._igs == other._igs and self.pres.same_relations(other.pres)

    def __hash__(self):
        return hash(self._igs)

    def __repr__(self):
        return f"Subgroup(order={self.pres.p}^{len(self._igs)}, depths={[d + 1 for d in self._depths]})"

    def is_trivial(self) -> bool:
        return not self._igs

    def is_normal(self) -> bool:
        col = self.pres.collector
        gens = _unit_vectors(self.pres)
        return all(col.conj(h, g) in self for h in self._igs for g in gens)

    def is_abelian(self) -> bool:
        col = self.pres.collector
        return all(
            not any(col.comm(a, b)) for a, b in itertools.combinations(self._igs, 2)
        )


def _unit_vectors(pres):
    out = []
    for i in range(pres.n):
        v = [0] * pres.n
        v[i] = 1
        out.append(tuple(v))
    return out


def _same_parent(H: Subgroup, K: Subgroup):
    if H.pres is not K.pres and not H.pres.same_relations(K.pres):
        raise PresentationError("subgroups of different presentations")


# -- constructors -----------------------------------------------------------------


def standardize(gens: Iterable, pres: PcPresentation | None = None) -> Subgroup:
    """Subgroup generated by ``gens`` in canonical form."""
    gens = list(gens)
    if pres is None:
        if not gens or not isinstance(gens[0], Element):
            raise PresentationError("standardize needs Elements or an explicit presentation")
        pres = gens[0].pres
    b = IgsBuilder(pres)
    for g in gens:
        if isinstance(g, Element) and g.pres is not pres and not g.pres.same_relations(pres):
            raise PresentationError("generators from different presentations")
        b.add(_vec(g))
    return b.subgroup()


def trivial_subgroup(pres: PcPresentation) -> Subgroup:
    return Subgroup(pres, ())


def whole_group(pres: PcPresentation) -> Subgroup:
    return Subgroup(pres, tuple(_unit_vectors(pres)))


def membership(H: Subgroup, a) -> bool:
    return a in H


def closure(pres, gens, conjugators) -> Subgroup:
    """Smallest subgroup containing ``gens`` and normalized by ``conjugators``."""
    col = pres.collector
    b = IgsBuilder(pres)
    pending = []
    for g in gens:
        pending.extend(b.add(_vec(g)))
    conjugators = [_vec(c) for c in conjugators]
    while pending:
        h = pending.pop()
        for c in conjugators:
            pending.extend(b.add(col.conj(h, c)))
    return b.subgroup()


def normal_closure(pres: PcPresentation, S: Iterable) -> Subgroup:
    return closure(pres, S, _unit_vectors(pres))


def commutator_subgroup(A: Subgroup, B: Subgroup) -> Subgroup:
    """``[A, B]``, the normal closure in ``<A, B>`` of the generator commutators."""
    _same_parent(A, B)
    col = A.pres.collector
    comms = [col.comm(a, b) for a in A._igs for b in B._igs]
    return closure(A.pres, comms, A._igs + B._igs)


def derived_subgroup(H: Subgroup) -> Subgroup:
    return commutator_subgroup(H, H)


def normalizes(K: Subgroup, H: Subgroup) -> bool:
    """True if every element of ``K`` normalizes ``H``."""
    col = H.pres.collector
    return all(col.conj(h, k) in H for h in H._igs for k in K._igs)


def product(H: Subgroup, K: Subgroup) -> Subgroup:
    """``HK``; one factor must normalize the other."""
    _same_parent(H, K)
    if not (normalizes(K, H) or normalizes(H, K)):
        raise PresentationError("product: neither subgroup normalizes the other")
    return standardize(H._igs + K._igs, H.pres)


def frattini_subgroup(H: Subgroup) -> Subgroup:
    """``Phi(H) = H^p H'``."""
    col, p = H.pres.collector, H.pres.p
    gens = [col.pow(h, p) for h in H._igs]
    gens += [col.comm(a, b) for a, b in itertools.combinations(H._igs, 2)]
    return closure(H.pres, gens, H._igs)


def generating_set(H: Subgroup) -> list:
    """Igs members of ``H`` at depths not occupied by ``Phi(H)``; these
    generate ``H`` (a Burnside basis)."""
    phi = frattini_subgroup(H)
    return [h for h, d in zip(H._igs, H._depths) if d not in set(phi._depths)]


# -- homomorphism kernels ------------------------------------------------------------


def kernel_elementary(H: Subgroup, f: Callable) -> Subgroup:
    """Kernel of a homomorphism ``f`` from ``H`` to an elementary abelian
    group, given as a function from exponent vectors to tuples over ``F_p``.

    Works up the igs from the bottom: at each step the new generator either
    contributes a new image direction or, after subtracting a preimage from
    the part below, a new kernel generator.
    """
    pres = H.pres
    col, p = pres.collector, pres.p
    basis = []  # (pivot, image vector, element), image entries 0 at earlier pivots
    kgens = []
    for h in reversed(H._igs):
        v = [x % p for x in f(h)]
        w = h
        for piv, bv, be in basis:
            c = v[piv]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, bv)]
                w = col.mul(w, col.pow(be, -c))
        if any(v):
            piv = next(i for i, x in enumerate(v) if x)
            s = pow(v[piv], -1, p)
            basis.append((piv, [(x * s) % p for x in v], col.pow(w, s)))
        else:
            kgens.append(w)
    return standardize(kgens, pres)


def hom_kernel(H: Subgroup, image: Callable, target: PcPresentation) -> Subgroup:
    """Kernel of a homomorphism ``H -> target`` given on exponent vectors,
    computed layer by layer along the target's pc series."""
    K = H
    for k in range(target.n):
        K = kernel_elementary(K, lambda x, k=k: (image(x)[k],))
        if K.is_trivial():
            break
    return K


# -- intersections -------------------------------------------------------------------


def intersection(H: Subgroup, K: Subgroup, cap: int | None = None) -> Subgroup:
    """``H & K``.

    Tried in order: containment; both factors above ``Phi(G)`` (linear algebra
    in ``G/Phi(G)``; for groups of maximal class this covers distinct maximal
    subgroups meeting in ``G_2``); one factor normal (kernel of the quotient
    map restricted to the other); enumeration of the smaller factor up to
    ``cap`` elements.
    """
    _same_parent(H, K)
    cap = CAPS.intersection if cap is None else cap
    if H <= K:
        return H
    if K <= H:
        return K
    pres = H.pres
    G = whole_group(pres)
    phi = frattini_subgroup(G)
    if phi <= H and phi <= K:
        return _intersection_above(H, K, phi)
    for A, B in ((H, K), (K, H)):
        if B.is_normal():
            Q, epi = quotient_presentation(pres, B)
            return hom_kernel(A, epi.image_vec, Q)
    small, big = (H, K) if H.order <= K.order else (K, H)
    if small.order > cap:
        raise UnsupportedError(
            f"unsupported intersection: both subgroups exceed {cap} elements"
        )
    b = IgsBuilder(pres)
    for x in small.elements():
        if x in big and depth(b.sift(x)) < pres.n:
            b.add(x)
    return b.subgroup()


def _intersection_above(H, K, phi):
    pres = H.pres
    p = pres.p
    free = [d for d in range(pres.n) if d not in set(phi._depths)]

    def coords(x):
        r = phi.residue(x)
        return [r[d] for d in free]

    rows_h = _row_space([coords(h) for h in H._igs], p)
    rows_k = _row_space([coords(h) for h in K._igs], p)
    both = _span_intersection(rows_h, rows_k, p, len(free))
    col = pres.collector
    gens = list(phi._igs)
    for u in both:
        x = col.identity
        for d, c in zip(free, u):
            if c:
                x = col.mul(x, col.pow(_unit(pres, d), c))
        gens.append(x)
    return standardize(gens, pres)


def _unit(pres, d):
    v = [0] * pres.n
    v[d] = 1
    return tuple(v)


def _row_space(rows, p):
    """Reduced echelon basis of the span of ``rows`` over ``F_p``."""
    basis = []
    for r in rows:
        r = [x % p for x in r]
        for b in basis:
            piv = next(i for i, x in enumerate(b) if x)
            if r[piv]:
                c = r[piv]
                r = [(x - c * y) % p for x, y in zip(r, b)]
        if any(r):
            piv = next(i for i, x in enumerate(r) if x)
            s = pow(r[piv], -1, p)
            r = [(x * s) % p for x in r]
            for k, b in enumerate(basis):
                if b[piv]:
                    c = b[piv]
                    basis[k] = [(x - c * y) % p for x, y in zip(b, r)]
            basis.append(r)
    return basis


def _nullspace(rows, p, width):
    """Basis of ``{x : rows . x = 0}`` over ``F_p``."""
    ech = _row_space(rows, p)
    pivots = [next(i for i, x in enumerate(r) if x) for r in ech]
    out = []
    for f in range(width):
        if f in pivots:
            continue
        x = [0] * width
        x[f] = 1
        for r, piv in zip(ech, pivots):
            x[piv] = (-r[f]) % p
        out.append(x)
    return out


def _span_intersection(A, B, p, width):
    # U & W = annihilator of (ann U + ann W)
    ann = _nullspace(A, p, width) + _nullspace(B, p, width)
    return _nullspace(ann, p, width)


# -- centres and centralizers ---------------------------------------------------------


def centralizer(A: Subgroup, within: Subgroup | None = None) -> Subgroup:
    """``C_within(A)`` by descending the pc series one layer at a time."""
    pres = A.pres
    col = pres.collector
    C = whole_group(pres) if within is None else within
    agens = A._igs
    if not agens:
        return C
    for k in range(pres.n):
        def f(x, k=k):
            return tuple(col.comm(x, a)[k] for a in agens)

        if any(any(f(h)) for h in C._igs):
            C = kernel_elementary(C, f)
    return C


def center(pres_or_H) -> Subgroup:
    H = whole_group(pres_or_H) if isinstance(pres_or_H, PcPresentation) else pres_or_H
    return centralizer(H, within=H)


def center_bruteforce(pres: PcPresentation, cap: int | None = None) -> Subgroup:
    """Centre by testing every element against the generators."""
    cap = CAPS.center_bruteforce if cap is None else cap
    if pres.order > cap:
        raise UnsupportedError(f"brute-force centre needs |G| <= {cap}")
    col = pres.collector
    gens = _unit_vectors(pres)
    G = whole_group(pres)
    central = [x for x in G.elements() if all(col.mul(x, g) == col.mul(g, x) for g in gens)]
    return standardize(central, pres)


def centralizer_of_section(pres: PcPresentation, A: Subgroup, B: Subgroup) -> Subgroup:
    """``C_G(A/B) = {g : [g, a] in B for all a in A}`` for ``B <= A``, both normal."""
    Q, epi = quotient_presentation(pres, B)
    Abar = standardize([epi.image_vec(a) for a in A._igs], Q)
    Cbar = centralizer(Abar)
    return standardize([epi.lift_vec(c) for c in Cbar._igs] + list(B._igs), pres)


def maximal_subgroups(pres: PcPresentation) -> list:
    """All maximal subgroups, as preimages of hyperplanes of ``G/Phi(G)``.

    Ordered by the normalized functional cutting out the hyperplane.
    """
    p = pres.p
    G = whole_group(pres)
    phi = frattini_subgroup(G)
    free = [d for d in range(pres.n) if d not in set(phi._depths)]
    dim = len(free)
    out = []
    for fn in itertools.product(range(p), repeat=dim):
        if not any(fn) or fn[next(i for i, x in enumerate(fn) if x)] != 1:
            continue
        basis = _nullspace([list(fn)], p, dim)
        col = pres.collector
        gens = list(phi._igs)
        for u in basis:
            x = col.identity
            for d, c in zip(free, u):
                if c:
                    x = col.mul(x, col.pow(_unit(pres, d), c))
            gens.append(x)
        out.append(standardize(gens, pres))
    return out


def maximal_subgroups_centralizing(pres: PcPresentation, A: Subgroup, B: Subgroup) -> list:
    """Maximal subgroups ``M`` with ``[M, A] <= B`` (generator test)."""
    col = pres.collector
    return [
        M
        for M in maximal_subgroups(pres)
        if all(col.comm(m, a) in B for m in M._igs for a in A._igs)
    ]


# -- abelianization --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AbelianizationData:
    """``N/N'`` as ``Z/d_1 + ... + Z/d_m`` with ``d_1 | d_2 | ...``."""

    source: Subgroup
    factors: tuple
    _columns: tuple = field(repr=False)  # columns of V kept, one per factor
    sections: tuple = field(repr=False)  # exponent vectors in the parent group
    _memo: dict = field(default_factory=dict, repr=False)  # vector -> coordinates

    def project(self, a) -> tuple:
        v = a.exps if isinstance(a, Element) else tuple(a)
        y = self._memo.get(v)
        if y is None:
            c = self.source.exponents(v)
            if c is None:
                raise ValueError(f"{a} is not in the source subgroup")
            y = self._memo[v] = self.project_exponents(c)
        return y

    def project_exponents(self, c) -> tuple:
        return tuple(
            sum(x * v for x, v in zip(c, col)) % d for col, d in zip(self._columns, self.factors)
        )

    def section(self, i: int) -> Element:
        return Element(self.source.pres, self.sections[i])

    def from_coordinates(self, y) -> tuple:
        """An element of ``N`` projecting to ``y``."""
        col = self.source.pres.collector
        x = col.identity
        for s, e in zip(self.sections, y):
            if e:
                x = col.mul(x, col.pow(s, e))
        return x

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out


def abelianization(N: Subgroup) -> AbelianizationData:
    pres = N.pres
    col, p = pres.collector, pres.p
    hs = N._igs
    r = len(hs)
    if r == 0:
        return AbelianizationData(N, (), (), ())
    rows = []
    for k, h in enumerate(hs):
        c = N.exponents(col.pow(h, p))
        row = [-x for x in c]
        row[k] += p
        rows.append(row)
        for l in range(k + 1, r):
            rows.append(list(N.exponents(col.comm(hs[l], h))))
    D, _, V = smith_normal_form(rows)
    diag = [D[i][i] for i in range(r)]
    Vinv = invert_unimodular(V)
    keep = [i for i in range(r) if diag[i] != 1]
    columns = tuple(tuple(V[k][i] for k in range(r)) for i in keep)
    sections = tuple(N.element_from_exponents(Vinv[i]) for i in keep)
    return AbelianizationData(N, tuple(diag[i] for i in keep), columns, sections)


# -- quotients -----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Epimorphism:
    """The natural map ``G -> G/N`` for the quotient presentation."""

    source: PcPresentation
    target: PcPresentation
    kernel: Subgroup
    free_depths: tuple

    def image_vec(self, x) -> tuple:
        r = self.kernel.residue(x)
        return tuple(r[d] for d in self.free_depths)

    def __call__(self, a: Element) -> Element:
        return Element(self.target, self.image_vec(a.exps))

    def lift_vec(self, y) -> tuple:
        v = [0] * self.source.n
        for d, e in zip(self.free_depths, y):
            v[d] = e
        return tuple(v)

    def lift(self, a: Element) -> Element:
        return Element(self.source, self.lift_vec(a.exps))

    def preimage(self, H: Subgroup) -> Subgroup:
        return standardize([self.lift_vec(h) for h in H._igs] + list(self.kernel._igs), self.source)

    def image(self, H: Subgroup) -> Subgroup:
        return standardize([self.image_vec(h) for h in H._igs], self.target)


def quotient_presentation(pres: PcPresentation, N: Subgroup, name: str | None = None):
    """Pc presentation of ``G/N`` on the generators at depths outside ``N``,
    with the natural epimorphism."""
    if not N.is_normal():
        raise PresentationError("quotient_presentation: subgroup is not normal")
    col, p = pres.collector, pres.p
    taken = set(N._depths)
    free = tuple(d for d in range(pres.n) if d not in taken)
    proto = Epimorphism(pres, None, N, free)
    units = _unit_vectors(pres)
    power = [proto.image_vec(col.pow(units[d], p)) for d in free]
    conj = {}
    for a, da in enumerate(free):
        for b in range(a + 1, len(free)):
            conj[a, b] = proto.image_vec(col.conj(units[free[b]], units[da]))
    Q = PcPresentation(name or f"{pres.name}/N", p, len(free), tuple(power), conj)
    return Q, Epimorphism(pres, Q, N, free)


# -- exponent and omega ------------------------------------------------------------------


def _element_order_vec(col, p, x):
    k = 1
    while any(x):
        x = col.pow(x, p)
        k *= p
    return k


def exponent(H: Subgroup, cap: int | None = None) -> int:
    cap = CAPS.exponent if cap is None else cap
    col, p = H.pres.collector, H.pres.p
    if H.order <= cap:
        return max((_element_order_vec(col, p, x) for x in H.elements()), default=1)
    if H.is_abelian():
        return max((_element_order_vec(col, p, h) for h in H._igs), default=1)
    raise UnsupportedError(f"exponent of a nonabelian subgroup larger than {cap}")


def omega(H: Subgroup, i: int, cap: int | None = None) -> Subgroup:
    """``Omega_i(H) = <h : h^(p^i) = 1>``."""
    cap = CAPS.exponent if cap is None else cap
    col, p = H.pres.collector, H.pres.p
    q = p**i
    if H.order <= cap:
        b = IgsBuilder(H.pres)
        for x in H.elements():
            if not any(col.pow(x, q)) and depth(b.sift(x)) < H.pres.n:
                b.add(x)
        return b.subgroup()
    if H.is_abelian():
        ab = abelianization(H)
        gens = []
        for s, d in zip(ab.sections, ab.factors):
            gens.append(col.pow(s, d // min(d, q)))
        return standardize(gens, H.pres)
    raise UnsupportedError(f"omega of a nonabelian subgroup larger than {cap}")


def is_cyclic(H: Subgroup) -> bool:
    return len(abelianization(H).factors) <= 1
