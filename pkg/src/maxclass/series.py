"""Series structure of p-groups of maximal class.

For a group of order ``p^n`` and class ``n - 1`` the chief series is
``G_0 = G``, ``G_1`` the major centralizer ``C_G(G_2/G_4)`` and
``G_i = gamma_i(G)`` for ``i >= 2``.  Witnesses: ``s`` outside ``G_1``,
``s_1`` in ``G_1 - G_2`` and ``s_i = [s_{i-1}, s]``; ``C_ij = [s_i, s_j]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .pc import Element, PcPresentation, PresentationError
from .results import CheckResult, not_applicable, verdict
from .subgroups import (
    CAPS,
    IgsBuilder,
    Subgroup,
    UnsupportedError,
    center,
    centralizer_of_section,
    commutator_subgroup,
    derived_subgroup,
    frattini_subgroup,
    maximal_subgroups,
    maximal_subgroups_centralizing,
    standardize,
    trivial_subgroup,
    whole_group,
)


class NotMaximalClassError(PresentationError):
    pass


def lower_central_series(H) -> list:
    """``[gamma_1, gamma_2, ..., 1]``."""
    if isinstance(H, PcPresentation):
        H = whole_group(H)
    out = [H]
    while not out[-1].is_trivial():
        nxt = commutator_subgroup(out[-1], H)
        if nxt == out[-1]:  # cannot happen for a p-group; guards a bad presentation
            raise PresentationError("lower central series does not terminate")
        out.append(nxt)
    return out


def nilpotency_class(H) -> int:
    return len(lower_central_series(H)) - 1


def is_maximal_class(pres: PcPresentation) -> bool:
    return pres.n >= 3 and nilpotency_class(pres) == pres.n - 1


@dataclass(frozen=True, eq=False)
class MaximalClassData:
    group: PcPresentation
    series: tuple  # G_0 .. G_n
    s: Element
    witnesses: tuple  # s_1 .. s_{n-1}
    c_table: dict  # (i, j) -> [s_i, s_j] for 1 <= i < j <= n-1, identity omitted
    major_centralizer_fallback: bool = False
    lower_central: tuple = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def p(self) -> int:
        return self.group.p

    def G(self, i: int) -> Subgroup:
        """``G_i``, trivial for ``i >= n``."""
        if i >= self.n:
            return self.series[-1]
        return self.series[i]

    def s_(self, i: int) -> Element:
        """``s_i`` for ``i >= 1``; ``s_i = 1`` for ``i >= n``."""
        if i >= self.n:
            return self.group.identity
        return self.witnesses[i - 1]

    def C(self, i: int, j: int) -> Element:
        if i == j:
            return self.group.identity
        if i > j:
            return self.C(j, i).inverse()
        return self.c_table.get((i, j), self.group.identity)

    @cached_property
    def G1_derived(self) -> Subgroup:
        return derived_subgroup(self.G(1))

    @cached_property
    def G1_class(self) -> int:
        return nilpotency_class(self.G(1))

    @cached_property
    def center(self) -> Subgroup:
        return center(self.group)

    def derived(self, i: int) -> Subgroup:
        return derived_subgroup(self.G(i))


def analyze(pres: PcPresentation) -> MaximalClassData:
    if pres.n < 3:
        raise NotMaximalClassError(f"order {pres.p}^{pres.n} is below p^3")
    lcs = lower_central_series(pres)
    if len(lcs) - 1 != pres.n - 1:
        raise NotMaximalClassError(
            f"not maximal class: class {len(lcs) - 1}, expected {pres.n - 1}"
        )
    G = lcs[0]
    n = pres.n
    gamma = lambda i: lcs[i - 1] if i - 1 < len(lcs) else lcs[-1]
    G2, G4 = gamma(2), gamma(4)
    G1 = centralizer_of_section(pres, G2, G4)
    fallback = False
    if G1 == G:
        # degenerate small case: take the maximal subgroup generated by the
        # Frattini subgroup and the later Burnside generators
        fallback = True
        phi = frattini_subgroup(G)
        free = [d for d in range(n) if d not in set(phi.depths)]
        G1 = standardize([pres.gen(d + 1) for d in free[1:]] + list(phi.igs), pres)
    series = [G, G1] + [gamma(i) for i in range(2, n + 1)]
    s = next(g for g in pres.gens if g not in G1)
    s1 = next(h for h in G1.igs if h not in G2)
    ws = [s1]
    for _ in range(2, n):
        ws.append(ws[-1].comm(s))
    table = {}
    for i in range(1, n):
        for j in range(i + 1, n):
            c = ws[i - 1].comm(ws[j - 1])
            if not c.is_identity():
                table[i, j] = c
    return MaximalClassData(pres, tuple(series), s, tuple(ws), table, fallback, tuple(lcs))


def major_centralizer_crosscheck(mcd: MaximalClassData) -> CheckResult:
    """Compare the layered ``C_G(G_2/G_4)`` with the maximal subgroups passing
    the generator test ``[M, G_2] <= G_4``."""
    cid = "major-centralizer-crosscheck"
    stmt = "C_G(G_2/G_4) by layered kernels equals the unique maximal M with [M,G_2] <= G_4"
    if mcd.n < 5:
        return not_applicable(cid, stmt, "|G| >= p^5", f"n = {mcd.n}")
    passing = maximal_subgroups_centralizing(mcd.group, mcd.G(2), mcd.G(4))
    ok = len(passing) == 1 and passing[0] == mcd.G(1)
    return verdict(cid, ok, stmt, "|G| >= p^5", f"{len(passing)} maximal subgroups pass")


# -- identity for C_ij^s ----------------------------------------------------------------


def _star_pairs(mcd):
    return [(i, j) for i in range(1, mcd.n) for j in range(i + 1, mcd.n)]


def star_expansion(mcd, i, j) -> Element:
    """Exact expansion of ``[s_i s_{i+1}, s_j s_{j+1}]`` into table entries."""
    a, b = mcd.s_(i + 1), mcd.s_(j + 1)
    return (
        mcd.C(i, j + 1).conj(a)
        * mcd.C(i, j).conj(b * a)
        * mcd.C(i + 1, j + 1)
        * mcd.C(i + 1, j).conj(b)
    )


def star_reordered(mcd, i, j) -> Element:
    """The reordered form, ``C_ij^(s_{i+1} s_{j+1}) C_{i+1,j}^s_{j+1}
    C_{i,j+1}^s_{i+1} C_{i+1,j+1}``, exact when ``G_1'`` is abelian."""
    a, b = mcd.s_(i + 1), mcd.s_(j + 1)
    return mcd.C(i, j).conj(a * b) * mcd.C(i + 1, j).conj(b) * mcd.C(i, j + 1).conj(a) * mcd.C(i + 1, j + 1)


def verify_star_identity(mcd: MaximalClassData) -> list:
    """Check ``C_ij^s`` against its expansions for ``1 <= i < j <= n-1``.

    Returns results for the exact expansion (always applicable), the
    reordered product (applicable when ``G_1'`` is abelian) and the class-two
    form ``C_ij C_{i+1,j} C_{i,j+1} C_{i+1,j+1}`` (applicable when
    ``cl(G_1) <= 2``).
    """
    pairs = _star_pairs(mcd)
    s = mcd.s
    lhs = {(i, j): mcd.C(i, j).conj(s) for i, j in pairs}
    out = []
    bad = [(i, j) for i, j in pairs if lhs[i, j] != star_expansion(mcd, i, j)]
    out.append(
        verdict(
            "commutator-table-identity",
            not bad,
            "C_ij^s = C_{i,j+1}^{s_{i+1}} C_ij^{s_{j+1} s_{i+1}} C_{i+1,j+1} C_{i+1,j}^{s_{j+1}}",
            "",
            f"{len(pairs)} pairs",
            [f"(i,j)={p}" for p in bad],
        )
    )
    stmt = "C_ij^s = C_ij^{s_{i+1}s_{j+1}} C_{i+1,j}^{s_{j+1}} C_{i,j+1}^{s_{i+1}} C_{i+1,j+1}"
    if mcd.G1_derived.is_abelian():
        bad = [(i, j) for i, j in pairs if lhs[i, j] != star_reordered(mcd, i, j)]
        out.append(verdict("commutator-table-identity-reordered", not bad, stmt, "G_1' abelian",
                           f"{len(pairs)} pairs", [f"(i,j)={p}" for p in bad]))
    else:
        out.append(not_applicable("commutator-table-identity-reordered", stmt, "G_1' abelian"))
    stmt = "C_ij^s = C_ij C_{i+1,j} C_{i,j+1} C_{i+1,j+1}"
    if mcd.G1_class <= 2:
        bad = [
            (i, j)
            for i, j in pairs
            if lhs[i, j] != mcd.C(i, j) * mcd.C(i + 1, j) * mcd.C(i, j + 1) * mcd.C(i + 1, j + 1)
        ]
        out.append(verdict("class-two-commutator-table", not bad, stmt, "cl(G_1) <= 2",
                           f"{len(pairs)} pairs", [f"(i,j)={p}" for p in bad]))
    else:
        out.append(not_applicable("class-two-commutator-table", stmt, "cl(G_1) <= 2"))
    return out


# -- structural checks ----------------------------------------------------------------------


def center_order_log(H: Subgroup) -> int:
    return center(H).log_order


def pattern_parameter(mcd: MaximalClassData):
    """``k`` with ``|G_1 : Z(G_1)| = p^(2k)``, or None if the index is an odd power."""
    e = mcd.G(1).log_order - center(mcd.G(1)).log_order
    return e // 2 if e % 2 == 0 else None


def cij_pattern_check(mcd: MaximalClassData) -> CheckResult:
    cid = "cij-vanishing-pattern"
    stmt = "|G_1'| = p, |G_1:Z(G_1)| = p^(2k): C_ij != 1 for i+j = 2k+1 and C_ij = 1 for i+j > 2k+1"
    pre = "|G_1'| = p and |G| >= p^(p+2)"
    p, n = mcd.p, mcd.n
    if mcd.G1_derived.order != p or n < p + 2:
        return not_applicable(cid, stmt, pre, f"|G_1'| = {mcd.G1_derived.order}, n = {n}")
    k = pattern_parameter(mcd)
    if k is None:
        return verdict(cid, False, stmt, pre, "|G_1:Z(G_1)| is an odd power of p")
    bad = []
    for i in range(1, n):
        for j in range(i + 1, n):
            c = mcd.C(i, j)
            if i + j == 2 * k + 1 and c.is_identity():
                bad.append(f"C_{i},{j} = 1")
            if i + j > 2 * k + 1 and not c.is_identity():
                bad.append(f"C_{i},{j} != 1")
    return verdict(cid, not bad, stmt, pre, f"k = {k}", bad)


def degree_of_commutativity(mcd: MaximalClassData):
    """Largest ``l`` in ``0 .. n-2`` with ``[G_i, G_j] <= G_{i+j+l}`` for all
    ``i, j >= 1``; ``G_m`` is trivial for ``m >= n``.  None if even ``l = 0``
    fails."""
    n = mcd.n
    best = n - 2
    for i in range(1, n):
        for j in range(i, n):
            if i + j >= n:
                continue
            K = commutator_subgroup(mcd.G(i), mcd.G(j))
            if K.is_trivial():
                continue
            level = max(k for k in range(n + 1) if K <= mcd.G(k))
            best = min(best, level - i - j)
    return best if best >= 0 else None


def positive_degree_of_commutativity_check(mcd) -> CheckResult:
    cid = "positive-degree-of-commutativity"
    stmt = "n > p+1 implies positive degree of commutativity"
    pre = "n > p+1"
    if mcd.n <= mcd.p + 1:
        return not_applicable(cid, stmt, pre, f"n = {mcd.n}")
    l = degree_of_commutativity(mcd)
    return verdict(cid, l is not None and l >= 1, stmt, pre, f"degree of commutativity = {l}")


def major_centralizer_generators_check(mcd: MaximalClassData) -> CheckResult:
    cid = "major-centralizer-generators"
    stmt = "G_1 = <s_1,...,s_{p-1}> and G_i = <s_i,...,s_{i+p-2}> for 2 <= i <= n-p-1"
    pre = "|G| >= p^(p+2)"
    p, n = mcd.p, mcd.n
    if n < p + 2:
        return not_applicable(cid, stmt, pre, f"n = {n}")
    bad = []
    for i in [1] + list(range(2, n - p)):
        H = standardize([mcd.s_(k) for k in range(i, i + p - 1)], mcd.group)
        if H != mcd.G(i):
            bad.append(f"G_{i}")
    return verdict(cid, not bad, stmt, pre, "", bad)


def witness_commutator_depth_check(mcd: MaximalClassData, samples=()) -> CheckResult:
    """``[s, g]`` lies in ``G_{i+1} - G_{i+2}`` for ``g`` in ``G_i - G_{i+1}``.

    ``g -> [s, g]`` induces a homomorphism ``G_i/G_{i+1} -> G_{i+1}/G_{i+2}``
    of groups of order ``p``, so testing ``g = s_i`` covers the whole layer;
    ``samples`` adds further elements.
    """
    cid = "witness-commutator-depth"
    stmt = "s in G - G_1, g in G_i - G_{i+1}, 1 <= i <= n-2: [s,g] in G_{i+1} - G_{i+2}"
    pre = "|G| >= p^(p+2)"
    p, n = mcd.p, mcd.n
    if n < p + 2:
        return not_applicable(cid, stmt, pre, f"n = {n}")
    bad = []
    tests = [(i, mcd.s_(i)) for i in range(1, n - 1)] + list(samples)
    for i, g in tests:
        if g not in mcd.G(i) or g in mcd.G(i + 1):
            bad.append(f"sample for i={i} is not in G_i - G_i+1")
            continue
        c = mcd.s.comm(g)
        if c not in mcd.G(i + 1) or c in mcd.G(i + 2):
            bad.append(f"i={i}, g={g}")
    return verdict(cid, not bad, stmt, pre, f"{len(tests)} elements tested", bad)


def witness_depth_check(mcd: MaximalClassData) -> CheckResult:
    cid = "witness-depths"
    bad = [i for i in range(1, mcd.n) if mcd.s_(i) not in mcd.G(i) or mcd.s_(i) in mcd.G(i + 1)]
    return verdict(cid, not bad, "s_i in G_i - G_{i+1} for 1 <= i <= n-1", "", "", [f"s_{i}" for i in bad])


def power_subgroup(H: Subgroup, cap: int | None = None) -> Subgroup:
    """``<h^p : h in H>`` by enumeration."""
    cap = CAPS.exponent if cap is None else cap
    if H.order > cap:
        raise UnsupportedError(f"power subgroup of a group larger than {cap}")
    col, p = H.pres.collector, H.pres.p
    b = IgsBuilder(H.pres)
    for x in H.elements():
        y = col.pow(x, p)
        if b.sift(y) != col.identity:
            b.add(y)
    return b.subgroup()


def power_structure_check(mcd: MaximalClassData, cap: int | None = None) -> CheckResult:
    cid = "power-structure"
    stmt = "|G| >= p^(p+2): G_i^p = G_{i+p-1} for i >= 1"
    pre = "|G| >= p^(p+2)"
    p, n = mcd.p, mcd.n
    if n < p + 2:
        return not_applicable(cid, stmt, pre, f"n = {n}")
    bad = []
    try:
        for i in range(1, n):
            if power_subgroup(mcd.G(i), cap) != mcd.G(i + p - 1):
                bad.append(f"G_{i}")
    except UnsupportedError as e:
        return CheckResult(cid, "skipped", stmt, pre, f"skipped by budget: {e}")
    return verdict(cid, not bad, stmt, pre, "", bad)


def chief_series_normality_check(mcd: MaximalClassData) -> CheckResult:
    cid = "chief-series-normal"
    bad = [i for i, H in enumerate(mcd.series) if not H.is_normal()]
    sizes = [H.log_order for H in mcd.series]
    steps_ok = sizes == [mcd.n - i for i in range(mcd.n + 1)]
    return verdict(
        cid,
        not bad and steps_ok,
        "every G_i is normal and |G_i : G_{i+1}| = p",
        "",
        "",
        [f"G_{i} not normal" for i in bad] + ([] if steps_ok else [f"log orders {sizes}"]),
    )


def maximal_class_normal_subgroups(mcd: MaximalClassData) -> list:
    """Normal subgroups of a maximal-class group: the chain ``G_2 > ... > 1``
    together with ``G`` and the ``p + 1`` maximal subgroups."""
    out = [mcd.G(0)] + maximal_subgroups(mcd.group) + [mcd.G(i) for i in range(2, mcd.n + 1)]
    return out
