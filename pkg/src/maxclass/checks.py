"""Instance checks of the structural statements about normally monomial
p-groups of maximal class, and the two decision procedures that predict
membership from ``G_1``.

Every check returns a :class:`CheckResult`; a statement whose hypotheses do
not hold on the group is reported as not applicable, never as a pass.
Membership in the class of normally monomial groups is always taken from the
certificate, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .characters import NmCertificate, _decode, _OrbitContext, cd_of_quotient, certify
from .pc import PcPresentation
from .results import UNEXERCISED, CheckResult, not_applicable, verdict
from .series import (
    MaximalClassData,
    NotMaximalClassError,
    analyze,
    cij_pattern_check,
    major_centralizer_crosscheck,
    major_centralizer_generators_check,
    maximal_class_normal_subgroups,
    pattern_parameter,
    positive_degree_of_commutativity_check,
    power_structure_check,
    verify_star_identity,
    witness_commutator_depth_check,
    witness_depth_check,
    chief_series_normality_check,
)
from .subgroups import (
    abelianization,
    center,
    commutator_subgroup,
    exponent,
    is_cyclic,
    quotient_presentation,
    standardize,
)

THEOREM_A_SETS = ({1, 5}, {1, 5, 25}, {1, 5, 125}, {1, 5, 25, 125})


class GroupContext:
    """Lazily computed data shared by the checks for one group."""

    def __init__(self, pres: PcPresentation, cert: NmCertificate | None = None):
        self.pres = pres
        self._cert = cert

    @cached_property
    def mcd(self) -> MaximalClassData | None:
        try:
            return analyze(self.pres)
        except NotMaximalClassError:
            return None

    @property
    def cert(self) -> NmCertificate:
        if self._cert is None:
            self._cert = certify(self.pres)
        return self._cert

    @property
    def in_M(self) -> bool:
        return self.mcd is not None and self.cert.normally_monomial

    @property
    def p(self) -> int:
        return self.pres.p

    @property
    def n(self) -> int:
        return self.pres.n

    @cached_property
    def G1_class(self) -> int:
        return self.mcd.G1_class


def _not_in_M(cid, stmt, pre, ctx):
    if ctx.mcd is None:
        return not_applicable(cid, stmt, pre, "not of maximal class")
    return not_applicable(cid, stmt, pre, f"not normally monomial (deficit {ctx.cert.verdict.missing})")


# -- quotients and induction -------------------------------------------------------------


def quotient_inheritance_check(ctx: GroupContext) -> CheckResult:
    """Every quotient by a normal subgroup of index at least ``p^3`` is again
    normally monomial; its degree set also agrees with kernel filtering."""
    cid = "quotient-inheritance"
    stmt = "G in M, N normal of index >= p^3: G/N in M"
    pre = "G in M"
    if not ctx.in_M:
        return _not_in_M(cid, stmt, pre, ctx)
    mcd = ctx.mcd
    bad, tested = [], 0
    for i in range(3, mcd.n):
        N = mcd.G(i)
        Q, _ = quotient_presentation(ctx.pres, N, f"{ctx.pres.name}/G_{i}")
        qc = certify(Q)
        tested += 1
        if not qc.normally_monomial:
            bad.append(f"G/G_{i}: deficit {qc.verdict.missing}")
        elif set(qc.verdict.cd) != cd_of_quotient(ctx.pres, N, ctx.cert):
            bad.append(f"G/G_{i}: degree sets differ")
    if not tested:
        return not_applicable(cid, stmt, pre, "no normal subgroup of index >= p^3 besides 1")
    return verdict(cid, not bad, stmt, pre, f"{tested} quotients certified", bad)


def induced_irreducibility_check(ctx: GroupContext) -> CheckResult:
    """For ``theta = lambda^{G_i}`` irreducible and nonlinear, with ``lambda``
    linear on a normal ``N < G_i``, ``theta^G`` is irreducible, i.e. the
    inertia group of ``lambda`` in ``G`` is ``N`` as well."""
    cid = "induced-irreducibility"
    stmt = "G in M, theta in Irr(G_i), theta(1) > 1: theta^G in Irr(G)"
    pre = "G in M"
    if not ctx.in_M:
        return _not_in_M(cid, stmt, pre, ctx)
    mcd = ctx.mcd
    pres = ctx.pres
    normals = maximal_class_normal_subgroups(mcd)
    bad, tested = [], 0
    for i in range(1, mcd.n):
        Gi = mcd.G(i)
        for N in normals:
            if not N <= Gi or N == Gi:
                continue
            inner_index = Gi.order // N.order
            outer_index = pres.order // N.order
            ab = abelianization(N)
            if not ab.factors:
                continue
            inner = _OrbitContext(N, ab, Gi)
            outer = _OrbitContext(N, ab, None)
            seen = np.zeros(ab.order, dtype=bool)
            for code in range(ab.order):
                if seen[code]:
                    continue
                dual = _decode(code, ab.factors)
                orb = inner.orbit(dual)
                for b in orb:
                    seen[inner.code(b)] = True
                if len(orb) != inner_index:
                    continue
                tested += 1
                if len(outer.orbit(dual)) != outer_index:
                    bad.append(f"i={i}, |N|={N.order}, dual={dual}")
    if not tested:
        return not_applicable(cid, stmt, pre, "no nonlinear character of any G_i is induced from a normal subgroup")
    return verdict(cid, not bad, stmt, pre, f"{tested} nonlinear characters theta tested", bad)


# -- class-two bounds -----------------------------------------------------------------------


def witness_containment_check(ctx: GroupContext) -> CheckResult:
    cid = "derived-in-witness-commutator"
    stmt = "G in M, cl(G_1) = 2, exp(G_1') = p, G_t' = 1 != G_{t-1}': G_{t-1}' <= [G_t, <s_i>] for 1 <= i <= t-1"
    pre = "G in M, cl(G_1) = 2, exp(G_1') = p"
    if not ctx.in_M:
        return _not_in_M(cid, stmt, pre, ctx)
    mcd = ctx.mcd
    p = ctx.p
    if ctx.G1_class != 2:
        return not_applicable(cid, stmt, pre, f"cl(G_1) = {ctx.G1_class}")
    if exponent(mcd.G1_derived) != p:
        return not_applicable(cid, stmt, pre, "exp(G_1') != p")
    t = next(i for i in range(1, mcd.n + 1) if mcd.derived(i).is_trivial())
    target = mcd.derived(t - 1)
    bad = []
    for i in range(1, t):
        S = standardize([mcd.s_(i)], ctx.pres)
        if not target <= commutator_subgroup(mcd.G(t), S):
            bad.append(f"i={i}")
    return verdict(cid, not bad, stmt, pre, f"t = {t}", bad)


def derived_bound_check(ctx: GroupContext) -> CheckResult:
    cid = "major-centralizer-derived-bound"
    stmt = "G in M, cl(G_1) = 2: |G_1'| <= p^(p-2)"
    pre = "G in M, cl(G_1) = 2"
    if not ctx.in_M:
        return _not_in_M(cid, stmt, pre, ctx)
    if ctx.G1_class != 2:
        return not_applicable(cid, stmt, pre, f"cl(G_1) = {ctx.G1_class}")
    e = ctx.mcd.G1_derived.log_order
    return verdict(cid, e <= ctx.p - 2, stmt, pre, f"|G_1'| = p^{e}")


def largest_degree_bound_check(ctx: GroupContext) -> CheckResult:
    cid = "largest-degree-bound"
    stmt = "G in M, |G| >= p^(p+2): cl(G_1) = 2 gives b(G) <= p^((p+1)/2), cl(G_1) = 3 gives b(G) <= p^p"
    pre = "G in M, |G| >= p^(p+2), cl(G_1) in {2, 3}"
    if not ctx.in_M:
        return _not_in_M(cid, stmt, pre, ctx)
    p, n = ctx.p, ctx.n
    if n < p + 2:
        return not_applicable(cid, stmt, pre, f"n = {n}")
    c = ctx.G1_class
    b = max(ctx.cert.verdict.cd)
    if c == 2:
        return verdict(cid, b * b <= p ** (p + 1), stmt, pre, f"cl(G_1) = 2, b(G) = {b}")
    if c == 3:
        return verdict(cid, b <= p**p, stmt, pre, f"cl(G_1) = 3, b(G) = {b}")
    return not_applicable(cid, stmt, pre, f"cl(G_1) = {c}")


def _large_order(ctx):
    p = ctx.p
    return ctx.n >= 4 * p - 10


def class_bound_check(ctx: GroupContext) -> CheckResult:
    cid = "major-centralizer-class-bound"
    stmt = "G in M, |G| >= p^(4p-10): cl(G_1) <= 2"
    pre = "G in M, |G| >= p^(4p-10)"
    if not ctx.in_M:
        return _not_in_M(cid, stmt, pre, ctx)
    if not _large_order(ctx):
        return not_applicable(cid, stmt, pre, f"|G| = p^{ctx.n} < p^{4 * ctx.p - 10}")
    return verdict(cid, ctx.G1_class <= 2, stmt, pre, f"cl(G_1) = {ctx.G1_class}")


def theorem_b_check(ctx: GroupContext) -> CheckResult:
    cid = "theorem-b-degree-bound"
    stmt = "G in M, |G| >= p^(4p-10): b(G) <= p^((p+1)/2)"
    pre = "G in M, |G| >= p^(4p-10)"
    if not ctx.in_M:
        return _not_in_M(cid, stmt, pre, ctx)
    if not _large_order(ctx):
        return not_applicable(cid, stmt, pre, f"|G| = p^{ctx.n} < p^{4 * ctx.p - 10}")
    b = max(ctx.cert.verdict.cd)
    return verdict(cid, b * b <= ctx.p ** (ctx.p + 1), stmt, pre, f"b(G) = {b}")


def corpus_degree_bound_check(ctx: GroupContext) -> CheckResult:
    """Desk-scale stand-in for the large-order bound at ``p = 5``."""
    cid = "degree-bound-p5"
    stmt = "G in M, p = 5: b(G) <= 5^3"
    pre = "G in M, p = 5"
    if not ctx.in_M:
        return _not_in_M(cid, stmt, pre, ctx)
    if ctx.p != 5:
        return not_applicable(cid, stmt, pre, f"p = {ctx.p}")
    b = max(ctx.cert.verdict.cd)
    return verdict(cid, b <= 125, stmt, pre, f"b(G) = {b}")


def theorem_a_check(ctx: GroupContext) -> CheckResult:
    cid = "theorem-a-degree-sets"
    stmt = "G in M of maximal class, p = 5: cd(G) is {1,5}, {1,5,25}, {1,5,125} or {1,5,25,125}"
    pre = "G in M, p = 5"
    if not ctx.in_M:
        return _not_in_M(cid, stmt, pre, ctx)
    if ctx.p != 5:
        return not_applicable(cid, stmt, pre, f"p = {ctx.p}")
    got = set(ctx.cert.verdict.cd)
    return verdict(cid, got in THEOREM_A_SETS, stmt, pre, f"cd(G) = {sorted(got)}")


# -- decision procedures ----------------------------------------------------------------------


@dataclass(frozen=True)
class Prediction:
    applicable: bool
    member: bool | None = None  # predicted membership in M
    cd: tuple | None = None  # predicted degree set, when the branch gives one
    top_count: int | None = None  # predicted number of characters of the top degree
    reason: str = ""


def noncyclic_center_predicate(pres: PcPresentation, mcd: MaximalClassData | None = None) -> Prediction:
    """Predict membership from ``Z(G_1)`` when ``|G_1'| = p``.

    Cyclic ``Z(G_1)`` with ``|G| > p^3`` and ``p`` odd: not a member.
    Noncyclic ``Z(G_1)``: a member with ``cd(G) = {1, p, p^(k+1)}`` where
    ``|G_1 : Z(G_1)| = p^(2k)``, and ``(|G| - |G|/p) / p^(2k+2)``
    characters of degree ``p^(k+1)``.
    """
    try:
        mcd = analyze(pres) if mcd is None else mcd
    except NotMaximalClassError:
        return Prediction(False, reason="not of maximal class")
    p = pres.p
    if mcd.G1_derived.order != p:
        return Prediction(False, reason=f"|G_1'| = {mcd.G1_derived.order}")
    Z1 = center(mcd.G(1))
    if is_cyclic(Z1):
        if pres.n > 3 and p != 2:
            return Prediction(True, False, reason="Z(G_1) cyclic")
        return Prediction(False, reason="Z(G_1) cyclic but |G| = p^3 or p = 2")
    k = pattern_parameter(mcd)
    if k is None:
        return Prediction(True, True, reason="Z(G_1) noncyclic; |G_1:Z(G_1)| is an odd power")
    top = p ** (k + 1)
    count = (pres.order - pres.order // p) // top**2
    return Prediction(True, True, (1, p, top), count, f"Z(G_1) noncyclic, k = {k}")


def noncyclic_center_check(ctx: GroupContext) -> CheckResult:
    cid = "noncyclic-center-predicate"
    stmt = "|G_1'| = p: Z(G_1) cyclic and |G| > p^3 gives G not in M; Z(G_1) noncyclic gives G in M with cd(G) = {1, p, p^(k+1)}"
    pre = "maximal class, |G_1'| = p"
    if ctx.mcd is None:
        return not_applicable(cid, stmt, pre, "not of maximal class")
    pred = noncyclic_center_predicate(ctx.pres, ctx.mcd)
    if not pred.applicable:
        return not_applicable(cid, stmt, pre, pred.reason)
    cert = ctx.cert
    bad = []
    if pred.member != cert.normally_monomial:
        bad.append(f"predicted member={pred.member}, certificate says {cert.normally_monomial}")
    elif pred.member and pred.cd is not None:
        if set(pred.cd) != set(cert.verdict.cd):
            bad.append(f"predicted cd {list(pred.cd)}, certified {list(cert.verdict.cd)}")
        top = max(pred.cd)
        if cert.degree_counts().get(top, 0) != pred.top_count:
            bad.append(f"predicted {pred.top_count} characters of degree {top}")
    return verdict(cid, not bad, stmt, pre, pred.reason, bad)


def abelian_g3_predicate(pres: PcPresentation, mcd: MaximalClassData | None = None) -> Prediction:
    """For ``p = 5``, ``|G| >= 5^8``, ``cl(G_1) = 2`` and ``|G_1'| = 25``:
    the group is a member with ``cd(G) = {1,5,25,125}`` exactly when ``G_3``
    is abelian and ``|G_2'| = 5``."""
    if pres.p != 5 or pres.n < 8:
        return Prediction(False, reason=f"p = {pres.p}, n = {pres.n}")
    try:
        mcd = analyze(pres) if mcd is None else mcd
    except NotMaximalClassError:
        return Prediction(False, reason="not of maximal class")
    if mcd.G1_class != 2 or mcd.G1_derived.order != 25:
        return Prediction(False, reason=f"cl(G_1) = {mcd.G1_class}, |G_1'| = {mcd.G1_derived.order}")
    yes = mcd.G(3).is_abelian() and mcd.derived(2).order == 5
    return Prediction(
        True,
        yes,
        (1, 5, 25, 125) if yes else None,
        reason="G_3 abelian and |G_2'| = 5" if yes else "G_3 nonabelian or |G_2'| != 5",
    )


def abelian_g3_check(ctx: GroupContext) -> CheckResult:
    cid = "abelian-g3-predicate"
    stmt = "p = 5, |G| >= 5^8, cl(G_1) = 2, |G_1'| = 25: (G in M and cd(G) = {1,5,25,125}) iff (G_3 abelian and |G_2'| = 5)"
    pre = "p = 5, |G| >= 5^8, cl(G_1) = 2, |G_1'| = 25"
    pred = abelian_g3_predicate(ctx.pres, ctx.mcd)
    if not pred.applicable:
        return not_applicable(cid, stmt, pre, pred.reason)
    cert = ctx.cert
    actual = cert.normally_monomial and set(cert.verdict.cd) == {1, 5, 25, 125}
    return verdict(cid, actual == pred.member, stmt, pre, f"{pred.reason}; certificate: {actual}")


# -- suites ------------------------------------------------------------------------------------


def structural_checks(ctx: GroupContext, samples=()) -> list:
    mcd = ctx.mcd
    if mcd is None:
        return [not_applicable("maximal-class", "order p^n, class n-1", "", "not of maximal class")]
    out = [
        chief_series_normality_check(mcd),
        witness_depth_check(mcd),
        major_centralizer_crosscheck(mcd),
    ]
    out += verify_star_identity(mcd)
    out += [
        witness_commutator_depth_check(mcd, samples),
        major_centralizer_generators_check(mcd),
        positive_degree_of_commutativity_check(mcd),
        power_structure_check(mcd),
        cij_pattern_check(mcd),
    ]
    return out


def membership_checks(ctx: GroupContext) -> list:
    return [
        quotient_inheritance_check(ctx),
        induced_irreducibility_check(ctx),
        witness_containment_check(ctx),
        derived_bound_check(ctx),
        largest_degree_bound_check(ctx),
        class_bound_check(ctx),
        theorem_b_check(ctx),
        corpus_degree_bound_check(ctx),
        theorem_a_check(ctx),
        noncyclic_center_check(ctx),
        abelian_g3_check(ctx),
    ]


def lemma_checks(ctx: GroupContext, samples=()) -> list:
    return structural_checks(ctx, samples) + membership_checks(ctx)


def unexercised_degree_set() -> CheckResult:
    return CheckResult(
        "theorem-a-degree-set-1-5-125",
        UNEXERCISED,
        "cd(G) = {1,5,125} occurs for some G in M of maximal class, p = 5",
        "",
        "unexercised (external example): no presentation of a witness group is available",
    )
