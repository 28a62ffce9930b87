"""Brute-force reference computations for small groups.

Nothing here uses the subgroup or character machinery beyond building
subgroups from generators, so agreement with the main engine is a genuine
cross-check.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .characters import InducedCharacterRecord, RootOfUnityExponent
from .pc import Element, PcPresentation
from .subgroups import UnsupportedError, closure, standardize


@dataclass
class Budgets:
    elements: int = 5**8
    normal_subgroups: int = 5**5
    character_values: int = 10**7  # |G:N| * number of classes


BUDGETS = Budgets()


def _check_elements(pres, cap):
    cap = BUDGETS.elements if cap is None else cap
    if pres.order > cap:
        raise UnsupportedError(f"|G| = {pres.order} exceeds the element budget {cap}")


def _units(pres):
    return [g.exps for g in pres.gens]


def element_mask(pres: PcPresentation, cap: int | None = None) -> np.ndarray:
    """Mask over element codes reached by BFS from the identity."""
    _check_elements(pres, cap)
    return pres.collector.reachable(_units(pres))


def enumerate_elements(pres: PcPresentation, cap: int | None = None) -> set:
    mask = element_mask(pres, cap)
    col = pres.collector
    return {Element(pres, col.decode(int(c))) for c in np.flatnonzero(mask)}


def count_elements(pres: PcPresentation, cap: int | None = None) -> int:
    return int(element_mask(pres, cap).sum())


@dataclass(frozen=True, eq=False)
class ClassData:
    group: PcPresentation
    representatives: tuple
    sizes: tuple
    labels: np.ndarray = field(repr=False)

    def index(self, a) -> int:
        v = a.exps if isinstance(a, Element) else tuple(a)
        return int(self.labels[self.group.collector.encode(v)])

    def __len__(self):
        return len(self.representatives)


def conjugacy_classes(pres: PcPresentation, cap: int | None = None) -> ClassData:
    """Classes by BFS under conjugation by the pc generators; each class is
    represented by its lexicographically least element."""
    _check_elements(pres, cap)
    col = pres.collector
    labels, reps, sizes = col.class_labels(_units(pres))
    return ClassData(
        pres,
        tuple(Element(pres, col.decode(int(c))) for c in reps),
        tuple(int(s) for s in sizes),
        labels,
    )


def _all_vectors(pres):
    return itertools.product(range(pres.p), repeat=pres.n)


def _coset_reps(rec: InducedCharacterRecord) -> list:
    """Transversal of ``N``: the normal forms vanishing at the leading depths
    of ``N``; each is the canonical residue of its coset."""
    N = rec.source
    pres = N.pres
    taken = set(N.depths)
    free = [d for d in range(pres.n) if d not in taken]
    reps = []
    for exps in itertools.product(range(pres.p), repeat=len(free)):
        v = [0] * pres.n
        for d, e in zip(free, exps):
            v[d] = e
        v = tuple(v)
        if N.residue(v) != v:
            raise ArithmeticError("normal form off the subgroup depths is not canonical")
        reps.append(v)
    return reps


def induced_character_values(rec: InducedCharacterRecord, classes: ClassData, budget: int | None = None) -> list:
    """``lambda^G(g)`` for each class representative ``g``, as a multiset
    (Counter) of root-of-unity exponents: the sum of ``lambda(x g x^-1)`` over
    coset representatives ``x`` with ``x g x^-1`` in ``N``."""
    budget = BUDGETS.character_values if budget is None else budget
    N = rec.source
    pres = N.pres
    index = pres.order // N.order
    if index * len(classes) > budget:
        raise UnsupportedError("character value budget exceeded")
    col = pres.collector
    reps = _coset_reps(rec)
    invs = [col.inv(x) for x in reps]
    lam = rec.rep
    out = []
    for g in classes.representatives:
        vals = Counter()
        for x, xi in zip(reps, invs):
            y = col.mul(col.mul(x, g.exps), xi)
            if y in N:
                vals[lam.value(y)] += 1
        out.append(vals)
    return out


def _reduce_cyclotomic(coeffs: dict, p: int, D: int) -> dict:
    """Rewrite ``sum c_k zeta^k`` (``zeta`` a primitive ``D``-th root of unity,
    ``D = p^e``) in the basis ``zeta^k``, ``0 <= k < (p-1) D / p``."""
    c = [0] * D
    for k, v in coeffs.items():
        c[k % D] += v
    m = D // p
    for k in range(D - 1, (p - 1) * m - 1, -1):
        v = c[k]
        if v:
            c[k] = 0
            for j in range(1, p):
                c[k - j * m] -= v
    return {k: v for k, v in enumerate(c) if v}


def value_inner_product(vals1: list, vals2: list, classes: ClassData) -> Fraction:
    """``(1/|G|) sum_g chi(g) conj(psi(g))`` computed exactly in ``Q(zeta_D)``."""
    pres = classes.group
    p = pres.p
    es = [
        r.log_denominator
        for vals in (vals1, vals2)
        for cnt in vals
        for r in cnt
    ]
    D = p ** max(es + [1])
    acc = Counter()
    for size, c1, c2 in zip(classes.sizes, vals1, vals2):
        for a, m1 in c1.items():
            ka = a.numerator * (D // a.order())
            for b, m2 in c2.items():
                kb = b.numerator * (D // b.order())
                acc[(ka - kb) % D] += size * m1 * m2
    red = _reduce_cyclotomic(acc, p, D)
    if any(k != 0 for k in red):
        raise ArithmeticError(f"inner product is not rational: {red}")
    return Fraction(red.get(0, 0), pres.order)


def normal_subgroups_bruteforce(pres: PcPresentation, cap: int | None = None) -> list:
    """Every normal subgroup, as joins of normal closures of single elements."""
    cap = BUDGETS.normal_subgroups if cap is None else cap
    if pres.order > cap:
        raise UnsupportedError(f"|G| = {pres.order} exceeds the normal subgroup budget {cap}")
    conj = _units(pres)
    atoms = {}
    for v in _all_vectors(pres):
        K = closure(pres, [v], conj)
        atoms.setdefault(K.vectors, K)
    found = dict(atoms)
    frontier = list(found.values())
    while frontier:
        new = []
        for A in frontier:
            for B in list(atoms.values()):
                J = standardize(A.vectors + B.vectors, pres)
                if J.vectors not in found:
                    found[J.vectors] = J
                    new.append(J)
        frontier = new
    return sorted(found.values(), key=lambda H: (H.log_order, H.vectors))


# -- agreement with the engine -------------------------------------------------------------


def _skipped(cid, stmt, err):
    from .results import SKIPPED, CheckResult

    return CheckResult(cid, SKIPPED, stmt, "", f"skipped by budget: {err}")


def crosscheck(pres: PcPresentation, cert=None, pairs: int = 50, seed: int = 0,
               value_order_cap: int = 5**6) -> list:
    """Compare the certificate against brute force: class count, Mackey
    inner products against value inner products on random record pairs, and
    the normal subgroup list against the maximal-class shortcut."""
    import random

    from .characters import certify, mackey_inner_product
    from .results import not_applicable, verdict
    from .series import NotMaximalClassError, analyze, maximal_class_normal_subgroups

    cert = certify(pres) if cert is None else cert
    out = []

    cid, stmt = "oracle-class-count", "k(G) from conjugacy classes = certified character count"
    classes = None
    try:
        classes = conjugacy_classes(pres)
        k = len(classes)
        if cert.normally_monomial:
            out.append(verdict(cid, k == cert.character_count, stmt, "normally monomial",
                               f"k(G) = {k}, certificate = {cert.character_count}"))
        else:
            # a deficit must leave characters unaccounted for
            out.append(verdict(cid, k > cert.character_count, stmt + " (deficit: strictly larger)",
                               "deficit", f"k(G) = {k}, certificate = {cert.character_count}"))
    except UnsupportedError as e:
        out.append(_skipped(cid, stmt, e))

    cid, stmt = "oracle-mackey-values", "Mackey inner product = inner product of induced character values"
    recs = list(cert.records)
    if classes is None or pres.order > value_order_cap:
        out.append(_skipped(cid, stmt, f"|G| = {pres.order} exceeds the value budget {value_order_cap}"))
    elif not recs:
        out.append(not_applicable(cid, stmt, "", "no induced records"))
    else:
        rng = random.Random(seed)
        cache = {}

        def values(i):
            if i not in cache:
                cache[i] = induced_character_values(recs[i], classes)
            return cache[i]

        bad = []
        try:
            for _ in range(pairs):
                i, j = rng.randrange(len(recs)), rng.randrange(len(recs))
                m = mackey_inner_product(recs[i], recs[j])
                v = value_inner_product(values(i), values(j), classes)
                if v != m or m != (1 if i == j else 0):
                    bad.append(f"records {i},{j}: Mackey {m}, values {v}")
            out.append(verdict(cid, not bad, stmt, "", f"{pairs} random pairs", bad))
        except UnsupportedError as e:
            out.append(_skipped(cid, stmt, e))

    cid, stmt = "oracle-normal-subgroups", "exhaustive normal subgroups = maximal-class shortcut list"
    try:
        mcd = analyze(pres)
    except NotMaximalClassError:
        mcd = None
    if mcd is None:
        out.append(not_applicable(cid, stmt, "maximal class", "not of maximal class"))
    else:
        try:
            brute = {H.vectors for H in normal_subgroups_bruteforce(pres)}
            short = {H.vectors for H in maximal_class_normal_subgroups(mcd)}
            out.append(verdict(cid, brute == short, stmt, "maximal class",
                               f"{len(brute)} exhaustive, {len(short)} shortcut"))
        except UnsupportedError as e:
            out.append(_skipped(cid, stmt, e))
    return out
