"""Built-in groups and the presentation file format.

File format, one directive per line::

    group <name>
    prime <p>
    ngens <n>
    pow g<i> = <word>
    conj g<j> ^ g<i> = <word>

A word is a space-separated list of ``g<k>`` or ``g<k>^<e>`` factors, or
``1`` for the empty word.  ``#`` starts a comment.  Omitted relations are
trivial.  Words that are not already in normal form are collected and a
:class:`PresentationWarning` is issued.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ._collect_py import Collector as _PyCollector
from .pc import PcPresentation, PresentationError, consistency_check, format_word, is_prime


class PresentationSyntaxError(PresentationError):
    def __init__(self, msg, line, col=1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class InconsistentPresentationError(PresentationError):
    def __init__(self, report):
        self.report = report
        first = report.failures[0]
        super().__init__(
            f"inconsistent presentation ({len(report.failures)} failing overlaps), first: {first}"
        )


class PresentationWarning(UserWarning):
    pass


# -- file format ---------------------------------------------------------------------

_GEN = re.compile(r"g(\d+)$")
_FACTOR = re.compile(r"g(\d+)(?:\^(-?\d+))?$")


def _tokens(line):
    """Split on whitespace keeping 1-based columns."""
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _parse_gen(tok, col, lineno, n):
    m = _GEN.match(tok)
    if not m:
        raise PresentationSyntaxError(f"expected a generator g<k>, got {tok!r}", lineno, col)
    k = int(m.group(1))
    if n is not None and not 1 <= k <= n:
        raise PresentationSyntaxError(f"generator {tok} out of range 1..{n}", lineno, col)
    return k


def _parse_word(toks, lineno, n):
    if not toks:
        raise PresentationSyntaxError("missing word after '='", lineno, 1)
    if len(toks) == 1 and toks[0][0] == "1":
        return []
    word = []
    for tok, col in toks:
        m = _FACTOR.match(tok)
        if not m:
            raise PresentationSyntaxError(f"bad word factor {tok!r}", lineno, col)
        k = int(m.group(1))
        if not 1 <= k <= n:
            raise PresentationSyntaxError(f"generator g{k} out of range 1..{n}", lineno, col)
        e = int(m.group(2)) if m.group(2) is not None else 1
        word.append((k - 1, e))
    return word


def _is_normal(word, p):
    idx = [k for k, _ in word]
    return idx == sorted(set(idx)) and all(0 < e < p for _, e in word)


def parse_presentation(text: str, check: bool = True) -> PcPresentation:
    name = p = n = None
    pows = {}
    conjs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        key, kcol = toks[0]
        if key == "group":
            if len(toks) < 2:
                raise PresentationSyntaxError("missing group name", lineno, kcol)
            name = line[toks[1][1] - 1 :].strip()
        elif key in ("prime", "ngens"):
            if len(toks) != 2 or not toks[1][0].isdigit():
                raise PresentationSyntaxError(f"'{key}' takes one integer", lineno, kcol)
            val = int(toks[1][0])
            if key == "prime":
                if not is_prime(val):
                    raise PresentationSyntaxError(f"{val} is not prime", lineno, toks[1][1])
                p = val
            else:
                n = val
        elif key in ("pow", "conj"):
            if p is None or n is None:
                raise PresentationSyntaxError("'prime' and 'ngens' must precede relations", lineno, kcol)
            if key == "pow":
                if len(toks) < 3 or toks[2][0] != "=":
                    raise PresentationSyntaxError("expected 'pow g<i> = <word>'", lineno, kcol)
                i = _parse_gen(toks[1][0], toks[1][1], lineno, n)
                if i in pows:
                    raise PresentationSyntaxError(f"duplicate power relation for g{i}", lineno, kcol)
                pows[i] = (_parse_word(toks[3:], lineno, n), lineno)
            else:
                if len(toks) < 5 or toks[2][0] != "^" or toks[4][0] != "=":
                    raise PresentationSyntaxError("expected 'conj g<j> ^ g<i> = <word>'", lineno, kcol)
                j = _parse_gen(toks[1][0], toks[1][1], lineno, n)
                i = _parse_gen(toks[3][0], toks[3][1], lineno, n)
                if not i < j:
                    raise PresentationSyntaxError(f"conj needs i < j, got g{j} ^ g{i}", lineno, toks[3][1])
                if (i, j) in conjs:
                    raise PresentationSyntaxError(f"duplicate relation for g{j} ^ g{i}", lineno, kcol)
                conjs[i, j] = (_parse_word(toks[5:], lineno, n), lineno)
        else:
            raise PresentationSyntaxError(f"unknown directive {key!r}", lineno, kcol)
    if p is None or n is None:
        raise PresentationSyntaxError("missing 'prime' or 'ngens'", 1)
    pres = _normalize(name or "unnamed", p, n, pows, conjs)
    if check:
        report = consistency_check(pres)
        if not report.passed:
            raise InconsistentPresentationError(report)
    return pres


def _normalize(name, p, n, pows, conjs):
    """Collect every relation word, deepest generators first, so each word is
    evaluated with already-normalized relations among later generators."""
    power = [(0,) * n for _ in range(n)]
    conj = {}
    for i in range(n, 0, -1):
        col = _PyCollector(p, n, power, conj)
        items = []
        if i in pows:
            items.append(("pow", i, None) + pows[i])
        items += [("conj", i, j) + conjs[i, j] for j in range(i + 1, n + 1) if (i, j) in conjs]
        for kind, a, b, word, lineno in items:
            lo = a if kind == "pow" else b - 1
            if any(k < lo for k, _ in word):
                what = f"g{a}^{p}" if kind == "pow" else f"g{b}^g{a}"
                raise PresentationSyntaxError(f"right side of {what} uses a generator that is too early", lineno)
            v = col.identity
            for k, e in word:
                unit = tuple(int(t == k) for t in range(n))
                v = col.mul(v, col.pow(unit, e))
            if not _is_normal(word, p):
                warnings.warn(
                    f"line {lineno}: word reduced to normal form {format_word(v)}",
                    PresentationWarning,
                    stacklevel=4,
                )
            if kind == "pow":
                power[a - 1] = v
            else:
                if any(v[: b - 1]) or v[b - 1] != 1:
                    raise PresentationSyntaxError(
                        f"g{b}^g{a} must equal g{b} times later generators, got {format_word(v)}", lineno
                    )
                conj[a - 1, b - 1] = v
    return PcPresentation(name, p, n, tuple(power), conj)


def _word(v):
    parts = [f"g{i + 1}" if e == 1 else f"g{i + 1}^{e}" for i, e in enumerate(v) if e]
    return " ".join(parts) if parts else "1"


def serialize_presentation(pres: PcPresentation) -> str:
    lines = [f"group {pres.name}", f"prime {pres.p}", f"ngens {pres.n}"]
    for i, v in enumerate(pres.power_rhs):
        if any(v):
            lines.append(f"pow g{i + 1} = {_word(v)}")
    for (i, j) in sorted(pres.conj_rhs):
        lines.append(f"conj g{j + 1} ^ g{i + 1} = {_word(pres.conj_rhs[i, j])}")
    return "\n".join(lines) + "\n"


def load_presentation(path) -> PcPresentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


def write_presentation(pres: PcPresentation, path) -> None:
    Path(path).write_text(serialize_presentation(pres), encoding="utf-8")


# -- small builtins --------------------------------------------------------------------


def extraspecial_p3(p: int) -> PcPresentation:
    """Extraspecial group of order ``p^3`` and exponent ``p`` (``p`` odd), or
    the dihedral group of order 8 for ``p = 2``."""
    if not is_prime(p):
        raise PresentationError(f"{p} is not prime")
    power = [(0, 0, 0)] * 3
    if p == 2:
        power[0] = (0, 0, 0)
        power[1] = (0, 0, 1)
    return PcPresentation(f"extraspecial_{p}_3", p, 3, tuple(power), {(0, 1): (0, 1, 1)})


WREATH_BUDGET = 5**6


def wreath_cpwrcp(p: int, budget: int | None = None) -> PcPresentation:
    """``C_p wr C_p`` on ``t, b_0, ..., b_{p-1}`` with ``b_k^t = b_k b_{k+1}``.

    The base is the regular module ``F_p[t]`` and ``b_k = (t-1)^k``, so the pc
    series is the lower central series of the base.
    """
    if not is_prime(p):
        raise PresentationError(f"{p} is not prime")
    budget = WREATH_BUDGET if budget is None else budget
    if p ** (p + 1) > budget:
        raise PresentationError(f"order {p}^{p + 1} exceeds the budget {budget}")
    n = p + 1
    conj = {}
    for k in range(1, n - 1):
        v = [0] * n
        v[k] = v[k + 1] = 1
        conj[0, k] = tuple(v)
    return PcPresentation(f"wreath_{p}", p, n, ((0,) * n,) * n, conj)


def cyclic_major_center_p6(p: int = 5) -> PcPresentation:
    """Maximal class of order ``p^6`` whose major centralizer is extraspecial
    of order ``p^5``, so ``|G_1'| = p`` with ``Z(G_1)`` cyclic.

    ``g1 = s`` and ``g2..g6 = s1..s5`` with ``s_i^s = s_i s_{i+1}``,
    ``[s1,s3] = [s1,s4] = s5^-1``, ``[s2,s3] = s5`` and all other
    commutators among the ``s_i`` trivial.  Not normally monomial.
    """
    if not is_prime(p) or p < 5:
        raise PresentationError("cyclic_major_center_p6 needs a prime p >= 5")
    n = 6

    def word(j, e):
        v = [0] * n
        v[j] = 1
        v[5] = e % p
        return tuple(v)

    conj = {(0, j): tuple(1 if k in (j, j + 1) else 0 for k in range(n)) for j in range(1, 5)}
    # g_j^{g_i} = g_j [g_j, g_i] = g_j C_ij^-1
    conj[1, 3] = word(3, 1)
    conj[1, 4] = word(4, 1)
    conj[2, 3] = word(3, -1)
    return PcPresentation(f"cyclic_major_center_{p}_6", p, n, ((0,) * n,) * n, conj)


# -- Example 1 ---------------------------------------------------------------------------

# Normal subgroup N on n1..n7 = s1, s2, s3, s4, s1^5, s2^5, s3^5 (0-based below).
# [s1,s2] = s2^5 and [s1,s4] = [s2,s3]^-1 = s3^-5; the fifth powers are central.
_N_POWER = (
    (0, 0, 0, 0, 1, 0, 0),
    (0, 0, 0, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 1),
    (0,) * 7,
    (0,) * 7,
    (0,) * 7,
    (0,) * 7,
)
_N_CONJ = {
    (0, 1): (0, 1, 0, 0, 0, 4, 0),  # s2^s1 = s2 [s2,s1] = s2 s2^-5
    (0, 3): (0, 0, 0, 1, 0, 0, 1),  # s4^s1 = s4 s3^5
    (1, 2): (0, 0, 1, 0, 0, 0, 4),  # s3^s2 = s3 s3^-5
}


def example1_normal_subgroup() -> PcPresentation:
    return PcPresentation("example1_N", 5, 7, _N_POWER, _N_CONJ)


class _Semidirect:
    """``N x| <s>`` with elements ``(k, x)`` standing for ``s^k x``."""

    def __init__(self, N: PcPresentation, images):
        self.N = N
        self.col = N.collector
        self.p = N.p
        # sigma(n_i) = n_i^s; the image of a normal form word is the product
        # of the generator images.
        self.images = [tuple(v) for v in images]

    def sigma(self, x, times=1):
        col = self.col
        for _ in range(times % self.p):
            y = col.identity
            for g, e in enumerate(x):
                if e:
                    y = col.mul(y, col.pow(self.images[g], e))
            x = y
        return x

    def mul(self, a, b):
        (ka, xa), (kb, xb) = a, b
        return ((ka + kb) % self.p, self.col.mul(self.sigma(xa, kb), xb))

    def inv(self, a):
        k, x = a
        return ((-k) % self.p, self.sigma(self.col.inv(x), -k % self.p))

    def pow(self, a, e):
        out = (0, self.col.identity)
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def comm(self, a, b):
        return self.mul(self.inv(self.mul(b, a)), self.mul(a, b))

    def conj(self, a, g):
        return self.mul(self.mul(self.inv(g), a), g)

    @staticmethod
    def flat(a):
        return (a[0],) + tuple(a[1])


def _example1_sigma_images(N):
    col = N.collector
    g = N.gens
    s1, s2, s3, s4 = (x.exps for x in g[:4])
    # s_i -> s_i s_{i+1} (i = 1,2,3), s4 -> s4 s1^-5 s2^-10 s3^-10
    im = [
        col.mul(s1, s2),
        col.mul(s2, s3),
        col.mul(s3, s4),
        col.mul(col.mul(col.mul(s4, col.pow(s1, -5)), col.pow(s2, -10)), col.pow(s3, -10)),
    ]
    # the remaining generators are fifth powers of s1, s2, s3
    im += [col.pow(im[k], 5) for k in range(3)]
    return im


def _check_automorphism(N, images):
    """The generator images satisfy every defining relation of ``N`` and
    generate ``N``; return the list of failures."""
    col = N.collector
    model = _Semidirect(N, images)
    fails = []
    for i in range(N.n):
        if col.pow(images[i], N.p) != model.sigma(N.power_rhs[i]):
            fails.append(f"power relation of n{i + 1}")
        for j in range(i + 1, N.n):
            if col.conj(images[j], images[i]) != model.sigma(N.conj_vec(i, j)):
                fails.append(f"conjugate relation n{j + 1}^n{i + 1}")
    from .subgroups import standardize  # local: subgroups imports nothing from here

    if standardize(images, N).order != N.order:
        fails.append("images do not generate N")
    return fails


def example1_model():
    """The semidirect-product model of Example 1.

    Returns ``(model, new_gens, express)`` where ``new_gens`` are the model
    elements ``s, s1, ..., s7`` (``s_{i+1} = [s_i, s]``) and ``express`` writes
    a model element as an exponent vector over them by sifting along model
    depths.
    """
    N = example1_normal_subgroup()
    images = _example1_sigma_images(N)
    fails = _check_automorphism(N, images)
    if fails:
        raise PresentationError(f"Example 1 action is not an automorphism: {fails}")
    model = _Semidirect(N, images)
    p = N.p
    s = (1, N.identity.exps)
    new = [s] + [(0, g.exps) for g in N.gens[:4]]
    while len(new) < 8:
        new.append(model.comm(new[-1], s))
    leads = []
    for k, u in enumerate(new):
        v = _Semidirect.flat(u)
        if next(i for i, e in enumerate(v) if e) != k:
            raise PresentationError("Example 1 generators are not triangular")
        leads.append(v[k])

    def express(a):
        exps = []
        for d in range(8):
            v = _Semidirect.flat(a)
            if any(v[:d]):
                raise PresentationError("sifting failed")
            e = (v[d] * pow(leads[d], -1, p)) % p
            exps.append(e)
            if e:
                a = model.mul(model.inv(model.pow(new[d], e)), a)
        if any(_Semidirect.flat(a)):
            raise PresentationError("sifting left a residue")
        return tuple(exps)

    return model, new, express


def build_example1() -> PcPresentation:
    """Derive the 8-generator pc presentation of Example 1 from the
    semidirect-product model: ``g1 = s``, ``g2..g5 = s1..s4`` and
    ``g6..g8 = s5, s6, s7``."""
    model, new, express = example1_model()
    p = model.p
    power = tuple(express(model.pow(u, p)) for u in new)
    conj = {}
    for i in range(8):
        for j in range(i + 1, 8):
            conj[i, j] = express(model.conj(new[j], new[i]))
    pres = PcPresentation("example1", p, 8, power, conj)
    report = consistency_check(pres)
    if not report.passed:
        raise InconsistentPresentationError(report)
    return pres


@dataclass(frozen=True)
class RelationCheck:
    name: str
    passed: bool


def example1_relation_checks(pres: PcPresentation) -> list:
    """The defining relations of Example 1 and the order of ``s``, evaluated
    as element identities in ``pres`` (``g1 = s``, ``g_{i+1} = s_i``)."""
    s = pres.gen(1)
    s1, s2, s3, s4 = (pres.gen(k) for k in range(2, 6))
    one = pres.identity
    c = lambda a, b: a.comm(b)
    out = [
        RelationCheck("[s1,s2] = s2^5", c(s1, s2) == s2**5),
        RelationCheck("[s1,s4] = s3^-5", c(s1, s4) == s3**-5),
        RelationCheck("[s2,s3]^-1 = s3^-5", c(s2, s3).inverse() == s3**-5),
        RelationCheck("[s1,s3] = 1", c(s1, s3) == one),
        RelationCheck("[s2,s4] = 1", c(s2, s4) == one),
        RelationCheck("[s3,s4] = 1", c(s3, s4) == one),
        RelationCheck("s1^25 = 1", s1**25 == one and s1**5 != one),
        RelationCheck("s2^25 = 1", s2**25 == one and s2**5 != one),
        RelationCheck("s3^25 = 1", s3**25 == one and s3**5 != one),
        RelationCheck("s4^5 = 1", s4**5 == one and s4 != one),
        RelationCheck("s1^s = s1 s2", s1.conj(s) == s1 * s2),
        RelationCheck("s2^s = s2 s3", s2.conj(s) == s2 * s3),
        RelationCheck("s3^s = s3 s4", s3.conj(s) == s3 * s4),
        RelationCheck(
            "s4^s = s4 s1^-5 s2^-10 s3^-10",
            s4.conj(s) == s4 * s1**-5 * s2**-10 * s3**-10,
        ),
        RelationCheck("s^5 = 1", s**5 == one),
    ]
    s5 = s**5
    for k, si in enumerate((s1, s2, s3, s4), 1):
        out.append(RelationCheck(f"s{k}^(s^5) = s{k}", si.conj(s5) == si))
    return out


# -- corpus ------------------------------------------------------------------------------


def corpus_dir() -> Path:
    return Path(str(resources.files("maxclass") / "groups"))


def corpus_names() -> list:
    return sorted(f.stem for f in corpus_dir().glob("*.pc"))


def load_corpus_group(name: str) -> PcPresentation:
    path = corpus_dir() / f"{name}.pc"
    if not path.exists():
        raise PresentationError(f"no corpus group named {name!r}")
    return load_presentation(path)


def example1() -> PcPresentation:
    """Example 1 from the shipped golden file, re-verified on load."""
    pres = load_corpus_group("example1")
    bad = [r.name for r in example1_relation_checks(pres) if not r.passed]
    if bad:
        raise PresentationError(f"example1 golden data fails relations: {bad}")
    return pres


@dataclass(frozen=True)
class GroupSpec:
    source: str
    resolved: PcPresentation


def resolve(builtin: str | None = None, file: str | None = None) -> GroupSpec:
    """Resolve ``--builtin name[:p]`` or ``--file path``."""
    if (builtin is None) == (file is None):
        raise PresentationError("give exactly one of a builtin name or a file")
    if file is not None:
        return GroupSpec(f"file:{file}", load_presentation(file))
    name, _, arg = builtin.partition(":")
    if arg and not arg.isdigit():
        raise PresentationError(f"bad parameter in {builtin!r}")
    if name == "example1" and not arg:
        pres = example1()
    elif name == "extraspecial":
        pres = extraspecial_p3(int(arg or 5))
    elif name == "wreath":
        pres = wreath_cpwrcp(int(arg or 5))
    elif name == "cyclic_major_center":
        pres = cyclic_major_center_p6(int(arg or 5))
    elif not arg and name in corpus_names():
        pres = load_corpus_group(name)
    else:
        raise PresentationError(f"unknown builtin {builtin!r}")
    return GroupSpec(f"builtin:{builtin}", pres)
