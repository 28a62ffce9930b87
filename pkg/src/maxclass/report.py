"""Reports for the command line: plain dictionaries with a fixed key order,
rendered as JSON or as text."""

from __future__ import annotations

import json

from . import oracle
from .characters import cd_of_quotient, cd_of_quotient_recertified
from .checks import (
    THEOREM_A_SETS,
    GroupContext,
    lemma_checks,
    theorem_a_check,
    unexercised_degree_set,
)
from .constructions import corpus_names, example1, load_corpus_group
from .pc import PcPresentation, format_word
from .results import FAIL, NOT_APPLICABLE, PASS, CheckResult, not_applicable, verdict
from .series import degree_of_commutativity

SCHEMA_VERSION = 1


def group_identity(pres: PcPresentation, source: str = "") -> dict:
    return {"name": pres.name, "source": source, "order": pres.order, "p": pres.p, "n": pres.n}


def series_section(ctx: GroupContext) -> dict | None:
    mcd = ctx.mcd
    if mcd is None:
        return None
    return {
        "terms": [
            {"index": i, "order_log": H.log_order, "igs": [format_word(h.exps) for h in H.igs]}
            for i, H in enumerate(mcd.series)
        ],
        "s": format_word(mcd.s.exps),
        "s_i": [format_word(x.exps) for x in mcd.witnesses],
        "c_table": {f"{i},{j}": format_word(c.exps) for (i, j), c in sorted(mcd.c_table.items())},
        "major_centralizer_fallback": mcd.major_centralizer_fallback,
    }


def invariants_section(ctx: GroupContext) -> dict | None:
    mcd = ctx.mcd
    if mcd is None:
        return None
    return {
        "derived_order_logs": [mcd.derived(i).log_order for i in range(0, mcd.n)],
        "G1_class": mcd.G1_class,
        "center_generators": [format_word(z.exps) for z in mcd.center.igs],
        "degree_of_commutativity": degree_of_commutativity(mcd),
    }


def summarize(checks: list) -> dict:
    out = {}
    for c in checks:
        out[c.status] = out.get(c.status, 0) + 1
    return dict(sorted(out.items()))


def failed(report: dict) -> bool:
    return any(c["status"] == FAIL for c in report["checks"])


def _finish(command: str, body: dict, checks: list) -> dict:
    report = {"schema": SCHEMA_VERSION, "command": command}
    report.update(body)
    report["checks"] = [c.to_dict() for c in checks]
    report["summary"] = summarize(checks)
    return report


# -- commands ------------------------------------------------------------------------------


def analyze_report(pres: PcPresentation, source: str = "") -> dict:
    ctx = GroupContext(pres)
    checks = lemma_checks(ctx)
    body = {
        "group": group_identity(pres, source),
        "maximal_class": ctx.mcd is not None,
        "series": series_section(ctx),
        "invariants": invariants_section(ctx),
        "certificate": ctx.cert.to_dict(),
    }
    return _finish("analyze", body, checks)


def lemmas_report(pres: PcPresentation, source: str = "") -> dict:
    ctx = GroupContext(pres)
    checks = lemma_checks(ctx)
    body = {"group": group_identity(pres, source), "maximal_class": ctx.mcd is not None}
    return _finish("verify-lemmas", body, checks)


def oracle_report(pres: PcPresentation, source: str = "") -> dict:
    checks = oracle.crosscheck(pres)
    return _finish("oracle-crosscheck", {"group": group_identity(pres, source)}, checks)


def theorem_a_results(names=None) -> tuple:
    """Checks on Example 1 and its two quotients plus the degree-set
    assertion over the corpus; returns ``(checks, per-group rows,
    names excluded as not normally monomial)``."""
    names = corpus_names() if names is None else list(names)
    checks = []
    rows = []
    if "example1" in names:
        G = example1()
        ctx = GroupContext(G)
        mcd = ctx.mcd
        cert = ctx.cert
        got = set(cert.verdict.cd) if cert.normally_monomial else None
        checks.append(verdict("example1-degree-set", got == {1, 5, 25, 125},
                              "cd(G) = {1,5,25,125} for Example 1", "", f"cd = {sorted(got or [])}"))
        for tag, label, i, want in (("G1prime", "G_1'", 1, {1, 5}), ("G2prime", "G_2'", 2, {1, 5, 25})):
            N = mcd.derived(i)
            by_kernel = cd_of_quotient(G, N, cert)
            by_quotient = cd_of_quotient_recertified(G, N)
            checks.append(verdict(
                f"example1-quotient-degree-set-{tag}",
                by_kernel == want and by_quotient == want,
                f"cd(G/{label}) = {sorted(want)} for Example 1, by kernels and by re-certification",
                "",
                f"kernels {sorted(by_kernel)}, quotient {sorted(by_quotient)}",
            ))
    else:
        checks.append(not_applicable("example1-degree-set", "cd(G) = {1,5,25,125} for Example 1", "",
                                     "example1 not in corpus"))
    occurring = set()
    excluded = []
    for name in names:
        ctx = GroupContext(load_corpus_group(name))
        if ctx.p != 5:
            continue
        r = theorem_a_check(ctx)
        row = {"name": name, "status": r.status, "detail": r.detail}
        rows.append(row)
        if r.status == NOT_APPLICABLE:
            excluded.append(name)
            continue
        checks.append(CheckResult(f"theorem-a-degree-sets[{name}]", r.status, r.statement,
                                  r.precondition, r.detail, r.failures))
        if r.status == PASS:
            occurring.add(frozenset(ctx.cert.verdict.cd))
    if not rows:
        checks.append(not_applicable("theorem-a-degree-sets", "", "p = 5 corpus groups", "empty corpus"))
    for want in THEOREM_A_SETS:
        if want == {1, 5, 125}:
            continue
        checks.append(verdict(f"theorem-a-occurs-{'-'.join(str(d) for d in sorted(want))}",
                              frozenset(want) in occurring, f"cd(G) = {sorted(want)} occurs in the corpus"))
    checks.append(unexercised_degree_set())
    return checks, rows, excluded


def theorem_a_report(names=None) -> dict:
    checks, rows, excluded = theorem_a_results(names)
    body = {"groups": rows, "excluded_not_normally_monomial": excluded}
    return _finish("verify-theorem-a", body, checks)


# -- rendering ----------------------------------------------------------------------------


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def to_text(report: dict) -> str:
    lines = [f"maxclass {report['command']}"]
    g = report.get("group")
    if g:
        lines.append(f"group {g['name']}: order {g['p']}^{g['n']} = {g['order']}")
    if "maximal_class" in report:
        lines.append(f"maximal class: {'yes' if report['maximal_class'] else 'no'}")
    inv = report.get("invariants")
    if inv:
        lines.append(f"log_p |G_i'| for i = 0..n-1: {inv['derived_order_logs']}")
        lines.append(f"cl(G_1) = {inv['G1_class']}; Z(G) = <{', '.join(inv['center_generators'])}>; "
                     f"degree of commutativity = {inv['degree_of_commutativity']}")
    cert = report.get("certificate")
    if cert:
        lines.append(f"certificate: {cert['verdict']}, square sum {cert['degree_square_sum']} of {cert['group_order']}")
        lines.append("degree counts: " + ", ".join(f"{k}: {v}" for k, v in cert["degree_counts"].items()))
        if "cd" in cert:
            lines.append(f"cd(G) = {cert['cd']}")
    for row in report.get("groups", []):
        lines.append(f"  {row['name']}: {row['status']} {row['detail']}")
    for c in report["checks"]:
        line = f"[{c['status']}] {c['id']}"
        if c["detail"]:
            line += f": {c['detail']}"
        lines.append(line)
        for f in c["failures"]:
            lines.append(f"    {f}")
    lines.append("summary: " + ", ".join(f"{k} {v}" for k, v in report["summary"].items()))
    return "\n".join(lines) + "\n"
