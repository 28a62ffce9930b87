"""Regenerate the bundled ``groups/*.pc`` corpus.

Run ``python -m maxclass.corpus [outdir]``; the tests compare the shipped
files byte for byte against a fresh build.
"""

from __future__ import annotations

import sys
from pathlib import Path

from .constructions import (
    build_example1,
    cyclic_major_center_p6,
    corpus_dir,
    extraspecial_p3,
    serialize_presentation,
    wreath_cpwrcp,
)
from .series import analyze
from .subgroups import quotient_presentation


def _quotient(pres, N, name):
    Q, _ = quotient_presentation(pres, N, name)
    return Q


def build_corpus() -> dict:
    """name -> presentation, in a fixed order."""
    out = {}
    out["extraspecial_5_3"] = extraspecial_p3(5)
    wr = wreath_cpwrcp(5)
    out["wreath_5"] = wr
    out["wreath_3"] = wreath_cpwrcp(3)
    mw = analyze(wr)
    out["wreath_5_mod_G4"] = _quotient(wr, mw.G(4), "wreath_5_mod_G4")
    out["wreath_5_mod_G5"] = _quotient(wr, mw.G(5), "wreath_5_mod_G5")
    out["cyclic_major_center_5_6"] = cyclic_major_center_p6(5)
    ex = build_example1()
    out["example1"] = ex
    m = analyze(ex)
    out["example1_mod_G1prime"] = _quotient(ex, m.derived(1), "example1_mod_G1prime")
    out["example1_mod_G2prime"] = _quotient(ex, m.derived(2), "example1_mod_G2prime")
    return out


def write_corpus(outdir=None) -> list:
    outdir = Path(outdir) if outdir is not None else corpus_dir()
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, pres in build_corpus().items():
        path = outdir / f"{name}.pc"
        path.write_text(serialize_presentation(pres), encoding="utf-8")
        written.append(path)
    return written


if __name__ == "__main__":
    for path in write_corpus(sys.argv[1] if len(sys.argv) > 1 else None):
        print(path)
