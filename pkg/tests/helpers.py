"""Shared fixtures data: corpus loading and random constraint problems."""

from __future__ import annotations

import json
import random
from pathlib import Path

from cobval.frontend import parse_program
from cobval.ir import lower
from cobval.solver import ConstraintSet
from cobval.terms import Domain, Sym, add, cmp, const, disj, mul

from oracles import LinAtom

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
GOLDENS = Path(__file__).resolve().parent / "goldens"
OPS = ("=", "<>", "<", "<=", ">", ">=")

# criterion number -> (title, passed, detail); filled by test_acceptance, printed by conftest
ACCEPTANCE = {}


def corpus_doc():
    return json.loads((CORPUS / "corpus.json").read_text(encoding="utf-8"))


def corpus_entries():
    return corpus_doc()["entries"]


def entry(program):
    return next(e for e in corpus_entries() if e["program"] == program)


def load_ir(program):
    e = entry(program)
    src = CORPUS / e["source"]
    return lower(parse_program(src.read_text(encoding="utf-8"), src.name)), e


def parse_text(text, name="t.cbl"):
    return parse_program(text, name)


def lower_text(text, name="t.cbl"):
    return lower(parse_program(text, name))


def program(ws_lines, body, paragraph="MAIN-PARA", extra=""):
    """Wrap working-storage lines and a paragraph body into a compilable program."""
    ws = "\n".join(ws_lines)
    return (
        "IDENTIFICATION DIVISION.\nPROGRAM-ID. TPROG.\nDATA DIVISION.\nWORKING-STORAGE SECTION.\n"
        f"{ws}\nPROCEDURE DIVISION.\n{paragraph}.\n{body}\n{extra}"
    )


# -- random constraint problems ----------------------------------------------------------


def _atom_term(atom: LinAtom, syms):
    lhs = const(0)
    for name, c in sorted(atom.coeffs.items()):
        s = syms[name]
        # coefficients act on raw (scaled) values, so lift them into value space
        lhs = add(lhs, mul(const(c * 10 ** s.scale), s))
    return cmp(atom.op, lhs, const(atom.rhs))


def random_constraint_problem(rng: random.Random, big=False):
    """A random linear problem as (ConstraintSet, raw domains, clauses).

    The clauses are the oracle's view of the same conjunction: a list of
    disjunctions of LinAtoms over raw integer symbols.
    """
    n = rng.randint(1, 3)
    names = [f"X{i}" for i in range(n)]
    domains, raw = {}, {}
    for name in names:
        scale = 1 if rng.random() < 0.2 else 0
        if big:
            lo, hi = -9999, 9999
        else:
            lo = rng.randint(-40, 5)
            hi = lo + rng.randint(0, 80)
        domains[name] = Domain("num", lo, hi, scale)
        raw[name] = (lo, hi)
    syms = {name: Sym(name, d.scale, d.lo, d.hi) for name, d in domains.items()}
    clauses = []
    for _ in range(rng.randint(1, 4)):
        clause = []
        for _ in range(1 if rng.random() < 0.7 else 2):
            used = rng.sample(names, rng.randint(1, min(2, n)))
            coeffs = {v: rng.choice((-3, -2, -1, 1, 2, 3)) for v in used}
            clause.append(LinAtom(coeffs, rng.choice(OPS), rng.randint(-60, 60)))
        clauses.append(clause)
    conjuncts = []
    for clause in clauses:
        f = disj(*(_atom_term(a, syms) for a in clause))
        conjuncts.append(f)
    return ConstraintSet(conjuncts, domains), raw, clauses
