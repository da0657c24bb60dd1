"""Command-line entry point: ``cobval <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import CobvalError, Diagnostic, PipelineError


def _read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with open(p, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _load_ir(program):
    from .frontend import parse_program
    from .ir import lower

    return lower(parse_program(Path(program).read_text(encoding="utf-8"), str(program)))


# -- commands -------------------------------------------------------------------------------


def cmd_ir_dump(args):
    from .ir import cfg_to_dot, ir_to_json

    ir = _load_ir(args.program)
    _write(args.out, _dump(ir_to_json(ir, args.paragraph)))
    if args.dot:
        names = [args.paragraph] if args.paragraph else list(ir.cfgs)
        _write(args.dot, "".join(cfg_to_dot(ir.cfg(n)) for n in names))
    return 0


def cmd_testgen(args):
    from .symexec import GenConfig, generate_tests

    ir = _load_ir(args.program)
    cfg = GenConfig(seed=args.seed, max_unroll=args.max_unroll, max_paths=args.max_paths)
    suite, report = generate_tests(ir, args.paragraph, cfg)
    _write(args.out, _dump(suite.to_json()))
    print(f"{len(suite.tests)} tests, paths {report.path_pct:.1f}%, branches {report.branch_pct:.1f}%",
          file=sys.stderr)
    return 0


def cmd_solve(args):
    from .solver import ConstraintSet, export_smtlib, solve

    cs = ConstraintSet.from_json(_read_json(args.input))
    if args.smtlib:
        _write(args.smtlib, export_smtlib(cs))
    res = solve(cs)
    doc = {"status": res.status, "assignment": {k: str(v) for k, v in sorted((res.assignment or {}).items())},
           "steps": res.steps}
    _write(args.out, _dump(doc))
    return 0


def cmd_run_oracle(args):
    from .runner import execute_suite
    from .symexec import TestSuite

    ir = _load_ir(args.program)
    suite = TestSuite.from_json(_read_json(args.suite))
    if args.paragraph and args.paragraph != suite.paragraph:
        raise CobvalError(f"suite is for paragraph {suite.paragraph}, not {args.paragraph}")
    _write(args.out, _dump(execute_suite(ir, suite).to_json()))
    return 0


def cmd_map(args):
    from .ir import ExternalCall
    from .mapper import CJResourceMap, Manifest, map_calls

    doc = _read_json(args.calls)
    entries = doc["externalCalls"] if isinstance(doc, dict) else doc
    calls = [ExternalCall.from_json(c) for c in entries]
    if args.call_ids:
        wanted = {int(x) for x in args.call_ids.split(",")}
        calls = [c for c in calls if c.call_id in wanted]
    m = map_calls(calls, Manifest.load(args.manifest), CJResourceMap.load(args.patterns))
    _write(args.out, _dump(m.to_json()))
    return 0


def load_pairs(path):
    """Resolve a pairs file into ``(ExternalCall, TargetCallSeq)`` pairs.

    Each entry names a program, a call id, a manifest and a sequence id; paths
    are relative to the pairs file.
    """
    from .mapper import Manifest

    base = Path(path).parent
    irs, manifests, pairs = {}, {}, []
    for e in _read_json(path):
        prog, man = base / e["program"], base / e["manifest"]
        if prog not in irs:
            irs[prog] = _load_ir(prog)
        if man not in manifests:
            manifests[man] = Manifest.load(man)
        pairs.append((irs[prog].call(e["callId"]), manifests[man].seq(e["seqId"])))
    return pairs


def cmd_patterns(args):
    from .mapper import build_map

    _write(args.out, build_map(load_pairs(args.pairs)).dumps())
    return 0


def cmd_emit(args):
    from .emitter import check_bundle, emit_test_scaffold

    bundle = _read_json(args.bundle)
    check_bundle(bundle)
    for name, text in sorted(emit_test_scaffold(bundle, args.profile).items()):
        _write(Path(args.out) / name, text)
        print(Path(args.out) / name)
    return 0


def _pipeline_config(args):
    from .harness import PipelineConfig

    return PipelineConfig(seed=args.seed, max_unroll=args.max_unroll, max_paths=args.max_paths,
                          timeout=args.timeout, workers=args.workers, figures=not args.no_figures)


def cmd_validate(args):
    from .harness import pipeline, render_report

    report = pipeline(args.program, args.paragraph, args.cjmap, args.patterns, args.manifest, args.adapter,
                      args.out, _pipeline_config(args))
    sys.stdout.write(render_report(report, args.format))
    return 0


def run_corpus(corpus_path, out_dir, config=None):
    """Run the pipeline for every corpus entry and write the combined report."""
    from .harness import ValidationReport, pipeline, write_report

    corpus_path = Path(corpus_path)
    base = corpus_path.parent
    doc = _read_json(corpus_path)
    out = Path(out_dir)
    report = ValidationReport()
    for e in doc["entries"]:
        sub = out / f"{e['program']}_{e['paragraph']}"
        r = pipeline(base / e["source"], e["paragraph"], base / e["cjmap"], base / doc["patterns"],
                     base / e["manifest"], e["adapter"], sub, config)
        report = report.merged(r)
    write_report(report, out, figures=config.figures if config else True)
    return report


def cmd_report(args):
    from .harness import ValidationReport, render_report, write_report

    if args.corpus:
        report = run_corpus(args.corpus, args.out, _pipeline_config(args))
    else:
        report = ValidationReport()
        for path in args.reports:
            report = report.merged(ValidationReport.from_json(_read_json(path)))
        write_report(report, args.out, figures=not args.no_figures)
    sys.stdout.write(render_report(report, args.format))
    return 0


# -- parser --------------------------------------------------------------------------------


def _gen_opts(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-unroll", type=int, default=3)
    p.add_argument("--max-paths", type=int, default=256)


def _run_opts(p):
    _gen_opts(p)
    p.add_argument("--timeout", type=float, default=30.0, help="per-test adapter timeout in seconds")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--format", choices=["markdown", "csv", "json"], default="markdown")
    p.add_argument("--no-figures", action="store_true", help="skip the PNG figures")


def build_parser():
    ap = argparse.ArgumentParser(prog="cobval", description="COBOL test generation and translation validation")
    sub = ap.add_subparsers(dest="command", required=True)

    ir = sub.add_parser("ir", help="inspect the lowered IR")
    ir_sub = ir.add_subparsers(dest="ir_command", required=True)
    p = ir_sub.add_parser("dump", help="write the CFG as JSON and Graphviz text")
    p.add_argument("--program", required=True)
    p.add_argument("--paragraph")
    p.add_argument("--out", default="-")
    p.add_argument("--dot")
    p.set_defaults(func=cmd_ir_dump)

    p = sub.add_parser("testgen", help="generate a test suite for one paragraph")
    p.add_argument("--program", required=True)
    p.add_argument("--paragraph", required=True)
    _gen_opts(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_testgen)

    p = sub.add_parser("solve", help="solve a constraint set")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--smtlib")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("run-oracle", help="fill expected outputs by executing the COBOL")
    p.add_argument("--program", required=True)
    p.add_argument("--paragraph")
    p.add_argument("--suite", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_run_oracle)

    p = sub.add_parser("map", help="match source calls to target call sequences")
    p.add_argument("--calls", required=True, help="IR dump or list of external calls")
    p.add_argument("--call-ids", help="comma-separated call ids to keep (a paragraph's calls)")
    p.add_argument("--manifest", required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("patterns", help="build a resource pattern map from example pairs")
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("emit", help="render test scaffolds from a bundle")
    p.add_argument("--bundle", required=True)
    p.add_argument("--profile", default="jvm-junit")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("validate", help="run the full pipeline against a translation adapter")
    for name in ("--program", "--paragraph", "--cjmap", "--patterns", "--manifest", "--adapter", "--out"):
        p.add_argument(name, required=True)
    _run_opts(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("report", help="run a corpus, or merge report.json files, into tables and figures")
    p.add_argument("--corpus")
    p.add_argument("reports", nargs="*")
    p.add_argument("--out", required=True)
    _run_opts(p)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PipelineError as exc:
        print(f"cobval: {exc}", file=sys.stderr)
        return 2
    except Diagnostic as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except CobvalError as exc:
        print(f"cobval: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
