"""Report figures rendered next to the delimited report files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# PNG metadata normally embeds the library version; dropping it keeps re-runs byte-identical
_PNG_META = {"Software": None}


def _labels(report):
    return [f"{r.program}\n{r.paragraph}" for r in report.rows]


def _save(fig, path):
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="png", dpi=100, metadata=_PNG_META)
    plt.close(fig)
    return path


def coverage_figure(report, path):
    labels = _labels(report)
    xs = range(len(labels))
    fig, ax = plt.subplots(figsize=(max(4, 1.3 * len(labels)), 3.5))
    width = 0.38
    ax.bar([x - width / 2 for x in xs], [r.paths_pct for r in report.rows], width, label="paths")
    ax.bar([x + width / 2 for x in xs], [r.branches_pct for r in report.rows], width, label="branches")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, fontsize=7)
    ax.set_ylim(0, 105)
    ax.set_ylabel("% covered")
    ax.legend(fontsize=7)
    fig.tight_layout()
    return _save(fig, path)


def assertions_figure(report, path):
    labels = _labels(report)
    xs = list(range(len(labels)))
    prog = [r.program_assertion_count for r in report.rows]
    res = [r.resource_assertion_count for r in report.rows]
    fig, ax = plt.subplots(figsize=(max(4, 1.3 * len(labels)), 3.5))
    ax.bar(xs, prog, label="program")
    ax.bar(xs, res, bottom=prog, label="resource")
    ax.set_xticks(xs)
    ax.set_xticklabels(labels, fontsize=7)
    ax.set_ylabel("# assertions")
    ax.legend(fontsize=7)
    fig.tight_layout()
    return _save(fig, path)


def pass_figure(report, path):
    labels = _labels(report)
    xs = list(range(len(labels)))
    passed = [r.passed for r in report.rows]
    failed = [r.total - r.passed for r in report.rows]
    fig, ax = plt.subplots(figsize=(max(4, 1.3 * len(labels)), 3.5))
    ax.bar(xs, passed, color="tab:green", label="pass")
    ax.bar(xs, failed, bottom=passed, color="tab:red", label="fail")
    ax.set_xticks(xs)
    ax.set_xticklabels(labels, fontsize=7)
    ax.set_ylabel("# tests")
    ax.legend(fontsize=7)
    fig.tight_layout()
    return _save(fig, path)


def render_figures(report, out_dir):
    out = Path(out_dir)
    return [
        coverage_figure(report, out / "coverage.png"),
        assertions_figure(report, out / "assertions.png"),
        pass_figure(report, out / "tests_pass.png"),
    ]
