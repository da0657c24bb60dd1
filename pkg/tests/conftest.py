import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).resolve().parent))

from helpers import CORPUS  # noqa: E402

# fixed example streams keep runtime and failures reproducible
settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")


def _run_corpus(out):
    from cobval.cli import run_corpus
    from cobval.harness import PipelineConfig

    return run_corpus(CORPUS / "corpus.json", out, PipelineConfig(workers=4))


@pytest.fixture(scope="session")
def corpus_run(tmp_path_factory):
    """One full corpus run: (output directory, ValidationReport)."""
    out = tmp_path_factory.mktemp("corpus_a")
    return out, _run_corpus(out)


@pytest.fixture(scope="session")
def corpus_rerun(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus_b")
    return out, _run_corpus(out)


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE

    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n} {'PASS' if ok else 'FAIL'}: {title} ({detail})")
