from fractions import Fraction

from hypothesis import given, strategies as st

from cobval.cli import load_pairs
from cobval.mapper import (
    CJResourceMap, Manifest, Matching, align, build_map, generalize_pair, map_calls, norm_ident, pattern_score,
)
from helpers import CORPUS, load_ir
from oracles import brute_force_matching

PATTERNS = CORPUS / "patterns.json"


def test_patterns_file_is_reproducible_from_pairs():
    cmap = build_map(load_pairs(CORPUS / "pairs.json"))
    assert cmap.dumps() == PATTERNS.read_text(encoding="utf-8")


def test_generalizing_a_pair_twice_deduplicates():
    pairs = load_pairs(CORPUS / "pairs.json")
    assert len(build_map(pairs + pairs).patterns) == len(build_map(pairs).patterns)


def test_generalized_pattern_scores_its_own_pair_fully():
    for call, seq in load_pairs(CORPUS / "pairs.json"):
        assert pattern_score(call, seq, generalize_pair(call, seq)) == 1


def test_insert_pattern_shape():
    call, seq = load_pairs(CORPUS / "pairs.json")[1]
    p = generalize_pair(call, seq)
    assert p.kind == "SQL" and p.verb == "INSERT"
    assert [e["slot"] for e in p.to_json()["paramMap"]] == ["1:2", "2:2", "3:2", "4:0"]
    assert p.arg_count == seq.arg_count


def test_norm_ident():
    assert norm_ident("db2-Last_Name") == norm_ident("DB2LASTNAME")


def test_align_tie_break_and_threshold():
    assert align([[1, 1], [1, 1]]) == [(0, 0), (1, 1)]
    assert align([[Fraction(1, 5)]]) == []
    assert align([[Fraction(3, 10), 0], [1, 0]]) == [(1, 0)]
    assert align([]) == []


weights = st.integers(1, 5).flatmap(lambda n: st.integers(1, 5).flatmap(lambda m: st.lists(
    st.lists(st.sampled_from([Fraction(0), Fraction(1, 10), Fraction(3, 10), Fraction(1, 2), Fraction(7, 10),
                              Fraction(1)]), min_size=m, max_size=m), min_size=n, max_size=n)))


@given(weights)
def test_align_is_optimal_and_monotone(w):
    pairs = align(w)
    assert sum((w[i][j] for i, j in pairs), Fraction(0)) == brute_force_matching(w, Fraction(1, 4))
    assert all(a[0] < b[0] and a[1] < b[1] for a, b in zip(pairs, pairs[1:]))
    assert all(w[i][j] >= Fraction(1, 4) for i, j in pairs)


def _lgacdb01():
    ir, e = load_ir("LGACDB01")
    calls = ir.cfg(e["paragraph"]).external_calls()
    return calls, Manifest.load(CORPUS / e["manifest"]), CJResourceMap.load(PATTERNS)


def test_map_corpus_calls():
    calls, manifest, cmap = _lgacdb01()
    m = map_calls(calls, manifest, cmap)
    assert [(c, s) for c, s, _ in m.pairs] == [(1, 1), (2, 2), (3, 3)]
    assert m.unmatched_source == [4] and m.unmatched_target == [4]
    assert m.var_arg_map[(1, "DB2-LASTNAME")] == (1, 2, 2)
    assert m.var_arg_map[(2, "DB2-CUSTOMERNUM-INT")] == (2, 3, 0)
    assert (4, "AUDIT-RECORD") in m.unmappable


def test_missing_target_sequence_keeps_order():
    calls, manifest, cmap = _lgacdb01()
    doc = manifest.to_json()
    doc["sequences"] = [s for s in doc["sequences"] if s["seqId"] != 2]
    m = map_calls(calls, Manifest.from_json(doc), cmap)
    assert [(c, s) for c, s, _ in m.pairs] == [(1, 1), (3, 3)]
    assert 2 in m.unmatched_source


def test_matching_json_round_trip():
    calls, manifest, cmap = _lgacdb01()
    m = map_calls(calls, manifest, cmap)
    assert Matching.from_json(m.to_json()).to_json() == m.to_json()
