import json

import pytest

from jesma.corpus import CorpusError, load_corpus, load_default_corpus, run_corpus, run_entry


def test_default_corpus_loads_clean():
    entries, problems = load_default_corpus()
    assert len(entries) == 49
    assert problems == []
    ids = [e.id for e in entries]
    assert len(ids) == len(set(ids))


def test_expected_solutions_reverify_on_load():
    bad = json.dumps(
        [
            {
                "id": "lies",
                "form": "general",
                "bases": ["3", "2", "5"],
                "expected": [["1", "1", "2"]],
                "note": "3 + 2 != 25",
            }
        ]
    )
    entries, problems = load_corpus(bad)
    assert entries == []
    assert len(problems) == 1 and "substitution" in problems[0]


def test_non_array_corpus_rejected():
    with pytest.raises(CorpusError):
        load_corpus("{}")
    with pytest.raises(CorpusError):
        load_corpus("[")


def test_parallel_run_matches_serial():
    entries, _ = load_default_corpus()
    subset = entries[:12]
    serial = run_corpus(subset, threads=1)
    parallel = run_corpus(subset, threads=4)
    assert [(r.entry_id, r.passed, r.detail) for r in serial] == [
        (r.entry_id, r.passed, r.detail) for r in parallel
    ]


def test_run_entry_reports_mismatch_detail():
    entries, _ = load_default_corpus()
    nagell = next(e for e in entries if e.id == "nagell-3-2-5")
    result = run_entry(nagell)
    assert result.passed and result.detail == ""
    import dataclasses

    wrong = dataclasses.replace(nagell, expected=frozenset({(1, 1, 1)}))
    result = run_entry(wrong)
    assert not result.passed and "(2, 4, 2)" in result.detail
