import pytest

from core.exceptions import MalformedInputError
from solution.services import lyubashenko
from suite.corpus import DEFAULT_SOURCES, load_corpus, parse_brace, parse_entry, parse_int_list
from suite.services import SuiteService, proper_ideals

def test_default_corpus_is_sorted():
    corpus = load_corpus()
    names = [entry.name for entry in corpus.entries]
    assert corpus.name == "default"
    assert names == sorted(DEFAULT_SOURCES)

def test_custom_corpus_drops_duplicates():
    corpus = load_corpus(["lyubashenko:2", "trivial:2", "lyubashenko:2"])
    assert corpus.name == "custom"
    assert [entry.name for entry in corpus.entries] == ["lyubashenko:2", "trivial:2"]

def test_brace_entries_keep_their_brace():
    entry = parse_entry("scaled:4,2")
    assert entry.brace is not None
    assert entry.solution.size == 4
    assert parse_entry("trivial:3").brace is None

def test_file_entries(fixtures_dir):
    entry = parse_entry(str(fixtures_dir / "parity4.json"))
    assert entry.solution.size == 4

@pytest.mark.parametrize("text", ["scaled:4", "truncated:a,b", "lyubashenko:-1", "ring:3"])
def test_malformed_names(text):
    with pytest.raises(MalformedInputError):
        parse_entry(text)

def test_int_lists():
    assert parse_int_list("0, 2,1") == [0, 2, 1]
    with pytest.raises(MalformedInputError):
        parse_int_list("0,x")
    assert parse_brace("trivial:2").size == 2

def test_proper_ideals_of_scaled_brace():
    ideals = proper_ideals(parse_entry("scaled:4,2"))
    assert [ideal.elements for ideal in ideals] == [(0, 2)]

def test_mutation_is_caught():
    service = SuiteService(max_sites=2, max_level=1)
    check = service.mutation_check(lyubashenko(3), 0, 0, 2)
    assert check.passed
    assert "caught by" in check.detail

def test_mutation_harness_is_seeded():
    service = SuiteService(max_sites=2, max_level=1)
    corpus = load_corpus(["lyubashenko:2", "lyubashenko:3"])
    first = service.mutation_harness(corpus, samples=4, seed=7)
    second = service.mutation_harness(corpus, samples=4, seed=7)
    assert [check.detail for check in first] == [check.detail for check in second]
    assert all(check.passed for check in first)
