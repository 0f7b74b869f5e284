import pytest

from idpos.analysis import (
    GrammarPattern,
    misannotation_ranking,
    pattern_of,
    per_context_report,
)
from idpos.corpus import IdentifierRecord
from idpos.tagset import IdentifierContext, Tag

from conftest import make_noisy_corpus


def test_pattern_of_examples():
    assert str(pattern_of([Tag.V, Tag.NM, Tag.N])) == "V NM N"
    assert str(pattern_of([Tag.PRE, Tag.N, Tag.V, Tag.N])) == "PRE N V N"
    assert str(pattern_of([Tag.N])) == "N"


def test_pattern_roundtrip():
    pattern = GrammarPattern.parse("PRE NM N")
    assert pattern.tags == ("PRE", "NM", "N")
    assert GrammarPattern.parse(str(pattern)) == pattern
    assert len(pattern) == 3


def test_empty_pattern_is_error():
    with pytest.raises(ValueError):
        pattern_of([])


def _records_with_pattern(pattern, count, start=0, context=IdentifierContext.CLASS):
    tags = [Tag(t) for t in pattern.split()]
    return [
        IdentifierRecord(
            id=f"p{start + i}",
            system="sys",
            context=context,
            type_hint="",
            raw_name="x" * len(tags),
            words=[f"w{j}" for j in range(len(tags))],
            gold=list(tags),
        )
        for i in range(count)
    ]


def test_misannotation_table_row():
    # 8 identifiers of one gold pattern, exactly 6 mispredicted
    records = _records_with_pattern("NM NM NM NM N", 8)
    predictions = {}
    for i, record in enumerate(records):
        gold = [t.value for t in record.gold]
        predictions[record.id] = (["PRE"] + gold[1:]) if i < 6 else gold
    rows = misannotation_ranking(records, predictions, top_k=5)
    assert len(rows) == 1
    row = rows[0]
    assert str(row.pattern) == "NM NM NM NM N"
    assert row.incorrect == 6
    assert row.actual == 8
    assert row.proportion == pytest.approx(0.75)


def test_all_correct_gives_empty_ranking():
    records = _records_with_pattern("NM N", 5)
    predictions = {r.id: [t.value for t in r.gold] for r in records}
    assert misannotation_ranking(records, predictions, top_k=5) == []


def test_single_pattern_two_of_four_wrong():
    records = _records_with_pattern("V N", 4)
    predictions = {}
    for i, record in enumerate(records):
        gold = [t.value for t in record.gold]
        predictions[record.id] = (["N", "N"] if i < 2 else gold)
    rows = misannotation_ranking(records, predictions, top_k=3)
    assert len(rows) == 1
    assert rows[0].proportion == pytest.approx(0.5)
    assert rows[0].incorrect == 2
    assert rows[0].actual == 4


def test_ranking_order_and_tie_breaks():
    records = (
        _records_with_pattern("PRE N", 4, start=0)        # 2/4 = 0.50
        + _records_with_pattern("NM NM N", 8, start=10)   # 4/8 = 0.50 (higher actual)
        + _records_with_pattern("V N", 10, start=30)      # 9/10 = 0.90
    )
    predictions = {}
    wrong_quota = {"PRE N": 2, "NM NM N": 4, "V N": 9}
    seen = {}
    for record in records:
        gold = [t.value for t in record.gold]
        key = " ".join(gold)
        seen[key] = seen.get(key, 0) + 1
        if seen[key] <= wrong_quota[key]:
            predictions[record.id] = ["D"] * len(gold)
        else:
            predictions[record.id] = gold
    rows = misannotation_ranking(records, predictions, top_k=10)
    assert [str(r.pattern) for r in rows] == ["V N", "NM NM N", "PRE N"]
    # sum of incorrect equals total mis-annotated identifiers
    assert sum(r.incorrect for r in rows) == sum(wrong_quota.values())
    assert all(0.0 <= r.proportion <= 1.0 for r in rows)
    # top_k truncation
    assert len(misannotation_ranking(records, predictions, top_k=2)) == 2


def test_ranking_group_by_predicted():
    records = _records_with_pattern("PRE N", 2)
    predictions = {
        records[0].id: ["NM", "N"],
        records[1].id: [t.value for t in records[1].gold],
    }
    rows = misannotation_ranking(records, predictions, 5, group_by_predicted=True)
    assert [str(r.pattern) for r in rows] == ["NM N"]


def test_top_k_validation():
    records = _records_with_pattern("N", 1)
    with pytest.raises(ValueError):
        misannotation_ranking(records, {records[0].id: ["N"]}, top_k=0)


def test_per_context_layout_and_overall():
    records = make_noisy_corpus(100, seed=40)
    predictions = {r.id: [t.value for t in r.gold] for r in records}
    # corrupt all FUNCTION predictions
    for record in records:
        if record.context is IdentifierContext.FUNCTION:
            predictions[record.id] = ["D"] * len(record.words)
    rows = per_context_report(records, predictions)
    assert [r.context for r in rows] == [
        "Attribute", "Class", "Declaration", "Function", "Parameter", "Overall",
    ]
    by_name = {r.context: r for r in rows}
    assert by_name["Function"].word_accuracy == 0.0
    assert by_name["Class"].word_accuracy == 1.0
    overall = by_name["Overall"]
    assert overall.identifier_total == 100
    assert 0.0 < overall.word_accuracy < 1.0


def test_single_context_equals_overall():
    records = _records_with_pattern("NM N", 6, context=IdentifierContext.PARAMETER)
    predictions = {r.id: [t.value for t in r.gold] for r in records}
    predictions[records[0].id] = ["D", "D"]
    rows = per_context_report(records, predictions)
    assert len(rows) == 2  # one context + overall
    assert rows[0].word_accuracy == rows[1].word_accuracy
    assert rows[0].identifier_accuracy == rows[1].identifier_accuracy
