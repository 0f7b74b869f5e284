"""Shared corpus builders for the test suite."""

from __future__ import annotations

import random

import pytest

from idpos.corpus import IdentifierRecord
from idpos.taggers import ConstituentTags
from idpos.tagset import IdentifierContext, Tag

# Gold pattern pools per context, loosely shaped like production identifiers
# but balanced so each noisy tagger's error family covers a sizable share of
# the words (V for swum, NM for posse, PRE/P for stanford).
PATTERNS = {
    IdentifierContext.FUNCTION: [
        ["V"],
        ["V", "N"],
        ["V", "N"],
        ["V", "P", "N"],
    ],
    IdentifierContext.CLASS: [["NM", "N"], ["NM", "NM", "N"]],
    IdentifierContext.ATTRIBUTE: [["PRE", "N"], ["PRE", "NM", "N"]],
    IdentifierContext.PARAMETER: [["N"], ["NPL"], ["NM", "N"]],
    IdentifierContext.DECLARATION: [["PRE", "N"], ["P", "N"], ["NM", "N"]],
}

CONTEXT_CYCLE = sorted(IdentifierContext, key=lambda c: c.value)


def make_noisy_corpus(
    n_identifiers: int, seed: int = 0, p: float = 0.4, function_weight: int = 1
) -> list[IdentifierRecord]:
    """Synthetic corpus with three complementary noisy constituent taggers.

    Starting from gold, the swum column is wrong on V words with probability
    p, posse on NM words, and stanford on PRE/P words; errors independent.
    ``function_weight`` repeats the FUNCTION slot in the context cycle to
    shift word mass toward verbs.
    """
    rng = random.Random(seed)

    def corrupt(gold, family, wrong):
        return [wrong if t in family and rng.random() < p else t for t in gold]

    cycle = CONTEXT_CYCLE + [IdentifierContext.FUNCTION] * (function_weight - 1)
    records = []
    for i in range(n_identifiers):
        context = cycle[i % len(cycle)]
        gold = rng.choice(PATTERNS[context])
        swum = corrupt(gold, {"V"}, "N")
        posse = corrupt(gold, {"NM"}, "N")
        stanford = [
            "NM" if t == "PRE" and rng.random() < p
            else "N" if t == "P" and rng.random() < p
            else t
            for t in gold
        ]
        records.append(
            IdentifierRecord(
                id=f"id{i:05d}",
                system=f"sys{i % 15}",
                context=context,
                type_hint="int",
                raw_name="".join(f"w{i}{j}" for j in range(len(gold))),
                words=[f"w{i}{j}" for j in range(len(gold))],
                constituent=[
                    ConstituentTags(s, po, st)
                    for s, po, st in zip(swum, posse, stanford)
                ],
                gold=[Tag(g) for g in gold],
            )
        )
    return records


def make_noisy_corpus_words(n_words: int, seed: int = 0) -> list[IdentifierRecord]:
    """Like make_noisy_corpus but sized by total word count."""
    records = make_noisy_corpus(n_words, seed)  # more than enough
    out, total = [], 0
    for record in records:
        if total >= n_words:
            break
        out.append(record)
        total += len(record.words)
    return out


# Vocabulary whose stand-in tagger output lines up with the gold patterns.
_VERBS = "Run Load Save Update Parse Fetch Write Read Merge Sort".split()
_MODIFIERS = "User Data File Content Shape Max Tile Local Border Remote".split()
_NOUNS = "Token Index Count Name Head Buffer Size Handler Queue Cache".split()
_PLURALS = "Items Nodes Lists Buffers Entries".split()


def make_standin_corpus(n_identifiers: int, seed: int = 0) -> list[IdentifierRecord]:
    """Corpus of real-word identifiers with no constituent columns.

    Gold tags follow the naming conventions the heuristic stand-ins decode
    (verb openers in functions, modifier-noun phrases elsewhere), so a model
    trained with stand-in features can tag names like GetUserToken.
    """
    rng = random.Random(seed)
    prefixable = (IdentifierContext.ATTRIBUTE, IdentifierContext.DECLARATION)
    records = []
    for i in range(n_identifiers):
        context = CONTEXT_CYCLE[i % len(CONTEXT_CYCLE)]
        kind = rng.randrange(4 if context in prefixable else 3)
        if context is IdentifierContext.FUNCTION:
            if kind == 0:
                words = [rng.choice(_VERBS), rng.choice(_NOUNS)]
                gold = ["V", "N"]
            else:
                words = [rng.choice(_VERBS), rng.choice(_MODIFIERS), rng.choice(_NOUNS)]
                gold = ["V", "NM", "N"]
            type_hint = "int"
        elif kind == 0:
            words = [rng.choice(_NOUNS)]
            gold = ["N"]
            type_hint = "" if context is IdentifierContext.CLASS else "int"
        elif kind == 1:
            words = [rng.choice(_MODIFIERS), rng.choice(_NOUNS)]
            gold = ["NM", "N"]
            type_hint = "" if context is IdentifierContext.CLASS else "GList*"
        elif kind == 2:
            words = [rng.choice(_MODIFIERS), rng.choice(_PLURALS)]
            gold = ["NM", "NPL"]
            type_hint = "" if context is IdentifierContext.CLASS else "vector"
        else:
            # Hungarian-style prefixes: m_count, g_tile_head
            words = [rng.choice(["m", "g", "p"]), rng.choice(_NOUNS)]
            gold = ["PRE", "N"]
            if rng.random() < 0.5:
                words.insert(1, rng.choice(_MODIFIERS))
                gold.insert(1, "NM")
            type_hint = "int"
        records.append(
            IdentifierRecord(
                id=f"sid{i:05d}",
                system=f"sys{i % 5}",
                context=context,
                type_hint=type_hint,
                raw_name="".join(words),
                words=list(words),
                gold=[Tag(g) for g in gold],
            )
        )
    return records


@pytest.fixture
def noisy_corpus():
    return make_noisy_corpus(300, seed=11)


@pytest.fixture
def standin_corpus():
    return make_standin_corpus(250, seed=5)
