"""Annotated identifier corpora: file format, extraction, and partitioning.

Corpus files are UTF-8 tab-separated text with LF line endings, one row per
word, grouped into identifier records by id.  Columns:

    id system context type_hint raw_name position word swum posse stanford gold

Constituent and gold columns hold serialized tags or the literal MISSING.
"""

from __future__ import annotations

import math
import random
import re
import sys
from collections import defaultdict
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .splitter import split
from .taggers import ConstituentTags
from .tagset import (
    CONSTITUENT_LABELS,
    GOLD_LABELS,
    MISSING,
    IdentifierContext,
    Tag,
)

COLUMNS = (
    "id",
    "system",
    "context",
    "type_hint",
    "raw_name",
    "position",
    "word",
    "swum",
    "posse",
    "stanford",
    "gold",
)

HEADER = "\t".join(COLUMNS)


class CorpusError(ValueError):
    """Malformed corpus content; message carries the offending line."""


@dataclass
class IdentifierRecord:
    """One identifier with its split words and optional annotations."""

    id: str
    system: str
    context: IdentifierContext
    type_hint: str
    raw_name: str
    words: list[str]
    constituent: list[ConstituentTags] | None = None
    gold: list[Tag] | None = None

    def __post_init__(self) -> None:
        if self.constituent is not None and len(self.constituent) != len(self.words):
            raise CorpusError(
                f"record {self.id}: {len(self.constituent)} constituent rows "
                f"for {len(self.words)} words"
            )
        if self.gold is not None and len(self.gold) != len(self.words):
            raise CorpusError(
                f"record {self.id}: {len(self.gold)} gold tags "
                f"for {len(self.words)} words"
            )


@dataclass(frozen=True)
class FoldAssignment:
    k: int
    fold_of: dict[str, int]

    def test_ids(self, fold: int) -> list[str]:
        return [i for i, f in self.fold_of.items() if f == fold]


def _check_tag(value: str, allowed: frozenset[str], line_no: int) -> str:
    if value not in allowed:
        raise CorpusError(f"unknown tag {value} at line {line_no}")
    return value


def parse_corpus(lines: Iterable[str]) -> list[IdentifierRecord]:
    """Parse corpus rows into identifier records, validating as we go."""
    rows_by_id: dict[str, list[tuple[int, list[str]]]] = defaultdict(list)
    order: list[str] = []
    header_seen = False
    line_no = 0
    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not header_seen:
            if line != HEADER:
                raise CorpusError(
                    f"line 1: expected header {HEADER!r}, got {line!r}"
                )
            header_seen = True
            continue
        if not line:
            continue
        cells = line.split("\t")
        if len(cells) != len(COLUMNS):
            raise CorpusError(
                f"line {line_no}: expected {len(COLUMNS)} columns, got {len(cells)}"
            )
        ident = cells[0]
        if ident not in rows_by_id:
            order.append(ident)
        rows_by_id[ident].append((line_no, cells))
    if not header_seen:
        raise CorpusError("empty input: missing header row")

    records = []
    for ident in order:
        records.append(_build_record(ident, rows_by_id[ident]))
    return records


def _build_record(ident: str, rows: list[tuple[int, list[str]]]) -> IdentifierRecord:
    first_line, first = rows[0]
    try:
        context = IdentifierContext(first[2])
    except ValueError:
        raise CorpusError(
            f"unknown context {first[2]} at line {first_line}"
        ) from None

    words: list[str] = []
    constituent: list[ConstituentTags] = []
    gold: list[Tag | None] = []
    for expected_pos, (line_no, cells) in enumerate(rows, start=1):
        if cells[1:5] != first[1:5]:
            raise CorpusError(
                f"line {line_no}: row disagrees with earlier rows of id {ident}"
            )
        try:
            position = int(cells[5])
        except ValueError:
            raise CorpusError(
                f"line {line_no}: position {cells[5]!r} is not an integer"
            ) from None
        if position != expected_pos:
            raise CorpusError(
                f"line {line_no}: id {ident} expected position {expected_pos}, "
                f"got {position}"
            )
        words.append(cells[6])
        constituent.append(
            ConstituentTags(
                swum=_check_tag(cells[7], CONSTITUENT_LABELS, line_no),
                posse=_check_tag(cells[8], CONSTITUENT_LABELS, line_no),
                stanford=_check_tag(cells[9], CONSTITUENT_LABELS, line_no),
            )
        )
        raw_gold = cells[10]
        if raw_gold == MISSING:
            gold.append(None)
        else:
            gold.append(Tag(_check_tag(raw_gold, GOLD_LABELS, line_no)))

    tagged = [g for g in gold if g is not None]
    if tagged and len(tagged) != len(gold):
        raise CorpusError(f"id {ident}: gold tags present for only some words")
    return IdentifierRecord(
        id=ident,
        system=first[1],
        context=context,
        type_hint=first[3],
        raw_name=first[4],
        words=words,
        constituent=constituent,
        gold=tagged if tagged else None,
    )


def write_corpus(records: Sequence[IdentifierRecord], out: TextIO) -> None:
    """Write records in canonical form (tabs, LF, trailing newline)."""
    out.write(HEADER + "\n")
    for record in records:
        constituent = record.constituent or [
            ConstituentTags() for _ in record.words
        ]
        for pos, (word, tags) in enumerate(zip(record.words, constituent), start=1):
            gold = record.gold[pos - 1].value if record.gold else MISSING
            out.write(
                "\t".join(
                    (
                        record.id,
                        record.system,
                        record.context.value,
                        record.type_hint,
                        record.raw_name,
                        str(pos),
                        word,
                        tags.swum,
                        tags.posse,
                        tags.stanford,
                        gold,
                    )
                )
                + "\n"
            )


def read_corpus(path: str | Path) -> list[IdentifierRecord]:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh)


def save_corpus(records: Sequence[IdentifierRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        write_corpus(records, fh)


# Tagged corpora carry one extra trailing column with the predicted tag.
TAGGED_HEADER = HEADER + "\tpred"


def write_tagged_corpus(
    records: Sequence[IdentifierRecord],
    predictions: dict[str, Sequence[str]],
    out: TextIO,
) -> None:
    out.write(TAGGED_HEADER + "\n")
    for record in records:
        constituent = record.constituent or [
            ConstituentTags() for _ in record.words
        ]
        pred = predictions[record.id]
        for pos, (word, tags) in enumerate(zip(record.words, constituent), start=1):
            gold = record.gold[pos - 1].value if record.gold else MISSING
            out.write(
                "\t".join(
                    (
                        record.id,
                        record.system,
                        record.context.value,
                        record.type_hint,
                        record.raw_name,
                        str(pos),
                        word,
                        tags.swum,
                        tags.posse,
                        tags.stanford,
                        gold,
                        str(pred[pos - 1]),
                    )
                )
                + "\n"
            )


def read_tagged_corpus(
    path: str | Path,
) -> tuple[list[IdentifierRecord], dict[str, list[str]]]:
    """Read a tagged corpus back into records plus a prediction map."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != TAGGED_HEADER:
        raise CorpusError(f"line 1: expected header {TAGGED_HEADER!r}")
    predictions: dict[str, list[str]] = defaultdict(list)
    plain = [HEADER]
    for line_no, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        cells = line.split("\t")
        if len(cells) != len(COLUMNS) + 1:
            raise CorpusError(
                f"line {line_no}: expected {len(COLUMNS) + 1} columns, "
                f"got {len(cells)}"
            )
        predictions[cells[0]].append(cells[-1])
        plain.append("\t".join(cells[:-1]))
    records = parse_corpus(plain)
    return records, dict(predictions)


# ---------------------------------------------------------------------------
# Identifier extraction from source trees (srcML replacement at desk scale).
# ---------------------------------------------------------------------------

SOURCE_EXTENSIONS = (".c", ".h", ".cpp", ".hpp", ".java")

_KEYWORDS = frozenset(
    """if else for while do switch case default return break continue goto
    sizeof typedef new delete try catch throw throws using namespace template
    typename operator public private protected static const final abstract
    volatile register extern inline virtual explicit friend mutable constexpr
    unsigned signed struct class enum union import package synchronized
    transient native instanceof assert this super null nullptr true false""".split()
)

_NAME = r"[A-Za-z_]\w*"
_QNAME = rf"(?:{_NAME}\s*::\s*)*{_NAME}"
_TYPE_TOKEN = r"[A-Za-z_][\w:<>,\s\*&\[\]\.]*?"

_CLASS_RE = re.compile(rf"\b(?:class|struct|interface)\s+({_NAME})")
_FUNC_RE = re.compile(
    rf"^({_TYPE_TOKEN})[\s\*&]({_QNAME})\s*\((.*)\)\s*(?:const)?\s*$",
    re.S,
)

_MODIFIERS = frozenset(
    """static const final unsigned signed mutable volatile register extern
    public private protected constexpr inline transient synchronized native
    struct""".split()
)


def _contains_test(name: str) -> bool:
    return "test" in name.lower()


def _strip_noncode(text: str) -> str:
    """Blank out comments, literals, preprocessor lines, and annotations,
    preserving newlines so line numbers survive."""

    def blank(match: re.Match) -> str:
        return "".join(c if c == "\n" else " " for c in match.group(0))

    pattern = re.compile(
        r"//[^\n]*"
        r"|/\*.*?\*/"
        r"|\"(?:\\.|[^\"\\\n])*\""
        r"|'(?:\\.|[^'\\\n])*'"
        r"|^[ \t]*#[^\n]*"
        r"|@\w+(?:\([^)]*\))?"
        r"|\b(?:public|private|protected)\s*:",
        re.S | re.M,
    )
    return pattern.sub(blank, text)


def _clean_type(tokens: list[str]) -> str:
    kept = [t for t in tokens if t.lower() not in _MODIFIERS]
    return " ".join(kept).strip()


def _type_tokens(text: str) -> list[str]:
    return re.findall(rf"{_NAME}[\w:<>,\*&\[\]\.]*", text)


def _split_params(params: str) -> list[str]:
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in params:
        if ch in "<([":
            depth += 1
        elif ch in ">)]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if current:
        parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def _parse_typed_name(text: str) -> tuple[str, str] | None:
    """Split 'const GList *head' style text into (type, name)."""
    text = text.strip().rstrip(";")
    if "=" in text:
        text = text[: text.index("=")].rstrip()
    if not text or text == "void" or text.startswith("..."):
        return None
    match = re.match(rf"^(.*?)[\s\*&]({_NAME})\s*(?:\[[^\]]*\])?$", text, re.S)
    if not match:
        return None
    head, name = match.group(1), match.group(2)
    if name.lower() in _KEYWORDS:
        return None
    tokens = _type_tokens(head)
    if not tokens or tokens[0].lower() in _KEYWORDS - _MODIFIERS:
        return None
    type_hint = _clean_type(tokens)
    if not type_hint:
        return None
    return type_hint, name


class _Extractor:
    """Shallow brace-tracking scan of one source file."""

    def __init__(self, system: str, relpath: str):
        self.system = system
        self.relpath = relpath
        self.records: list[IdentifierRecord] = []
        # Stack of (kind, skipped) entries; kind in {class, function, other}.
        self.scopes: list[tuple[str, bool]] = []

    def _skipped(self) -> bool:
        return any(skip for _, skip in self.scopes)

    def _emit(self, kind: IdentifierContext, name: str, type_hint: str, line: int):
        if self._skipped() or _contains_test(name):
            return
        try:
            words = split(name).words
        except ValueError:
            return
        self.records.append(
            IdentifierRecord(
                id=f"{self.relpath}:{line}:{kind.value.lower()}:{name}",
                system=self.system,
                context=kind,
                type_hint=type_hint,
                raw_name=name,
                words=list(words),
            )
        )

    def _declaration_context(self) -> IdentifierContext:
        for kind, _ in reversed(self.scopes):
            if kind == "function":
                return IdentifierContext.DECLARATION
            if kind == "class":
                return IdentifierContext.ATTRIBUTE
        return IdentifierContext.DECLARATION

    def _in_function(self) -> bool:
        return any(kind == "function" for kind, _ in self.scopes)

    def _try_function(self, statement: str, line: int) -> bool | None:
        """Emit FUNCTION + PARAMETER records; returns skip flag, or None."""
        match = _FUNC_RE.match(statement)
        if not match or self._in_function():
            return None
        ret, qname, params = match.groups()
        name = re.split(r"\s*::\s*", qname)[-1]
        ret_tokens = _type_tokens(ret)
        if (
            name.lower() in _KEYWORDS
            or not ret_tokens
            or ret_tokens[-1].lower() in _KEYWORDS - _MODIFIERS
        ):
            return None
        skip = _contains_test(name)
        if not skip:
            self._emit(IdentifierContext.FUNCTION, name, _clean_type(ret_tokens), line)
            for param in _split_params(params):
                parsed = _parse_typed_name(param)
                if parsed:
                    self._emit(IdentifierContext.PARAMETER, parsed[1], parsed[0], line)
        return skip

    def _open_scope(self, statement: str, line: int) -> None:
        statement = statement.strip()
        class_match = _CLASS_RE.search(statement)
        if class_match:
            name = class_match.group(1)
            skip = _contains_test(name)
            if not skip:
                self._emit(IdentifierContext.CLASS, name, "", line)
            self.scopes.append(("class", skip))
            return
        if statement.endswith("="):
            # Brace initializer: emit the declared name, scope is inert.
            parsed = _parse_typed_name(statement[:-1])
            if parsed:
                self._emit(self._declaration_context(), parsed[1], parsed[0], line)
            self.scopes.append(("other", False))
            return
        skip = self._try_function(statement, line)
        if skip is not None:
            self.scopes.append(("function", skip))
            return
        self.scopes.append(("other", False))

    def _statement(self, statement: str, line: int) -> None:
        statement = statement.strip()
        if not statement:
            return
        if "(" in statement:
            # Prototypes at class/file scope still name a function.
            self._try_function(statement, line)
            return
        parsed = _parse_typed_name(statement)
        if parsed:
            self._emit(self._declaration_context(), parsed[1], parsed[0], line)

    def scan(self, text: str) -> list[IdentifierRecord]:
        text = _strip_noncode(text)
        start = 0
        line = 1
        statement_line = 1
        for i, ch in enumerate(text):
            if ch == "\n":
                line += 1
                if text[start : i + 1].strip() == "":
                    start = i + 1
                    statement_line = line
                continue
            if ch == "{":
                self._open_scope(text[start:i], statement_line)
            elif ch == "}":
                if self.scopes:
                    self.scopes.pop()
            elif ch == ";":
                self._statement(text[start:i], statement_line)
            else:
                continue
            start = i + 1
            statement_line = line
        return self.records


def extract_identifiers(source_root: str | Path) -> list[IdentifierRecord]:
    """Scan a source tree for identifiers, skipping anything test-related.

    Recognition is heuristic (regex and shallow brace tracking, not a real
    parser): function definitions with parameters, class/struct names,
    member attributes, and local or global declarations.  Any directory,
    file, class, or function whose name contains "test" contributes nothing.
    """
    root = Path(source_root)
    records: list[IdentifierRecord] = []
    paths = sorted(
        p for p in root.rglob("*") if p.is_file() and p.suffix in SOURCE_EXTENSIONS
    )
    for path in paths:
        rel = path.relative_to(root)
        if any(_contains_test(part) for part in rel.parts):
            continue
        try:
            text = path.read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            print(f"warning: skipping unreadable {path}: {exc}", file=sys.stderr)
            continue
        records.extend(_Extractor(root.name, str(rel)).scan(text))
    return records


# ---------------------------------------------------------------------------
# Partitioning
# ---------------------------------------------------------------------------


def _ids_by_context(
    records: Sequence[IdentifierRecord],
) -> dict[IdentifierContext, list[str]]:
    grouped: dict[IdentifierContext, list[str]] = defaultdict(list)
    for record in records:
        grouped[record.context].append(record.id)
    return grouped


def assign_folds(
    records: Sequence[IdentifierRecord], k: int, seed: int
) -> FoldAssignment:
    """Stratified k-fold partition of identifiers (never of single words)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if k > len(records):
        raise ValueError(f"cannot make {k} folds from {len(records)} identifiers")
    rng = random.Random(seed)
    fold_of: dict[str, int] = {}
    grouped = _ids_by_context(records)
    contexts = sorted(grouped, key=lambda c: c.value)
    # Rotating the round-robin start per context spreads the remainder
    # slots evenly, so overall fold sizes also differ by at most one.
    for offset, context in enumerate(contexts):
        ids = grouped[context]
        rng.shuffle(ids)
        for i, ident in enumerate(ids):
            fold_of[ident] = (i + offset) % k
    return FoldAssignment(k=k, fold_of=fold_of)


def train_test_split(
    records: Sequence[IdentifierRecord],
    train_fraction: float = 0.70,
    seed: int = 0,
) -> tuple[list[IdentifierRecord], list[IdentifierRecord]]:
    """Deterministic stratified split, atomic per identifier.

    Per-context train counts start at floor(n * fraction); the remaining
    slots needed to reach the overall target go to the contexts with the
    largest fractional remainders, so both the total and every stratum are
    within one identifier of the ideal proportions.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must be strictly between 0 and 1")
    if len(records) < 2:
        raise ValueError("need at least two identifiers to split")
    rng = random.Random(seed)
    grouped = _ids_by_context(records)
    contexts = sorted(grouped, key=lambda c: c.value)
    target = int(math.floor(len(records) * train_fraction + 0.5))
    target = min(max(target, 1), len(records) - 1)
    quota = {c: int(math.floor(len(grouped[c]) * train_fraction)) for c in contexts}
    by_remainder = sorted(
        contexts,
        key=lambda c: (-(len(grouped[c]) * train_fraction - quota[c]), c.value),
    )
    extras = target - sum(quota.values())
    while extras > 0:
        for context in by_remainder:
            if extras > 0 and quota[context] < len(grouped[context]):
                quota[context] += 1
                extras -= 1
    train_ids: set[str] = set()
    for context in contexts:
        ids = grouped[context]
        rng.shuffle(ids)
        train_ids.update(ids[: quota[context]])
    train = [r for r in records if r.id in train_ids]
    test = [r for r in records if r.id not in train_ids]
    if not train or not test:
        raise ValueError(
            f"degenerate split: {len(train)} train / {len(test)} test identifiers"
        )
    return train, test


def relabel_gold(
    records: Sequence[IdentifierRecord], mapper
) -> list[IdentifierRecord]:
    """Rewrite gold tag lists through ``mapper`` (a per-sequence callable)."""
    out = []
    for record in records:
        if record.gold is None:
            out.append(record)
        else:
            out.append(replace(record, gold=mapper(record.gold)))
    return out
