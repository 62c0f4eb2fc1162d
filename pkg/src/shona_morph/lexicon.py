"""Curated lexicon: loading, validation, and case-folded lookup.

The lexicon file is UTF-8 JSON, either an array of entry records or an
object mapping surface forms to records. Every record follows the token
annotation schema (token, lemma, pos, category_detail, morph_features,
tense, aspect, mood, person, number, gender, clitic_type,
dependency_relation, gloss, comments); absent fields default to "".
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterator, Mapping

from .errors import DuplicateEntryError, FormatError, ValidationError
from .features import MorphFeatureBag, FeatureError

POS_TAGS = frozenset(
    {"NOUN", "VERB", "ADV", "ADJ", "PRON", "CCONJ", "DET", "IDEO", "PART", "X"}
)
NUMBER_VALUES = frozenset({"", "Singular", "Plural"})
CLITIC_TYPES = frozenset({"", "proclitic", "enclitic"})

_MUPANDA_RE = re.compile(r"^Mupanda (\d+)$")

# Per-corpus position fields that may appear on records but are not lexical.
_IGNORED_FIELDS = frozenset({"sentence_id", "token_id"})


class LexiconWarning(UserWarning):
    """Raised for unknown extra fields on lexicon records."""


@dataclass(frozen=True)
class Violation:
    """One field-level schema problem on a record."""

    surface: str
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.surface or '<record>'}: {self.field}: {self.message}"


@dataclass(frozen=True)
class LexEntry:
    """One manually verified lexicon record for a surface form."""

    surface: str
    lemma: str = ""
    pos: str = "X"
    category_detail: str = ""
    morph_features: MorphFeatureBag = field(default_factory=MorphFeatureBag)
    tense: str = ""
    aspect: str = ""
    mood: str = ""
    person: str = ""
    number: str = ""
    gender: str = ""
    clitic_type: str = ""
    dependency_relation: str = ""
    gloss: str = ""
    comments: str = ""

    def to_record(self) -> dict:
        """Render the entry as a JSON-ready record in schema field order."""
        return {
            "token": self.surface,
            "lemma": self.lemma,
            "pos": self.pos,
            "category_detail": self.category_detail,
            "morph_features": self.morph_features.serialize(),
            "tense": self.tense,
            "aspect": self.aspect,
            "mood": self.mood,
            "person": self.person,
            "number": self.number,
            "gender": self.gender,
            "clitic_type": self.clitic_type,
            "dependency_relation": self.dependency_relation,
            "gloss": self.gloss,
            "comments": self.comments,
        }


_STRING_FIELDS = (
    "lemma",
    "category_detail",
    "tense",
    "aspect",
    "mood",
    "person",
    "number",
    "gender",
    "clitic_type",
    "dependency_relation",
    "gloss",
    "comments",
)

_KNOWN_FIELDS = frozenset(
    {"token", "pos", "morph_features", *_STRING_FIELDS} | _IGNORED_FIELDS
)


def validate_entry(raw: Mapping) -> LexEntry | list[Violation]:
    """Validate one raw record against the entry schema.

    Returns a LexEntry when every invariant holds, otherwise a nonempty
    list of violations. Unknown extra fields produce a LexiconWarning,
    never an error.
    """
    violations: list[Violation] = []
    surface = str(raw.get("token", ""))

    for key in raw:
        if key not in _KNOWN_FIELDS:
            warnings.warn(
                f"unknown field {key!r} on record {surface!r}", LexiconWarning
            )

    if not surface:
        violations.append(Violation(surface, "token", "missing or empty"))
    elif any(ch.isspace() for ch in surface):
        violations.append(Violation(surface, "token", "contains whitespace"))

    pos = raw.get("pos")
    if pos is None:
        violations.append(Violation(surface, "pos", "missing"))
    elif pos not in POS_TAGS:
        violations.append(
            Violation(surface, "pos", f"{pos!r} not in {sorted(POS_TAGS)}")
        )

    values: dict[str, str] = {}
    for name in _STRING_FIELDS:
        value = raw.get(name, "")
        if not isinstance(value, str):
            violations.append(Violation(surface, name, "must be a string"))
            value = ""
        values[name] = value

    if values["number"] not in NUMBER_VALUES:
        violations.append(
            Violation(surface, "number", f"{values['number']!r} not in {sorted(NUMBER_VALUES)}")
        )
    if values["clitic_type"] not in CLITIC_TYPES:
        violations.append(
            Violation(
                surface,
                "clitic_type",
                f"{values['clitic_type']!r} not one of '', 'proclitic', 'enclitic'",
            )
        )

    raw_features = raw.get("morph_features", "")
    bag = MorphFeatureBag()
    if not isinstance(raw_features, str):
        violations.append(Violation(surface, "morph_features", "must be a string"))
    else:
        try:
            bag = MorphFeatureBag.parse(raw_features)
        except FeatureError as exc:
            violations.append(Violation(surface, "morph_features", str(exc)))

    match = _MUPANDA_RE.match(values["category_detail"])
    if match:
        cls = int(match.group(1))
        if not 1 <= cls <= 18:
            violations.append(
                Violation(surface, "category_detail", f"noun class {cls} out of 1..18")
            )
        elif bag.get("NounClass") != str(cls):
            violations.append(
                Violation(
                    surface,
                    "morph_features",
                    f"category says Mupanda {cls} but features lack NounClass={cls}",
                )
            )

    if violations:
        return violations
    return LexEntry(surface=surface, pos=str(pos), morph_features=bag, **values)


@dataclass(frozen=True)
class Lexicon:
    """Immutable map from case-folded surface form to entry."""

    entries: dict[str, LexEntry] = field(default_factory=dict)

    def lookup(self, surface: str) -> LexEntry | None:
        """Return the entry whose key matches ``surface`` after case folding."""
        return self.entries.get(surface.casefold())

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[LexEntry]:
        return iter(self.entries.values())

    def __contains__(self, surface: str) -> bool:
        return surface.casefold() in self.entries


EMPTY_LEXICON = Lexicon()


def _read_source(source) -> str:
    if isinstance(source, (str, Path)):
        return Path(source).read_text(encoding="utf-8")
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _parse_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise FormatError(
            f"malformed JSON in {what} at byte offset {offset}: {exc.msg}",
            byte_offset=offset,
        ) from exc


def load_lexicon(source: str | Path | IO) -> Lexicon:
    """Load and validate a lexicon file, path, or open stream."""
    document = _parse_json(_read_source(source), "lexicon")

    if isinstance(document, list):
        records = document
    elif isinstance(document, dict):
        records = []
        for key, record in document.items():
            if not isinstance(record, Mapping):
                raise ValidationError(f"entry for {key!r} is not an object")
            record = dict(record)
            stored = record.get("token")
            if stored is None:
                record["token"] = key
            elif str(stored).casefold() != key.casefold():
                raise ValidationError(
                    f"mapping key {key!r} does not match record token {stored!r}"
                )
            records.append(record)
    else:
        raise ValidationError("lexicon must be a JSON array or object")

    entries: dict[str, LexEntry] = {}
    for record in records:
        if not isinstance(record, Mapping):
            raise ValidationError("lexicon record is not an object")
        result = validate_entry(record)
        if isinstance(result, list):
            first = result[0]
            raise ValidationError(
                f"invalid lexicon record: {first}", violations=result
            )
        key = result.surface.casefold()
        if key in entries:
            raise DuplicateEntryError(entries[key].surface, result.surface)
        entries[key] = result
    return Lexicon(entries)


def dump_lexicon(lex: Lexicon) -> str:
    """Serialize a lexicon back to array-layout JSON (sorted by key)."""
    records = [lex.entries[key].to_record() for key in sorted(lex.entries)]
    return json.dumps(records, ensure_ascii=False, indent=2) + "\n"
