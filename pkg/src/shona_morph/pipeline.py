"""End-to-end annotation: tokenize, look up, apply rules, export JSON.

Resolution order per token: lexicon lookup, closed-class lists, noun-class
analysis, verb analysis, then clitic re-analysis of the core; anything left
is tagged X/Unknown. Punctuation becomes its own PUNCT token. The whole
pass is a pure function of (text, lexicon, tables).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from typing import IO, Iterable, Mapping

from .errors import ValidationError
from .features import FeatureError, MorphFeatureBag, serialize_features  # noqa: F401
from .lexicon import (
    CLITIC_TYPES,
    EMPTY_LEXICON,
    LexEntry,
    Lexicon,
    NUMBER_VALUES,
    POS_TAGS,
    _parse_json,
)
from .rules import (
    NounAnalysis,
    RuleTables,
    VerbAnalysis,
    analyze_verb,
    classify_closed_class,
    default_tables,
    detect_clitics,
    detect_noun_class,
    number_for_class,
)

PROVENANCE_VALUES = frozenset({"Lexicon", "Rule", "Unknown"})

# The pipeline can emit PUNCT on top of the lexicon's closed POS set.
ANNOTATION_POS = POS_TAGS | {"PUNCT"}

_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])(?=\s)")
_TOKEN = re.compile(r"\w+(?:'\w+)*|[^\w\s]")
_PUNCT = re.compile(r"[^\w\s]+$")


@dataclass(frozen=True)
class Token:
    sentence_id: int
    token_id: int
    text: str


@dataclass(frozen=True)
class TokenAnnotation:
    """Per-token analyzer output, mirroring the lexicon record schema."""

    sentence_id: int
    token_id: int
    token: str
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
    provenance: str = "Unknown"

    def to_record(self) -> dict:
        """JSON-ready record in schema field order (provenance trails)."""
        return {
            "sentence_id": self.sentence_id,
            "token_id": self.token_id,
            "token": self.token,
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
            "provenance": self.provenance,
        }


def tokenize(text: str) -> list[Token]:
    """Split text into sentences and tokens with contiguous 1-based ids.

    Sentences end at . ! ? followed by whitespace or end of text; tokens
    split on whitespace and each punctuation mark stands alone.
    """
    tokens: list[Token] = []
    sentence_id = 0
    for chunk in _SENTENCE_SPLIT.split(text):
        words = _TOKEN.findall(chunk)
        if not words:
            continue
        sentence_id += 1
        for token_id, word in enumerate(words, start=1):
            tokens.append(Token(sentence_id, token_id, word))
    return tokens


def _from_entry(token: Token, entry: LexEntry) -> TokenAnnotation:
    return TokenAnnotation(
        sentence_id=token.sentence_id,
        token_id=token.token_id,
        token=token.text,
        lemma=entry.lemma,
        pos=entry.pos,
        category_detail=entry.category_detail,
        morph_features=entry.morph_features,
        tense=entry.tense,
        aspect=entry.aspect,
        mood=entry.mood,
        person=entry.person,
        number=entry.number,
        gender=entry.gender,
        clitic_type=entry.clitic_type,
        dependency_relation=entry.dependency_relation,
        gloss=entry.gloss,
        comments=entry.comments,
        provenance="Lexicon",
    )


def _from_closed_class(token: Token, core: str, pos: str, detail: str) -> TokenAnnotation:
    return TokenAnnotation(
        sentence_id=token.sentence_id,
        token_id=token.token_id,
        token=token.text,
        lemma=core,
        pos=pos,
        category_detail=detail,
        morph_features=MorphFeatureBag({"Rule": "True"}),
        provenance="Rule",
    )


def _from_noun(token: Token, analysis: NounAnalysis) -> TokenAnnotation:
    features = {"NounClass": analysis.noun_class, "Rule": "True"}
    if analysis.locative:
        features["Locative"] = "True"
    return TokenAnnotation(
        sentence_id=token.sentence_id,
        token_id=token.token_id,
        token=token.text,
        lemma=analysis.stem,
        pos="NOUN",
        category_detail=f"Mupanda {analysis.noun_class}",
        morph_features=MorphFeatureBag(features),
        number=number_for_class(analysis.noun_class),
        provenance="Rule",
    )


def _from_verb(token: Token, analysis: VerbAnalysis) -> TokenAnnotation:
    features: dict = {"Rule": "True", "SC": analysis.sc, "Tense": analysis.tense}
    if analysis.oc:
        features["OC"] = analysis.oc
    if analysis.aspect:
        features["Aspect"] = analysis.aspect
    if analysis.derivs:
        features["Deriv"] = analysis.derivs
    # Root is noted only when suffix or object stripping changed the stem.
    if analysis.root != analysis.post_tense_rest:
        features["Root"] = analysis.root
    notes = []
    if analysis.plural_object:
        notes.append("plural object -i")
    if analysis.verbalizer_note:
        notes.append(analysis.verbalizer_note)
    return TokenAnnotation(
        sentence_id=token.sentence_id,
        token_id=token.token_id,
        token=token.text,
        lemma=analysis.root,
        pos="VERB",
        morph_features=MorphFeatureBag(features),
        tense=analysis.tense if analysis.tense != "None" else "",
        aspect=analysis.aspect,
        person=analysis.sc_ref.person,
        number=analysis.sc_ref.number,
        comments="; ".join(notes),
        provenance="Rule",
    )


def _punct(token: Token) -> TokenAnnotation:
    return TokenAnnotation(
        sentence_id=token.sentence_id,
        token_id=token.token_id,
        token=token.text,
        lemma=token.text,
        pos="PUNCT",
        category_detail="Punctuation",
        morph_features=MorphFeatureBag({"Rule": "True"}),
        provenance="Rule",
    )


def _unknown(token: Token) -> TokenAnnotation:
    return TokenAnnotation(
        sentence_id=token.sentence_id,
        token_id=token.token_id,
        token=token.text,
        pos="X",
        provenance="Unknown",
    )


def _resolve(token: Token, surface: str, lex: Lexicon, tables: RuleTables) -> TokenAnnotation | None:
    entry = lex.lookup(surface)
    if entry is not None:
        return _from_entry(token, entry)
    closed = classify_closed_class(surface, tables)
    if closed is not None:
        return _from_closed_class(token, surface, *closed)
    noun = detect_noun_class(surface, tables, lex)
    if noun is not None:
        return _from_noun(token, noun)
    verb = analyze_verb(surface, tables)
    if verb is not None:
        return _from_verb(token, verb)
    return None


def annotate(
    text: str, lex: Lexicon | None = None, tables: RuleTables | None = None
) -> list[TokenAnnotation]:
    """Annotate every token of ``text``; output order equals input order."""
    lex = lex if lex is not None else EMPTY_LEXICON
    tables = tables if tables is not None else default_tables()
    annotations: list[TokenAnnotation] = []
    for token in tokenize(text):
        if _PUNCT.match(token.text):
            annotations.append(_punct(token))
            continue
        surface = token.text.casefold()
        resolved = _resolve(token, surface, lex, tables)
        if resolved is None:
            clitic_type, clitic, core = detect_clitics(surface, tables)
            if clitic is not None:
                inner = _resolve(token, core, lex, tables)
                if inner is not None:
                    note = (
                        f"proclitic {clitic}-"
                        if clitic_type == "proclitic"
                        else f"enclitic -{clitic}"
                    )
                    comments = f"{inner.comments}; {note}" if inner.comments else note
                    resolved = replace(
                        inner,
                        clitic_type=clitic_type,
                        morph_features=inner.morph_features.with_features({"Rule": "True"}),
                        comments=comments,
                        provenance="Rule",
                    )
        annotations.append(resolved if resolved is not None else _unknown(token))
    return annotations


def _infer_provenance(pos: str, bag: MorphFeatureBag) -> str:
    if pos == "X" and not bag:
        return "Unknown"
    if "Rule" in bag:
        return "Rule"
    return "Lexicon"


def annotation_from_record(record: Mapping, position: str = "") -> TokenAnnotation:
    """Parse and validate one exported record back into an annotation."""
    where = position or f"record {record.get('token', '?')!r}"

    def fail(fieldname: str, message: str):
        raise ValidationError(f"{where}: {fieldname}: {message}")

    for name in ("sentence_id", "token_id"):
        if not isinstance(record.get(name), int) or record[name] < 1:
            fail(name, "must be a positive integer")
    token = record.get("token")
    if not isinstance(token, str) or not token:
        fail("token", "missing or empty")
    pos = record.get("pos")
    if pos not in ANNOTATION_POS:
        fail("pos", f"{pos!r} not in {sorted(ANNOTATION_POS)}")
    try:
        bag = MorphFeatureBag.parse(str(record.get("morph_features", "")))
    except FeatureError as exc:
        fail("morph_features", str(exc))
    strings = {}
    for name in (
        "lemma", "category_detail", "tense", "aspect", "mood", "person",
        "number", "gender", "clitic_type", "dependency_relation", "gloss",
        "comments",
    ):
        value = record.get(name, "")
        if not isinstance(value, str):
            fail(name, "must be a string")
        strings[name] = value
    if strings["number"] not in NUMBER_VALUES:
        fail("number", f"{strings['number']!r} not in {sorted(NUMBER_VALUES)}")
    if strings["clitic_type"] not in CLITIC_TYPES:
        fail("clitic_type", f"{strings['clitic_type']!r} invalid")
    provenance = record.get("provenance") or _infer_provenance(pos, bag)
    if provenance not in PROVENANCE_VALUES:
        fail("provenance", f"{provenance!r} not in {sorted(PROVENANCE_VALUES)}")
    if (provenance == "Unknown") != (pos == "X" and not bag):
        fail("provenance", "Unknown requires pos=X with empty features, and vice versa")
    if provenance == "Rule" and "Rule" not in bag:
        fail("provenance", "Rule provenance requires Rule=True in features")
    return TokenAnnotation(
        sentence_id=record["sentence_id"],
        token_id=record["token_id"],
        token=token,
        pos=pos,
        morph_features=bag,
        provenance=provenance,
        **strings,
    )


def _validate_id_sequence(annotations: list[TokenAnnotation]) -> None:
    expected: dict[int, int] = {}
    for ann in annotations:
        nxt = expected.get(ann.sentence_id, 1)
        if ann.token_id != nxt:
            raise ValidationError(
                f"sentence {ann.sentence_id}: token ids not contiguous "
                f"(expected {nxt}, got {ann.token_id})"
            )
        expected[ann.sentence_id] = nxt + 1


def parse_annotations(source: str | bytes) -> list[TokenAnnotation]:
    """Parse an exported annotation document (JSON array or JSONL)."""
    text = source.decode("utf-8") if isinstance(source, bytes) else source
    stripped = text.lstrip()
    if not stripped:
        return []
    if stripped.startswith("["):
        records = _parse_json(text, "annotations")
    else:
        records = [
            _parse_json(line, f"annotations line {i}")
            for i, line in enumerate(text.splitlines(), start=1)
            if line.strip()
        ]
    annotations = []
    raw_ids = all(
        isinstance(r, Mapping) and "sentence_id" in r and "token_id" in r
        for r in records
    )
    sentence_id, token_id = 1, 0
    for index, record in enumerate(records, start=1):
        if not isinstance(record, Mapping):
            raise ValidationError(f"record {index} is not an object")
        if not raw_ids:
            # Hand-written gold may omit positions; fill them in order.
            record = dict(record)
            token_id += 1
            record.setdefault("sentence_id", sentence_id)
            record.setdefault("token_id", token_id)
        annotations.append(annotation_from_record(record, position=f"record {index}"))
    _validate_id_sequence(annotations)
    return annotations


def annotations_to_json(annotations: Iterable[TokenAnnotation]) -> str:
    """Render annotations as a JSON array (the canonical export form)."""
    records = [ann.to_record() for ann in annotations]
    return json.dumps(records, ensure_ascii=False, indent=2) + "\n"


def annotations_to_jsonl(annotations: Iterable[TokenAnnotation]) -> str:
    """Render annotations as newline-delimited JSON objects."""
    return "".join(
        json.dumps(ann.to_record(), ensure_ascii=False) + "\n" for ann in annotations
    )


def export_json(annotations: Iterable[TokenAnnotation], destination: IO) -> None:
    """Write the JSON-array export to a text or binary sink."""
    payload = annotations_to_json(annotations)
    _write(destination, payload)


def export_jsonl(annotations: Iterable[TokenAnnotation], destination: IO) -> None:
    """Write the newline-delimited export to a text or binary sink."""
    payload = annotations_to_jsonl(annotations)
    _write(destination, payload)


def _write(destination: IO, payload: str) -> None:
    try:
        destination.write(payload)
    except TypeError:
        destination.write(payload.encode("utf-8"))
