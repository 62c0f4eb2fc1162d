"""Grammar-rule engine: morpheme tables and the detectors that use them.

Tokens absent from the lexicon are analyzed by pure functions over an
immutable RuleTables instance: noun-class prefix stripping, subject/object
concords, tense/aspect markers, derivational suffixes, clitics, and
closed-class word lists. All detectors expect case-folded input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Mapping

from .errors import FormatError, TableError
from .lexicon import Lexicon

VOWELS = "aeiou"

# Odd classes pair with singular, even with plural; 12-18 carry no number.
_SINGULAR_CLASSES = frozenset({1, 3, 5, 7, 9, 11})
_PLURAL_CLASSES = frozenset({2, 4, 6, 8, 10})

# Gloss words that mark a residue's lexicon entry as denoting a human,
# used to pick class 1 over class 3 for bare mu- nouns.
HUMAN_GLOSS_WORDS = frozenset(
    {
        "person", "people", "man", "men", "woman", "women", "child",
        "children", "father", "mother", "parent", "teacher", "chief",
        "friend", "visitor", "elder", "baby", "doctor",
    }
)


@dataclass(frozen=True)
class PrefixRow:
    """One noun-class prefix; allomorph rows carry their base prefix."""

    prefix: str
    noun_class: int
    allomorph_of: str = ""
    requires_vowel_stem: bool = False


@dataclass(frozen=True)
class ConcordRef:
    """What a concord morpheme agrees with: a person and/or a noun class."""

    person: str = ""
    number: str = ""
    noun_class: int | None = None


@dataclass(frozen=True)
class TenseMarker:
    tense: str
    aspect: str = ""


@dataclass(frozen=True)
class NounAnalysis:
    noun_class: int
    stem: str
    locative: bool = False
    inner_class: int | None = None


@dataclass(frozen=True)
class ConcordAnalysis:
    sc: str
    sc_ref: ConcordRef
    remainder: str
    oc: str | None = None


@dataclass(frozen=True)
class VerbAnalysis:
    sc: str
    sc_ref: ConcordRef
    oc: str | None
    tense: str
    aspect: str
    root: str
    derivs: tuple[str, ...]
    verbalizer_note: str = ""
    plural_object: bool = False
    # Remainder after the tense slot, kept so callers can tell whether
    # suffix/object stripping actually changed the stem.
    post_tense_rest: str = ""


@dataclass(frozen=True)
class RuleTables:
    """All closed morpheme inventories, immutable after construction."""

    noun_class_prefixes: tuple[PrefixRow, ...]
    locative_classes: frozenset[int]
    subject_concords: dict[str, ConcordRef]
    object_concords: dict[str, ConcordRef]
    tense_markers: dict[str, TenseMarker]
    deriv_suffixes: dict[str, str]
    verbalizer_consonants: tuple[str, ...]
    proclitics: frozenset[str]
    enclitics: frozenset[str]
    ideophones: frozenset[str]
    adverbs: frozenset[str]
    conjunctions: frozenset[str]
    determiners: frozenset[str]
    pronouns: frozenset[str]

    def __post_init__(self):
        lengths = [len(row.prefix) for row in self.noun_class_prefixes]
        if lengths != sorted(lengths, reverse=True):
            raise TableError("noun_class_prefixes must be sorted longest first")
        for row in self.noun_class_prefixes:
            if not 1 <= row.noun_class <= 18:
                raise TableError(f"prefix {row.prefix!r}: class {row.noun_class} out of 1..18")
        for name, ref in {**self.subject_concords, **self.object_concords}.items():
            if ref.noun_class is not None and not 1 <= ref.noun_class <= 18:
                raise TableError(f"concord {name!r}: class {ref.noun_class} out of 1..18")
        word_sets = [
            ("proclitics", self.proclitics),
            ("enclitics", self.enclitics),
            ("ideophones", self.ideophones),
            ("adverbs", self.adverbs),
            ("conjunctions", self.conjunctions),
            ("determiners", self.determiners),
            ("pronouns", self.pronouns),
        ]
        for i, (name_a, set_a) in enumerate(word_sets):
            for name_b, set_b in word_sets[i + 1:]:
                overlap = set_a & set_b
                if overlap:
                    raise TableError(
                        f"{name_a} and {name_b} overlap: {sorted(overlap)}"
                    )


# Source of truth for the shipped data/rule_tables.json (byte-identical).
# Prefix inventory follows the standard class 1-18 system; mw-/v- are
# allomorphs of mu-/va- before vowel-initial stems.
DEFAULT_TABLES: dict = {
    "noun_class_prefixes": [
        {"prefix": "chi", "class": 7, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "dzi", "class": 10, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "zvi", "class": 8, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "dz", "class": 10, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "ka", "class": 12, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "ku", "class": 15, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "ku", "class": 17, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "ma", "class": 6, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "mi", "class": 4, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "mu", "class": 1, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "mu", "class": 3, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "mu", "class": 18, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "mw", "class": 1, "allomorph_of": "mu", "requires_vowel_stem": True},
        {"prefix": "pa", "class": 16, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "ri", "class": 5, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "ru", "class": 11, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "tu", "class": 13, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "va", "class": 2, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "m", "class": 9, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "n", "class": 9, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "u", "class": 14, "allomorph_of": "", "requires_vowel_stem": False},
        {"prefix": "v", "class": 2, "allomorph_of": "va", "requires_vowel_stem": True},
    ],
    "locative_classes": [16, 17, 18],
    "subject_concords": {
        "ndi": {"person": "1", "number": "Singular"},
        "ti": {"person": "1", "number": "Plural"},
        "u": {"person": "2", "number": "Singular"},
        "mu": {"person": "2", "number": "Plural"},
        "a": {"person": "3", "number": "Singular"},
        "va": {"person": "3", "number": "Plural", "class": 2},
        "i": {"class": 9},
        "ri": {"class": 5},
        "chi": {"class": 7},
        "zvi": {"class": 8},
        "dzi": {"class": 10},
        "ru": {"class": 11},
        "ka": {"class": 12},
        "ku": {"class": 15},
        "pa": {"class": 16},
    },
    "object_concords": {
        "mu": {"person": "3", "number": "Singular", "class": 1},
        "ku": {"person": "2", "number": "Singular"},
        "ndi": {"person": "1", "number": "Singular"},
    },
    "tense_markers": {
        "cha": {"tense": "cha", "aspect": ""},
        "ka": {"tense": "ka", "aspect": ""},
        "na": {"tense": "na", "aspect": "Perf"},
        "no": {"tense": "no", "aspect": "Prog"},
    },
    "deriv_suffixes": {
        "is": "Causative",
        "ir": "Applicative",
        "w": "Passive",
        "an": "Reciprocal",
        "ik": "Stative",
    },
    "verbalizer_consonants": ["ts", "k", "m", "r", "v"],
    "proclitics": ["sa", "se"],
    "enclitics": ["wo", "pi"],
    "ideophones": ["gwada", "dzunga", "nyoro", "tende"],
    "adverbs": ["mangwana", "nokukurumidza", "zvishoma"],
    "conjunctions": ["kana", "asi", "uye", "nekuti"],
    "determiners": ["uyo", "ichi", "izi"],
    "pronouns": ["ini", "iwe", "iye"],
}


def _ref_from_dict(raw: Mapping) -> ConcordRef:
    return ConcordRef(
        person=str(raw.get("person", "")),
        number=str(raw.get("number", "")),
        noun_class=raw.get("class"),
    )


def tables_from_dict(raw: Mapping) -> RuleTables:
    """Build validated RuleTables from the JSON data-file layout."""
    try:
        rows = tuple(
            PrefixRow(
                prefix=str(row["prefix"]),
                noun_class=int(row["class"]),
                allomorph_of=str(row.get("allomorph_of", "")),
                requires_vowel_stem=bool(row.get("requires_vowel_stem", False)),
            )
            for row in raw["noun_class_prefixes"]
        )
        return RuleTables(
            noun_class_prefixes=rows,
            locative_classes=frozenset(int(c) for c in raw["locative_classes"]),
            subject_concords={
                k: _ref_from_dict(v) for k, v in raw["subject_concords"].items()
            },
            object_concords={
                k: _ref_from_dict(v) for k, v in raw["object_concords"].items()
            },
            tense_markers={
                k: TenseMarker(tense=str(v["tense"]), aspect=str(v.get("aspect", "")))
                for k, v in raw["tense_markers"].items()
            },
            deriv_suffixes={str(k): str(v) for k, v in raw["deriv_suffixes"].items()},
            verbalizer_consonants=tuple(raw["verbalizer_consonants"]),
            proclitics=frozenset(raw["proclitics"]),
            enclitics=frozenset(raw["enclitics"]),
            ideophones=frozenset(raw["ideophones"]),
            adverbs=frozenset(raw["adverbs"]),
            conjunctions=frozenset(raw["conjunctions"]),
            determiners=frozenset(raw["determiners"]),
            pronouns=frozenset(raw["pronouns"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise TableError(f"bad rule table data: {exc}") from exc


def default_tables_json() -> str:
    """Canonical JSON text of the built-in tables (matches the shipped file)."""
    return json.dumps(DEFAULT_TABLES, ensure_ascii=False, indent=2) + "\n"


_DEFAULT_TABLES: RuleTables | None = None


def default_tables() -> RuleTables:
    """The built-in tables, constructed once and shared (immutable)."""
    global _DEFAULT_TABLES
    if _DEFAULT_TABLES is None:
        _DEFAULT_TABLES = tables_from_dict(DEFAULT_TABLES)
    return _DEFAULT_TABLES


def load_tables(source: str | Path | IO) -> RuleTables:
    """Load rule tables from a JSON file, path, or open stream."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise FormatError(
            f"malformed JSON in rule tables at byte offset {offset}: {exc.msg}",
            byte_offset=offset,
        ) from exc
    return tables_from_dict(raw)


def number_for_class(noun_class: int) -> str:
    """Grammatical number implied by a noun class (empty for 12-18)."""
    if noun_class in _SINGULAR_CLASSES:
        return "Singular"
    if noun_class in _PLURAL_CLASSES:
        return "Plural"
    return ""


def _is_human_entry(entry) -> bool:
    if entry is None or entry.pos != "NOUN":
        return False
    if entry.morph_features.get("NounClass") in ("1", "2"):
        return True
    gloss_words = {w.strip(".,;()").lower() for w in entry.gloss.split()}
    return bool(gloss_words & HUMAN_GLOSS_WORDS)


def _starts_with_inner_prefix(stem: str, tables: RuleTables) -> bool:
    # Bare nasal prefixes (m-, n-) are too promiscuous to count as
    # evidence of an inner noun; require two or more characters.
    return any(
        len(row.prefix) >= 2 and stem.startswith(row.prefix)
        for row in tables.noun_class_prefixes
    )


def _inner_noun_evidence(stem: str, tables: RuleTables, lex: Lexicon | None) -> bool:
    if lex is not None:
        entry = lex.lookup(stem)
        if entry is not None and entry.pos == "NOUN":
            return True
    return _starts_with_inner_prefix(stem, tables)


def _inner_class(stem: str, tables: RuleTables, lex: Lexicon | None) -> int | None:
    if lex is not None:
        entry = lex.lookup(stem)
        if entry is not None and entry.pos == "NOUN":
            value = entry.morph_features.get("NounClass")
            return int(value) if value else None
    inner = detect_noun_class(stem, tables, lex)
    return inner.noun_class if inner else None


def detect_noun_class(
    surface: str, tables: RuleTables, lex: Lexicon | None = None
) -> NounAnalysis | None:
    """Strip the longest matching class prefix and resolve its class.

    Ambiguous prefixes are resolved as follows: locative classes 16-18
    require evidence of an inner noun (the remainder is a lexicon noun or
    itself starts with a multi-character class prefix); bare mu- reads as
    class 1 for human-glossed lexicon stems, else class 3; ku- and u-
    never fire from a bare prefix match (infinitives and class 14 nouns
    are left to verb analysis and the lexicon, since both strings double
    as subject concords). Returns None when no prefix applies or the
    remainder is shorter than 2 characters.
    """
    by_prefix: dict[str, list[PrefixRow]] = {}
    for row in tables.noun_class_prefixes:
        by_prefix.setdefault(row.prefix, []).append(row)

    for prefix in by_prefix:  # rows are longest-first, so insertion order works
        if not surface.startswith(prefix):
            continue
        stem = surface[len(prefix):]
        if len(stem) < 2:
            continue
        rows = by_prefix[prefix]

        if any(row.requires_vowel_stem for row in rows):
            if stem[0] in VOWELS:
                return NounAnalysis(rows[0].noun_class, stem)
            continue

        classes = [row.noun_class for row in rows]
        locatives = [c for c in classes if c in tables.locative_classes]
        # Human-denoting stems read as class 1 people, not as places;
        # check them before the locative evidence so mu- + human noun
        # does not turn into class 18.
        if prefix == "mu" and lex is not None and _is_human_entry(lex.lookup(stem)):
            return NounAnalysis(1, stem)
        if locatives and _inner_noun_evidence(stem, tables, lex):
            return NounAnalysis(
                locatives[0],
                stem,
                locative=True,
                inner_class=_inner_class(stem, tables, lex),
            )

        plain = [c for c in classes if c not in tables.locative_classes]
        if prefix == "mu":
            return NounAnalysis(3, stem)
        if prefix == "ku":
            # Bare ku- words are infinitives; leave them to verb analysis.
            continue
        if prefix == "u":
            # u- doubles as the 2sg subject concord and over-matches badly;
            # class 14 nouns are recognized through the lexicon instead.
            continue
        if plain == [9]:
            # Words opening with a longer subject concord (ndi-) read as
            # verbs; do not swallow them as nasal class 9 nouns.
            if any(
                len(sc) > len(prefix) and surface.startswith(sc)
                for sc in tables.subject_concords
            ):
                continue
            return NounAnalysis(9, stem)
        if plain:
            return NounAnalysis(plain[0], stem)
    return None


def detect_concords(surface: str, tables: RuleTables) -> ConcordAnalysis | None:
    """Strip a leading subject concord (longest match first)."""
    for sc in sorted(tables.subject_concords, key=len, reverse=True):
        if surface.startswith(sc):
            return ConcordAnalysis(
                sc=sc,
                sc_ref=tables.subject_concords[sc],
                remainder=surface[len(sc):],
            )
    return None


def detect_tense_aspect(remainder: str, tables: RuleTables) -> tuple[str, str, str]:
    """Consume a tense marker if one leads ``remainder`` with 2+ chars after.

    Returns (tense, aspect, rest); unmarked forms give ("None", "", remainder).
    """
    for marker in sorted(tables.tense_markers, key=len, reverse=True):
        if remainder.startswith(marker) and len(remainder) - len(marker) >= 2:
            spec = tables.tense_markers[marker]
            return spec.tense, spec.aspect, remainder[len(marker):]
    return "None", "", remainder


def strip_derivational_suffixes(
    stem: str, tables: RuleTables
) -> tuple[str, tuple[str, ...]]:
    """Peel verbal extensions off the pre-final-vowel slot, outermost first.

    The final vowel is preserved and stripping stops before the root would
    drop below 3 characters. The returned list is in surface order
    (outermost extension last).
    """
    if not stem or stem[-1] not in VOWELS:
        return stem, ()
    body, final = stem[:-1], stem[-1]
    stripped: list[str] = []
    suffixes = sorted(tables.deriv_suffixes, key=len, reverse=True)
    while True:
        for suffix in suffixes:
            if body.endswith(suffix) and len(body) - len(suffix) + 1 >= 3:
                stripped.append(tables.deriv_suffixes[suffix])
                body = body[: -len(suffix)]
                break
        else:
            break
    return body + final, tuple(reversed(stripped))


def detect_clitics(
    surface: str, tables: RuleTables
) -> tuple[str, str | None, str]:
    """Split off a proclitic or enclitic; proclitics are tried first.

    Returns (clitic_type, clitic, core); no clitic gives ("", None, surface).
    The residue must keep at least 3 characters.
    """
    for pro in sorted(tables.proclitics, key=len, reverse=True):
        if surface.startswith(pro) and len(surface) - len(pro) >= 3:
            return "proclitic", pro, surface[len(pro):]
    for enc in sorted(tables.enclitics, key=len, reverse=True):
        if surface.endswith(enc) and len(surface) - len(enc) >= 3:
            return "enclitic", enc, surface[: -len(enc)]
    return "", None, surface


def classify_closed_class(
    surface: str, tables: RuleTables
) -> tuple[str, str] | None:
    """Look the word up in the closed-class lists, ideophones first."""
    if surface in tables.ideophones:
        return "ADV", "Ideophone"
    if surface in tables.adverbs:
        return "ADV", "Adverb"
    if surface in tables.conjunctions:
        return "CCONJ", "Conjunction"
    if surface in tables.determiners:
        return "DET", "Determiner"
    if surface in tables.pronouns:
        return "PRON", "Pronoun"
    return None


def _verbalizer_note(root: str, tables: RuleTables) -> str:
    for cons in tables.verbalizer_consonants:
        if root.startswith(cons):
            return f"verbalizer -{cons}-"
    return ""


def analyze_verb(surface: str, tables: RuleTables) -> VerbAnalysis | None:
    """Run the verbal cascade: concord, tense, object slot, extensions.

    Succeeds only when a subject concord is found and the final root keeps
    at least 2 characters. A verb ending in -ai/-ei has its final -i set
    aside as a plural-object mark (noted in comments only) before the
    object-concord and suffix steps.
    """
    concord = detect_concords(surface, tables)
    if concord is None:
        return None
    tense, aspect, rest = detect_tense_aspect(concord.remainder, tables)

    stem = rest
    plural_object = False
    if len(stem) >= 4 and stem.endswith(("ai", "ei")):
        plural_object = True
        stem = stem[:-1]

    oc = None
    for morpheme in sorted(tables.object_concords, key=len, reverse=True):
        if stem.startswith(morpheme) and len(stem) - len(morpheme) >= 3:
            oc = morpheme
            stem = stem[len(morpheme):]
            break

    root, derivs = strip_derivational_suffixes(stem, tables)
    if len(root) < 2:
        return None
    return VerbAnalysis(
        sc=concord.sc,
        sc_ref=concord.sc_ref,
        oc=oc,
        tense=tense,
        aspect=aspect,
        root=root,
        derivs=derivs,
        verbalizer_note=_verbalizer_note(root, tables),
        plural_object=plural_object,
        post_tense_rest=rest,
    )
