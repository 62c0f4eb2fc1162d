#!/usr/bin/env python3
"""Regenerate derived data files from their in-repo sources of truth.

Writes:
  src/shona_morph/data/rule_tables.json   from the built-in table constant
  tests/data/gold_corpus.jsonl            analyzer output over the gold text
                                          (review against the recorded
                                          analyses before committing)
  tests/data/synthetic20_gold.jsonl       analyzer output with the planted
                                          POS/morph errors used by the
                                          evaluation tests

tests/data/synthetic20_report.txt is hand-counted and never generated here.
"""

import dataclasses
import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from shona_morph import (  # noqa: E402
    annotate,
    annotations_to_jsonl,
    default_tables,
    default_tables_json,
    load_seed_lexicon,
)
from shona_morph.features import MorphFeatureBag  # noqa: E402

# Planted disagreements for the synthetic 20-token corpus: two POS errors
# (kumhanya, ichi), two lemma errors (iri, kufamba), and one noun-class
# error (mbudzi 9 -> gold 10) that must surface as a (10, 9) confusion.
PLANTS = {
    (1, 3): {"pos": "NOUN"},                     # kumhanya: VERB -> NOUN
    (4, 3): {"pos": "PRON"},                     # ichi: DET -> PRON
    (1, 2): {"lemma": "iri"},                    # iri: lemma ri -> iri
    (3, 2): {"lemma": "fambira"},                # kufamba: lemma famba -> fambira
    (4, 1): {                                    # mbudzi: class 9 -> 10
        "category_detail": "Mupanda 10",
        "morph_features": MorphFeatureBag({"NounClass": 10, "Rule": "True"}),
        "number": "Plural",
    },
}


def main() -> None:
    tables_path = REPO / "src/shona_morph/data/rule_tables.json"
    tables_path.write_text(default_tables_json(), encoding="utf-8")
    print(f"wrote {tables_path}")

    lexicon = load_seed_lexicon()
    tables = default_tables()

    gold_text = (REPO / "tests/data/gold_corpus_text.txt").read_text(encoding="utf-8")
    gold = annotate(gold_text, lexicon, tables)
    out = REPO / "tests/data/gold_corpus.jsonl"
    out.write_text(annotations_to_jsonl(gold), encoding="utf-8")
    print(f"wrote {out} ({len(gold)} tokens)")

    text20 = (REPO / "tests/data/synthetic20_text.txt").read_text(encoding="utf-8")
    system = annotate(text20, lexicon, tables)
    planted = [
        dataclasses.replace(ann, **PLANTS.get((ann.sentence_id, ann.token_id), {}))
        for ann in system
    ]
    out20 = REPO / "tests/data/synthetic20_gold.jsonl"
    out20.write_text(annotations_to_jsonl(planted), encoding="utf-8")
    print(f"wrote {out20} ({len(planted)} tokens)")


if __name__ == "__main__":
    main()
