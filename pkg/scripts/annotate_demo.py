#!/usr/bin/env python3
"""Annotate the sample sentences from the docs and print every view.

Run from the repository root:
    python3 scripts/annotate_demo.py
"""

import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from shona_morph import (  # noqa: E402
    annotate,
    annotations_to_json,
    compute_metrics,
    default_tables,
    load_seed_lexicon,
    render_report,
)
from shona_morph.cli import _render_table  # noqa: E402

SAMPLES = [
    "Mwana iri kumhanya mumunda",
    "ndichakupai",
    "Mhoro bro, wakadini zvako?",
    "Vakadzi uye vana. Mbudzi iri mumunda, gwada!",
]


def main() -> None:
    lexicon = load_seed_lexicon()
    tables = default_tables()

    for text in SAMPLES:
        print(f"\n== {text}")
        annotations = annotate(text, lexicon, tables)
        print(_render_table(annotations), end="")

    print("\n== JSON export of the first sample")
    print(annotations_to_json(annotate(SAMPLES[0], lexicon, tables)), end="")

    print("\n== self-evaluation of the first sample (system as its own gold)")
    annotations = annotate(SAMPLES[0], lexicon, tables)
    print(render_report(compute_metrics(annotations, annotations)), end="")


if __name__ == "__main__":
    main()
