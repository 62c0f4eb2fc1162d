"""Coverage and accuracy metrics against a gold annotation file.

Lexical/rule coverage and the unknown rate are provenance shares of all
tokens; POS and morphological accuracy divide by analyzed (non-unknown)
tokens only. Morphological accuracy is all-or-nothing per token on the
feature bag plus the lemma. Rule coverage counts rule-provenance tokens
(presence, not correctness); rule correctness is reported as its own row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import IO

from .errors import AlignmentError
from .pipeline import TokenAnnotation, parse_annotations


@dataclass(frozen=True)
class EvalReport:
    tokens_total: int = 0
    tokens_lexicon: int = 0
    tokens_rules: int = 0
    tokens_unknown: int = 0
    tokens_analyzed: int = 0
    tokens_pos_correct: int = 0
    tokens_morph_correct: int = 0
    tokens_rules_correct: int = 0
    lc: float = 0.0
    rc: float = 0.0
    pa: float = 0.0
    ma: float = 0.0
    unknown_rate: float = 0.0
    rule_accuracy: float = 0.0
    noun_class_confusions: dict[tuple[int, int], int] = field(default_factory=dict)


def load_gold(source: str | Path | IO | bytes) -> list[TokenAnnotation]:
    """Load a gold file in the same JSON/JSONL format the exporter writes.

    ``source`` may be a path, an open stream, or raw bytes of the document.
    """
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
    elif isinstance(source, bytes):
        text = source.decode("utf-8")
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    return parse_annotations(text)


def _percent(numerator: int, denominator: int) -> float:
    return 100.0 * numerator / denominator if denominator else 0.0


def compute_metrics(
    system: list[TokenAnnotation], gold: list[TokenAnnotation]
) -> EvalReport:
    """Compare aligned system and gold annotations and count the metrics.

    Alignment is positional on (sentence_id, token_id, token); the first
    divergence raises AlignmentError rather than skewing the counts.
    """
    if len(system) != len(gold):
        raise AlignmentError(
            f"system has {len(system)} tokens but gold has {len(gold)}"
        )

    lexicon = rules = unknown = pos_correct = morph_correct = rules_correct = 0
    confusions: dict[tuple[int, int], int] = {}

    for index, (sys_ann, gold_ann) in enumerate(zip(system, gold)):
        sys_key = (sys_ann.sentence_id, sys_ann.token_id, sys_ann.token)
        gold_key = (gold_ann.sentence_id, gold_ann.token_id, gold_ann.token)
        if sys_key != gold_key:
            raise AlignmentError(
                f"alignment diverges at position {index + 1}: "
                f"system {sys_key} vs gold {gold_key}"
            )

        if sys_ann.provenance == "Lexicon":
            lexicon += 1
        elif sys_ann.provenance == "Rule":
            rules += 1
        else:
            unknown += 1
            continue  # unknown tokens stay out of the accuracy denominators

        pos_ok = sys_ann.pos == gold_ann.pos
        morph_ok = (
            sys_ann.morph_features == gold_ann.morph_features
            and sys_ann.lemma == gold_ann.lemma
        )
        if pos_ok:
            pos_correct += 1
        if morph_ok:
            morph_correct += 1
        if morph_ok and sys_ann.provenance == "Rule":
            rules_correct += 1

        gold_class = gold_ann.morph_features.get("NounClass")
        sys_class = sys_ann.morph_features.get("NounClass")
        if gold_class and sys_class and gold_class != sys_class:
            cell = (int(gold_class), int(sys_class))
            confusions[cell] = confusions.get(cell, 0) + 1

    total = len(system)
    analyzed = total - unknown
    return EvalReport(
        tokens_total=total,
        tokens_lexicon=lexicon,
        tokens_rules=rules,
        tokens_unknown=unknown,
        tokens_analyzed=analyzed,
        tokens_pos_correct=pos_correct,
        tokens_morph_correct=morph_correct,
        tokens_rules_correct=rules_correct,
        lc=_percent(lexicon, total),
        rc=_percent(rules, total),
        pa=_percent(pos_correct, analyzed),
        ma=_percent(morph_correct, analyzed),
        unknown_rate=_percent(unknown, total),
        rule_accuracy=_percent(rules_correct, rules),
        noun_class_confusions=confusions,
    )


_METRIC_ROWS = (
    ("lc", "Lexical Coverage (LC)", "Tokens directly matched in the JSON lexicon"),
    ("rc", "Rule Coverage (RC)", "Tokens successfully analyzed via rule-based logic"),
    ("pa", "Overall POS Accuracy (PA)", "Correct part-of-speech assignment"),
    ("ma", "Morphological Accuracy (MA)", "Correct noun class, tense, and derivational features"),
    ("unknown_rate", "Unknown Token Rate", "Tokens marked as X / Unknown"),
    (
        "rule_accuracy",
        "Rule Morphological Accuracy",
        "Rule-analyzed tokens with fully correct features (RC counts presence, not correctness)",
    ),
)


def render_report(report: EvalReport) -> str:
    """Plain-text metric table plus the nonzero noun-class confusion cells."""
    lines = ["Metric | Score (%) | Description"]
    for attr, name, description in _METRIC_ROWS:
        lines.append(f"{name} | {getattr(report, attr):.1f} | {description}")
    cells = {k: v for k, v in report.noun_class_confusions.items() if v}
    if cells:
        lines.append("Noun class confusions (gold → predicted):")
        for (gold_class, pred_class) in sorted(cells):
            lines.append(
                f"gold {gold_class} → predicted {pred_class}: {cells[(gold_class, pred_class)]}"
            )
    return "\n".join(lines) + "\n"
