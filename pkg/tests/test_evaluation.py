import dataclasses
import json
import random

import pytest

from shona_morph import (
    AlignmentError,
    MorphFeatureBag,
    TokenAnnotation,
    ValidationError,
    compute_metrics,
    load_gold,
    render_report,
)
from shona_morph.evaluation import EvalReport


def make_ann(sid, tid, token, pos="NOUN", lemma="", features=None, provenance="Lexicon"):
    return TokenAnnotation(
        sentence_id=sid,
        token_id=tid,
        token=token,
        lemma=lemma,
        pos=pos,
        morph_features=MorphFeatureBag(features or {}),
        provenance=provenance,
    )


def rule_ann(sid, tid, token, **kw):
    features = kw.pop("features", {})
    features["Rule"] = "True"
    return make_ann(sid, tid, token, features=features, provenance="Rule", **kw)


def unknown_ann(sid, tid, token):
    return make_ann(sid, tid, token, pos="X", provenance="Unknown")


# --- load_gold ----------------------------------------------------------------


def test_gold_record_from_schema_block():
    record = {
        "token": "Vakadzi",
        "lemma": "kadzi",
        "pos": "NOUN",
        "category_detail": "Mupanda 2",
        "morph_features": "NounClass=2|Rule=True",
        "number": "Plural",
        "gloss": "women",
    }
    (gold,) = load_gold(json.dumps([record]).encode("utf-8"))
    assert gold.number == "Plural"
    assert gold.category_detail == "Mupanda 2"


def test_empty_gold():
    assert load_gold(b"[]") == []


def test_gold_rejects_bad_pos():
    record = {"sentence_id": 1, "token_id": 1, "token": "x", "pos": "NOUNN", "morph_features": ""}
    with pytest.raises(ValidationError):
        load_gold(json.dumps([record]).encode("utf-8"))


def test_gold_accepts_jsonl(data_dir):
    gold = load_gold(data_dir / "synthetic20_gold.jsonl")
    assert len(gold) == 20


# --- compute_metrics ------------------------------------------------------------


def test_lc_is_lexicon_share():
    system = [make_ann(1, i, f"t{i}") for i in range(1, 6)] + [
        rule_ann(1, i, f"t{i}") for i in range(6, 9)
    ]
    gold = list(system)
    report = compute_metrics(system, gold)
    assert report.tokens_total == 8
    assert report.tokens_lexicon == 5
    assert report.lc == pytest.approx(62.5)


def test_identity_gives_full_accuracy():
    system = [
        make_ann(1, 1, "a", features={"NounClass": 1}),
        rule_ann(1, 2, "b"),
        unknown_ann(1, 3, "c"),
    ]
    report = compute_metrics(system, list(system))
    assert report.pa == 100.0
    assert report.ma == 100.0
    assert report.unknown_rate == pytest.approx(100.0 / 3)


def test_twenty_token_synthetic_corpus_hand_counts(data_dir, seed_lexicon, tables):
    from shona_morph import annotate

    text = (data_dir / "synthetic20_text.txt").read_text(encoding="utf-8")
    system = annotate(text, seed_lexicon, tables)
    gold = load_gold(data_dir / "synthetic20_gold.jsonl")
    report = compute_metrics(system, gold)

    # hand-counted: 20 tokens = 7 lexicon + 11 rule + 2 unknown;
    # planted errors: 2 POS (kumhanya, ichi), 3 morph (iri, kufamba, mbudzi)
    assert report.tokens_total == 20
    assert report.tokens_lexicon == 7
    assert report.tokens_rules == 11
    assert report.tokens_unknown == 2
    assert report.tokens_analyzed == 18
    assert report.tokens_pos_correct == 16
    assert report.tokens_morph_correct == 15
    assert report.tokens_rules_correct == 8
    assert report.lc == pytest.approx(35.0)
    assert report.rc == pytest.approx(55.0)
    assert report.pa == pytest.approx(100 * 16 / 18)
    assert report.ma == pytest.approx(100 * 15 / 18)
    assert report.unknown_rate == pytest.approx(10.0)
    assert report.noun_class_confusions == {(10, 9): 1}


def test_alignment_length_mismatch():
    system = [make_ann(1, 1, "a")]
    with pytest.raises(AlignmentError):
        compute_metrics(system, [])


def test_alignment_divergence_names_position():
    system = [make_ann(1, 1, "a"), make_ann(1, 2, "b")]
    gold = [make_ann(1, 1, "a"), make_ann(1, 2, "c")]
    with pytest.raises(AlignmentError) as excinfo:
        compute_metrics(system, gold)
    assert "position 2" in str(excinfo.value)


def test_unknown_tokens_stay_out_of_accuracy_denominators():
    system = [unknown_ann(1, 1, "a"), make_ann(1, 2, "b", pos="NOUN")]
    gold = [unknown_ann(1, 1, "a"), make_ann(1, 2, "b", pos="VERB")]
    report = compute_metrics(system, gold)
    assert report.tokens_analyzed == 1
    assert report.pa == 0.0
    assert report.ma == 100.0  # bag and lemma agree even though POS differs


def test_zero_tokens_zero_denominators():
    report = compute_metrics([], [])
    assert report == EvalReport()


def test_confusion_requires_nounclass_on_both_sides():
    system = [rule_ann(1, 1, "a", features={"NounClass": 9})]
    gold = [rule_ann(1, 1, "a")]
    report = compute_metrics(system, gold)
    assert report.noun_class_confusions == {}


# --- randomized corpora against a brute-force oracle ----------------------------


def _random_pair(rng, size):
    provenances = ["Lexicon", "Rule", "Unknown"]
    pos_tags = ["NOUN", "VERB", "ADV", "CCONJ"]
    system, gold = [], []
    tid = 0
    for _ in range(size):
        tid += 1
        token = f"t{tid}"
        provenance = rng.choice(provenances)
        if provenance == "Unknown":
            sys_ann = unknown_ann(1, tid, token)
        else:
            features = {}
            if rng.random() < 0.5:
                features["NounClass"] = rng.randint(1, 18)
            if provenance == "Rule":
                features["Rule"] = "True"
            sys_ann = make_ann(
                1, tid, token,
                pos=rng.choice(pos_tags),
                lemma=rng.choice(["", "alpha", "beta"]),
                features=features,
                provenance=provenance,
            )
        if rng.random() < 0.3:
            gold_features = {}
            if rng.random() < 0.5:
                gold_features["NounClass"] = rng.randint(1, 18)
            if "Rule" in sys_ann.morph_features:
                gold_features["Rule"] = "True"
            gold_ann = dataclasses.replace(
                sys_ann,
                pos=rng.choice(pos_tags),
                lemma=rng.choice(["", "alpha", "beta"]),
                morph_features=MorphFeatureBag(gold_features),
            )
        else:
            gold_ann = sys_ann
        system.append(sys_ann)
        gold.append(gold_ann)
    return system, gold


def _oracle_counts(system, gold):
    """Independent brute-force recount of every metric."""
    total = len(system)
    lexicon = sum(1 for a in system if a.provenance == "Lexicon")
    rules = sum(1 for a in system if a.provenance == "Rule")
    unknown = sum(1 for a in system if a.provenance == "Unknown")
    analyzed = total - unknown
    pos_correct = 0
    morph_correct = 0
    for s, g in zip(system, gold):
        if s.provenance == "Unknown":
            continue
        if s.pos == g.pos:
            pos_correct += 1
        if set(s.morph_features.items) == set(g.morph_features.items) and s.lemma == g.lemma:
            morph_correct += 1
    def pct(n, d):
        return 100.0 * n / d if d else 0.0
    return {
        "lc": pct(lexicon, total),
        "rc": pct(rules, total),
        "pa": pct(pos_correct, analyzed),
        "ma": pct(morph_correct, analyzed),
        "unknown_rate": pct(unknown, total),
    }


def test_metrics_match_oracle_on_random_corpora():
    rng = random.Random(991)
    for _ in range(50):
        system, gold = _random_pair(rng, rng.randint(1, 400))
        report = compute_metrics(system, gold)
        expected = _oracle_counts(system, gold)
        for name, value in expected.items():
            assert abs(getattr(report, name) - value) < 1e-9


def test_permutation_stability():
    rng = random.Random(7)
    blocks = []
    for sid in range(1, 6):
        size = rng.randint(1, 5)
        blocks.append([
            make_ann(sid, tid, f"s{sid}t{tid}", pos=rng.choice(["NOUN", "VERB"]))
            for tid in range(1, size + 1)
        ])
    system = [ann for block in blocks for ann in block]
    gold = [
        dataclasses.replace(ann, pos="VERB") if rng.random() < 0.4 else ann
        for ann in system
    ]
    base = compute_metrics(system, gold)

    order = list(range(len(blocks)))
    rng.shuffle(order)
    pairs = list(zip(system, gold))
    by_block = {}
    for s, g in pairs:
        by_block.setdefault(s.sentence_id, []).append((s, g))
    shuffled = [pair for i in order for pair in by_block[i + 1]]
    report = compute_metrics([s for s, _ in shuffled], [g for _, g in shuffled])
    assert report == base


# --- render_report ---------------------------------------------------------------


def test_render_contains_metric_rows():
    report = dataclasses.replace(EvalReport(), lc=62.4, rc=94.1, pa=90.7, ma=88.3, unknown_rate=5.9)
    text = render_report(report)
    assert "Lexical Coverage (LC) | 62.4 | Tokens directly matched in the JSON lexicon" in text
    assert "Rule Coverage (RC) | 94.1 |" in text
    assert "Overall POS Accuracy (PA) | 90.7 |" in text
    assert "Morphological Accuracy (MA) | 88.3 |" in text
    assert "Unknown Token Rate | 5.9 |" in text


def test_render_all_zero_without_confusions():
    text = render_report(EvalReport())
    assert "| 0.0 |" in text
    assert "confusions" not in text


def test_render_confusion_cells():
    report = dataclasses.replace(EvalReport(), noun_class_confusions={(10, 9): 3})
    assert "gold 10 → predicted 9: 3" in render_report(report)
