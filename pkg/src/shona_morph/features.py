"""Morphological feature bags and their pipe-delimited string form.

A bag is an unordered set of Key=Value pairs; only Deriv may carry more
than one value. The string form is canonical: keys appear in FEATURE_ORDER
and Deriv values are comma-joined in DERIV_ORDER, so equal bags always
serialize to identical strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import FeatureError

FEATURE_ORDER = (
    "NounClass",
    "Locative",
    "Rule",
    "SC",
    "OC",
    "Tense",
    "Aspect",
    "Deriv",
    "Root",
)

DERIV_ORDER = ("Causative", "Applicative", "Passive", "Reciprocal", "Stative")

TENSE_VALUES = frozenset({"cha", "ka", "na", "no", "None"})
ASPECT_VALUES = frozenset({"Perf", "Prog"})

_ORDER_INDEX = {key: i for i, key in enumerate(FEATURE_ORDER)}
_DERIV_INDEX = {val: i for i, val in enumerate(DERIV_ORDER)}


def _check_morpheme(key: str, value: str) -> None:
    if not value or any(ch in value for ch in "|=,"):
        raise FeatureError(f"bad value for {key}: {value!r}")


def _validate(key: str, value: str) -> None:
    if key == "NounClass":
        if not value.isdigit() or not 1 <= int(value) <= 18:
            raise FeatureError(f"NounClass must be 1..18, got {value!r}")
    elif key in ("Locative", "Rule"):
        if value != "True":
            raise FeatureError(f"{key} only takes the value True, got {value!r}")
    elif key == "Tense":
        if value not in TENSE_VALUES:
            raise FeatureError(f"bad Tense value {value!r}")
    elif key == "Aspect":
        if value not in ASPECT_VALUES:
            raise FeatureError(f"bad Aspect value {value!r}")
    elif key in ("SC", "OC", "Root"):
        _check_morpheme(key, value)
    elif key == "Deriv":
        if value not in _DERIV_INDEX:
            raise FeatureError(f"bad Deriv value {value!r}")
    else:
        raise FeatureError(f"unknown feature key {key!r}")


def _normalize(features: Mapping | Iterable[tuple[str, object]] | None) -> tuple:
    """Canonicalize raw key/value input into an ordered pair tuple."""
    if features is None:
        return ()
    pairs = features.items() if isinstance(features, Mapping) else features
    singles: dict[str, str] = {}
    derivs: set[str] = set()
    for key, raw in pairs:
        if raw is None or raw == "" or raw == []:
            continue  # empty value means the key is absent
        if key == "Deriv":
            values = raw if isinstance(raw, (list, tuple, set, frozenset)) else str(raw).split(",")
            for v in values:
                v = str(v)
                _validate("Deriv", v)
                derivs.add(v)
            continue
        value = str(raw)
        _validate(key, value)
        if key in singles and singles[key] != value:
            raise FeatureError(f"conflicting values for {key}: {singles[key]!r} vs {value!r}")
        singles[key] = value
    items = []
    for key in FEATURE_ORDER:
        if key == "Deriv":
            if derivs:
                items.append(("Deriv", ",".join(sorted(derivs, key=_DERIV_INDEX.get))))
        elif key in singles:
            items.append((key, singles[key]))
    return tuple(items)


@dataclass(frozen=True)
class MorphFeatureBag:
    """Immutable, canonically ordered set of morphological features."""

    items: tuple[tuple[str, str], ...] = ()

    def __init__(self, features: Mapping | Iterable | None = None):
        object.__setattr__(self, "items", _normalize(features))

    @classmethod
    def parse(cls, text: str) -> "MorphFeatureBag":
        """Parse the pipe-delimited §-style string (e.g. ``NounClass=1|Rule=True``)."""
        pairs = []
        for chunk in text.split("|"):
            if not chunk:
                if text.strip("|") == "":
                    continue
                raise FeatureError(f"empty feature in {text!r}")
            key, sep, value = chunk.partition("=")
            if not sep or not key or not value:
                raise FeatureError(f"feature {chunk!r} is not Key=Value")
            pairs.append((key, value))
        return cls(pairs)

    def serialize(self) -> str:
        """Render the canonical pipe-delimited string; empty bag gives ''."""
        return "|".join(f"{k}={v}" for k, v in self.items)

    def get(self, key: str, default: str = "") -> str:
        for k, v in self.items:
            if k == key:
                return v
        return default

    def derivs(self) -> tuple[str, ...]:
        value = self.get("Deriv")
        return tuple(value.split(",")) if value else ()

    def with_features(self, extra: Mapping) -> "MorphFeatureBag":
        """Return a new bag with ``extra`` keys added or replaced."""
        merged = dict(self.items)
        merged.update(extra)
        return MorphFeatureBag(merged)

    def __contains__(self, key: str) -> bool:
        return any(k == key for k, _ in self.items)

    def __iter__(self) -> Iterator[tuple[str, str]]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)

    def __str__(self) -> str:
        return self.serialize()


def parse_features(text: str) -> MorphFeatureBag:
    return MorphFeatureBag.parse(text)


def serialize_features(bag: MorphFeatureBag) -> str:
    return bag.serialize()
