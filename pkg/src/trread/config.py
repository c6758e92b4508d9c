"""Run configuration: formula coefficients, lexicon paths, extraction knobs.

Config files are JSON; unknown keys are rejected so typos fail loudly.
Every output directory gets a snapshot of the effective config so runs are
reproducible from their artifacts alone.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError

DEFAULTS: dict = {
    "formulas": {
        # score = intercept - syllable_weight * mean_syllables_per_word
        #                    - sentence_weight * mean_words_per_sentence
        "atesman": {
            "intercept": 198.825,
            "syllable_weight": 40.175,
            "sentence_weight": 2.610,
        },
        "cetinkaya": {
            "intercept": 118.823,
            "syllable_weight": 25.987,
            "sentence_weight": 0.971,
        },
    },
    "lexicons": {
        "early": None,        # TSV lemma<TAB>count
        "late": None,         # TSV lemma<TAB>count
        "basic_words": None,  # one lemma per line
    },
    "lxsm": {"mattr_window": 50},
    "morph": {"sample_size": 10, "samples": 100, "seed": None},
    "synx": {"np_labels": ["NP"], "vp_labels": ["VP"]},
}


def _check_keys(given: dict, allowed: dict, prefix: str = "") -> None:
    for key, value in given.items():
        if key not in allowed:
            raise ConfigError(f"unknown config key: {prefix}{key}")
        if isinstance(allowed[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"config key {prefix}{key} must be an object")
            _check_keys(value, allowed[key], prefix=f"{prefix}{key}.")


def _merge(base: dict, override: dict) -> dict:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


@dataclass(frozen=True)
class RunConfig:
    """Effective configuration for one run (defaults merged with a file)."""

    data: dict
    source: Path | None = None

    @classmethod
    def default(cls) -> "RunConfig":
        return cls(data=copy.deepcopy(DEFAULTS))

    @classmethod
    def load(cls, path: str | Path | None) -> "RunConfig":
        if path is None:
            return cls.default()
        path = Path(path)
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config root must be a JSON object")
        _check_keys(raw, DEFAULTS)
        return cls(data=_merge(DEFAULTS, raw), source=path)

    def _resolve(self, value: str | None) -> Path | None:
        if value is None:
            return None
        path = Path(value)
        if not path.is_absolute() and self.source is not None:
            path = self.source.parent / path
        return path.resolve()

    @property
    def formulas(self) -> dict:
        return self.data["formulas"]

    def lexicon_path(self, name: str) -> Path | None:
        return self._resolve(self.data["lexicons"][name])

    @property
    def mattr_window(self) -> int:
        window = self.data["lxsm"]["mattr_window"]
        if not isinstance(window, int) or window < 1:
            raise ConfigError("lxsm.mattr_window must be a positive integer")
        return window

    @property
    def mci_sample_size(self) -> int:
        return int(self.data["morph"]["sample_size"])

    @property
    def mci_samples(self) -> int:
        return int(self.data["morph"]["samples"])

    @property
    def mci_seed(self) -> int | None:
        seed = self.data["morph"]["seed"]
        return None if seed is None else int(seed)

    @property
    def np_labels(self) -> frozenset[str]:
        return frozenset(self.data["synx"]["np_labels"])

    @property
    def vp_labels(self) -> frozenset[str]:
        return frozenset(self.data["synx"]["vp_labels"])

    def snapshot(self) -> dict:
        """Copy of the effective configuration, suitable for JSON output."""
        return copy.deepcopy(self.data)
