"""ROUGE-1/2/SU4 recall over token streams.

Recall = clipped candidate n-gram matches / reference n-gram count.
Clipping caps each n-gram's match count at its reference count, so a
candidate cannot score by repeating one matching phrase. SU4 pools
unigrams together with skip-bigrams whose two tokens sit at most
`su4_max_gap` positions apart (numerator and denominator both pooled).
With several references the best (maximum) recall is reported.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import EmptyReference
from .textutils import TokenStream, is_stopword

VARIANTS = ("R1", "R2", "SU4")


@dataclass(frozen=True)
class RougeConfig:
    variant: str = "R1"
    stemming: bool = True
    keep_stopwords: bool = True
    su4_max_gap: int = 4

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if self.su4_max_gap < 1:
            raise ValueError("su4_max_gap must be >= 1")


def _units(stream: TokenStream, config: RougeConfig) -> list[str]:
    units = stream.stemmed if config.stemming else stream.tokens
    if config.keep_stopwords:
        return list(units)
    return [u for raw, u in zip(stream.tokens, units) if not is_stopword(raw)]


def _ngram_counts(units: list[str], config: RougeConfig) -> Counter:
    grams: Counter = Counter()
    if config.variant == "R1":
        grams.update(units)
    elif config.variant == "R2":
        grams.update(zip(units, units[1:]))
    else:  # SU4: unigrams pooled with bounded-gap skip bigrams
        grams.update((u,) for u in units)
        for i in range(len(units)):
            for j in range(i + 1, min(i + config.su4_max_gap, len(units) - 1) + 1):
                grams[(units[i], units[j])] += 1
    return grams


def rouge_recall(candidate: TokenStream, references: list[TokenStream],
                 config: RougeConfig | None = None) -> float:
    """Best recall of `candidate` against any reference; in [0, 1]."""
    config = config or RougeConfig()
    if not references:
        raise EmptyReference("at least one reference is required")
    cand_grams = _ngram_counts(_units(candidate, config), config)
    best = None
    for reference in references:
        ref_grams = _ngram_counts(_units(reference, config), config)
        denominator = sum(ref_grams.values())
        if denominator == 0:
            continue
        matched = sum(min(count, cand_grams[gram]) for gram, count in ref_grams.items())
        score = matched / denominator
        if best is None or score > best:
            best = score
    if best is None:
        raise EmptyReference(f"no reference has any {config.variant} n-gram")
    return best
