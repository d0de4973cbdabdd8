"""Word distributions, TF*IDF, Jensen-Shannon divergence and corpus statistics.

The heterogeneity of a topic is the mean JS divergence between each
snippet and the pool of all other snippets; with base-2 logs the value
lives in [0, 1]. KL terms are computed over the support of the left
argument only (0*log 0 := 0), the standard convention.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

from .corpus import Corpus, LiveBlog
from .errors import DegenerateTopic, EmptyDistribution
from .textutils import tokenize


@dataclass(frozen=True)
class WordDistribution:
    """Sparse word-frequency vector; probabilities are counts / total."""

    counts: dict[str, int]
    total: int

    @classmethod
    def from_tokens(cls, tokens) -> "WordDistribution":
        counts = dict(Counter(tokens))
        return cls(counts=counts, total=sum(counts.values()))

    def probability(self, word: str) -> float:
        if self.total == 0:
            return 0.0
        return self.counts.get(word, 0) / self.total

    def merged(self, other: "WordDistribution") -> "WordDistribution":
        counts = Counter(self.counts)
        counts.update(other.counts)
        return WordDistribution(counts=dict(counts), total=self.total + other.total)


def tfidf(term: str, doc: WordDistribution, corpus_df: dict[str, int], n_docs: int) -> float:
    """Raw term frequency times ln(n_docs / df); df == 0 scores 0 by convention."""
    if n_docs < 1:
        raise ValueError("n_docs must be >= 1")
    tf = doc.counts.get(term, 0)
    df = corpus_df.get(term, 0)
    if tf == 0 or df == 0:
        return 0.0
    return tf * math.log(n_docs / df)


def js_divergence(p: WordDistribution, q: WordDistribution) -> float:
    """Jensen-Shannon divergence with base-2 logs, bounded by [0, 1].

    Symmetric to the bit: both KL halves accumulate over the same sorted
    support, so js(p, q) and js(q, p) run identical float additions.
    """
    if p.total == 0 or q.total == 0:
        raise EmptyDistribution("js_divergence needs two non-empty distributions")
    kl_p = 0.0
    kl_q = 0.0
    for word in sorted(p.counts.keys() | q.counts.keys()):
        pw = p.counts.get(word, 0) / p.total
        qw = q.counts.get(word, 0) / q.total
        mw = 0.5 * (pw + qw)
        if pw > 0.0:
            kl_p += pw * math.log2(pw / mw)
        if qw > 0.0:
            kl_q += qw * math.log2(qw / mw)
    value = 0.5 * kl_p + 0.5 * kl_q
    # float noise can leave the theoretical [0, 1] range by ~1e-16
    return min(max(value, 0.0), 1.0)


def snippet_distributions(topic: LiveBlog) -> list[WordDistribution]:
    return [WordDistribution.from_tokens(tokenize(s.text).tokens) for s in topic.snippets]


def textual_heterogeneity(topic: LiveBlog) -> float:
    """Mean JS divergence between each snippet and the pool of the others."""
    dists = snippet_distributions(topic)
    if len(dists) < 2:
        raise DegenerateTopic(f"{topic.blog_id}: needs >= 2 snippets, has {len(dists)}")
    if any(d.total == 0 for d in dists):
        raise DegenerateTopic(f"{topic.blog_id}: snippet empty after tokenization")
    pooled = Counter()
    for dist in dists:
        pooled.update(dist.counts)
    pooled_total = sum(pooled.values())

    acc = 0.0
    for dist in dists:
        rest_counts = dict(pooled)
        for word, count in dist.counts.items():
            remaining = rest_counts[word] - count
            if remaining:
                rest_counts[word] = remaining
            else:
                del rest_counts[word]
        rest = WordDistribution(counts=rest_counts, total=pooled_total - dist.total)
        acc += js_divergence(dist, rest)
    return acc / len(dists)


@dataclass(frozen=True)
class CorpusStats:
    """Topic/document/word counts with exact rational averages."""

    n_topics: int
    n_documents: int
    docs_per_topic: Fraction | None
    words_per_document: Fraction | None
    words_per_summary: Fraction | None

    def to_payload(self) -> dict:
        return {
            "n_topics": self.n_topics,
            "n_documents": self.n_documents,
            "docs_per_topic": _render(self.docs_per_topic),
            "words_per_document": _render(self.words_per_document),
            "words_per_summary": _render(self.words_per_summary),
        }


def _render(value: Fraction | None) -> float | None:
    """Exact rational -> 2-decimal float for report output."""
    if value is None:
        return None
    quantized = (Decimal(value.numerator) / Decimal(value.denominator)).quantize(
        Decimal("0.01"), rounding=ROUND_HALF_EVEN)
    return float(quantized)


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Table-style counts over a pruned corpus; empty corpus reports null averages."""
    corpus.at_stage("pruned")
    n_topics = len(corpus.blogs)
    n_documents = sum(len(b.snippets) for b in corpus.blogs)
    snippet_words = sum(tokenize(s.text).word_count for b in corpus.blogs for s in b.snippets)
    summary_words = sum(tokenize(" ".join(b.summary)).word_count for b in corpus.blogs)
    if n_topics == 0:
        return CorpusStats(0, 0, None, None, None)
    return CorpusStats(
        n_topics=n_topics,
        n_documents=n_documents,
        docs_per_topic=Fraction(n_documents, n_topics),
        words_per_document=Fraction(snippet_words, n_documents) if n_documents else None,
        words_per_summary=Fraction(summary_words, n_topics),
    )


def domain_distribution(corpus: Corpus) -> dict[str, tuple[int, float]]:
    """Genre -> (topic count, percentage); percentages are 2-decimal rounded."""
    corpus.at_stage("pruned")
    counts = Counter(b.genre for b in corpus.blogs)
    total = sum(counts.values())
    result: dict[str, tuple[int, float]] = {}
    for genre in sorted(counts, key=lambda g: (-counts[g], g)):
        pct = _render(Fraction(counts[genre] * 100, total)) if total else 0.0
        result[genre] = (counts[genre], pct)
    return result
