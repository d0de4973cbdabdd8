"""Reproduce the corpus-description numbers: size counts, genre mix, and
the Jensen-Shannon textual heterogeneity of each topic.

Heterogeneity of a topic is the mean JS divergence (log base 2, so the
value lives in [0, 1]) between each snippet's word distribution and the
pooled distribution of all the other snippets. 0 means every snippet says
the same thing; values near 1 mean near-disjoint vocabulary.

Run from anywhere:  python3 demos/04_corpus_statistics.py
"""

from pathlib import Path
from statistics import fmean

from liveblogsum.analysis import (corpus_stats, domain_distribution,
                                  textual_heterogeneity)
from liveblogsum.corpus import load_corpus

ROOT = Path(__file__).resolve().parents[1]

corpus = load_corpus(ROOT / "fixtures" / "corpus" / "benchmark20.json")
stats = corpus_stats(corpus)

print(f"topics:            {stats.n_topics}")
print(f"documents:         {stats.n_documents}")
print(f"docs per topic:    {float(stats.docs_per_topic):.2f}")
print(f"words per doc:     {float(stats.words_per_document):.2f}")
print(f"words per summary: {float(stats.words_per_summary):.2f}")

print("\ngenre mix:")
for genre, (count, pct) in domain_distribution(corpus).items():
    print(f"  {genre:<12} {count:>3}  {pct:6.2f}%")

# per-topic heterogeneity, most diverse first
scored = sorted(((textual_heterogeneity(b), b) for b in corpus.blogs),
                key=lambda pair: -pair[0])
print("\ntextual heterogeneity per topic:")
for th, blog in scored:
    print(f"  {th:.4f}  {blog.blog_id}  {blog.title[:50]}")
print(f"\ncorpus mean: {fmean(th for th, _ in scored):.4f}")
