"""Run all five extractive systems on one topic and compare what each
picks under the same word budget.

Every system sees the same candidate pool (the blog's snippets split into
sentences) and the same budget L = length of the human bullet summary.
They differ only in how they score:

  tfidf   - sum of corpus-level tf*idf weights in the sentence
  lexrank - PageRank over the sentence similarity graph
  lsa     - singular-vector energy of the sentence (Steinberger scoring)
  kl      - greedily minimize KL(summary || source) with add-one smoothing
  icsi    - exact weighted bigram coverage under the budget knapsack

Run from anywhere:  python3 demos/05_summarizers.py
"""

from pathlib import Path

from liveblogsum.corpus import load_corpus
from liveblogsum.evaluate import budget_for
from liveblogsum.summarize import SYSTEMS, split_candidates

ROOT = Path(__file__).resolve().parents[1]

corpus = load_corpus(ROOT / "fixtures" / "corpus" / "benchmark20.json")
blog = corpus.blogs[0]
cands = split_candidates(blog)
budget = budget_for(blog, "L")

print(f"topic:  {blog.title}")
print(f"budget: {budget} words over {len(cands)} candidate sentences")
print("\nreference bullets:")
for bullet in blog.summary:
    print(f"  - {bullet}")

for name in ("tfidf", "lexrank", "lsa", "kl", "icsi"):
    extract = SYSTEMS[name](cands, budget)
    picked = {c.sent_id: c for c in cands}
    print(f"\n[{name}] ids={list(extract.sentence_ids)} "
          f"words={extract.total_words}/{budget}")
    for sid in extract.sentence_ids:
        print(f"  ({sid}) {picked[sid].text}")
