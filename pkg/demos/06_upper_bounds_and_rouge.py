"""Score a system against the reference and against the extractive
ceiling for one topic.

The upper bound asks: which feasible sentence subset maximizes coverage
of the reference n-grams? That is a weighted maximum-coverage problem
with a word-budget knapsack, solved exactly by branch and bound. UB-1
uses unigram weights (a ceiling for ROUGE-1), UB-2 bigrams (for
ROUGE-2). No extractive system can beat them, which makes the gap
between a system and its bound the honest headroom number.

Run from anywhere:  python3 demos/06_upper_bounds_and_rouge.py
"""

from pathlib import Path

from liveblogsum.corpus import load_corpus
from liveblogsum.coverage import solve
from liveblogsum.evaluate import (budget_for, build_ub_instance, extract_stream,
                                  reference_stream, upper_bound)
from liveblogsum.rouge import RougeConfig, rouge_recall
from liveblogsum.summarize import SYSTEMS, split_candidates

ROOT = Path(__file__).resolve().parents[1]

corpus = load_corpus(ROOT / "fixtures" / "corpus" / "benchmark20.json")
blog = corpus.blogs[0]
cands = split_candidates(blog)
budget = budget_for(blog, "L")
reference = reference_stream(blog)

# --- the coverage instance behind UB-2 --------------------------------------
inst = build_ub_instance(cands, reference, 2, budget)
print(f"UB-2 instance: {len(inst.lengths)} items, "
      f"{len(inst.weights)} weighted reference bigrams, budget {inst.budget}")
solution = solve(inst)
print(f"optimal coverage {solution.objective:.1f} with items "
      f"{sorted(solution.selected)} (proven: {solution.proven_optimal})")

# --- systems vs ceilings ------------------------------------------------------
configs = {v: RougeConfig(variant=v) for v in ("R1", "R2", "SU4")}

def row(name, extract):
    stream = extract_stream(extract, cands)
    cells = " ".join(f"{rouge_recall(stream, [reference], configs[v]):7.4f}"
                     for v in ("R1", "R2", "SU4"))
    print(f"{name:<8} {cells}")

print(f"\n{'system':<8} {'R1':>7} {'R2':>7} {'SU4':>7}")
for name in ("tfidf", "lexrank", "lsa", "kl", "icsi"):
    row(name, SYSTEMS[name](cands, budget))
for n in (1, 2):
    extract, achieved = upper_bound(cands, reference, n, budget)
    row(f"ub-{n}", extract)
