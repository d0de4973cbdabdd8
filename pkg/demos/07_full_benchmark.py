"""Run the whole benchmark: five systems plus two oracle bounds, two
budgets, three ROUGE variants, averaged over the 20-topic fixture.

Per topic and budget mode (L = human summary length, 2L = double) each
system produces an extract which is scored with ROUGE-1, ROUGE-2 and
ROUGE-SU4 recall against the human bullets. The table reports corpus
means; ub-1 and ub-2 rows are the exact extractive ceilings.

Run from anywhere:  python3 demos/07_full_benchmark.py
"""

from pathlib import Path

from liveblogsum.corpus import load_corpus
from liveblogsum.evaluate import run_benchmark

ROOT = Path(__file__).resolve().parents[1]

corpus = load_corpus(ROOT / "fixtures" / "corpus" / "benchmark20.json")
report = run_benchmark(corpus)

print(report.to_markdown())

# sanity: the bounds really are bounds
for system, modes in report.rows.items():
    if system.startswith("ub-"):
        continue
    for mode in ("L", "2L"):
        assert modes[mode]["R1"] <= report.rows["ub-1"][mode]["R1"]
        assert modes[mode]["R2"] <= report.rows["ub-2"][mode]["R2"]
print("ceiling check: no system beats its upper bound")
