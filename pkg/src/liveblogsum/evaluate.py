"""Benchmark protocol: budgets L and 2L, extractive upper bounds, reports.

For every topic the human bullet summary is the single reference. Each
system summarizes under a word budget equal to the reference length (L)
or twice that (2L) and is scored with ROUGE-1/2/SU4 recall. UB-1 and
UB-2 are oracle extracts that maximize coverage of reference unigrams /
bigrams via the exact solver; their achieved recall is the ceiling any
extractive system can reach, so per-topic dominance of UB-n in
ROUGE-n is the load-bearing cross-module invariant.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import fmean

from .corpus import Corpus, LiveBlog, atomic_write_bytes, canonical_json_bytes, corpus_digest
from .coverage import CoverageInstance, solve
from .errors import EmptySummary, LiveBlogError
from .rouge import RougeConfig, rouge_recall
from .summarize import SYSTEMS, CandidateSentence, Extract, split_candidates
from .textutils import TokenStream, tokenize

MODES = ("L", "2L")
SYSTEM_ORDER = ("tfidf", "lexrank", "lsa", "kl", "icsi")
UB_ORDER = ("ub-1", "ub-2")
METRICS = ("R1", "R2", "SU4")


def reference_stream(blog: LiveBlog) -> TokenStream:
    return tokenize(" ".join(blog.summary))


def budget_for(blog: LiveBlog, mode: str) -> int:
    """L = word count of the human summary; 2L doubles it."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    length = len(reference_stream(blog))
    if length == 0:
        raise EmptySummary(f"blog {blog.blog_id} has an empty summary")
    return length if mode == "L" else 2 * length


def extract_stream(extract: Extract, cands: list[CandidateSentence]) -> TokenStream:
    by_id = {c.sent_id: c for c in cands}
    return tokenize(" ".join(by_id[i].text for i in extract.sentence_ids))


def _ngrams(units: tuple[str, ...], n: int) -> list[str]:
    return [" ".join(units[i:i + n]) for i in range(len(units) - n + 1)]


def build_ub_instance(cands: list[CandidateSentence], reference: TokenStream,
                      n: int, budget: int) -> CoverageInstance:
    """Concepts = distinct reference n-grams over stems, weighted by their
    reference counts; incidence = which sentences contain each n-gram."""
    weights = {g: float(c) for g, c in Counter(_ngrams(reference.stemmed, n)).items()}
    incidence = [set(_ngrams(c.tokens.stemmed, n)) & weights.keys() for c in cands]
    return CoverageInstance.make(weights=weights, lengths=[c.length for c in cands],
                                 incidence=incidence, budget=budget)


def upper_bound(cands: list[CandidateSentence], reference: TokenStream,
                n: int, budget: int) -> tuple[Extract, float]:
    """Oracle extract maximizing reference n-gram coverage, plus its
    achieved ROUGE-n recall."""
    if n not in (1, 2):
        raise ValueError("n must be 1 or 2")
    if budget < 0:
        raise ValueError("budget must be non-negative")
    cands = sorted(cands, key=lambda c: c.sent_id)
    instance = build_ub_instance(cands, reference, n, budget)
    solution = solve(instance)
    ids = sorted(cands[i].sent_id for i in solution.selected)
    extract = Extract(sentence_ids=tuple(ids),
                      total_words=sum(cands[i].length for i in solution.selected),
                      system=f"ub-{n}", scores=None)
    if instance.n_concepts == 0:
        return extract, 0.0
    config = RougeConfig(variant="R1" if n == 1 else "R2")
    return extract, rouge_recall(extract_stream(extract, cands), [reference], config)


@dataclass(frozen=True)
class BenchmarkReport:
    rows: dict
    per_topic: tuple
    failures: tuple
    corpus_digest: str
    config: dict
    n_topics: int

    def to_payload(self) -> dict:
        return {
            "rows": self.rows,
            "per_topic": list(self.per_topic),
            "failures": list(self.failures),
            "corpus_digest": self.corpus_digest,
            "config": self.config,
            "n_topics": self.n_topics,
        }

    def to_bytes(self) -> bytes:
        return canonical_json_bytes(self.to_payload())

    def to_markdown(self) -> str:
        modes = self.config["modes"]
        header = "| System | " + " | ".join(f"{m} ({mode})" for mode in modes for m in METRICS) + " |"
        rule = "|" + "---|" * (1 + len(modes) * len(METRICS))
        lines = [
            f"Corpus `{self.corpus_digest[:12]}`, {self.n_topics} topics, "
            f"{len(self.failures)} failures.",
            "",
            header,
            rule,
        ]
        for system in list(self.config["systems"]) + list(UB_ORDER):
            cells = []
            for mode in modes:
                cell = self.rows.get(system, {}).get(mode, {})
                for metric in METRICS:
                    value = cell.get(metric)
                    cells.append("n/a" if value is None else f"{value:.3f}")
            lines.append(f"| {system} | " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"


def _rouge_configs() -> dict[str, RougeConfig]:
    return {m: RougeConfig(variant=m) for m in METRICS}


def _score_extract(extract: Extract, cands, reference: TokenStream) -> dict[str, float]:
    stream = extract_stream(extract, cands)
    scores = {}
    for metric, config in _rouge_configs().items():
        scores[metric] = rouge_recall(stream, [reference], config)
    return scores


def _score_topic(args) -> tuple[list[dict], list[dict], list[tuple[str, str]]]:
    blog, systems, modes, params, want_dumps = args
    rows: list[dict] = []
    failures: list[dict] = []
    dumps: list[tuple[str, str]] = []
    cands = split_candidates(blog)
    reference = reference_stream(blog)
    for mode in modes:
        try:
            budget = budget_for(blog, mode)
        except (LiveBlogError, ValueError) as exc:
            failures.append({"blog_id": blog.blog_id, "system": "budget", "mode": mode,
                             "error": f"{type(exc).__name__}: {exc}"})
            continue
        for system in systems:
            fn = SYSTEMS[system]
            kwargs = dict(params.get(system, {}))
            try:
                extract = fn(cands, budget, **kwargs)
                scores = _score_extract(extract, cands, reference)
            except (LiveBlogError, ValueError) as exc:
                failures.append({"blog_id": blog.blog_id, "system": system, "mode": mode,
                                 "error": f"{type(exc).__name__}: {exc}"})
                continue
            rows.append({"blog_id": blog.blog_id, "system": system, "mode": mode,
                         "budget": budget, **scores})
        for n in (1, 2):
            name = f"ub-{n}"
            try:
                if want_dumps:
                    instance = build_ub_instance(sorted(cands, key=lambda c: c.sent_id),
                                                 reference, n, budget)
                    dumps.append((f"{blog.blog_id}.{name}.{mode}.json", instance.to_json()))
                extract, _ = upper_bound(cands, reference, n, budget)
                scores = _score_extract(extract, cands, reference)
            except (LiveBlogError, ValueError) as exc:
                failures.append({"blog_id": blog.blog_id, "system": name, "mode": mode,
                                 "error": f"{type(exc).__name__}: {exc}"})
                continue
            rows.append({"blog_id": blog.blog_id, "system": name, "mode": mode,
                         "budget": budget, **scores})
    return rows, failures, dumps


def run_benchmark(corpus: Corpus, systems: list[str] | None = None,
                  modes: tuple[str, ...] = MODES, params: dict | None = None,
                  jobs: int = 1, dump_dir: str | None = None) -> BenchmarkReport:
    """Summarize and score every topic; averages are recomputable means
    of the per-topic columns. Topic order never affects the result."""
    corpus.at_stage("pruned")
    systems = list(systems) if systems is not None else list(SYSTEM_ORDER)
    unknown = [s for s in systems if s not in SYSTEMS]
    if unknown:
        raise ValueError(f"unknown systems: {unknown}")
    for mode in modes:
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
    params = params or {}
    tasks = [(blog, systems, modes, params, dump_dir is not None) for blog in corpus.blogs]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_score_topic, tasks))
    else:
        outcomes = [_score_topic(t) for t in tasks]

    per_topic: list[dict] = []
    failures: list[dict] = []
    for rows, fails, dumps in outcomes:
        per_topic.extend(rows)
        failures.extend(fails)
        if dump_dir is not None:
            os.makedirs(dump_dir, exist_ok=True)
            for filename, text in dumps:
                atomic_write_bytes(os.path.join(dump_dir, filename), text.encode("utf-8"))
    per_topic.sort(key=lambda r: (r["blog_id"], r["system"], r["mode"]))
    failures.sort(key=lambda r: (r["blog_id"], r["system"], r["mode"]))

    table: dict = {}
    for system in systems + list(UB_ORDER):
        table[system] = {}
        for mode in modes:
            column = [r for r in per_topic if r["system"] == system and r["mode"] == mode]
            cell = {}
            for metric in METRICS:
                cell[metric] = fmean(r[metric] for r in column) if column else None
            table[system][mode] = cell

    config = {
        "systems": systems,
        "modes": list(modes),
        "params": params,
        "rouge": {"stemming": True, "keep_stopwords": True, "su4_max_gap": 4},
    }
    return BenchmarkReport(rows=table, per_topic=tuple(per_topic), failures=tuple(failures),
                           corpus_digest=corpus_digest(corpus), config=config,
                           n_topics=len(corpus.blogs))
