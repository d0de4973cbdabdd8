import warnings
from statistics import fmean

import pytest

from liveblogsum.corpus import Corpus, LiveBlog, Snippet
from liveblogsum.coverage import CoverageInstance
from liveblogsum.errors import EmptySummary, StageError
from liveblogsum.evaluate import (METRICS, MODES, SYSTEM_ORDER, UB_ORDER,
                                  budget_for, build_ub_instance, reference_stream,
                                  run_benchmark, upper_bound)
from liveblogsum.summarize import split_candidates
from liveblogsum.textutils import tokenize


def make_blog(snippets, summary=("alpha beta gamma", "delta epsilon zeta",
                                 "eta theta iota"), blog_id="b1"):
    return LiveBlog(blog_id=blog_id, url=f"https://e.org/{blog_id}", author=None,
                    date=None, genre="news", title="t", summary=tuple(summary),
                    snippets=tuple(Snippet(index=i, timestamp=None, text=t)
                                   for i, t in enumerate(snippets)))


def make_corpus(*blogs):
    return Corpus(source="bbc", stage="pruned", blogs=tuple(blogs),
                  created_at="2024-01-01T00:00:00Z", tool_version="t")


# --- budgets ---------------------------------------------------------------------

def test_budget_is_reference_length():
    blog = make_blog(["Words here."], summary=("one two three", "four five six seven"))
    assert budget_for(blog, "L") == 7
    assert budget_for(blog, "2L") == 14


def test_budget_rejects_unknown_mode():
    blog = make_blog(["Words here."])
    with pytest.raises(ValueError):
        budget_for(blog, "3L")


def test_budget_empty_summary():
    blog = make_blog(["Words here."], summary=("!!!", "???", "..."))
    with pytest.raises(EmptySummary):
        budget_for(blog, "L")


# --- upper-bound instances ----------------------------------------------------------

def test_build_ub_instance_semantics():
    blog = make_blog(["The cat sat on the mat. A dog barked."])
    cands = split_candidates(blog)
    reference = tokenize("the cat sat the end")
    inst = build_ub_instance(cands, reference, n=1, budget=6)
    # reference unigram counts over stems: the x2, cat, sat, end
    assert inst.weights == {"the": 2.0, "cat": 1.0, "sat": 1.0, "end": 1.0}
    assert inst.lengths == (6, 3)
    assert inst.incidence[0] == {"the", "cat", "sat"}
    assert inst.incidence[1] == frozenset()
    assert inst.budget == 6

    bi = build_ub_instance(cands, reference, n=2, budget=6)
    assert bi.weights == {"the cat": 1.0, "cat sat": 1.0, "sat the": 1.0,
                          "the end": 1.0}
    assert bi.incidence[0] == {"the cat", "cat sat"}


def test_upper_bound_hand_example():
    blog = make_blog(["The cat sat on the mat. A dog barked."])
    cands = split_candidates(blog)
    reference = tokenize("the cat sat")
    for n in (1, 2):
        extract, recall = upper_bound(cands, reference, n=n, budget=6)
        assert extract.sentence_ids == (0,)
        assert extract.system == f"ub-{n}"
        assert recall == 1.0


def test_upper_bound_nothing_fits():
    blog = make_blog(["The cat sat on the mat."])
    cands = split_candidates(blog)
    extract, recall = upper_bound(cands, tokenize("the cat"), n=1, budget=2)
    assert extract.sentence_ids == ()
    assert recall == 0.0


def test_upper_bound_without_concepts_scores_zero():
    blog = make_blog(["The cat sat on the mat."])
    cands = split_candidates(blog)
    # single-word reference has no bigrams at all
    extract, recall = upper_bound(cands, tokenize("cat"), n=2, budget=6)
    assert recall == 0.0
    assert extract.sentence_ids == ()


def test_upper_bound_validation():
    cands = split_candidates(make_blog(["Words are here."]))
    with pytest.raises(ValueError):
        upper_bound(cands, tokenize("words"), n=3, budget=5)
    with pytest.raises(ValueError):
        upper_bound(cands, tokenize("words"), n=1, budget=-1)


# --- run_benchmark ------------------------------------------------------------------

def test_report_means_recompute_bit_identical(benchmark_report):
    report = benchmark_report
    for system in list(SYSTEM_ORDER) + list(UB_ORDER):
        for mode in MODES:
            column = [r for r in report.per_topic
                      if r["system"] == system and r["mode"] == mode]
            assert len(column) == report.n_topics
            for metric in METRICS:
                assert report.rows[system][mode][metric] \
                    == fmean(r[metric] for r in column)


def test_per_topic_rows_sorted_and_complete(benchmark_report):
    keys = [(r["blog_id"], r["system"], r["mode"]) for r in benchmark_report.per_topic]
    assert keys == sorted(keys)
    assert len(keys) == len(set(keys))
    assert benchmark_report.failures == ()
    assert len(benchmark_report.per_topic) \
        == benchmark_report.n_topics * len(MODES) * (len(SYSTEM_ORDER) + len(UB_ORDER))


def test_parallel_run_is_byte_identical(benchmark_corpus):
    small = make_corpus(*benchmark_corpus.blogs[:4])
    serial = run_benchmark(small, jobs=1)
    parallel = run_benchmark(small, jobs=2)
    assert serial.to_bytes() == parallel.to_bytes()


def test_dump_dir_writes_instances(tmp_path, benchmark_corpus):
    small = make_corpus(*benchmark_corpus.blogs[:1])
    blog = small.blogs[0]
    report = run_benchmark(small, dump_dir=str(tmp_path))
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == sorted(f"{blog.blog_id}.ub-{n}.{mode}.json"
                           for n in (1, 2) for mode in MODES)
    for path in tmp_path.iterdir():
        inst = CoverageInstance.from_json(path.read_text(encoding="utf-8"))
        assert inst.n_items == len(split_candidates(blog))
    assert report.n_topics == 1


def test_failures_recorded_not_fatal():
    good = make_blog(["The court ruled today. Crowds cheered the verdict outside."],
                     blog_id="good")
    # every sentence is a single word: no bigrams, so icsi fails
    bad = make_blog(["Alpha. Beta.", "Gamma. Delta."], blog_id="zbad")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        report = run_benchmark(make_corpus(good, bad))
    fail_keys = {(f["blog_id"], f["system"], f["mode"]) for f in report.failures}
    assert fail_keys == {("zbad", "icsi", "L"), ("zbad", "icsi", "2L")}
    assert all("NoConcepts" in f["error"] for f in report.failures)
    # icsi means come from the good topic alone; others average both
    icsi_rows = [r for r in report.per_topic if r["system"] == "icsi"]
    assert {r["blog_id"] for r in icsi_rows} == {"good"}
    tfidf_rows = [r for r in report.per_topic if r["system"] == "tfidf"]
    assert {r["blog_id"] for r in tfidf_rows} == {"good", "zbad"}


def test_empty_summary_blog_fails_per_mode():
    blog = make_blog(["Words live here."], summary=("!!!", "???", "..."),
                     blog_id="empty")
    report = run_benchmark(make_corpus(blog))
    assert len(report.failures) == len(MODES)
    assert all(f["system"] == "budget" for f in report.failures)
    assert report.per_topic == ()
    assert report.rows["tfidf"]["L"]["R1"] is None


def test_run_benchmark_validation(benchmark_corpus):
    with pytest.raises(ValueError):
        run_benchmark(benchmark_corpus, systems=["tfidf", "nope"])
    with pytest.raises(ValueError):
        run_benchmark(benchmark_corpus, modes=("L", "4L"))
    crawled = Corpus(source="bbc", stage="crawled", blogs=(),
                     created_at="2024-01-01T00:00:00Z", tool_version="t")
    with pytest.raises(StageError):
        run_benchmark(crawled)


def test_config_echoes_run_parameters(benchmark_corpus):
    small = make_corpus(*benchmark_corpus.blogs[:1])
    params = {"lexrank": {"threshold": 0.2}}
    report = run_benchmark(small, systems=["lexrank"], modes=("L",), params=params)
    assert report.config["systems"] == ["lexrank"]
    assert report.config["modes"] == ["L"]
    assert report.config["params"] == params
    assert report.config["rouge"] == {"stemming": True, "keep_stopwords": True,
                                      "su4_max_gap": 4}
    assert set(report.rows) == {"lexrank", "ub-1", "ub-2"}


# --- report rendering ----------------------------------------------------------------

def test_markdown_table_shape(benchmark_report):
    md = benchmark_report.to_markdown()
    lines = md.splitlines()
    assert lines[0].startswith("Corpus `")
    assert "20 topics" in lines[0]
    header = lines[2]
    assert header.startswith("| System |")
    assert header.count("|") == 2 + len(MODES) * len(METRICS)
    body = [l for l in lines[4:] if l.startswith("|")]
    assert [l.split("|")[1].strip() for l in body] \
        == list(SYSTEM_ORDER) + list(UB_ORDER)
    assert "n/a" not in md


def test_markdown_empty_corpus_uses_na():
    report = run_benchmark(make_corpus())
    md = report.to_markdown()
    assert "n/a" in md
    assert report.to_bytes().endswith(b"\n")


def test_reference_stream_joins_bullets():
    blog = make_blog(["x"], summary=("one two", "three four"))
    assert reference_stream(blog).tokens == ("one", "two", "three", "four")
