import math
from collections import Counter

import numpy as np
import pytest

from liveblogsum.corpus import LiveBlog, Snippet
from liveblogsum.errors import NoConcepts
from liveblogsum.summarize import (SYSTEMS, CandidateSentence, _split_sentences,
                                   sentence_concepts, split_candidates,
                                   summarize_icsi, summarize_kl, summarize_lexrank,
                                   summarize_lsa, summarize_tfidf)
from liveblogsum.textutils import tokenize


def blog_of(snippet_texts, blog_id="b") -> LiveBlog:
    return LiveBlog(blog_id=blog_id, url=f"https://e.org/{blog_id}", author=None,
                    date=None, genre="news", title="t",
                    summary=("a b c", "d e f", "g h i"),
                    snippets=tuple(Snippet(index=i, timestamp=None, text=t)
                                   for i, t in enumerate(snippet_texts)))


def cands_of(*sentences) -> list[CandidateSentence]:
    return split_candidates(blog_of([" ".join(sentences)]))


# --- sentence splitting ------------------------------------------------------------

@pytest.mark.parametrize("text,expected", [
    ("One. Two.", ["One.", "Two."]),
    ("Really? Yes! Fine.", ["Really?", "Yes!", "Fine."]),
    ("Mr. Smith arrived. He spoke.", ["Mr. Smith arrived.", "He spoke."]),
    ("Rates rose 3.5 percent. Markets fell.",
     ["Rates rose 3.5 percent.", "Markets fell."]),
    ("J. Smith testified. Court adjourned.",
     ["J. Smith testified.", "Court adjourned."]),
    ('She said "Stop!" Then she left.', ['She said "Stop!"', "Then she left."]),
    ("No trailing stop", ["No trailing stop"]),
    ("Ellipsis... then more. Done.", ["Ellipsis... then more.", "Done."]),
    ("", []),
    ("   ", []),
])
def test_split_sentences(text, expected):
    assert _split_sentences(text) == expected


def test_split_candidates_dense_ids_across_snippets():
    blog = blog_of(["First here. Second here.", "Third one!"])
    cands = split_candidates(blog)
    assert [c.sent_id for c in cands] == [0, 1, 2]
    assert [c.snippet_index for c in cands] == [0, 0, 1]
    assert [c.text for c in cands] == ["First here.", "Second here.", "Third one!"]
    assert all(c.length == len(c.tokens) >= 1 for c in cands)


def test_split_candidates_drops_tokenless_sentences():
    cands = split_candidates(blog_of(["Words here. !!! More words."]))
    assert [c.text for c in cands] == ["Words here.", "More words."]
    assert [c.sent_id for c in cands] == [0, 1]


# --- tf*idf ------------------------------------------------------------------------

def test_tfidf_hand_scores_and_packing():
    blog = blog_of(["Alpha beta. Alpha gamma. Alpha alpha."])
    # df: alpha 3, beta 1, gamma 1 over n=3 sentence-docs
    # s0 = s1 = (ln1 + ln3)/2, s2 = 2*ln1/2 = 0
    for budget, want in [(2, (0,)), (4, (0, 1)), (6, (0, 1, 2))]:
        ext = summarize_tfidf(split_candidates(blog), budget)
        assert ext.sentence_ids == want
        assert ext.system == "tfidf"
    ext = summarize_tfidf(split_candidates(blog), 6)
    assert ext.scores[0] == pytest.approx(math.log(3) / 2)
    assert ext.scores[2] == pytest.approx(0.0)
    assert ext.total_words == 6


def test_tfidf_tie_takes_lower_id():
    blog = blog_of(["Alpha beta. Gamma delta."])
    ext = summarize_tfidf(split_candidates(blog), 2)
    assert ext.sentence_ids == (0,)


def test_tfidf_empty_and_bad_budget():
    assert summarize_tfidf([], 10).sentence_ids == ()
    with pytest.raises(ValueError):
        summarize_tfidf(cands_of("Alpha beta."), 0)


# --- lexrank -----------------------------------------------------------------------

def oracle_pagerank(cands, threshold=0.1, damping=0.85):
    """Closed-form stationary point of p = (1-d)/n + d W^T p via linear solve."""
    n = len(cands)
    df = Counter()
    for c in cands:
        df.update(set(c.tokens.tokens))
    vecs = []
    for c in cands:
        tf = Counter(c.tokens.tokens)
        vecs.append({t: k * math.log(n / df[t]) for t, k in tf.items()})

    def cosine(u, v):
        dot = sum(w * v.get(t, 0.0) for t, w in u.items())
        nu = math.sqrt(sum(w * w for w in u.values()))
        nv = math.sqrt(sum(w * w for w in v.values()))
        return dot / (nu * nv) if nu and nv else 0.0

    adj = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if cosine(vecs[i], vecs[j]) > threshold:
                adj[i, j] = adj[j, i] = 1.0
    degree = adj.sum(axis=1)
    walk = np.divide(adj, degree[:, None], out=np.zeros_like(adj),
                     where=degree[:, None] > 0)
    rhs = np.full(n, (1.0 - damping) / n)
    return np.linalg.solve(np.eye(n) - damping * walk.T, rhs)


def test_lexrank_matches_linear_solve():
    blog = blog_of([
        "The court ruled on the appeal today.",
        "Judges heard the appeal in court.",
        "Protesters gathered outside in the rain.",
        "Rain soaked the protesters outside.",
        "Unrelated trading figures arrived.",
    ])
    cands = split_candidates(blog)
    ext = summarize_lexrank(cands, budget=100)
    want = oracle_pagerank(cands)
    for i, cand in enumerate(cands):
        assert ext.scores[cand.sent_id] == pytest.approx(want[i], abs=1e-4)


def test_lexrank_identical_sentences_uniform_lowest_ids():
    blog = blog_of(["Same words here. Same words here. Same words here."])
    cands = split_candidates(blog)
    ext = summarize_lexrank(cands, budget=6)
    assert ext.sentence_ids == (0, 1)
    scores = list(ext.scores.values())
    assert all(s == pytest.approx(scores[0], abs=1e-9) for s in scores)


def test_lexrank_high_threshold_gives_teleport_scores():
    blog = blog_of(["Alpha beta gamma today. Alpha beta delta today. Omega psi chi now."])
    cands = split_candidates(blog)
    ext = summarize_lexrank(cands, budget=100, threshold=0.99)
    # no edges pass 0.99, so every vertex sits at (1 - d) / n
    for sid in ext.scores:
        assert ext.scores[sid] == pytest.approx(0.15 / 3, abs=1e-6)
    assert ext.sentence_ids == (0, 1, 2)


def test_lexrank_parameter_validation():
    cands = cands_of("Alpha beta.")
    with pytest.raises(ValueError):
        summarize_lexrank(cands, 5, threshold=1.0)
    with pytest.raises(ValueError):
        summarize_lexrank(cands, 5, damping=0.0)
    with pytest.raises(ValueError):
        summarize_lexrank(cands, 0)


# --- lsa ---------------------------------------------------------------------------

def test_lsa_orthogonal_columns_analytic():
    # Columns (2,0) and (0,1): singular values 2 and 1, each sentence on its
    # own topic, so scores are exactly 2 and 1.
    blog = blog_of(["Alpha alpha. Beta."])
    cands = split_candidates(blog)
    ext = summarize_lsa(cands, budget=3)
    assert ext.scores[0] == pytest.approx(2.0, abs=1e-9)
    assert ext.scores[1] == pytest.approx(1.0, abs=1e-9)
    assert ext.sentence_ids == (0, 1)
    # budget 1: the top-scored sentence does not fit, the next does
    assert summarize_lsa(cands, budget=1).sentence_ids == (1,)


def test_lsa_single_sentence():
    ext = summarize_lsa(cands_of("Single sentence stands."), budget=3)
    assert ext.sentence_ids == (0,)
    assert ext.scores[0] > 0


def test_lsa_rank_clamped_to_matrix_rank():
    cands = cands_of("Alpha beta.", "Gamma delta.")
    big = summarize_lsa(cands, budget=4, rank=50)
    small = summarize_lsa(cands, budget=4, rank=2)
    assert big.scores == small.scores


def test_lsa_validation():
    with pytest.raises(ValueError):
        summarize_lsa(cands_of("Alpha."), 3, rank=0)
    with pytest.raises(ValueError):
        summarize_lsa(cands_of("Alpha."), 0)


# --- kl ----------------------------------------------------------------------------

def oracle_kl_greedy(cands, budget):
    """Independent re-run of the greedy: probability-space add-one smoothing,
    KL(source || smoothed summary), lowest id on ties."""
    source = Counter()
    for c in cands:
        source.update(c.tokens.tokens)
    vocab = sorted(source)
    total = sum(source.values())

    def kl(counts, count_total):
        out = 0.0
        for w in vocab:
            p = source[w] / total
            q = counts[w] / count_total if count_total else 0.0
            out += p * math.log(p / ((q + 1.0) / (1.0 + len(vocab))))
        return out

    chosen, summary, used = [], Counter(), 0
    pool = {c.sent_id: c for c in cands}
    while True:
        best, best_kl = None, math.inf
        for sid in sorted(pool):
            c = pool[sid]
            if used + c.length > budget:
                continue
            trial = summary.copy()
            trial.update(c.tokens.tokens)
            value = kl(trial, used + c.length)
            if value < best_kl - 1e-12:
                best, best_kl = sid, value
        if best is None:
            return tuple(sorted(chosen))
        c = pool.pop(best)
        summary.update(c.tokens.tokens)
        used += c.length
        chosen.append(best)


def test_kl_matches_scripted_greedy():
    blog = blog_of([
        "Storm damage closed the bridge today.",
        "Bridge repairs start tomorrow morning.",
        "Officials promised faster storm warnings.",
        "The zoo opened a new wing.",
    ])
    cands = split_candidates(blog)
    for budget in (6, 12, 18, 24):
        assert summarize_kl(cands, budget).sentence_ids \
            == oracle_kl_greedy(cands, budget)


def test_kl_single_source_sentence():
    ext = summarize_kl(cands_of("Only sentence present."), budget=3)
    assert ext.sentence_ids == (0,)
    assert ext.total_words == 3


def test_kl_duplicate_adds_nothing():
    # Source is uniform over six words. After sentence 0 the duplicate
    # leaves the summary distribution (and so the KL) unchanged, while the
    # fresh sentence strictly improves it, so the duplicate loses.
    blog = blog_of(["Alpha beta gamma.", "Alpha beta gamma.",
                    "Delta epsilon zeta delta epsilon zeta."])
    ext = summarize_kl(split_candidates(blog), budget=9)
    assert ext.sentence_ids == (0, 2)


def test_kl_tie_takes_lower_id():
    blog = blog_of(["Alpha beta.", "Alpha beta."])
    ext = summarize_kl(split_candidates(blog), budget=2)
    assert ext.sentence_ids == (0,)


# --- icsi --------------------------------------------------------------------------

def test_sentence_concepts_drops_stopword_pairs():
    stream = tokenize("of the storm")
    assert sentence_concepts(stream) == {"the storm"}


def test_icsi_single_shared_concept_lex_minimal():
    # "alpha beta" appears in all three snippets (df 3); one sentence
    # covers everything, so the lex rule keeps only sentence 0 even when
    # the budget has room for all.
    blog = blog_of(["Alpha beta gamma.", "Alpha beta delta.", "Alpha beta epsilon."])
    cands = split_candidates(blog)
    for budget in (3, 9):
        ext = summarize_icsi(cands, budget)
        assert ext.sentence_ids == (0,)
        assert ext.total_words == 3
    assert summarize_icsi(cands, 9).scores is None


def test_icsi_empty_when_nothing_fits():
    blog = blog_of(["Alpha beta gamma.", "Alpha beta delta.", "Alpha beta epsilon."])
    ext = summarize_icsi(split_candidates(blog), budget=2)
    assert ext.sentence_ids == ()
    assert ext.total_words == 0


def test_icsi_min_df_fallback_warns():
    blog = blog_of(["Alpha beta gamma.", "Delta epsilon zeta."])
    with pytest.warns(RuntimeWarning, match="min_df=1"):
        ext = summarize_icsi(split_candidates(blog), budget=6)
    assert ext.sentence_ids == (0, 1)


def test_icsi_no_concepts_at_all():
    blog = blog_of(["Alpha.", "Beta."])
    with pytest.warns(RuntimeWarning), pytest.raises(NoConcepts):
        summarize_icsi(split_candidates(blog), budget=6)


def test_icsi_validation():
    cands = cands_of("Alpha beta gamma.")
    with pytest.raises(ValueError):
        summarize_icsi(cands, 0)
    with pytest.raises(ValueError):
        summarize_icsi(cands, 6, min_df=0)


# --- shared contract ----------------------------------------------------------------

def test_all_systems_respect_budget(benchmark_corpus):
    blogs = benchmark_corpus.blogs[:3]
    for blog in blogs:
        cands = split_candidates(blog)
        lengths = {c.sent_id: c.length for c in cands}
        for budget in (16, 32):
            for name, system in SYSTEMS.items():
                ext = system(cands, budget)
                assert ext.system == name
                assert ext.total_words <= budget
                assert list(ext.sentence_ids) == sorted(ext.sentence_ids)
                assert len(set(ext.sentence_ids)) == len(ext.sentence_ids)
                assert all(sid in lengths for sid in ext.sentence_ids)
                assert ext.total_words == sum(lengths[s] for s in ext.sentence_ids)


def test_systems_registry_complete():
    assert set(SYSTEMS) == {"tfidf", "lexrank", "lsa", "kl", "icsi"}
