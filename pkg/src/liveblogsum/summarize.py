"""Five extractive summarizers over a topic's candidate sentences.

All systems share the same contract: given the candidate sentences of
one live blog and a word budget, return an Extract whose total word
count never exceeds the budget. Four are score-and-pick-greedily
(TF*IDF, LexRank, LSA, KL-greedy); the fifth (concept coverage) solves
the budgeted maximum-coverage program exactly. Tie breaks are total
orders so identical inputs always yield identical extracts.
"""

from __future__ import annotations

import math
import re
import warnings
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .corpus import LiveBlog
from .coverage import CoverageInstance, solve
from .errors import NoConcepts
from .textutils import TokenStream, is_stopword, tokenize


@dataclass(frozen=True)
class CandidateSentence:
    sent_id: int
    snippet_index: int
    text: str
    tokens: TokenStream
    length: int


@dataclass(frozen=True)
class Extract:
    sentence_ids: tuple[int, ...]
    total_words: int
    system: str
    scores: dict[int, float] | None = None


_ABBREVIATIONS = frozenset("""
    mr mrs ms dr prof rev gen sen rep gov sgt col capt lt cmdr adm maj
    st ave blvd rd jan feb mar apr jun jul aug sep sept oct nov dec
    vs etc inc ltd corp co dept est fig no vol approx
""".split())

_CLOSERS = "\"')]”’"


def _is_boundary(text: str, dot: int, after: int) -> bool:
    ch = text[dot]
    nxt = after
    while nxt < len(text) and text[nxt].isspace():
        nxt += 1
    if ch in "!?":
        return True
    # '.' needs the abbreviation / decimal / initial checks
    if dot > 0 and text[dot - 1].isdigit() and after < len(text) and text[after].isdigit():
        return False
    k = dot
    while k > 0 and (text[k - 1].isalnum() or text[k - 1] == "-"):
        k -= 1
    word = text[k:dot].lower()
    if len(word) == 1 and word.isalpha():
        return False
    if word in _ABBREVIATIONS:
        return False
    if nxt >= len(text):
        return True
    return not text[nxt].islower()


def _split_sentences(text: str) -> list[str]:
    parts: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in ".!?":
            j = i + 1
            while j < n and text[j] in ".!?" + _CLOSERS:
                j += 1
            if _is_boundary(text, i, j):
                piece = text[start:j].strip()
                if piece:
                    parts.append(piece)
                start = j
                i = j
                continue
        i += 1
    tail = text[start:].strip()
    if tail:
        parts.append(tail)
    return parts


def split_candidates(blog: LiveBlog) -> list[CandidateSentence]:
    """Split every snippet into sentences; ids are dense and in document order.

    Sentences that tokenize to nothing (bare punctuation, emoji runs)
    are dropped, so length >= 1 holds for every candidate.
    """
    cands: list[CandidateSentence] = []
    for snippet in blog.snippets:
        for sentence in _split_sentences(snippet.text):
            stream = tokenize(sentence)
            if len(stream) == 0:
                continue
            cands.append(CandidateSentence(
                sent_id=len(cands), snippet_index=snippet.index,
                text=sentence, tokens=stream, length=len(stream)))
    return cands


def _check_budget(budget: int) -> None:
    if budget < 1:
        raise ValueError("word budget must be >= 1")


def _greedy_extract(cands: list[CandidateSentence], scores: dict[int, float],
                    budget: int, system: str) -> Extract:
    order = sorted(cands, key=lambda c: (-scores[c.sent_id], c.sent_id))
    chosen: list[int] = []
    used = 0
    for cand in order:
        if used + cand.length <= budget:
            chosen.append(cand.sent_id)
            used += cand.length
    chosen.sort()
    return Extract(sentence_ids=tuple(chosen), total_words=used, system=system,
                   scores={c.sent_id: float(scores[c.sent_id]) for c in cands})


def _empty_extract(system: str) -> Extract:
    return Extract(sentence_ids=(), total_words=0, system=system, scores={})


def _sentence_df(cands: list[CandidateSentence]) -> Counter:
    df: Counter = Counter()
    for cand in cands:
        df.update(set(cand.tokens.tokens))
    return df


def summarize_tfidf(cands: list[CandidateSentence], budget: int) -> Extract:
    """Score = TF*IDF of the sentence's terms averaged over token occurrences;
    the document collection is the candidate sentences themselves."""
    _check_budget(budget)
    if not cands:
        return _empty_extract("tfidf")
    df = _sentence_df(cands)
    n_docs = len(cands)
    scores: dict[int, float] = {}
    for cand in cands:
        tf = Counter(cand.tokens.tokens)
        weight = sum(count * math.log(n_docs / df[term]) for term, count in tf.items())
        scores[cand.sent_id] = weight / cand.length
    return _greedy_extract(cands, scores, budget, "tfidf")


def _tfidf_vectors(cands: list[CandidateSentence]) -> list[dict[str, float]]:
    df = _sentence_df(cands)
    n_docs = len(cands)
    vectors = []
    for cand in cands:
        tf = Counter(cand.tokens.tokens)
        vectors.append({t: c * math.log(n_docs / df[t]) for t, c in tf.items()})
    return vectors


def _cosine(u: dict[str, float], v: dict[str, float]) -> float:
    if len(v) < len(u):
        u, v = v, u
    dot = sum(w * v.get(t, 0.0) for t, w in u.items())
    nu = math.sqrt(sum(w * w for w in u.values()))
    nv = math.sqrt(sum(w * w for w in v.values()))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return dot / (nu * nv)


def summarize_lexrank(cands: list[CandidateSentence], budget: int,
                      threshold: float = 0.1, damping: float = 0.85,
                      eps: float = 1e-6) -> Extract:
    """PageRank over the thresholded cosine-similarity graph.

    Vertices with no edges are left dangling: their outgoing mass is
    dropped rather than redistributed, so they settle at the pure
    teleport score (1 - damping) / n.
    """
    _check_budget(budget)
    if not (0.0 <= threshold < 1.0):
        raise ValueError("threshold must be in [0, 1)")
    if not (0.0 < damping < 1.0):
        raise ValueError("damping must be in (0, 1)")
    if not cands:
        return _empty_extract("lexrank")
    n = len(cands)
    vectors = _tfidf_vectors(cands)
    adj = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if _cosine(vectors[i], vectors[j]) > threshold:
                adj[i, j] = adj[j, i] = 1.0
    degree = adj.sum(axis=1)
    walk = np.divide(adj, degree[:, None], out=np.zeros_like(adj), where=degree[:, None] > 0)
    p = np.full(n, 1.0 / n)
    while True:
        p_next = (1.0 - damping) / n + damping * (walk.T @ p)
        if np.abs(p_next - p).sum() < eps:
            p = p_next
            break
        p = p_next
    scores = {cand.sent_id: float(p[i]) for i, cand in enumerate(cands)}
    return _greedy_extract(cands, scores, budget, "lexrank")


def summarize_lsa(cands: list[CandidateSentence], budget: int, rank: int = 10) -> Extract:
    """Steinberger-style LSA: sentence score sqrt(sum_k sigma_k^2 v_ki^2)
    over the top `rank` latent topics (clamped to the matrix rank)."""
    _check_budget(budget)
    if rank < 1:
        raise ValueError("rank must be >= 1")
    if not cands:
        return _empty_extract("lsa")
    vocab = sorted({t for cand in cands for t in cand.tokens.tokens})
    index = {t: i for i, t in enumerate(vocab)}
    matrix = np.zeros((len(vocab), len(cands)))
    for j, cand in enumerate(cands):
        for t, c in Counter(cand.tokens.tokens).items():
            matrix[index[t], j] = float(c)
    _, sigma, vt = np.linalg.svd(matrix, full_matrices=False)
    effective = min(rank, int(np.linalg.matrix_rank(matrix)))
    weighted = (sigma[:effective, None] ** 2) * (vt[:effective, :] ** 2)
    strengths = np.sqrt(weighted.sum(axis=0))
    scores = {cand.sent_id: float(strengths[j]) for j, cand in enumerate(cands)}
    return _greedy_extract(cands, scores, budget, "lsa")


def summarize_kl(cands: list[CandidateSentence], budget: int) -> Extract:
    """Greedily grow the summary that minimizes KL(source || summary).

    The summary distribution gets add-one smoothing in probability
    space, p'(w) = (p(w) + 1) / (1 + V) over the source vocabulary, so
    the objective depends only on the summary's normalized distribution
    and duplicated sentences cannot lower it.
    """
    _check_budget(budget)
    if not cands:
        return _empty_extract("kl")
    source: Counter = Counter()
    for cand in cands:
        source.update(cand.tokens.tokens)
    vocab = sorted(source)
    v_size = len(vocab)
    total = sum(source.values())
    p_src = [source[w] / total for w in vocab]

    def divergence(counts: Counter, count_total: int) -> float:
        kl = 0.0
        for w, pw in zip(vocab, p_src):
            qw = counts[w] / count_total if count_total else 0.0
            kl += pw * math.log(pw / ((qw + 1.0) / (1.0 + v_size)))
        return kl

    chosen: list[int] = []
    summary: Counter = Counter()
    summary_total = 0
    used = 0
    pool = {cand.sent_id: cand for cand in cands}
    order: list[int] = []
    while True:
        best_id = -1
        best_kl = math.inf
        for sid in sorted(pool):
            cand = pool[sid]
            if used + cand.length > budget:
                continue
            trial = summary.copy()
            trial.update(cand.tokens.tokens)
            k = divergence(trial, summary_total + cand.length)
            if k < best_kl - 1e-12:
                best_kl = k
                best_id = sid
        if best_id < 0:
            break
        cand = pool.pop(best_id)
        summary.update(cand.tokens.tokens)
        summary_total += cand.length
        used += cand.length
        order.append(best_id)
        chosen.append(best_id)
    chosen.sort()
    scores = {sid: float(-rank) for rank, sid in enumerate(order)}
    for cand in cands:
        scores.setdefault(cand.sent_id, -math.inf)
    return Extract(sentence_ids=tuple(chosen), total_words=used, system="kl", scores=scores)


def sentence_concepts(stream: TokenStream) -> set[str]:
    """Stemmed bigrams of one sentence; pairs of two stop words carry no
    content and are excluded."""
    out: set[str] = set()
    for i in range(len(stream.tokens) - 1):
        if is_stopword(stream.tokens[i]) and is_stopword(stream.tokens[i + 1]):
            continue
        out.add(stream.stemmed[i] + " " + stream.stemmed[i + 1])
    return out


def summarize_icsi(cands: list[CandidateSentence], budget: int, min_df: int = 3) -> Extract:
    """Exact budgeted concept coverage: concepts are stemmed bigrams with
    snippet-level document frequency >= min_df, weighted by that frequency.
    Falls back to min_df=1 (with a warning) when nothing passes."""
    _check_budget(budget)
    if min_df < 1:
        raise ValueError("min_df must be >= 1")
    if not cands:
        return _empty_extract("icsi")
    cands = sorted(cands, key=lambda c: c.sent_id)
    per_sentence = [sentence_concepts(c.tokens) for c in cands]
    per_snippet: dict[int, set[str]] = {}
    for cand, concepts in zip(cands, per_sentence):
        per_snippet.setdefault(cand.snippet_index, set()).update(concepts)
    df: Counter = Counter()
    for concepts in per_snippet.values():
        df.update(concepts)

    weights = {g: float(c) for g, c in df.items() if c >= min_df}
    if not weights:
        warnings.warn(f"no bigram reaches document frequency {min_df}; retrying with min_df=1",
                      RuntimeWarning, stacklevel=2)
        weights = {g: float(c) for g, c in df.items()}
        if not weights:
            raise NoConcepts("no concept bigrams at all; sentences are too short")

    instance = CoverageInstance.make(
        weights=weights,
        lengths=[c.length for c in cands],
        incidence=[concepts & weights.keys() for concepts in per_sentence],
        budget=budget)
    solution = solve(instance)
    ids = sorted(cands[i].sent_id for i in solution.selected)
    used = sum(cands[i].length for i in solution.selected)
    return Extract(sentence_ids=tuple(ids), total_words=used, system="icsi", scores=None)


SYSTEMS = {
    "tfidf": summarize_tfidf,
    "lexrank": summarize_lexrank,
    "lsa": summarize_lsa,
    "kl": summarize_kl,
    "icsi": summarize_icsi,
}
