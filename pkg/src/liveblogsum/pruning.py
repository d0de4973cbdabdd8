"""Corpus pruning: the four rules that turn parsed blogs into the gold set.

Rules run in order and each removed blog is charged to exactly one:
(1) multi-topic titles (regional roundup pages and similar),
(2) excluded genres (sport games, live chats),
(3) summary bullets with fewer than three words are dropped, then
(4) blogs left with fewer than three bullets are removed.
Exactly three words survives rule 3; exactly three bullets survives 4.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .corpus import Corpus
from .parsing import SiteProfile
from .textutils import word_count

RULE_MULTI_TOPIC = "multi-topic-title"
RULE_GENRE = "excluded-genre"
RULE_SHORT_SUMMARY = "short-summary"

MIN_WORDS_PER_BULLET = 3
MIN_BULLETS = 3


@dataclass(frozen=True)
class PruneReport:
    input_count: int
    after_parse_count: int
    after_prune_count: int
    removals: tuple[dict, ...]

    def to_payload(self) -> dict:
        return {
            "input_count": self.input_count,
            "after_parse_count": self.after_parse_count,
            "after_prune_count": self.after_prune_count,
            "removals": list(self.removals),
        }


def prune_summary(summary) -> list[str]:
    """Drop bullets with fewer than three words; order preserved."""
    return [s for s in summary if word_count(s) >= MIN_WORDS_PER_BULLET]


def prune_corpus(corpus: Corpus, profile: SiteProfile) -> tuple[Corpus, PruneReport]:
    corpus.at_stage("parsed")
    patterns = [re.compile(p) for p in profile.multi_topic_title_patterns]
    kept = []
    removals = []
    for blog in corpus.blogs:
        if any(p.search(blog.title) for p in patterns):
            removals.append({"blog_id": blog.blog_id, "rule": RULE_MULTI_TOPIC})
            continue
        if blog.genre in profile.exclusion_genres:
            removals.append({"blog_id": blog.blog_id, "rule": RULE_GENRE})
            continue
        bullets = prune_summary(blog.summary)
        if len(bullets) < MIN_BULLETS:
            removals.append({"blog_id": blog.blog_id, "rule": RULE_SHORT_SUMMARY})
            continue
        kept.append(replace(blog, summary=tuple(bullets)))
    pruned = Corpus(source=corpus.source, stage="pruned", blogs=tuple(kept),
                    created_at=corpus.created_at, tool_version=corpus.tool_version)
    report = PruneReport(input_count=len(corpus.blogs),
                         after_parse_count=len(corpus.blogs),
                         after_prune_count=len(kept),
                         removals=tuple(removals))
    return pruned, report
