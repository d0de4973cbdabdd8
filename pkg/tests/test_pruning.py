import pytest

from liveblogsum.errors import StageError
from liveblogsum.parsing import SiteProfile
from liveblogsum.pruning import (MIN_BULLETS, MIN_WORDS_PER_BULLET,
                                 RULE_GENRE, RULE_MULTI_TOPIC, RULE_SHORT_SUMMARY,
                                 prune_corpus, prune_summary)
from liveblogsum.textutils import word_count


@pytest.fixture(scope="module")
def bbc():
    return SiteProfile.load("bbc")


def test_prune_summary_boundary():
    assert prune_summary(("one two three", "one two", "a b c d")) \
        == ["one two three", "a b c d"]
    assert prune_summary(()) == []


def test_violations_fixture_full_sweep(violations_corpus, bbc):
    by_title = {b.title: b.blog_id for b in violations_corpus.blogs}
    pruned, report = prune_corpus(violations_corpus, bbc)

    assert pruned.stage == "pruned"
    assert {b.title for b in pruned.blogs} \
        == {"Summit talks enter final day", "Floodwater recedes across the valley"}

    assert report.input_count == 8
    assert report.after_parse_count == 8
    assert report.after_prune_count == 2
    assert len(report.removals) == 6

    rules = {r["blog_id"]: r["rule"] for r in report.removals}
    assert rules == {
        by_title["Storm damage and rail strike and title race latest"]: RULE_MULTI_TOPIC,
        by_title["Evening round-up of the day"]: RULE_MULTI_TOPIC,
        by_title["Cup final minute by minute"]: RULE_GENRE,
        by_title["Ask our correspondents anything"]: RULE_GENRE,
        by_title["Quiet news day continues"]: RULE_SHORT_SUMMARY,
        by_title["Votes counted overnight"]: RULE_SHORT_SUMMARY,
    }

    # every input blog is accounted for exactly once
    survivor_ids = {b.blog_id for b in pruned.blogs}
    assert survivor_ids.isdisjoint(rules)
    assert len(survivor_ids) + len(rules) == report.input_count


def test_survivors_meet_summary_floor(violations_corpus, bbc):
    pruned, _ = prune_corpus(violations_corpus, bbc)
    for blog in pruned.blogs:
        assert len(blog.summary) >= MIN_BULLETS
        assert all(word_count(b) >= MIN_WORDS_PER_BULLET for b in blog.summary)


def test_thin_bullet_dropped_but_blog_kept(bbc):
    from liveblogsum.corpus import Corpus, LiveBlog, Snippet
    blog = LiveBlog(blog_id="x" * 64, url="https://e.org/x", author=None,
                    date=None, genre="news", title="Quake response continues",
                    summary=("first full bullet", "oops", "second full bullet",
                             "third full bullet"),
                    snippets=(Snippet(0, None, "text"),))
    corpus = Corpus(source="bbc", stage="parsed", blogs=(blog,),
                    created_at="2024-01-01T00:00:00Z", tool_version="t")
    pruned, report = prune_corpus(corpus, bbc)
    assert len(pruned.blogs) == 1
    assert pruned.blogs[0].summary == ("first full bullet", "second full bullet",
                                       "third full bullet")
    assert report.removals == ()


def test_prune_requires_parsed_stage(benchmark_corpus, bbc):
    with pytest.raises(StageError):
        prune_corpus(benchmark_corpus, bbc)  # already pruned


def test_rules_apply_in_order(violations_corpus, bbc):
    # a sporty round-up would be charged to the title rule, not the genre
    # rule; the fixture's multi-topic blogs are genre "news" so each rule
    # fires where expected
    _, report = prune_corpus(violations_corpus, bbc)
    counts = {}
    for removal in report.removals:
        counts[removal["rule"]] = counts.get(removal["rule"], 0) + 1
    assert counts == {RULE_MULTI_TOPIC: 2, RULE_GENRE: 2, RULE_SHORT_SUMMARY: 2}


def test_metadata_carried_through(violations_corpus, bbc):
    pruned, _ = prune_corpus(violations_corpus, bbc)
    assert pruned.source == violations_corpus.source
    assert pruned.created_at == violations_corpus.created_at
    assert pruned.tool_version == violations_corpus.tool_version
