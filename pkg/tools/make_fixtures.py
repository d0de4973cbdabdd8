"""Regenerate every derived file under fixtures/.

Handwritten pages under fixtures/html/ are left alone. Everything else is
rebuilt deterministically and re-verified before being written:

- corpus/benchmark20.json   20-topic pruned corpus for the benchmark tests
- corpus/prune_violations.json  parsed corpus with one violation per rule
- crawl/two_hop.json (+ crawl/pages/*.html)  search/page fixture whose
  closure is {A, B} with a fixed point at t=3
- crawl/links37.json (+ links37_manifest.json)  5 queries that net exactly
  37 on-site URLs after normalization
- golden/seed_queries.json, golden/key_terms.json, golden/two_hop_audit.jsonl

The benchmark corpus is built so two facts hold by construction and are
re-checked here with the package's own tokenizer before anything is saved:

1. Within each topic the reference's unigram stems are all distinct, so
   every reference n-gram has count 1 and recall equals coverage / D.
   Combined with fact 2 the coverage ILP then optimizes the true ROUGE
   numerator, which makes "oracle >= system" an exact theorem instead of
   an empirical observation.
2. Every candidate sentence ends in a filler word whose stem never occurs
   in the reference, so no reference bigram can straddle two selected
   sentences in the joined extract stream.

Budget monotonicity of the MEANS (R1 at 2L >= R1 at L per system) is not
a theorem for greedy systems, so the script searches salts until the
generated corpus satisfies it with a safety margin, then freezes that
corpus. Re-running the script reproduces the shipped bytes.
"""

import json
import random
import sys
from collections import Counter
from pathlib import Path
from statistics import fmean

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from liveblogsum import __version__
from liveblogsum.analysis import corpus_stats, domain_distribution, textual_heterogeneity
from liveblogsum.corpus import (Corpus, LiveBlog, Snippet, blog_id_for_url,
                                canonical_json_bytes, corpus_digest, load_corpus,
                                save_corpus)
from liveblogsum.coverage import solve
from liveblogsum.crawler import (UrlPattern, extract_key_terms, load_fixture_backends,
                                 make_queries, get_links, run_retrieval, _interim_blog)
from liveblogsum.evaluate import build_ub_instance, reference_stream, run_benchmark
from liveblogsum.summarize import SYSTEMS, sentence_concepts, split_candidates
from liveblogsum.textutils import is_stopword, porter_stem, tokenize

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
CREATED_AT = "2024-01-01T00:00:00Z"

# content-word pool; plain ASCII alphabetic so token count == split count
POOL = """
parliament suspension ruling unlawful judges order reconvene immediately
government responds ministers resign crowds gather outside court protesters
chant slogans police cordon streets verdict announced crowd cheers analysts
predict turmoil markets slide currency weakens investors flee bonds rally
banks tighten lending exporters warn tariffs bite farmers protest subsidies
shrink harvest fails drought spreads rivers recede reservoirs empty crops
wither livestock suffer rescuers search rubble survivors emerge hospitals
overflow doctors appeal volunteers arrive supplies dwindle aftershocks
continue residents flee shelters fill engineers inspect bridges crack roads
buckle flights grounded airports close trains halted signals fail network
collapses engineers scramble restore power grid fails generators hum
candidates debate voters decide polls open ballots counted margins narrow
recount ordered chancellor unveils spending plans housing health growth
forecasts revised stamp duty abolished buyers benefit opposition criticizes
statement leaders negotiate treaty clauses delegates argue translators relay
summit concludes communique drafted signatures exchanged sanctions lifted
embargo eased borders reopen refugees return convoys roll aid distributed
camps close schools reopen teachers hired pupils enrol satellites launch
rockets ascend boosters separate capsule docks astronauts board experiments
begin telescope deploys mirrors align images arrive galaxies resolve
researchers publish findings reviewed journals editors comment laboratories
replicate results confirm vaccine trials conclude regulators approve doses
shipped clinics vaccinate nurses record patients recover champions crowned
strikers score defenders block keepers save referees whistle fans celebrate
stadium erupts anthem plays medals awarded records broken timers stop
"""

WORDS = sorted(set(POOL.split()))

GENRES = ["politics"] * 7 + ["world"] * 5 + ["business"] * 4 + ["technology"] * 4
AUTHORS = ["Laura Kuenssberg", None, "Norman Smith", None, "Katya Adler"]
LAYOUTS = [(12,), (6, 6), (5, 7), (4, 8)]

REF_LEN = 16          # 4 bullets x 4 words; budget L == 16, 2L == 32
SNIPPET_TOKENS = 12   # every snippet exactly 12 tokens
MIN_MARGIN = 0.01     # required mean R1 gain from L to 2L per system


def pick_topic_words(rng: random.Random) -> tuple[list[str], list[str]]:
    """16 reference words with pairwise-distinct stems plus 6 fillers whose
    stems avoid the reference stems entirely."""
    shuffled = WORDS[:]
    rng.shuffle(shuffled)
    refs, fillers, seen = [], [], set()
    for word in shuffled:
        stem = porter_stem(word)
        if is_stopword(word) or len(word) < 3:
            continue
        if len(refs) < REF_LEN:
            if stem not in seen:
                refs.append(word)
                seen.add(stem)
        elif len(fillers) < 6:
            if stem not in seen:
                fillers.append(word)
                seen.add(stem)
        else:
            break
    assert len(refs) == REF_LEN and len(fillers) == 6
    return refs, fillers


def build_sentence(refs, fillers, rng, length, anchor=False) -> str:
    """`length` tokens: a contiguous reference run padded with fillers;
    the last token is always a filler (see module docstring, fact 2)."""
    if anchor:
        start, run = 0, 3
    else:
        run = min(rng.choice((2, 3, 4)), length - 1)
        start = rng.randrange(0, REF_LEN - run + 1)
    words = refs[start:start + run]
    while len(words) < length:
        words.append(rng.choice(fillers))
    return " ".join(words).capitalize() + "."


def build_topic(i: int, salt: int) -> LiveBlog:
    rng = random.Random(f"benchmark:{salt}:{i}")
    refs, fillers = pick_topic_words(rng)
    n_snippets = 6 + (i % 4)
    snippets = []
    for s in range(n_snippets):
        layout = rng.choice(LAYOUTS)
        parts = []
        for j, length in enumerate(layout):
            parts.append(build_sentence(refs, fillers, rng, length,
                                        anchor=(s < 3 and j == 0)))
        minute = 31 + s * 7
        snippets.append(Snippet(
            index=s,
            timestamp=f"2019-03-{(i % 28) + 1:02d}T{10 + minute // 60:02d}:{minute % 60:02d}:00Z",
            text=" ".join(parts),
            media_refs=(f"https://media.example/{i:02d}/{s}.jpg",) if s == 1 else (),
        ))
    summary = tuple(" ".join(refs[k:k + 4]) for k in range(0, REF_LEN, 4))
    url = f"https://www.bbc.com/news/live/{GENRES[i]}-{i:02d}"
    return LiveBlog(
        blog_id=blog_id_for_url(url), url=url, author=AUTHORS[i % len(AUTHORS)],
        date=f"2019-03-{(i % 28) + 1:02d}", genre=GENRES[i],
        title=f"{refs[0].capitalize()} {refs[1]} latest updates",
        summary=summary, snippets=tuple(snippets),
    )


def check_topic_structure(blog: LiveBlog) -> None:
    """Assert the two dominance preconditions plus the exact-count layout."""
    ref = reference_stream(blog)
    assert len(ref) == REF_LEN, blog.blog_id
    assert len(set(ref.stemmed)) == REF_LEN, f"{blog.blog_id}: ref stems collide"
    ref_stems = set(ref.stemmed)
    ref_bigrams = set(zip(ref.stemmed, ref.stemmed[1:]))

    for snippet in blog.snippets:
        assert tokenize(snippet.text).word_count == SNIPPET_TOKENS, blog.blog_id

    cands = split_candidates(blog)
    assert len(cands) >= 6
    for cand in cands:
        assert cand.tokens.stemmed[-1] not in ref_stems, \
            f"{blog.blog_id}: sentence ends on a reference stem"
    for a in range(len(cands)):
        for b in range(a + 1, len(cands)):
            pair = (cands[a].tokens.stemmed[-1], cands[b].tokens.stemmed[0])
            assert pair not in ref_bigrams, f"{blog.blog_id}: boundary bigram leak"

    # ICSI needs at least one concept at the default min_df=3
    per_snippet: dict[int, set] = {}
    for cand in cands:
        per_snippet.setdefault(cand.snippet_index, set()).update(
            sentence_concepts(cand.tokens))
    df = Counter()
    for concepts in per_snippet.values():
        df.update(concepts)
    assert df and max(df.values()) >= 3, f"{blog.blog_id}: no df>=3 concept"

    # oracle instances must be provably optimal, both budgets and orders
    for budget in (REF_LEN, 2 * REF_LEN):
        for n in (1, 2):
            instance = build_ub_instance(cands, ref, n, budget)
            assert solve(instance).proven_optimal, blog.blog_id


def check_benchmark(corpus: Corpus) -> dict:
    """Run the full benchmark and enforce dominance + mean monotonicity."""
    report = run_benchmark(corpus)
    by_key = {(r["blog_id"], r["system"], r["mode"]): r for r in report.per_topic}
    systems = sorted(SYSTEMS)
    for blog in corpus.blogs:
        for mode in ("L", "2L"):
            ub1 = by_key[(blog.blog_id, "ub-1", mode)]
            ub2 = by_key[(blog.blog_id, "ub-2", mode)]
            for system in systems:
                row = by_key[(blog.blog_id, system, mode)]
                assert row["R1"] <= ub1["R1"], (blog.blog_id, system, mode, "R1")
                assert row["R2"] <= ub2["R2"], (blog.blog_id, system, mode, "R2")
    margins = {}
    for system in systems:
        mean_l = fmean(by_key[(b.blog_id, system, "L")]["R1"] for b in corpus.blogs)
        mean_2l = fmean(by_key[(b.blog_id, system, "2L")]["R1"] for b in corpus.blogs)
        margins[system] = mean_2l - mean_l
    assert report.failures == (), report.failures
    return margins


def make_benchmark_corpus() -> Corpus:
    for salt in range(50):
        blogs = tuple(build_topic(i, salt) for i in range(20))
        corpus = Corpus(source="bbc", stage="pruned", blogs=blogs,
                        created_at=CREATED_AT, tool_version=__version__)
        for blog in blogs:
            check_topic_structure(blog)
        margins = check_benchmark(corpus)
        if min(margins.values()) >= MIN_MARGIN:
            print(f"benchmark20: salt={salt} accepted; "
                  f"mean R1 margins (2L - L): " +
                  ", ".join(f"{s}={m:.3f}" for s, m in sorted(margins.items())))
            return corpus
        print(f"benchmark20: salt={salt} rejected; margins "
              + ", ".join(f"{s}={m:.3f}" for s, m in sorted(margins.items())))
    raise SystemExit("no salt satisfied the monotonicity margin")


def make_prune_violations() -> Corpus:
    def blog(blog_id, title, genre, summary):
        url = f"https://www.bbc.com/news/live/{blog_id}"
        return LiveBlog(
            blog_id=blog_id_for_url(url), url=url, author=None, date="2019-05-01",
            genre=genre, title=title, summary=tuple(summary),
            snippets=(Snippet(index=0, timestamp="2019-05-01T09:00:00Z",
                              text="Events unfold through the morning session."),
                      Snippet(index=1, timestamp="2019-05-01T09:30:00Z",
                              text="Officials brief reporters on the situation.")),
        )

    blogs = (
        blog("keep-a", "Summit talks enter final day", "politics",
             ["leaders gather for emergency summit",
              "talks run late into evening",
              "agreement expected by friday morning"]),
        blog("vio-multi", "Storm damage and rail strike and title race latest",
             "news", ["first topic summary line here",
                      "second topic summary line here",
                      "third topic summary line here"]),
        blog("vio-roundup", "Evening round-up of the day", "news",
             ["stories from across the country",
              "weather warnings remain in place",
              "sport results and reaction inside"]),
        blog("vio-genre-sport", "Cup final minute by minute", "sport",
             ["teams arrive at the stadium",
              "kickoff delayed by crowd congestion",
              "first half ends goalless again"]),
        blog("vio-genre-chat", "Ask our correspondents anything", "live-chat",
             ["readers put questions to reporters",
              "answers posted through the afternoon",
              "best exchanges collected each hour"]),
        blog("vio-short-all", "Quiet news day continues", "news",
             ["so short", "tiny", "no"]),
        blog("vio-short-partial", "Votes counted overnight", "politics",
             ["one two three", "ok", "four five six"]),
        blog("keep-b", "Floodwater recedes across the valley", "world",
             ["residents return to damaged homes",
              "insurers estimate losses in millions",
              "rainfall expected to ease midweek"]),
    )
    return Corpus(source="bbc", stage="parsed", blogs=blogs,
                  created_at=CREATED_AT, tool_version=__version__)


def bbc_page(title, genre, bullets, snippet_texts, date="2019-09-24") -> str:
    bullet_html = "\n".join(f"    <li>{b}</li>" for b in bullets)
    posts = []
    for k, text in enumerate(snippet_texts):
        posts.append(
            '  <article class="lx-stream-post">\n'
            f'    <time datetime="{date}T{10 + k}:00:00Z">{10 + k}:00</time>\n'
            f'    <div class="lx-stream-post-body"><p>{text}</p></div>\n'
            "  </article>")
    posts_html = "\n".join(posts)
    return f"""<!DOCTYPE html>
<html lang="en">
<head>
<title>{title} - Example Live</title>
<meta property="og:title" content="{title}">
<meta property="article:section" content="{genre}">
<meta property="article:published_time" content="{date}T09:30:00+00:00">
</head>
<body>
<header>site header</header>
<nav>home news world</nav>
<h1 class="lx-c-dynamic-title">{title}</h1>
<ul class="lx-c-summary-points">
{bullet_html}
</ul>
<div class="lx-stream">
{posts_html}
</div>
<footer>site footer</footer>
</body>
</html>
"""


def make_two_hop() -> None:
    url_a = "https://liveblog.example.org/live/brexit-ruling"
    url_b = "https://liveblog.example.org/live/court-reaction"
    pattern = UrlPattern.load("example")
    q = lambda term: pattern.template.replace("[key term]", term)

    # page A pushes "supreme" hard and never says "verdict";
    # page B owns "verdict"; both parse cleanly under the bbc profile
    page_a = bbc_page(
        "Supreme court brexit ruling", "politics",
        ["supreme court finds suspension unlawful",
         "judges deliver unanimous supreme ruling",
         "parliament expected to reconvene quickly"],
        ["The supreme court has ruled the suspension unlawful.",
         "A unanimous supreme bench read the ruling aloud. The supreme result surprised ministers.",
         "Reaction to the supreme ruling is arriving from every party.",
         "The supreme ruling means parliament returns tomorrow.",
         "Commentators call the supreme decision a turning point.",
         "Campaigners outside the supreme court celebrated loudly."])
    page_b = bbc_page(
        "Court reaction as verdict lands", "politics",
        ["verdict prompts calls for resignation",
         "opposition demands immediate recall vote",
         "crowds celebrate the verdict outside"],
        ["The verdict landed at half past ten.",
         "Crowds cheered the verdict outside the building. Flags waved over the square.",
         "Lawyers parsed the verdict line by line.",
         "The verdict reshapes the autumn timetable.",
         "Ministers met to digest the verdict implications.",
         "Editorials tomorrow will dissect the verdict at length."])

    pages_dir = FIXTURES / "crawl" / "pages"
    pages_dir.mkdir(parents=True, exist_ok=True)
    (pages_dir / "page_a.html").write_text(page_a, encoding="utf-8")
    (pages_dir / "page_b.html").write_text(page_b, encoding="utf-8")

    assert "verdict" not in page_a.lower()
    blog_a = _interim_blog(url_a, page_a)
    terms_a = extract_key_terms([blog_a], {"brexit"}, 50)
    assert "supreme" in terms_a, sorted(terms_a)
    blog_b = _interim_blog(url_b, page_b)
    terms_b = extract_key_terms([blog_b], terms_a | {"brexit"}, 50)
    assert "verdict" in terms_b, sorted(terms_b)

    fixture = {
        "queries": {
            q("brexit"): [
                "https://LIVEBLOG.example.org/live/brexit-ruling?utm_source=feed",
                url_a + "#update-3",
                "https://elsewhere.example/live/brexit-ruling",
            ],
            q("supreme"): [url_b],
            q("verdict"): [url_a],
        },
        "pages": {url_a: "pages/page_a.html", url_b: "pages/page_b.html"},
    }
    path = FIXTURES / "crawl" / "two_hop.json"
    path.write_bytes(canonical_json_bytes(fixture))

    search, http = load_fixture_backends(path)
    state = run_retrieval({"brexit"}, pattern, search, http)
    assert state.termination_reason == "fixed_point", state.termination_reason
    assert state.iteration == 3 and state.per_iteration_new == (1, 1, 0)
    assert state.links == frozenset({url_a, url_b})
    state2 = run_retrieval({"brexit"}, pattern, search, http)
    assert state.audit == state2.audit
    golden = FIXTURES / "golden" / "two_hop_audit.jsonl"
    golden.parent.mkdir(parents=True, exist_ok=True)
    golden.write_text("".join(line + "\n" for line in state.audit), encoding="utf-8")

    (FIXTURES / "crawl" / "seeds_two_hop.txt").write_text("brexit\n", encoding="utf-8")

    key_golden = sorted(extract_key_terms([blog_a, blog_b], {"brexit"}, 10))
    (FIXTURES / "golden" / "key_terms.json").write_bytes(
        canonical_json_bytes({"k": 10, "used": ["brexit"], "terms": key_golden}))
    print(f"two_hop: audit lines={len(state.audit)}, "
          f"t2 queries={len(json.loads(state.audit[1])['queries'])}")


def make_links37() -> None:
    pattern = UrlPattern.load("example")
    base = "https://liveblog.example.org/live/topic-"
    urls = [f"{base}{k:02d}" for k in range(37)]
    queries = {
        pattern.template.replace("[key term]", "alpha"):
            urls[0:10] + ["https://offsite.example/live/topic-99"],
        pattern.template.replace("[key term]", "bravo"):
            urls[8:18] + [urls[9] + "#latest"],
        pattern.template.replace("[key term]", "charlie"):
            urls[16:26],
        pattern.template.replace("[key term]", "delta"):
            [u + "?utm_campaign=social" for u in urls[24:34]],
        pattern.template.replace("[key term]", "echo"):
            urls[32:37] + ["HTTPS://LIVEBLOG.EXAMPLE.ORG/live/topic-00"],
    }
    fixture = {"queries": queries}
    path = FIXTURES / "crawl" / "links37.json"
    path.write_bytes(canonical_json_bytes(fixture))
    (FIXTURES / "crawl" / "links37_manifest.json").write_bytes(
        canonical_json_bytes(sorted(urls)))

    search, _ = load_fixture_backends(path)
    links, warnings = get_links(sorted(queries), search, pattern)
    assert links == set(urls) and len(links) == 37, len(links)
    assert not warnings
    print("links37: 5 queries ->", len(links), "urls")


def make_goldens() -> None:
    from importlib import resources
    seeds = sorted(resources.files("liveblogsum.data").joinpath("seeds.txt")
                   .read_text("utf-8").split())
    pattern = UrlPattern.load("bbc")
    queries = make_queries(seeds, pattern)
    (FIXTURES / "golden" / "seed_queries.json").write_bytes(
        canonical_json_bytes({"pattern": "bbc", "seeds": seeds, "queries": queries}))
    print("goldens: seed_queries", len(queries))


def main() -> None:
    (FIXTURES / "corpus").mkdir(parents=True, exist_ok=True)
    (FIXTURES / "crawl").mkdir(parents=True, exist_ok=True)
    (FIXTURES / "golden").mkdir(parents=True, exist_ok=True)

    corpus = make_benchmark_corpus()
    out = FIXTURES / "corpus" / "benchmark20.json"
    save_corpus(corpus, out)
    reloaded = load_corpus(out)
    assert corpus_digest(reloaded) == corpus_digest(corpus)
    stats = corpus_stats(reloaded)
    domains = domain_distribution(reloaded)
    th = [textual_heterogeneity(b) for b in reloaded.blogs]
    print("benchmark20 digest:", corpus_digest(reloaded))
    print("benchmark20 stats:", stats.to_payload())
    print("benchmark20 exact:", stats.docs_per_topic, stats.words_per_document,
          stats.words_per_summary)
    print("benchmark20 domains:", {g: v for g, v in domains.items()})
    print(f"benchmark20 TH: min={min(th):.4f} mean={fmean(th):.4f} max={max(th):.4f}")

    violations = make_prune_violations()
    save_corpus(violations, FIXTURES / "corpus" / "prune_violations.json")
    print("prune_violations digest:", corpus_digest(violations))

    make_two_hop()
    make_links37()
    make_goldens()
    print("fixtures regenerated OK")


if __name__ == "__main__":
    main()
