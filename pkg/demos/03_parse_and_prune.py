"""Parse one archived live-blog page into structured form, then run the
corpus pruning rules over a fixture full of deliberate violations.

Run from anywhere:  python3 demos/03_parse_and_prune.py
"""

from pathlib import Path

from liveblogsum.corpus import load_corpus
from liveblogsum.parsing import SiteProfile, parse_live_blog
from liveblogsum.pruning import prune_corpus

ROOT = Path(__file__).resolve().parents[1]

# --- parsing: selectors come from a per-site profile -----------------------
profile = SiteProfile.load("bbc")
html = (ROOT / "fixtures" / "html" / "bbc_full.html").read_text(encoding="utf-8")
blog = parse_live_blog(html, profile, "https://www.bbc.com/news/live/uk-12345")

print(f"title:  {blog.title}")
print(f"author: {blog.author}  genre: {blog.genre}  date: {blog.date}")
print(f"summary bullets ({len(blog.summary)}):")
for bullet in blog.summary:
    print(f"  - {bullet}")
print(f"snippets: {len(blog.snippets)}")
for snip in blog.snippets[:2]:
    print(f"  [{snip.index}] {snip.timestamp}  {snip.text[:70]}...")

# --- pruning: three rejection rules keep the corpus summarizable -----------
# 1. multi-topic round-up titles ("... and ... and ...", "round-up")
# 2. excluded genres (sport minute-by-minute, live chats)
# 3. summaries below the floor: need >= 3 bullets of >= 3 words each
corpus = load_corpus(ROOT / "fixtures" / "corpus" / "prune_violations.json")
pruned, report = prune_corpus(corpus, SiteProfile.load("bbc"))

print(f"\npruning {report.input_count} blogs -> {report.after_prune_count} kept")
for removal in report.removals:
    print(f"  dropped {removal['blog_id']}: {removal['rule']}")
print("survivors:")
for blog in pruned.blogs:
    print(f"  {blog.blog_id}: {blog.title}")
