"""Drive the retrieval loop against the canned two-hop search fixture and
watch it hit its fixed point.

The loop alternates: query the search backend with every known term, keep
links matching the site's live-blog URL pattern, mine fresh key terms from
the newly fetched pages, repeat. It stops when an iteration adds no new
links (or the iteration cap trips).

Run from anywhere:  python3 demos/02_crawl_fixture.py
"""

from pathlib import Path

from liveblogsum.crawler import UrlPattern, load_fixture_backends, run_retrieval

ROOT = Path(__file__).resolve().parents[1]

pattern = UrlPattern.load("example")
print(f"pattern: template={pattern.template!r}")
print(f"         site_filter={pattern.site_filter!r}")

search, http = load_fixture_backends(ROOT / "fixtures" / "crawl" / "two_hop.json")
state = run_retrieval({"brexit"}, pattern, search, http)

print(f"\nterminated: {state.termination_reason} at t={state.iteration}")
print(f"new links per iteration: {state.per_iteration_new}")
print(f"terms used: {sorted(state.used_terms)}")
print("links found:")
for url in sorted(state.links):
    print(f"  {url}")

# the audit trail is one JSON line per round; identical inputs replay to
# identical bytes, which is what makes crawl runs diffable
print("\naudit trail:")
for line in state.audit:
    print(f"  {line}")

again = run_retrieval({"brexit"}, pattern, search, http)
print(f"\naudit byte-stable across runs: {again.audit == state.audit}")
