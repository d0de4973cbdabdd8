"""Tokenization, stemming and the stop-word list.

Every word count in the toolkit goes through :func:`tokenize`, so the
rules live in exactly one place: NFC normalization, lowercasing, and
maximal alphanumeric runs with hyphen-internal words kept whole
("sat-in" is one token, "cat's" splits into "cat" and "s").
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

_TOKEN_RE = re.compile(r"[^\W_]+(?:-[^\W_]+)*")

_VOWELS = "aeiou"


class _StemBuffer:
    """Working state for one word: the buffer b, end index k, stem mark j."""

    def __init__(self, word: str):
        self.b = list(word)
        self.k = len(word) - 1
        self.j = 0

    def cons(self, i: int) -> bool:
        ch = self.b[i]
        if ch in _VOWELS:
            return False
        if ch == "y":
            return True if i == 0 else not self.cons(i - 1)
        return True

    def m(self) -> int:
        # consonant-sequence count of b[0..j]
        n = 0
        i = 0
        while True:
            if i > self.j:
                return n
            if not self.cons(i):
                break
            i += 1
        i += 1
        while True:
            while True:
                if i > self.j:
                    return n
                if self.cons(i):
                    break
                i += 1
            i += 1
            n += 1
            while True:
                if i > self.j:
                    return n
                if not self.cons(i):
                    break
                i += 1
            i += 1

    def vowel_in_stem(self) -> bool:
        return any(not self.cons(i) for i in range(self.j + 1))

    def doublec(self, i: int) -> bool:
        return i >= 1 and self.b[i] == self.b[i - 1] and self.cons(i)

    def cvc(self, i: int) -> bool:
        if i < 2 or not self.cons(i) or self.cons(i - 1) or not self.cons(i - 2):
            return False
        return self.b[i] not in "wxy"

    def ends(self, s: str) -> bool:
        length = len(s)
        if length > self.k + 1:
            return False
        if self.b[self.k - length + 1 : self.k + 1] != list(s):
            return False
        self.j = self.k - length
        return True

    def setto(self, s: str) -> None:
        self.b[self.j + 1 : self.k + 1] = list(s)
        self.k = self.j + len(s)

    def r(self, s: str) -> None:
        if self.m() > 0:
            self.setto(s)


def _step1ab(st: _StemBuffer) -> None:
    if st.b[st.k] == "s":
        if st.ends("sses"):
            st.k -= 2
        elif st.ends("ies"):
            st.setto("i")
        elif st.b[st.k - 1] != "s":
            st.k -= 1
    if st.ends("eed"):
        if st.m() > 0:
            st.k -= 1
    elif (st.ends("ed") or st.ends("ing")) and st.vowel_in_stem():
        st.k = st.j
        if st.ends("at"):
            st.setto("ate")
        elif st.ends("bl"):
            st.setto("ble")
        elif st.ends("iz"):
            st.setto("ize")
        elif st.doublec(st.k):
            st.k -= 1
            if st.b[st.k] in "lsz":
                st.k += 1
        elif st.m() == 1 and st.cvc(st.k):
            st.setto("e")


def _step1c(st: _StemBuffer) -> None:
    if st.ends("y") and st.vowel_in_stem():
        st.b[st.k] = "i"


_STEP2 = (
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
)

_STEP3 = (
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
)

_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def _step2(st: _StemBuffer) -> None:
    for suffix, repl in _STEP2:
        if st.ends(suffix):
            st.r(repl)
            return


def _step3(st: _StemBuffer) -> None:
    for suffix, repl in _STEP3:
        if st.ends(suffix):
            st.r(repl)
            return


def _step4(st: _StemBuffer) -> None:
    for suffix in _STEP4:
        if st.ends(suffix):
            if suffix == "ion" and st.b[st.j] not in "st":
                continue
            if st.m() > 1:
                st.k = st.j
            return


def _step5(st: _StemBuffer) -> None:
    st.j = st.k
    if st.b[st.k] == "e":
        a = st.m()
        if a > 1 or (a == 1 and not st.cvc(st.k - 1)):
            st.k -= 1
    if st.b[st.k] == "l" and st.doublec(st.k) and st.m() > 1:
        st.k -= 1


@lru_cache(maxsize=65536)
def porter_stem(word: str) -> str:
    """Suffix-strip one lowercase word with the classic English stemmer.

    Hyphenated tokens are stemmed part by part; tokens shorter than
    three characters or containing non-ascii-letters pass through
    unchanged (digits, acronym fragments).
    """
    if "-" in word:
        return "-".join(porter_stem(part) for part in word.split("-"))
    if len(word) <= 2 or not word.isascii() or not word.isalpha():
        return word
    st = _StemBuffer(word)
    _step1ab(st)
    _step1c(st)
    _step2(st)
    _step3(st)
    _step4(st)
    _step5(st)
    return "".join(st.b[: st.k + 1])


@dataclass(frozen=True)
class TokenStream:
    """Parallel token/stem view of one text unit."""

    tokens: tuple[str, ...]
    stemmed: tuple[str, ...]

    def __post_init__(self):
        if len(self.tokens) != len(self.stemmed):
            raise ValueError("tokens and stems must be parallel")

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def word_count(self) -> int:
        return len(self.tokens)


def normalize_text(text: str) -> str:
    """NFC-normalize and collapse all whitespace runs to single spaces."""
    return " ".join(unicodedata.normalize("NFC", text).split())


def tokenize(text: str) -> TokenStream:
    """Lowercase, NFC-normalize and split into alphanumeric runs.

    Hyphens glue runs into a single token when flanked by alphanumerics;
    all other punctuation separates. Deterministic by construction.
    """
    normalized = unicodedata.normalize("NFC", text).lower()
    tokens = tuple(_TOKEN_RE.findall(normalized))
    stems = tuple(porter_stem(t) for t in tokens)
    return TokenStream(tokens, stems)


def word_count(text: str) -> int:
    """Number of alphanumeric tokens in `text` (the toolkit-wide count)."""
    return len(_TOKEN_RE.findall(unicodedata.normalize("NFC", text).lower()))


@lru_cache(maxsize=1)
def stopwords() -> frozenset[str]:
    """The shipped English stop-word list (token-level entries only)."""
    data = resources.files("liveblogsum.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(w for w in data.split() if w)


def is_stopword(token: str) -> bool:
    return token in stopwords()
