"""Bag-of-words and TF-IDF token representations.

Preprocessing pipeline: lowercase, strip URLs and @handles, drop punctuation
and extra whitespace, drop stopwords, lemmatize the survivors.  The
vocabulary is capped (10,000 terms by default) by total corpus frequency
with a lexicographic tie-break, so fitting is fully deterministic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import EmptyCorpus, EmptyVocabulary
from .lingcore import lemmatize
from .resources import data_lines

MAX_FEATURES_DEFAULT = 10_000

_URL_RE = re.compile(r"https?://\S+|www\.\S+")
_HANDLE_RE = re.compile(r"@\w+")
_WORD_RE = re.compile(r"[a-z0-9']+")


@lru_cache(maxsize=1)
def stopword_set() -> frozenset[str]:
    return frozenset(data_lines("stopwords.txt"))


def preprocess_tokens(text: str) -> list[str]:
    """Lowercased, URL/handle/punctuation-free, stopword-free lemmas."""
    text = text.lower()
    text = _URL_RE.sub(" ", text)
    text = _HANDLE_RE.sub(" ", text)
    stop = stopword_set()
    out = []
    for tok in _WORD_RE.findall(text):
        tok = tok.strip("'")
        if not tok or tok in stop:
            continue
        out.append(lemmatize(tok))
    return out


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    doc_freq: tuple[int, ...]
    n_docs: int
    max_features: int

    def __post_init__(self):
        if len(self.terms) != len(set(self.terms)):
            raise EmptyVocabulary("vocabulary terms must be unique")

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def index(self) -> dict[str, int]:
        if not hasattr(self, "_index"):
            object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.terms)})
        return self._index

    def idf(self, term_index: int) -> float:
        """Smoothed inverse document frequency; always >= 1."""
        return math.log((1 + self.n_docs) / (1 + self.doc_freq[term_index])) + 1.0


@dataclass(frozen=True)
class SparseVector:
    """(index, value) pairs sorted by index; values are never zero."""

    items: tuple[tuple[int, float], ...]

    def __post_init__(self):
        last = -1
        for idx, value in self.items:
            if idx <= last:
                raise ValueError("sparse indices must be strictly increasing")
            if value == 0:
                raise ValueError("sparse values must be non-zero")
            last = idx

    def to_dense(self, size: int) -> list[float]:
        out = [0.0] * size
        for idx, value in self.items:
            out[idx] = value
        return out

    @property
    def l2_norm(self) -> float:
        return math.sqrt(sum(v * v for _, v in self.items))


def _as_tokens(doc) -> list[str]:
    return doc.split() if isinstance(doc, str) else list(doc)


def fit_vocabulary(corpus, max_features: int = MAX_FEATURES_DEFAULT) -> Vocabulary:
    """Top terms by total corpus frequency (ties lexicographic ascending)."""
    docs = [_as_tokens(d) for d in corpus]
    if not docs:
        raise EmptyCorpus("cannot fit a vocabulary on an empty corpus")
    if max_features <= 0:
        raise EmptyVocabulary(f"max_features must be positive, got {max_features}")
    freq: dict[str, int] = {}
    df: dict[str, int] = {}
    for tokens in docs:
        for t in tokens:
            freq[t] = freq.get(t, 0) + 1
        for t in set(tokens):
            df[t] = df.get(t, 0) + 1
    ranked = sorted(freq, key=lambda t: (-freq[t], t))[:max_features]
    return Vocabulary(
        terms=tuple(ranked),
        doc_freq=tuple(df[t] for t in ranked),
        n_docs=len(docs),
        max_features=max_features,
    )


def bow_vector(tokens, vocab: Vocabulary) -> SparseVector:
    """Raw in-vocabulary term counts; OOV tokens are silently dropped."""
    index = vocab.index
    counts: dict[int, int] = {}
    for t in _as_tokens(tokens):
        idx = index.get(t)
        if idx is not None:
            counts[idx] = counts.get(idx, 0) + 1
    return SparseVector(tuple((i, float(counts[i])) for i in sorted(counts)))


def tfidf_vector(tokens, vocab: Vocabulary, corpus_size: int | None = None) -> SparseVector:
    """tf * idf with idf = ln((1+N)/(1+df)) + 1, L2-normalised unless the
    document has no in-vocabulary tokens."""
    n_docs = vocab.n_docs if corpus_size is None else corpus_size
    index = vocab.index
    counts: dict[int, int] = {}
    for t in _as_tokens(tokens):
        idx = index.get(t)
        if idx is not None:
            counts[idx] = counts.get(idx, 0) + 1
    raw = {
        i: counts[i] * (math.log((1 + n_docs) / (1 + vocab.doc_freq[i])) + 1.0)
        for i in counts
    }
    norm = math.sqrt(sum(v * v for v in raw.values()))
    if norm == 0:
        return SparseVector(())
    return SparseVector(tuple((i, raw[i] / norm) for i in sorted(raw)))


# ---------------------------------------------------------------------------
# Vocabulary file: "term<TAB>df" lines in index order


def write_vocabulary(path, vocab: Vocabulary) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# N={vocab.n_docs} max_features={vocab.max_features}\n")
        for term, df in zip(vocab.terms, vocab.doc_freq):
            fh.write(f"{term}\t{df}\n")


def read_vocabulary(path) -> Vocabulary:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        m = re.match(r"#\s*N=(\d+)\s+max_features=(\d+)", header)
        if not m:
            raise EmptyCorpus(f"bad vocabulary header: {header!r}")
        terms, dfs = [], []
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            term, _, df = line.partition("\t")
            terms.append(term)
            dfs.append(int(df))
    return Vocabulary(
        terms=tuple(terms),
        doc_freq=tuple(dfs),
        n_docs=int(m.group(1)),
        max_features=int(m.group(2)),
    )
