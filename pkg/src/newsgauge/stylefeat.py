"""The five stylistic feature groups plus monetisation append and scaling.

Groups:
  fernandez      34 linguistic/punctuation attributes
  abonizio       21 complexity/stylometric/psychological features
  liwc           dictionary-driven category percentages (schema adapts to
                 whatever dictionary file is supplied)
  nela           91 hand-crafted style/complexity/bias/affect/moral/event
                 features
  nela_modified  the corrected variant: duplicated features dropped, named
                 per-symbol punctuation added, punctuation renormalised by
                 total punctuation items instead of word count

Every feature vector is finite for any text the tokenizer accepts; texts
with zero word tokens raise DegenerateText.
"""

from __future__ import annotations

import csv
import json
import math
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import lingcore
from .errors import DegenerateText, DictionaryRequired, NotFitted, SchemaError
from .lingcore import Lexicon, PTB_WORD_TAGS, TokenStream
from .monetise import FEATURE_NAMES as MONETISATION_NAMES, MonetisationFeatures
from .resources import data_lines, data_text

GROUPS = ("fernandez", "abonizio", "liwc", "nela", "nela_modified")


@dataclass(frozen=True)
class FeatureSchema:
    group: str
    names: tuple[str, ...]
    with_monetisation: bool = False

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise SchemaError(f"duplicate feature names in schema {self.group}")

    @property
    def id(self) -> str:
        return self.group + ("+monetisation" if self.with_monetisation else "")

    def __len__(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class FeatureVector:
    schema: FeatureSchema
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(self.schema.names):
            raise SchemaError(
                f"vector length {len(self.values)} != schema length {len(self.schema.names)}"
            )
        for name, v in zip(self.schema.names, self.values):
            if not math.isfinite(v):
                raise SchemaError(f"non-finite value for feature {name!r}")

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.schema.names, self.values))


# ---------------------------------------------------------------------------
# Shared per-text profile


class _Profile:
    def __init__(self, text: str):
        self.text = text
        self.stream: TokenStream = lingcore.tokenize(text)
        self.words = self.stream.words()
        if not self.words:
            raise DegenerateText("text has no word tokens")
        self.lower_words = [w.lower() for w in self.words]
        self.tagged = lingcore.pos_tag(self.stream)
        self.tag_counts: dict[str, int] = {}
        for tok in self.tagged:
            self.tag_counts[tok.tag] = self.tag_counts.get(tok.tag, 0) + 1
        self.counts = lingcore.text_counts(self.stream)
        self.punct_chars = [
            c for c in text if not c.isalnum() and not c.isspace()
        ]

    @property
    def n_words(self) -> int:
        return len(self.words)

    @property
    def n_tokens(self) -> int:
        return len(self.stream.tokens)

    @property
    def n_sentences(self) -> int:
        return max(self.stream.n_sentences, 1)

    def nchars(self, chars: str) -> int:
        return sum(1 for c in self.text if c in chars)


# ---------------------------------------------------------------------------
# Group 1: Fernandez


_PRON_1SG = frozenset("i me my mine myself i'm i've i'd i'll".split())
_PRON_1PL = frozenset("we us our ours ourselves we're we've we'd we'll".split())
_PRON_2 = frozenset("you your yours yourself yourselves you're you've you'd you'll".split())
_PRON_3SG = frozenset(
    "she he her hers him his herself himself she's he's she'd he'd she'll he'll".split()
)
_PRON_3PL = frozenset("they them their theirs themselves they're they've they'd".split())
_PRON_PERSONAL = _PRON_1SG | _PRON_1PL | _PRON_2 | _PRON_3SG | _PRON_3PL
_PRON_IMPERSONAL = frozenset(
    "it its itself it's this that these those anything something nothing"
    " everything anyone someone everyone nobody somebody everybody one other"
    " others another what which whatever whichever".split()
)
_ARTICLES = frozenset(("a", "an", "the"))
_PREPOSITIONS = frozenset(
    "of in on at by with from about against between into through during"
    " before after above below under over since until upon within without"
    " among across behind beyond despite toward towards onto near per to"
    " along inside outside beneath beside except".split()
)
_AUXILIARIES = frozenset(
    "be am is are was were been being have has had having do does did doing"
    " will would shall should can could may might must ought don't can't"
    " won't isn't wasn't aren't weren't doesn't didn't hasn't haven't hadn't"
    " couldn't shouldn't wouldn't mustn't".split()
)
_CONJUNCTIONS = frozenset(
    "and but or nor so yet until while because although though unless"
    " whether if since whereas than as".split()
)
_NEGATIONS = frozenset(
    "no not never none nothing nobody nowhere neither nor cannot don't can't"
    " won't isn't wasn't aren't weren't doesn't didn't hasn't haven't hadn't"
    " couldn't shouldn't wouldn't mustn't without".split()
)

_DASH_CHARS = "-–—"
_SINGLE_QUOTE_CHARS = "'‘’"
_DOUBLE_QUOTE_CHARS = '"“”'
_QUOTE_CHARS = _SINGLE_QUOTE_CHARS + _DOUBLE_QUOTE_CHARS

FERNANDEZ_NAMES = (
    "word_count", "syllable_count", "sentence_count", "words_per_sentence",
    "long_words_count", "all_caps_count", "unique_words_count",
    "personal_pronouns_pct", "first_person_singular_pct",
    "first_person_plural_pct", "second_person_pct", "third_person_singular_pct",
    "third_person_plural_pct", "impersonal_pronouns_pct", "articles_pct",
    "prepositions_pct", "auxiliary_verbs_pct", "common_adverbs_pct",
    "conjunctions_pct", "negations_pct", "common_verbs_pct",
    "common_adjectives_pct", "comparisons_pct", "concrete_figures_pct",
    "punctuation_count", "full_stop_count", "comma_count", "colon_count",
    "semicolon_count", "question_mark_count", "exclamation_mark_count",
    "dash_count", "apostrophe_count", "bracket_count",
)


def _is_all_caps(word: str) -> bool:
    return len(word) >= 2 and word.isupper() and any(c.isalpha() for c in word)


def fernandez_features(text: str) -> FeatureVector:
    p = _Profile(text)
    nw = p.n_words
    word_tags = [t.tag for t in p.tagged if lingcore._is_word(t.surface)]

    def pct(count: int) -> float:
        return 100.0 * count / nw

    def pct_in(wordset) -> float:
        return pct(sum(1 for w in p.lower_words if w in wordset))

    verbs = sum(
        1
        for t, w in zip(word_tags, p.lower_words)
        if t.startswith("VB") and w not in _AUXILIARIES
    )
    adjectives = sum(1 for t in word_tags if t in ("JJ", "JJR", "JJS"))
    adverbs = sum(1 for t in word_tags if t in ("RB", "RBR", "RBS"))
    comparisons = sum(1 for t in word_tags if t in ("JJR", "RBR"))
    figures = sum(1 for t in word_tags if t == "CD")

    values = (
        float(nw),
        float(p.counts.syllables),
        float(p.n_sentences),
        nw / p.n_sentences,
        float(sum(1 for w in p.words if len(w) > 6)),
        float(sum(1 for w in p.words if _is_all_caps(w))),
        float(p.counts.unique_words),
        pct_in(_PRON_PERSONAL),
        pct_in(_PRON_1SG),
        pct_in(_PRON_1PL),
        pct_in(_PRON_2),
        pct_in(_PRON_3SG),
        pct_in(_PRON_3PL),
        pct_in(_PRON_IMPERSONAL),
        pct_in(_ARTICLES),
        pct_in(_PREPOSITIONS),
        pct_in(_AUXILIARIES),
        pct(adverbs),
        pct_in(_CONJUNCTIONS),
        pct_in(_NEGATIONS),
        pct(verbs),
        pct(adjectives),
        pct(comparisons),
        pct(figures),
        float(len(p.punct_chars)),
        float(p.nchars(".")),
        float(p.nchars(",")),
        float(p.nchars(":")),
        float(p.nchars(";")),
        float(p.nchars("?")),
        float(p.nchars("!")),
        float(p.nchars(_DASH_CHARS)),
        float(p.nchars(_SINGLE_QUOTE_CHARS)),
        float(p.nchars("()")),
    )
    return FeatureVector(get_schema("fernandez"), values)


# ---------------------------------------------------------------------------
# Group 2: Abonizio

ABONIZIO_NAMES = (
    "word_per_sents", "avg_word_size", "sentences", "ttr",
    "pos_diversity_ratio", "entities_ratio", "upper_case", "oov_ratio",
    "quotes_count", "quotes_ratio",
    "ratio_adj", "ratio_adp", "ratio_adv", "ratio_det", "ratio_noun",
    "ratio_pron", "ratio_propn", "ratio_punct", "ratio_sym", "ratio_verb",
    "polarity",
)

_UNIVERSAL_ORDER = ("ADJ", "ADP", "ADV", "DET", "NOUN", "PRON", "PROPN",
                    "PUNCT", "SYM", "VERB")


@lru_cache(maxsize=1)
def _universal_map() -> dict[str, str]:
    out = {}
    for line in data_lines("ptb_universal_map.tsv"):
        tag, _, uni = line.partition("\t")
        out[tag] = uni
    return out


@lru_cache(maxsize=1)
def _reference_vocabulary() -> frozenset[str]:
    """Known-word vocabulary for the OOV ratio: every bundled word list."""
    vocab: set[str] = set(data_lines("stopwords.txt"))
    vocab.update(lingcore._CLOSED_CLASS)
    dic = lingcore.load_default_dictionary()
    for lits in dic.literals.values():
        vocab.update(lits)
    vocab.update(lingcore.load_default_valence())
    lex = _nela_wordlists()
    for lits in lex.literals.values():
        vocab.update(lits)
    for entry in _gazetteer():
        vocab.update(entry.split())
    return frozenset(vocab)


def abonizio_features(text: str) -> FeatureVector:
    p = _Profile(text)
    nt = p.n_tokens
    umap = _universal_map()
    ucounts = {u: 0 for u in _UNIVERSAL_ORDER}
    for tok in p.tagged:
        u = umap.get(tok.tag, "X")
        if u in ucounts:
            ucounts[u] += 1

    vocab = _reference_vocabulary()
    oov = sum(
        1
        for w in p.lower_words
        if w not in vocab
        and lingcore.lemmatize(w) not in vocab
        and not any(c.isdigit() for c in w)
    )
    quotes = p.nchars(_QUOTE_CHARS)
    vlex = lingcore.load_default_valence()
    neg, _, pos = lingcore.valence_scores(p.lower_words, vlex)

    values = (
        p.n_words / p.n_sentences,
        sum(len(w) for w in p.words) / p.n_words,
        float(p.n_sentences),
        p.counts.unique_words / p.n_words,
        len(set(t.tag for t in p.tagged)) / nt,
        len(lingcore.entity_runs(p.stream)) / nt,
        float(sum(1 for c in p.text if c.isupper())),
        oov / p.n_words,
        float(quotes),
        quotes / nt,
        *(ucounts[u] / nt for u in _UNIVERSAL_ORDER),
        pos - neg,
    )
    return FeatureVector(get_schema("abonizio"), values)


# ---------------------------------------------------------------------------
# Group 3: LIWC-style dictionary percentages

LIWC_SUMMARY_NAMES = ("WC", "WPS", "BigWords", "Dic")


def liwc_schema(dictionary: Lexicon, with_monetisation: bool = False) -> FeatureSchema:
    names = LIWC_SUMMARY_NAMES + tuple(dictionary.categories)
    if with_monetisation:
        names = names + MONETISATION_NAMES
    return FeatureSchema("liwc", names, with_monetisation)


def liwc_features(text: str, dictionary: Lexicon | None) -> FeatureVector:
    """Per-category percent of words plus the non-proprietary summary
    variables (WC, WPS, BigWords as percent of words with >6 letters, Dic).

    Proprietary composites are omitted: this engine is dictionary-driven and
    the bundled dictionary carries no composite weights.
    """
    if dictionary is None:
        raise DictionaryRequired("liwc features need a dictionary file")
    p = _Profile(text)
    nw = p.n_words
    cat_counts = {c: 0 for c in dictionary.categories}
    captured = 0
    for w in p.lower_words:
        hit = False
        for cat in dictionary.categories:
            if dictionary.match(w, cat):
                cat_counts[cat] += 1
                hit = True
        if hit:
            captured += 1
    big = sum(1 for w in p.words if sum(1 for c in w if c.isalpha()) > 6)
    values = (
        float(nw),
        nw / p.n_sentences,
        100.0 * big / nw,
        100.0 * captured / nw,
    ) + tuple(100.0 * cat_counts[c] / nw for c in dictionary.categories)
    return FeatureVector(liwc_schema(dictionary), values)


# ---------------------------------------------------------------------------
# Groups 4 and 5: NELA and modified NELA

_PUNCT_CLASS_NAMES = (
    "punct_dollar", "punct_close_quote", "punct_open_paren",
    "punct_close_paren", "punct_comma", "punct_dash", "punct_terminator",
    "punct_colon", "punct_open_quote",
)
_PUNCT_TAG_TO_NAME = {
    "$": "punct_dollar", "''": "punct_close_quote", "(": "punct_open_paren",
    ")": "punct_close_paren", ",": "punct_comma", "--": "punct_dash",
    ".": "punct_terminator", ":": "punct_colon", "``": "punct_open_quote",
}

_BIAS_NAMES = (
    "bias_words", "assertatives", "factives", "hedges", "implicatives",
    "report_verbs", "positive_opinion_words", "negative_opinion_words",
)
_AFFECT_CLASS_NAMES = ("wneg", "wpos", "wneu", "sneg", "spos", "sneu")
_MORAL_NAMES = (
    "HarmVirtue", "HarmVice", "FairnessVirtue", "FairnessVice",
    "IngroupVirtue", "IngroupVice", "AuthorityVirtue", "AuthorityVice",
    "PurityVirtue", "PurityVice", "MoralityGeneral",
)

NELA_NAMES = (
    ("quotes", "exclaim", "allpunc", "allcaps", "stops")
    + PTB_WORD_TAGS
    + _PUNCT_CLASS_NAMES
    + ("ttr", "avg_wordlen", "word_count", "flesch_kincaid_grade_level",
       "smog_index", "coleman_liau_index", "lix", "sent_count", "avg_sentlen")
    + _BIAS_NAMES
    + ("vadneg", "vadneu", "vadpos", "vadcomp")
    + _AFFECT_CLASS_NAMES
    + _MORAL_NAMES
    + ("num_locations", "num_dates", "num_times")
)

# Features the corrected variant drops: `exclaim` and `quotes` duplicate the
# dedicated punctuation classes, `allpunc` is identically 1 once punctuation
# is normalised by punctuation items, and the nine tagger-derived classes are
# replaced by direct per-symbol extractors.
MODIFIED_REMOVED = ("quotes", "exclaim", "allpunc") + _PUNCT_CLASS_NAMES

MODIFIED_PUNCT_NAMES = (
    "period", "comma", "colon", "semicolon", "question", "exclamation",
    "dash", "single_quote", "double_quote", "parentheses", "hash", "at",
    "pound", "dollar", "ampersand", "percentage",
)

_MOD_PUNCT_CHARS = {
    "period": ".", "comma": ",", "colon": ":", "semicolon": ";",
    "question": "?", "exclamation": "!", "dash": _DASH_CHARS,
    "single_quote": _SINGLE_QUOTE_CHARS, "double_quote": _DOUBLE_QUOTE_CHARS,
    "parentheses": "()", "hash": "#", "at": "@", "pound": "£",
    "dollar": "$", "ampersand": "&", "percentage": "%",
}

MODIFIED_NELA_NAMES = (
    ("all_caps", "stops")
    + PTB_WORD_TAGS
    + ("ttr", "avg_wordlen", "word_count", "flesch_kincaid_grade_level",
       "smog_index", "coleman_liau_index", "lix", "sent_count", "avg_sentlen")
    + _BIAS_NAMES
    + ("vadneg", "vadneu", "vadpos", "vadcomp")
    + _AFFECT_CLASS_NAMES
    + _MORAL_NAMES
    + ("num_locations", "num_dates", "num_times")
    + MODIFIED_PUNCT_NAMES
)


@lru_cache(maxsize=1)
def _nela_wordlists() -> Lexicon:
    files = {}
    for cat in _BIAS_NAMES + _AFFECT_CLASS_NAMES + _MORAL_NAMES:
        files[cat] = data_text(cat + ".txt")
    return lingcore.load_wordlist_lexicon("nela-wordlists", files)


@lru_cache(maxsize=1)
def _stopword_set() -> frozenset[str]:
    return frozenset(data_lines("stopwords.txt"))


@lru_cache(maxsize=1)
def _gazetteer() -> frozenset[str]:
    return frozenset(data_lines("gazetteer.txt"))


_MONTH = (
    "january|february|march|april|may|june|july|august|september|october"
    "|november|december|jan|feb|mar|apr|jun|jul|aug|sep|sept|oct|nov|dec"
)
_DATE_RE = re.compile(
    rf"\b(?:{_MONTH})\.?\s+\d{{1,2}}(?:st|nd|rd|th)?(?:\s*,?\s*\d{{4}})?\b"
    rf"|\b\d{{1,2}}(?:st|nd|rd|th)?\s+(?:{_MONTH})\b(?:\s*,?\s*\d{{4}})?"
    rf"|\b\d{{4}}-\d{{2}}-\d{{2}}\b"
    rf"|\b\d{{1,2}}[/.]\d{{1,2}}[/.]\d{{2,4}}\b"
    rf"|\b(?:19|20)\d{{2}}\b",
    re.IGNORECASE,
)
_TIME_RE = re.compile(
    r"\b\d{1,2}:\d{2}(?::\d{2})?\s*(?:am|pm)?\b"
    r"|\b\d{1,2}\s*(?:am|pm)\b"
    r"|\b(?:noon|midnight)\b",
    re.IGNORECASE,
)


def _count_locations(lower_words: list[str]) -> int:
    gaz = _gazetteer()
    n = 0
    i = 0
    while i < len(lower_words):
        matched = 0
        for span in (3, 2, 1):
            if i + span <= len(lower_words) and " ".join(lower_words[i:i + span]) in gaz:
                matched = span
                break
        if matched:
            n += 1
            i += matched
        else:
            i += 1
    return n


def _nela_common(p: _Profile) -> dict[str, float]:
    nw = p.n_words
    lex = _nela_wordlists()
    vlex = lingcore.load_default_valence()
    read = lingcore.readability(
        p.counts.words, p.counts.sentences or 1, p.counts.syllables,
        p.counts.letters, p.counts.long_words, p.counts.polysyllables,
        p.counts.unique_words,
    )
    out = {
        "allcaps": sum(1 for w in p.words if _is_all_caps(w)) / nw,
        "stops": sum(1 for w in p.lower_words if w in _stopword_set()) / nw,
        "ttr": read["ttr"],
        "avg_wordlen": read["avg_wordlen"],
        "word_count": float(nw),
        "flesch_kincaid_grade_level": read["flesch_kincaid_grade"],
        "smog_index": read["smog"],
        "coleman_liau_index": read["coleman_liau"],
        "lix": read["lix"],
        "sent_count": float(p.n_sentences),
        "avg_sentlen": nw / p.n_sentences,
        "num_locations": float(_count_locations(p.lower_words)),
        "num_dates": float(len(_DATE_RE.findall(p.text))),
        "num_times": float(len(_TIME_RE.findall(p.text))),
    }
    for tag in PTB_WORD_TAGS:
        out[tag] = p.tag_counts.get(tag, 0) / nw
    for cat in _BIAS_NAMES + _AFFECT_CLASS_NAMES + _MORAL_NAMES:
        out[cat] = lingcore.lexicon_hits(p.lower_words, lex, cat) / nw
    neg, neu, pos = lingcore.valence_scores(p.lower_words, vlex)
    out["vadneg"] = neg
    out["vadneu"] = neu
    out["vadpos"] = pos
    out["vadcomp"] = lingcore.mean_valence(p.lower_words, vlex)
    return out


def nela_features(text: str) -> FeatureVector:
    p = _Profile(text)
    nw = p.n_words
    feats = _nela_common(p)
    feats["quotes"] = p.nchars(_QUOTE_CHARS) / nw
    feats["exclaim"] = p.nchars("!") / nw
    feats["allpunc"] = len(p.punct_chars) / nw
    for tag, name in _PUNCT_TAG_TO_NAME.items():
        feats[name] = p.tag_counts.get(tag, 0) / nw
    values = tuple(feats[name] for name in NELA_NAMES)
    return FeatureVector(get_schema("nela"), values)


def modified_nela_features(text: str) -> FeatureVector:
    p = _Profile(text)
    feats = _nela_common(p)
    feats["all_caps"] = feats.pop("allcaps")
    n_punct = len(p.punct_chars)
    for name in MODIFIED_PUNCT_NAMES:
        count = p.nchars(_MOD_PUNCT_CHARS[name])
        feats[name] = count / n_punct if n_punct else 0.0
    values = tuple(feats[name] for name in MODIFIED_NELA_NAMES)
    return FeatureVector(get_schema("nela_modified"), values)


# ---------------------------------------------------------------------------
# Schemas, monetisation append, extraction dispatch

_BASE_NAMES = {
    "fernandez": FERNANDEZ_NAMES,
    "abonizio": ABONIZIO_NAMES,
    "nela": NELA_NAMES,
    "nela_modified": MODIFIED_NELA_NAMES,
}


def get_schema(group: str, with_monetisation: bool = False,
               dictionary: Lexicon | None = None) -> FeatureSchema:
    if group == "liwc":
        if dictionary is None:
            raise DictionaryRequired("liwc schema needs a dictionary")
        return liwc_schema(dictionary, with_monetisation)
    if group not in _BASE_NAMES:
        raise SchemaError(f"unknown feature group {group!r}")
    names = _BASE_NAMES[group]
    if with_monetisation:
        names = names + MONETISATION_NAMES
    return FeatureSchema(group, names, with_monetisation)


def extract_features(group: str, text: str,
                     dictionary: Lexicon | None = None) -> FeatureVector:
    if group == "fernandez":
        return fernandez_features(text)
    if group == "abonizio":
        return abonizio_features(text)
    if group == "liwc":
        return liwc_features(text, dictionary)
    if group == "nela":
        return nela_features(text)
    if group == "nela_modified":
        return modified_nela_features(text)
    raise SchemaError(f"unknown feature group {group!r}")


def append_monetisation(v: FeatureVector, m: MonetisationFeatures) -> FeatureVector:
    """Append ads, ext_total, fb, twit in that fixed order."""
    if v.schema.with_monetisation:
        raise SchemaError("monetisation features already appended")
    schema = FeatureSchema(
        v.schema.group, v.schema.names + MONETISATION_NAMES, with_monetisation=True
    )
    return FeatureVector(schema, v.values + tuple(float(x) for x in m.as_tuple()))


# ---------------------------------------------------------------------------
# Standardisation


@dataclass
class Standardizer:
    """Per-column z-scoring with population standard deviation; columns with
    zero deviation map to zero."""

    means: np.ndarray | None = None
    stds: np.ndarray | None = None

    @property
    def fitted(self) -> bool:
        return self.means is not None

    def transform(self, X) -> np.ndarray:
        if not self.fitted:
            raise NotFitted("standardizer used before fit")
        X = np.asarray(X, dtype=np.float64)
        scale = np.where(self.stds > 0, self.stds, 1.0)
        Z = (X - self.means) / scale
        Z[:, self.stds == 0] = 0.0
        return Z

    def to_dict(self) -> dict:
        return {"means": self.means.tolist(), "stds": self.stds.tolist()}

    @classmethod
    def from_dict(cls, obj: dict) -> "Standardizer":
        return cls(
            means=np.asarray(obj["means"], dtype=np.float64),
            stds=np.asarray(obj["stds"], dtype=np.float64),
        )


def fit_standardizer(X) -> Standardizer:
    X = np.asarray(X, dtype=np.float64)
    return Standardizer(means=X.mean(axis=0), stds=X.std(axis=0))


# ---------------------------------------------------------------------------
# Feature-matrix files (CSV + schema sidecar)


def schema_sidecar_path(csv_path: str) -> str:
    return str(csv_path) + ".schema.json"


def write_matrix(csv_path, ids, labels, X, schema: FeatureSchema) -> None:
    X = np.asarray(X, dtype=np.float64)
    if X.shape[1] != len(schema.names):
        raise SchemaError("matrix width does not match schema")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "label", *schema.names])
        for rid, label, row in zip(ids, labels, X):
            writer.writerow([rid, label, *(repr(float(v)) for v in row)])
    with open(schema_sidecar_path(csv_path), "w", encoding="utf-8") as fh:
        json.dump(
            {
                "group": schema.group,
                "names": list(schema.names),
                "with_monetisation": schema.with_monetisation,
            },
            fh,
            indent=2,
        )
        fh.write("\n")


def read_matrix(csv_path):
    """Returns (ids, labels, X, schema); schema comes from the sidecar when
    present, otherwise it is reconstructed from the header."""
    with open(csv_path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header[:2] != ["id", "label"]:
            raise SchemaError("matrix header must start with id,label")
        ids, labels, rows = [], [], []
        for row in reader:
            if not row:
                continue
            ids.append(row[0])
            labels.append(row[1])
            rows.append([float(v) for v in row[2:]])
    names = tuple(header[2:])
    try:
        with open(schema_sidecar_path(csv_path), encoding="utf-8") as fh:
            meta = json.load(fh)
        schema = FeatureSchema(meta["group"], tuple(meta["names"]),
                               meta["with_monetisation"])
        if schema.names != names:
            raise SchemaError("sidecar names disagree with CSV header")
    except FileNotFoundError:
        schema = FeatureSchema("unknown", names, False)
    X = np.asarray(rows, dtype=np.float64) if rows else np.zeros((0, len(names)))
    return ids, labels, X, schema
