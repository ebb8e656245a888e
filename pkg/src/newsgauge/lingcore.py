"""Language primitives shared by every feature group.

Everything in here is a deterministic rule system: the tokenizer, sentence
splitter, syllable counter, lemmatizer and POS tagger are all closed-form so
that feature vectors are reproducible byte for byte across runs and machines.
Tagger output is drawn from a closed Penn-Treebank tag inventory; tagging
accuracy is best-effort, determinism is the contract.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import CategoryError, DegenerateText, InvalidWord
from .resources import data_lines, data_text

# ---------------------------------------------------------------------------
# Tokenisation


@dataclass(frozen=True)
class TokenStream:
    """Tokens with byte offsets plus sentence spans over token indices."""

    tokens: tuple[tuple[str, int], ...]
    sentence_bounds: tuple[tuple[int, int], ...]

    def surfaces(self) -> list[str]:
        return [t for t, _ in self.tokens]

    def words(self) -> list[str]:
        """Word tokens only (runs of letters/digits/apostrophes)."""
        return [t for t, _ in self.tokens if _is_word(t)]

    @property
    def n_sentences(self) -> int:
        return len(self.sentence_bounds)


# A word run may contain internal apostrophes ("don't"); leading/trailing
# apostrophes are quotes and split off as punctuation.
_RUN_RE = re.compile(r"(?:[^\W_]|')+|[^\s]", re.UNICODE)

_ABBREVIATIONS = frozenset(data_lines("abbreviations.txt"))


def _is_word(token: str) -> bool:
    return any(c.isalnum() for c in token)


def tokenize(text: str) -> TokenStream:
    """Split text into word/punctuation tokens and sentence spans.

    Word tokens are maximal runs of letters, digits and apostrophes; every
    other non-space character becomes a single-character token.  Sentences
    end at ``.!?`` followed by whitespace and a capital letter, except after
    known abbreviations or single-letter initials.
    """
    raw: list[tuple[str, int]] = []  # (surface, char offset)
    for m in _RUN_RE.finditer(text):
        run = m.group(0)
        start = m.start()
        if _is_word(run):
            lead = len(run) - len(run.lstrip("'"))
            trail = len(run.rstrip("'"))
            for i in range(lead):
                raw.append(("'", start + i))
            raw.append((run[lead:trail], start + lead))
            for i in range(trail, len(run)):
                raw.append(("'", start + i))
        elif set(run) == {"'"}:
            for i in range(len(run)):
                raw.append(("'", start + i))
        else:
            raw.append((run, start))

    tokens: list[tuple[str, int]] = []
    char_pos = 0
    byte_pos = 0
    for surface, cstart in raw:
        byte_pos += len(text[char_pos:cstart].encode("utf-8"))
        char_pos = cstart
        tokens.append((surface, byte_pos))

    bounds: list[tuple[int, int]] = []
    sent_start = 0
    for i, (surface, cstart) in enumerate(raw):
        if surface not in (".", "!", "?") or i + 1 >= len(raw):
            continue
        if surface == "." and i > 0:
            prev = raw[i - 1][0]
            if prev.lower() in _ABBREVIATIONS or (
                len(prev) == 1 and prev.isalpha() and prev.isupper()
            ):
                continue
        # boundary requires whitespace then a capital in the raw text
        after = text[cstart + len(surface):]
        stripped = after.lstrip()
        if len(stripped) == len(after) or not stripped or not stripped[0].isupper():
            continue
        bounds.append((sent_start, i + 1))
        sent_start = i + 1
    if sent_start < len(raw):
        bounds.append((sent_start, len(raw)))
    return TokenStream(tuple(tokens), tuple(bounds))


# ---------------------------------------------------------------------------
# Syllables

_VOWEL_GROUP_RE = re.compile(r"[aeiou]+")


def count_syllables(word: str) -> int:
    """Vowel-group count with a silent trailing-e rule, floored at 1."""
    if not word or not word.isalpha():
        raise InvalidWord(f"not an alphabetic word: {word!r}")
    w = word.lower()
    n = len(_VOWEL_GROUP_RE.findall(w))
    if len(w) >= 2 and w.endswith("e") and w[-2] not in "aeiou":
        # final e is silent unless it ends a consonant+"le" cluster (tab-le)
        if not (w[-2] == "l" and len(w) >= 3 and w[-3] not in "aeiou"):
            n -= 1
    return max(n, 1)


def token_syllables(token: str) -> int:
    """Syllables of an arbitrary token; numeric tokens count as one."""
    letters = "".join(c for c in token if c.isalpha())
    if letters:
        return count_syllables(letters)
    return 1 if any(c.isdigit() for c in token) else 0


# ---------------------------------------------------------------------------
# Lemmatisation

_IRREGULAR_LEMMAS = {
    "went": "go", "gone": "go", "goes": "go",
    "was": "be", "were": "be", "is": "be", "are": "be", "am": "be", "been": "be",
    "has": "have", "had": "have",
    "did": "do", "done": "do", "does": "do",
    "said": "say", "says": "say",
    "made": "make", "took": "take", "taken": "take",
    "came": "come", "saw": "see", "seen": "see",
    "got": "get", "gotten": "get", "gave": "give", "given": "give",
    "ran": "run", "wrote": "write", "written": "write",
    "told": "tell", "thought": "think", "knew": "know", "known": "know",
    "found": "find", "felt": "feel", "left": "leave", "kept": "keep",
    "held": "hold", "brought": "bring", "began": "begin", "begun": "begin",
    "spoke": "speak", "spoken": "speak", "stood": "stand", "lost": "lose",
    "paid": "pay", "met": "meet", "sat": "sit", "led": "lead", "read": "read",
    "grew": "grow", "grown": "grow", "threw": "throw", "thrown": "throw",
    "men": "man", "women": "woman", "children": "child", "people": "person",
    "feet": "foot", "teeth": "tooth", "mice": "mouse", "lives": "life",
    "better": "good", "best": "good", "worse": "bad", "worst": "bad",
}

_VOWELS = set("aeiou")


def _has_vowel(s: str) -> bool:
    return bool(_VOWELS.intersection(s))


def _repair_stem(stem: str) -> str:
    # undouble trailing consonants (runn -> run) except ll/ss/ff/zz,
    # then restore a dropped silent e on short CVC stems (mak -> make)
    if (
        len(stem) >= 3
        and stem[-1] == stem[-2]
        and stem[-1] not in _VOWELS
        and stem[-1] not in "lsfz"
    ):
        return stem[:-1]
    if (
        3 <= len(stem) <= 4
        and stem[-1] not in _VOWELS
        and stem[-1] not in "wxy"
        and stem[-2] in _VOWELS
        and stem[-3] not in _VOWELS
    ):
        return stem + "e"
    return stem


def lemmatize(token: str) -> str:
    """Rule-based lemma of a lower-cased token."""
    w = token
    if w in _IRREGULAR_LEMMAS:
        return _IRREGULAR_LEMMAS[w]
    if len(w) > 4 and w.endswith("ies"):
        return w[:-3] + "y"
    if len(w) > 4 and w.endswith("ied"):
        return w[:-3] + "y"
    if len(w) > 3 and w.endswith("es"):
        stem = w[:-2]
        if stem.endswith(("ch", "sh")) or stem[-1] in "sxzo":
            return stem
    if len(w) > 3 and w.endswith("s") and not w.endswith(("ss", "us", "is", "'s")):
        return w[:-1]
    if len(w) > 5 and w.endswith("ing") and _has_vowel(w[:-3]):
        return _repair_stem(w[:-3])
    if len(w) >= 5 and w.endswith("ed") and _has_vowel(w[:-2]):
        return _repair_stem(w[:-2])
    return w


# ---------------------------------------------------------------------------
# POS tagging

PTB_WORD_TAGS = (
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD",
    "NN", "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR",
    "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP",
    "VBZ", "WDT", "WP", "WP$", "WRB",
)
PTB_PUNCT_TAGS = ("$", "''", "(", ")", ",", "--", ".", ":", "``")
PTB_TAGS = frozenset(PTB_WORD_TAGS) | frozenset(PTB_PUNCT_TAGS)


@dataclass(frozen=True)
class PosTaggedToken:
    surface: str
    tag: str


_CLOSED_CLASS = {}
for _tag, _words in [
    ("DT", "the a an this that these those each every either neither another no"),
    ("PDT", "all both half"),
    ("EX", "there"),
    ("TO", "to"),
    ("MD", "can could may might must shall should will would cannot can't won't"
           " wouldn't couldn't shouldn't mustn't"),
    ("CC", "and but or nor yet plus minus"),
    ("PRP", "i you he she it we they me him her us them myself yourself himself"
            " herself itself ourselves themselves"),
    ("PRP$", "my your his its our their mine yours hers ours theirs"),
    ("WDT", "which whichever whatever"),
    ("WP", "who whom what whoever"),
    ("WP$", "whose"),
    ("WRB", "when where why how whenever wherever"),
    ("UH", "oh wow hey ah ouch oops hmm yeah hello hi alas"),
    ("RP", "up off out"),
    ("IN", "of in on at by with from about against between into through during"
           " before after above below under over since until while because if"
           " although though unless whether upon within without among across"
           " behind beyond despite toward towards onto like near per"),
    ("RB", "not never n't also very too quite rather almost always often usually"
           " sometimes soon still yet just even only again here now then"),
    ("JJR", "more less fewer greater larger smaller higher lower bigger"),
    ("JJS", "most least"),
    ("RBR", "sooner earlier"),
    ("RBS", "soonest"),
    ("VB", "be"),
    ("VBP", "am are have do don't aren't haven't"),
    ("VBZ", "is has does isn't doesn't hasn't"),
    ("VBD", "was were had did wasn't weren't didn't hadn't"),
    ("VBN", "been"),
    ("VBG", "being"),
    ("POS", "'s"),
]:
    for _w in _words.split():
        _CLOSED_CLASS.setdefault(_w, _tag)

_NUMBER_WORDS = frozenset(
    "zero one two three four five six seven eight nine ten eleven twelve"
    " thirteen fourteen fifteen sixteen seventeen eighteen nineteen twenty"
    " thirty forty fifty sixty seventy eighty ninety hundred thousand million"
    " billion trillion".split()
)

_NUMERIC_RE = re.compile(r"^[0-9][0-9,.']*$")

_PUNCT_TAG_MAP = {
    ".": ".", "!": ".", "?": ".",
    ",": ",",
    ":": ":", ";": ":", "…": ":",
    "(": "(", "[": "(", "{": "(",
    ")": ")", "]": ")", "}": ")",
    "$": "$", "£": "$", "€": "$", "¥": "$",
    "-": "--", "–": "--", "—": "--",
    "'": "''", "’": "''", "‘": "``",
    "“": "``", "”": "''",
}

_JJ_SUFFIXES = ("ous", "ful", "ive", "able", "ible", "ical", "ish", "less")


def pos_tag(tokens) -> list[PosTaggedToken]:
    """Deterministic baseline tagger: closed classes, suffixes, default NN.

    Accepts a :class:`TokenStream` or a plain list of surfaces.  Every token
    receives exactly one tag from the closed PTB inventory.
    """
    if isinstance(tokens, TokenStream):
        surfaces = tokens.surfaces()
        sentence_initial = {start for start, _ in tokens.sentence_bounds}
    else:
        surfaces = list(tokens)
        sentence_initial = {0}
        for i, s in enumerate(surfaces[:-1]):
            if s in (".", "!", "?"):
                sentence_initial.add(i + 1)

    out: list[PosTaggedToken] = []
    dq_open = True
    for i, surface in enumerate(surfaces):
        tag = None
        low = surface.lower()
        if not _is_word(surface):
            if surface == '"':
                tag = "``" if dq_open else "''"
                dq_open = not dq_open
            else:
                tag = _PUNCT_TAG_MAP.get(surface, "SYM")
        elif _NUMERIC_RE.match(surface) or low in _NUMBER_WORDS:
            tag = "CD"
        elif low in _CLOSED_CLASS:
            tag = _CLOSED_CLASS[low]
        elif i > 0 and surfaces[i - 1].lower() == "to":
            tag = "VB"
        elif surface[0].isupper() and i not in sentence_initial:
            tag = "NNPS" if len(surface) > 3 and surface.endswith("s") else "NNP"
        elif low.endswith("ly") and len(low) > 3:
            tag = "RB"
        elif low.endswith("ing") and len(low) > 4:
            tag = "VBG"
        elif low.endswith("ed") and len(low) > 3:
            tag = "VBD"
        elif low.endswith("est") and len(low) > 5:
            tag = "JJS"
        elif low.endswith(_JJ_SUFFIXES) and len(low) > 4:
            tag = "JJ"
        elif low.endswith("s") and not low.endswith(("ss", "us", "is")) and len(low) > 3:
            tag = "NNS"
        else:
            tag = "NN"
        out.append(PosTaggedToken(surface, tag))
    return out


def entity_runs(stream: TokenStream) -> list[list[str]]:
    """Named-entity approximation: maximal runs of capitalised word tokens
    that are not sentence-initial."""
    sentence_initial = {start for start, _ in stream.sentence_bounds}
    runs: list[list[str]] = []
    current: list[str] = []
    for i, (surface, _) in enumerate(stream.tokens):
        is_cap = (
            _is_word(surface)
            and surface[:1].isupper()
            and (i not in sentence_initial or current)
        )
        if is_cap:
            current.append(surface)
        else:
            if current:
                runs.append(current)
            current = []
    if current:
        runs.append(current)
    return runs


# ---------------------------------------------------------------------------
# Lexicons


@dataclass
class Lexicon:
    """Category -> patterns, where a pattern is a literal word or a stem
    with a trailing ``*`` wildcard (prefix match)."""

    name: str
    categories: tuple[str, ...]
    literals: dict[str, frozenset[str]] = field(default_factory=dict)
    stems: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def match(self, token: str, category: str) -> bool:
        if category not in self.literals:
            raise CategoryError(f"unknown category {category!r} in lexicon {self.name}")
        low = token.lower()
        if low in self.literals[category]:
            return True
        return any(low.startswith(s) for s in self.stems[category])


def lexicon_hits(tokens, lexicon: Lexicon, category: str) -> int:
    """Number of tokens captured by a category (case-insensitive)."""
    if category not in lexicon.literals:
        raise CategoryError(f"unknown category {category!r} in lexicon {lexicon.name}")
    lits = lexicon.literals[category]
    stems = lexicon.stems[category]
    n = 0
    for t in tokens:
        low = t.lower()
        if low in lits or any(low.startswith(s) for s in stems):
            n += 1
    return n


def parse_dictionary(text: str, name: str = "dictionary") -> Lexicon:
    """Parse the de-facto ``%``-delimited dictionary format.

    Header between the two ``%`` lines maps category ids to names; the body
    holds ``pattern<TAB>id id ...`` lines (ids may also be names).
    """
    lines = text.splitlines()
    ids: dict[str, str] = {}
    body_start = 0
    if lines and lines[0].strip() == "%":
        i = 1
        while i < len(lines) and lines[i].strip() != "%":
            parts = lines[i].split()
            if len(parts) >= 2:
                ids[parts[0]] = parts[1]
            i += 1
        body_start = i + 1
    categories = list(ids.values())
    literals: dict[str, set[str]] = {c: set() for c in categories}
    stems: dict[str, list[str]] = {c: [] for c in categories}
    for line in lines[body_start:]:
        parts = line.strip().split("\t") if "\t" in line else line.strip().split()
        if len(parts) < 2:
            continue
        pattern = parts[0].lower()
        for ref in parts[1:]:
            cat = ids.get(ref, ref)
            if cat not in literals:
                categories.append(cat)
                literals[cat] = set()
                stems[cat] = []
            if pattern.endswith("*"):
                stems[cat].append(pattern[:-1])
            else:
                literals[cat].add(pattern)
    return Lexicon(
        name=name,
        categories=tuple(categories),
        literals={c: frozenset(v) for c, v in literals.items()},
        stems={c: tuple(sorted(v)) for c, v in stems.items()},
    )


def load_default_dictionary() -> Lexicon:
    return parse_dictionary(data_text("styledict.dic"), name="styledict")


def load_wordlist_lexicon(name: str, files: dict[str, str]) -> Lexicon:
    """Build a lexicon from one-word-per-line files; file name = category."""
    categories = tuple(files)
    literals = {}
    stems = {}
    for cat, text in files.items():
        lits = set()
        sts = []
        for w in text.splitlines():
            w = w.strip().lower()
            if not w or w.startswith("#"):
                continue
            if w.endswith("*"):
                sts.append(w[:-1])
            else:
                lits.add(w)
        literals[cat] = frozenset(lits)
        stems[cat] = tuple(sorted(sts))
    return Lexicon(name=name, categories=categories, literals=literals, stems=stems)


# ---------------------------------------------------------------------------
# Valence


def parse_valence(text: str) -> dict[str, float]:
    """``word<TAB>score`` lines to a word -> valence map."""
    out: dict[str, float] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word, _, score = line.partition("\t")
        out[word.strip().lower()] = float(score)
    return out


def load_default_valence() -> dict[str, float]:
    return parse_valence(data_text("valence.tsv"))


def valence_scores(tokens, vlex: dict[str, float]) -> tuple[float, float, float]:
    """(negative, neutral, positive) proportions under a +-0.05 neutrality
    band; unlisted tokens are neutral; empty input is (0, 1, 0)."""
    n = 0
    neg = pos = 0
    for t in tokens:
        n += 1
        score = vlex.get(t.lower(), 0.0)
        if score < -0.05:
            neg += 1
        elif score > 0.05:
            pos += 1
    if n == 0:
        return (0.0, 1.0, 0.0)
    return (neg / n, (n - neg - pos) / n, pos / n)


def mean_valence(tokens, vlex: dict[str, float]) -> float:
    """Mean signed valence over tokens (0 for empty input)."""
    scores = [vlex.get(t.lower(), 0.0) for t in tokens]
    return sum(scores) / len(scores) if scores else 0.0


# ---------------------------------------------------------------------------
# Readability


def readability(
    words: int,
    sentences: int,
    syllables: int,
    letters: int,
    long_words: int,
    polysyllables: int,
    unique_words: int,
) -> dict[str, float]:
    """Published readability formulas over pre-extracted counts.

    Long words are words of more than six characters; polysyllables are
    words of three or more syllables.
    """
    if words <= 0 or sentences <= 0:
        raise DegenerateText("readability needs at least one word and sentence")
    fk = 0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59
    smog = 1.0430 * (polysyllables * 30 / sentences) ** 0.5 + 3.1291
    cl = 0.0588 * (letters * 100 / words) - 0.296 * (sentences * 100 / words) - 15.8
    lix = words / sentences + 100.0 * long_words / words
    return {
        "flesch_kincaid_grade": fk,
        "smog": smog,
        "coleman_liau": cl,
        "lix": lix,
        "ttr": unique_words / words,
        "avg_wordlen": letters / words,
    }


@dataclass(frozen=True)
class TextCounts:
    words: int
    sentences: int
    syllables: int
    letters: int
    long_words: int
    polysyllables: int
    unique_words: int


def text_counts(stream: TokenStream) -> TextCounts:
    """Counts feeding the readability formulas, from one token stream."""
    words = stream.words()
    letters = sum(1 for w in words for c in w if c.isalpha())
    sylls = [token_syllables(w) for w in words]
    return TextCounts(
        words=len(words),
        sentences=stream.n_sentences,
        syllables=sum(sylls),
        letters=letters,
        long_words=sum(1 for w in words if len(w) > 6),
        polysyllables=sum(1 for s in sylls if s >= 3),
        unique_words=len({w.lower() for w in words}),
    )
