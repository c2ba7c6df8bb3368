"""Distributional similarity: windowed co-occurrence counts, PMI vectors,
additive phrase composition and cosine.
"""

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .errors import EmptyInput, EmptyPhrase, ParseError

DEFAULT_WINDOW = 3
DEFAULT_TOP_K = 1000


def read_sentences(lines):
    """Group whitespace tokens into sentences; a blank line ends a sentence.

    Tokens are lowercased.
    """
    sentence = []
    for line in lines:
        tokens = line.lower().split()
        if not tokens:
            if sentence:
                yield sentence
                sentence = []
            continue
        sentence.extend(tokens)
    if sentence:
        yield sentence


def read_corpus(path):
    with open(path, encoding="utf-8") as fh:
        return list(read_sentences(fh))


@dataclass
class CollocationCounts:
    pair_counts: Counter = field(default_factory=Counter)
    target_totals: Counter = field(default_factory=Counter)
    context_totals: Counter = field(default_factory=Counter)
    grand_total: int = 0
    token_count: int = 0

    def __post_init__(self):
        self._rows = defaultdict(dict)
        for (t, c), n in self.pair_counts.items():
            self._rows[t][c] = n

    def add(self, target, context, n=1):
        self.pair_counts[target, context] += n
        self._rows[target][context] = self.pair_counts[target, context]
        self.target_totals[target] += n
        self.context_totals[context] += n
        self.grand_total += n

    def merge(self, other):
        """Return the counts of both shards combined."""
        out = CollocationCounts()
        for src in (self, other):
            for (t, c), n in src.pair_counts.items():
                out.add(t, c, n)
            out.token_count += src.token_count
        return out

    def contexts(self, word):
        """Context -> count mapping for ``word`` (empty when unseen)."""
        return self._rows.get(word, {})

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            for (t, c), n in sorted(self.pair_counts.items()):
                fh.write(f"{t}\t{c}\t{n}\n")

    @classmethod
    def load(cls, path):
        counts = cls()
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip() or line.startswith("#"):
                    continue
                fields = line.rstrip("\r\n").split("\t")
                if len(fields) != 3:
                    raise ParseError("expected target<TAB>context<TAB>count", lineno)
                try:
                    n = int(fields[2])
                except ValueError:
                    raise ParseError(f"bad count {fields[2]!r}", lineno) from None
                if n > 0:
                    counts.add(fields[0].lower(), fields[1].lower(), n)
        return counts


def count_collocations(sentences, window=DEFAULT_WINDOW):
    """Count (target, context) pairs within ``window`` tokens on each side.

    ``sentences`` is an iterable of token lists; windows never cross a
    sentence boundary. A flat token list is treated as one sentence.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    sentences = list(sentences)
    if sentences and isinstance(sentences[0], str):
        sentences = [sentences]
    counts = CollocationCounts()
    for tokens in sentences:
        counts.token_count += len(tokens)
        n = len(tokens)
        for i, target in enumerate(tokens):
            for j in range(max(0, i - window), min(n, i + window + 1)):
                if j != i:
                    counts.add(target, tokens[j])
    return counts


def top_k_collocates(counts, word, k=DEFAULT_TOP_K):
    """The ``k`` most frequent contexts of ``word``, ties broken by context."""
    if k < 1:
        raise ValueError("k must be >= 1")
    row = counts.contexts(word)
    return sorted(row.items(), key=lambda kv: (-kv[1], kv[0]))[:k]


@dataclass
class PmiVector:
    owner: str
    entries: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.entries)

    def __len__(self):
        return len(self.entries)

    def norm(self):
        return math.sqrt(sum(v * v for v in self.entries.values()))

    def scaled(self, factor):
        return PmiVector(self.owner, {c: v * factor for c, v in self.entries.items()})

    def dump_lines(self):
        return [f"{self.owner}\t{c}\t{v!r}" for c, v in sorted(self.entries.items())]


def pmi_vector(counts, word, k=DEFAULT_TOP_K):
    """PMI over the top-``k`` contexts of ``word`` (log base 2).

    Truncation happens on raw counts before PMI is computed; zero PMI entries
    are dropped, negative ones kept.
    """
    entries = {}
    total_w = counts.target_totals.get(word, 0)
    for context, n in top_k_collocates(counts, word, k):
        value = math.log2(n * counts.grand_total / (total_w * counts.context_totals[context]))
        if value != 0.0:
            entries[context] = value
    return PmiVector(word, entries)


def compose(vectors):
    """Key-wise sum of vectors; entries summing to zero are dropped."""
    vectors = list(vectors)
    if not vectors:
        raise EmptyInput("compose needs at least one vector")
    total = defaultdict(float)
    for v in vectors:
        for c, x in v.entries.items():
            total[c] += x
    return PmiVector(" ".join(v.owner for v in vectors), {c: x for c, x in total.items() if x != 0.0})


def cosine(a, b):
    na, nb = a.norm(), b.norm()
    if na == 0.0 or nb == 0.0:
        return 0.0
    small, large = (a.entries, b.entries) if len(a) <= len(b) else (b.entries, a.entries)
    dot = sum(x * large[c] for c, x in small.items() if c in large)
    return max(-1.0, min(1.0, dot / (na * nb)))


def word_phrase_similarity(counts, word, phrase, k=DEFAULT_TOP_K):
    """Cosine between the word's vector and the sum of the phrase word vectors."""
    if isinstance(phrase, str):
        phrase = phrase.split()
    if not phrase:
        raise EmptyPhrase("phrase must contain at least one word")
    target = pmi_vector(counts, word.lower(), k)
    parts = [pmi_vector(counts, w.lower(), k) for w in phrase]
    if not target or not all(parts):
        return 0.0
    return cosine(target, compose(parts))
