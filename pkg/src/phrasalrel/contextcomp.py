"""Literal vs. figurative use of a phrase in a sentence.

Three features per instance:

* ``fc``  - 1 when the sentence around the phrase contains one of the
  phrase's frequent neighbouring expressions in a reference corpus;
* ``srb`` - network relatedness of the first content word before the phrase;
* ``sra`` - the same for the first content word after it.

A missing content word (or one the network does not know) yields 1.0, so the
low-relatedness rules never fire on that side.
"""

from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from . import pathrel
from .errors import EmptyDataset, ParseError, WordNotInNetwork
from .ruleset import Condition, Rule, RuleSet

LITERAL = "literal"
FIGURATIVE = "figurative"
SENTINEL = 1.0
MAX_EXPRESSION_LEN = 3


def default_stopwords():
    text = resources.files("phrasalrel").joinpath("data/stopwords.txt").read_text(encoding="utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


def load_stopwords(path):
    with open(path, encoding="utf-8") as fh:
        return frozenset(w.strip().lower() for w in fh if w.strip())


@dataclass(frozen=True)
class ContextInstance:
    phrase: tuple
    sentence: tuple
    span: tuple
    label: Optional[str] = None

    def __post_init__(self):
        start, end = self.span
        if not 0 <= start < end <= len(self.sentence):
            raise ValueError(f"bad span {self.span} for a {len(self.sentence)}-token sentence")
        inside = [t.lower() for t in self.sentence[start:end]]
        if inside != [t.lower() for t in self.phrase]:
            raise ValueError(f"span {self.span} does not cover phrase {' '.join(self.phrase)!r}")

    @classmethod
    def locate(cls, phrase, sentence, label=None):
        """Build an instance using the first occurrence of ``phrase``."""
        phrase = tuple(phrase.split()) if isinstance(phrase, str) else tuple(phrase)
        sentence = tuple(sentence.split()) if isinstance(sentence, str) else tuple(sentence)
        low = [t.lower() for t in sentence]
        target = [t.lower() for t in phrase]
        for i in range(len(low) - len(target) + 1):
            if low[i:i + len(target)] == target:
                return cls(phrase, sentence, (i, i + len(target)), label)
        raise ValueError(f"phrase {' '.join(phrase)!r} not found in sentence")


@dataclass
class CollocationSet:
    """Most frequent expressions seen right before/after a phrase.

    ``before`` and ``after`` map expression -> corpus count, in count-descending
    order.
    """

    phrase: str
    before: dict = field(default_factory=dict)
    after: dict = field(default_factory=dict)

    @classmethod
    def from_counts(cls, phrase, before, after, k=1000):
        return cls(phrase, _top(before, k), _top(after, k))


def _top(counter, k):
    return dict(sorted(counter.items(), key=lambda kv: (-kv[1], kv[0]))[:k])


def count_phrase_contexts(sentences, phrase, max_len=MAX_EXPRESSION_LEN):
    """Counters of 1..max_len token expressions adjacent to each occurrence.

    Counters from corpus shards can be added together before truncation.
    """
    target = [t.lower() for t in (phrase.split() if isinstance(phrase, str) else phrase)]
    before, after = Counter(), Counter()
    n = len(target)
    for sent in sentences:
        tokens = [t.lower() for t in sent]
        for i in range(len(tokens) - n + 1):
            if tokens[i:i + n] != target:
                continue
            end = i + n
            for m in range(1, max_len + 1):
                if i - m >= 0:
                    before[" ".join(tokens[i - m:i])] += 1
                if end + m <= len(tokens):
                    after[" ".join(tokens[end:end + m])] += 1
    return before, after


def build_collocation_set(sentences, phrase, k=1000):
    phrase_text = " ".join(phrase.split() if isinstance(phrase, str) else phrase).lower()
    before, after = count_phrase_contexts(sentences, phrase_text)
    return CollocationSet.from_counts(phrase_text, before, after, k)


def fc_feature(instance, cset):
    """1 if the text before the phrase ends with a known before-expression, or
    the text after it starts with a known after-expression; else 0."""
    tokens = [t.lower() for t in instance.sentence]
    start, end = instance.span
    for expr in cset.before:
        e = expr.split()
        if len(e) <= start and tokens[start - len(e):start] == e:
            return 1
    for expr in cset.after:
        e = expr.split()
        if end + len(e) <= len(tokens) and tokens[end:end + len(e)] == e:
            return 1
    return 0


def content_word(sentence, span, direction, stopwords):
    start, end = span
    if direction == "before":
        candidates = range(start - 1, -1, -1)
    elif direction == "after":
        candidates = range(end, len(sentence))
    else:
        raise ValueError("direction must be 'before' or 'after'")
    for i in candidates:
        token = sentence[i].lower()
        if token.isalpha() and token not in stopwords:
            return token
    return None


@dataclass(frozen=True)
class ContextFeatures:
    fc: int
    srb: float
    sra: float

    def as_dict(self):
        return {"fc": self.fc, "srb": self.srb, "sra": self.sra}


def _side_relatedness(net, word, phrase, params):
    if word is None or net is None:
        return SENTINEL
    try:
        return pathrel.word_phrase_relatedness(net, word, phrase, params).value
    except WordNotInNetwork:
        return SENTINEL


def context_features(instance, cset, net, params=pathrel.DEFAULT_PARAMS, stopwords=None):
    if stopwords is None:
        stopwords = default_stopwords()
    fc = fc_feature(instance, cset)
    before = content_word(instance.sentence, instance.span, "before", stopwords)
    after = content_word(instance.sentence, instance.span, "after", stopwords)
    return ContextFeatures(
        fc,
        _side_relatedness(net, before, instance.phrase, params),
        _side_relatedness(net, after, instance.phrase, params),
    )


def context_rules():
    return RuleSet(
        [
            Rule((Condition("fc", "=", 0), Condition("srb", "<", 0.75)), LITERAL),
            Rule((Condition("fc", "=", 0), Condition("sra", "<", 0.75)), LITERAL),
        ],
        FIGURATIVE,
    )


@dataclass
class ContextPipeline:
    """Everything needed to label a ContextInstance.

    ``collocations`` maps a lowercased phrase to its CollocationSet; phrases
    without an entry get an empty set (fc = 0).
    """

    net: object = None
    collocations: dict = field(default_factory=dict)
    params: pathrel.RelatednessParams = pathrel.DEFAULT_PARAMS
    stopwords: frozenset = field(default_factory=default_stopwords)
    rules: RuleSet = field(default_factory=context_rules)

    def collocation_set(self, phrase):
        key = " ".join(phrase).lower()
        return self.collocations.get(key) or CollocationSet(key)

    def features(self, instance):
        return context_features(
            instance, self.collocation_set(instance.phrase), self.net, self.params, self.stopwords
        )

    def classify(self, instance):
        return self.rules.apply(self.features(instance))


def evaluate_accuracy(instances, pipeline):
    labeled = [i for i in instances if i.label is not None]
    if not labeled:
        raise EmptyDataset("no labeled instances")
    correct = sum(pipeline.classify(i) == i.label for i in labeled)
    return correct / len(labeled)


# -- files --------------------------------------------------------------------


def read_context_dataset(path):
    """Read ``phrase<TAB>start<TAB>end<TAB>label<TAB>sentence`` lines."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.rstrip("\r\n").split("\t")
            if len(fields) != 5:
                raise ParseError("expected phrase, start, end, label, sentence", lineno)
            phrase, start, end, label, sentence = fields
            label = label.strip().lower() or None
            if label not in (None, LITERAL, FIGURATIVE):
                raise ParseError(f"label must be literal or figurative, got {label!r}", lineno)
            try:
                out.append(
                    ContextInstance(
                        tuple(phrase.split()), tuple(sentence.split()), (int(start), int(end)), label
                    )
                )
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
    return out


def write_collocation_sets(path, csets):
    with open(path, "w", encoding="utf-8") as fh:
        for cset in csets:
            fh.write(f"phrase\t{cset.phrase}\n")
            for side, table in (("before", cset.before), ("after", cset.after)):
                for expr, n in table.items():
                    fh.write(f"{side}\t{expr}\t{n}\n")


def read_collocation_sets(path):
    """Read collocation sets; a ``phrase<TAB>text`` line starts each set."""
    sets, current = {}, None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.rstrip("\r\n").split("\t")
            if fields[0] == "phrase" and len(fields) == 2:
                current = CollocationSet(" ".join(fields[1].split()).lower())
                sets[current.phrase] = current
                continue
            if len(fields) != 3 or fields[0] not in ("before", "after"):
                raise ParseError("expected side<TAB>expression<TAB>count", lineno)
            if current is None:
                raise ParseError("collocation line before any phrase line", lineno)
            try:
                n = int(fields[2])
            except ValueError:
                raise ParseError(f"bad count {fields[2]!r}", lineno) from None
            getattr(current, fields[0])[" ".join(fields[1].split()).lower()] = n
    return sets
