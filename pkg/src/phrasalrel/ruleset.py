"""Ordered threshold rules over named features.

A RuleSet is a list of conjunctive rules evaluated first-match-wins, plus a
default outcome. A condition on a feature that is absent (None) never holds.

Serialized form, one rule per line::

    IF sn>0.61 THEN positive
    IF sn>0.53 AND ds>0.31 THEN positive
    DEFAULT negative
"""

import operator
import re
from dataclasses import dataclass, field
from typing import Optional

from . import distsim, pathrel
from .errors import DegenerateTraining, EmptyPhrase, ParseError, WordNotInNetwork

POSITIVE = "positive"
NEGATIVE = "negative"
LABELS = (POSITIVE, NEGATIVE)

COMPARATORS = {
    ">": operator.gt,
    "<": operator.lt,
    ">=": operator.ge,
    "<=": operator.le,
    "=": operator.eq,
}

_CONDITION_RE = re.compile(r"^\s*([A-Za-z_]\w*)\s*(>=|<=|>|<|=)\s*(\S+)\s*$")
_RULE_RE = re.compile(r"^\s*IF\s+(.+?)\s+THEN\s+(\S+)\s*$", re.IGNORECASE)
_DEFAULT_RE = re.compile(r"^\s*DEFAULT\s+(\S+)\s*$", re.IGNORECASE)


def _fmt(x):
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


@dataclass(frozen=True)
class Condition:
    feature: str
    op: str
    threshold: float

    def __post_init__(self):
        if self.op not in COMPARATORS:
            raise ValueError(f"unknown comparator {self.op!r}")

    def holds(self, features):
        value = features.get(self.feature)
        if value is None:
            return False
        return COMPARATORS[self.op](value, self.threshold)

    def __str__(self):
        return f"{self.feature}{self.op}{_fmt(self.threshold)}"


@dataclass(frozen=True)
class Rule:
    conditions: tuple
    outcome: str

    def __post_init__(self):
        if not self.conditions:
            raise ValueError("a rule needs at least one condition")

    def matches(self, features):
        return all(c.holds(features) for c in self.conditions)

    def __str__(self):
        return f"IF {' AND '.join(map(str, self.conditions))} THEN {self.outcome}"


def _as_mapping(fv):
    return fv.as_dict() if hasattr(fv, "as_dict") else fv


@dataclass
class RuleSet:
    rules: list = field(default_factory=list)
    default_outcome: str = NEGATIVE

    def apply(self, fv):
        features = _as_mapping(fv)
        for rule in self.rules:
            if rule.matches(features):
                return rule.outcome
        return self.default_outcome

    def dumps(self):
        lines = [str(r) for r in self.rules]
        lines.append(f"DEFAULT {self.default_outcome}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text):
        rules, default = [], None
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if default is not None:
                raise ParseError("nothing may follow the DEFAULT line", lineno)
            m = _DEFAULT_RE.match(line)
            if m:
                default = m.group(1)
                continue
            m = _RULE_RE.match(line)
            if not m:
                raise ParseError(f"cannot parse rule {line.strip()!r}", lineno)
            conditions = []
            for part in re.split(r"\s+AND\s+", m.group(1), flags=re.IGNORECASE):
                c = _CONDITION_RE.match(part)
                if not c:
                    raise ParseError(f"cannot parse condition {part!r}", lineno)
                try:
                    threshold = float(c.group(3))
                except ValueError:
                    raise ParseError(f"bad threshold {c.group(3)!r}", lineno) from None
                conditions.append(Condition(c.group(1).lower(), c.group(2), threshold))
            rules.append(Rule(tuple(conditions), m.group(2)))
        if default is None:
            raise ParseError("missing DEFAULT line")
        return cls(rules, default)

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())


def apply_rules(rs, fv):
    return rs.apply(fv)


@dataclass(frozen=True)
class FeatureVector:
    """Semantic-network relatedness (sn) and distributional cosine (ds).

    ``sn`` is None when a word was missing from the network.
    """

    sn: Optional[float] = None
    ds: Optional[float] = None

    def __post_init__(self):
        if self.sn is None and self.ds is None:
            raise ValueError("at least one of sn, ds must be present")

    def as_dict(self):
        return {"sn": self.sn, "ds": self.ds}


def assemble_features(net, counts, word, phrase, params=pathrel.DEFAULT_PARAMS,
                      k=distsim.DEFAULT_TOP_K):
    """Compute (sn, ds) for one word-phrase pair.

    A vocabulary miss in the network leaves ``sn`` absent; ``ds`` is always
    computed when counts are available.
    """
    if isinstance(phrase, str):
        phrase = phrase.split()
    if not phrase:
        raise EmptyPhrase("phrase must contain at least one word")
    sn = None
    if net is not None:
        try:
            sn = pathrel.word_phrase_relatedness(net, word, phrase, params).value
        except WordNotInNetwork:
            sn = None
    ds = distsim.word_phrase_similarity(counts, word, phrase, k) if counts is not None else None
    if sn is None and ds is None:
        ds = 0.0
    return FeatureVector(sn, ds)


def _single(feature, op, threshold, outcome=POSITIVE):
    return Rule((Condition(feature, op, threshold),), outcome)


def run1_rules():
    return RuleSet([_single("sn", ">", 0.61)], NEGATIVE)


def run2_fallback_rules():
    return RuleSet([_single("ds", ">", 0.40)], NEGATIVE)


def run2_classify(fv):
    """Network rule when sn is available, distributional rule otherwise."""
    features = _as_mapping(fv)
    if features.get("sn") is not None:
        return run1_rules().apply(features)
    return run2_fallback_rules().apply(features)


def run3_rules():
    return RuleSet(
        [
            _single("sn", ">", 0.61),
            _single("ds", ">", 0.40),
            Rule((Condition("sn", ">", 0.53), Condition("ds", ">", 0.31)), POSITIVE),
        ],
        NEGATIVE,
    )


# -- learning -----------------------------------------------------------------


def _candidates(rows, labels, feature):
    """Yield (precision, coverage, threshold, op, covered_pos) for midpoint cuts."""
    present = sorted(
        (r[feature], labels[i]) for i, r in enumerate(rows) if r.get(feature) is not None
    )
    if not present:
        return
    values = sorted({v for v, _ in present})
    # counts of instances/positives with value <= each distinct value
    total_pos = sum(1 for _, y in present if y)
    n = len(present)
    cum_n, cum_pos, j = [], [], 0
    seen_n = seen_pos = 0
    for v in values:
        while j < n and present[j][0] == v:
            seen_n += 1
            seen_pos += present[j][1]
            j += 1
        cum_n.append(seen_n)
        cum_pos.append(seen_pos)
    for i in range(len(values) - 1):
        t = (values[i] + values[i + 1]) / 2
        below_n, below_pos = cum_n[i], cum_pos[i]
        above_n, above_pos = n - below_n, total_pos - below_pos
        if above_pos:
            yield above_pos / above_n, above_n, t, ">", above_pos
        if below_pos:
            yield below_pos / below_n, below_n, t, "<", below_pos


def _best_condition(rows, labels, features):
    best, best_key = None, None
    for feature in features:
        for prec, cov, t, op, _ in _candidates(rows, labels, feature):
            key = (prec, cov, -t)
            if best_key is None or key > best_key:
                best, best_key = Condition(feature, op, t), key
    return best, best_key


def _grow_rule(rows, labels, features):
    covered = list(range(len(rows)))
    conditions = []
    precision = sum(labels) / len(labels)
    while True:
        sub_rows = [rows[i] for i in covered]
        sub_labels = [labels[i] for i in covered]
        cond, key = _best_condition(sub_rows, sub_labels, features)
        if cond is None:
            break
        if conditions and key[0] <= precision:
            break
        conditions.append(cond)
        covered = [i for i in covered if cond.holds(rows[i])]
        precision = key[0]
        if precision == 1.0:
            break
    return conditions, covered, precision


def learn_threshold_rules(train, max_rules=10, positive=POSITIVE, negative=NEGATIVE):
    """Greedy separate-and-conquer learner for the positive class.

    Each rule is grown one condition at a time, picking the cut (midpoint
    between consecutive observed values, ``>`` or ``<``) with the highest
    precision on the instances the rule still covers; ties go to higher
    coverage, then the lower threshold. Growth stops at precision 1 or when no
    cut improves precision. Positives covered by the finished rule are removed
    and the next rule is grown. A rule is kept only if it is at least as
    precise as predicting the default on what it covers.
    """
    rows, labels = [], []
    for fv, label in train:
        rows.append(_as_mapping(fv))
        labels.append(1 if label == positive else 0)
    if len(rows) < 2 or sum(labels) in (0, len(labels)):
        raise DegenerateTraining("training data must contain both classes")
    features = sorted({f for r in rows for f, v in r.items() if v is not None})

    rules = []
    while len(rules) < max_rules and any(labels):
        conditions, covered, precision = _grow_rule(rows, labels, features)
        if not conditions or precision < 0.5:
            break
        rules.append(Rule(tuple(conditions), positive))
        covered = set(covered)
        keep = [i for i in range(len(rows)) if not (labels[i] and i in covered)]
        rows = [rows[i] for i in keep]
        labels = [labels[i] for i in keep]
    return RuleSet(rules, negative)


# -- evaluation ---------------------------------------------------------------


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f_measure: float
    tp: int
    fp: int
    tn: int
    fn: int

    @classmethod
    def from_confusion(cls, tp, fp, tn, fn):
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        f = 2 * p * r / (p + r) if p + r else 0.0
        return cls(p, r, f, tp, fp, tn, fn)

    @property
    def accuracy(self):
        total = self.tp + self.fp + self.tn + self.fn
        return (self.tp + self.tn) / total if total else 0.0

    def as_dict(self):
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f_measure": self.f_measure,
            "tp": self.tp,
            "fp": self.fp,
            "tn": self.tn,
            "fn": self.fn,
        }


def confusion(predicted, gold, positive=POSITIVE):
    tp = fp = tn = fn = 0
    for p, g in zip(predicted, gold):
        if p == positive:
            if g == positive:
                tp += 1
            else:
                fp += 1
        elif g == positive:
            fn += 1
        else:
            tn += 1
    return Metrics.from_confusion(tp, fp, tn, fn)


def evaluate(rs, data, positive=POSITIVE):
    """Metrics of ``rs`` (a RuleSet or a classify function) on (features, label) pairs."""
    classify = rs.apply if isinstance(rs, RuleSet) else rs
    predicted, gold = [], []
    for fv, label in data:
        predicted.append(classify(fv))
        gold.append(label)
    return confusion(predicted, gold, positive)


# -- files --------------------------------------------------------------------


@dataclass(frozen=True)
class Instance:
    word: str
    phrase: tuple
    label: Optional[str] = None


def read_dataset(path):
    """Read ``word<TAB>phrase<TAB>label`` lines; the label column is optional."""
    instances = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.rstrip("\r\n").split("\t")
            if len(fields) not in (2, 3):
                raise ParseError("expected word<TAB>phrase[<TAB>label]", lineno)
            word, phrase = fields[0].strip(), tuple(fields[1].split())
            if not word or not phrase:
                raise ParseError("empty word or phrase", lineno)
            label = fields[2].strip().lower() if len(fields) == 3 else None
            if label is not None and label not in LABELS:
                raise ParseError(f"label must be positive or negative, got {label!r}", lineno)
            instances.append(Instance(word, phrase, label))
    return instances


def read_feature_table(path, label_columns=("gold", "label")):
    """Read a headed TSV of feature columns plus a label column.

    Numeric columns become features (empty cells are absent); the first of
    ``label_columns`` present in the header supplies the labels.
    """
    with open(path, encoding="utf-8") as fh:
        lines = [l.rstrip("\r\n") for l in fh if l.strip() and not l.startswith("#")]
    if not lines:
        return []
    header = [h.strip().lower() for h in lines[0].split("\t")]
    label_col = next((c for c in label_columns if c in header), None)
    if label_col is None:
        raise ParseError("no label column in header", 1)
    li = header.index(label_col)
    feature_cols = [i for i, h in enumerate(header) if h in {"sn", "ds", "fc", "srb", "sra"}]
    if not feature_cols:
        raise ParseError("no feature columns in header", 1)
    out = []
    for lineno, line in enumerate(lines[1:], 2):
        fields = line.split("\t")
        if len(fields) != len(header):
            raise ParseError(f"expected {len(header)} fields", lineno)
        try:
            row = {header[i]: (float(fields[i]) if fields[i].strip() else None) for i in feature_cols}
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        out.append((row, fields[li].strip().lower()))
    return out
