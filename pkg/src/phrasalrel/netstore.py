"""Weighted, directed network of words and synsets.

Nodes are words (``W``) or synsets (``S``). Every edge carries one of seven
relation categories whose integer weight is the cost of traversing it; cheap
categories are the ones that preserve the most meaning.

The edge file is tab separated, one edge per line::

    src_kind  src_label  relation  dst_kind  dst_label

``#`` starts a comment line. Sense links (``lemma-synset``) are stored in both
directions so that paths can enter and leave synsets through them.
"""

import enum
import logging
from collections import namedtuple
from pathlib import Path

from .errors import (
    EndpointKindMismatch,
    InvalidLabel,
    InvalidNode,
    ParseError,
    SelfLoop,
    UnknownRelation,
)

logger = logging.getLogger(__name__)

SENSE_RELATION = "lemma-synset"


class NodeKind(enum.Enum):
    WORD = "W"
    SYNSET = "S"


class RelationCategory(enum.Enum):
    """Relation categories; the value is the default traversal weight."""

    SIMILAR = 1
    HYPERNYM = 2
    SENSE = 4
    PREDICATE = 6
    PART = 8
    INSTANCE = 10
    OTHER = 12

    @property
    def weight(self):
        return self.value

    @property
    def title(self):
        return self.name.capitalize()

    @classmethod
    def parse(cls, text):
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown relation category {text!r}") from None


_C = RelationCategory

# relation name -> (category, allowed (src, dst) kind pairs or None for any)
_SS = ((NodeKind.SYNSET, NodeKind.SYNSET),)
_ANY = None

RELATIONS = {
    "similar_to": (_C.SIMILAR, _SS),
    "pertainym": (_C.SIMILAR, _SS),
    "participle_of_verb": (_C.SIMILAR, _SS),
    "entailment": (_C.SIMILAR, _SS),
    "cause": (_C.SIMILAR, _SS),
    "antonym": (_C.SIMILAR, _SS),
    "verb_group": (_C.SIMILAR, _SS),
    "hypernym": (_C.HYPERNYM, _SS),
    "instance_hypernym": (_C.HYPERNYM, _SS),
    # lemma-level in WordNet; accepted between any node kinds
    "derivationally_related": (_C.HYPERNYM, _ANY),
    SENSE_RELATION: (
        _C.SENSE,
        ((NodeKind.WORD, NodeKind.SYNSET), (NodeKind.SYNSET, NodeKind.WORD)),
    ),
    "predicate": (_C.PREDICATE, ((NodeKind.SYNSET, NodeKind.WORD),)),
    "holonym_instance": (_C.PART, _SS),
    "holonym_member": (_C.PART, _SS),
    "holonym_substance": (_C.PART, _SS),
    "meronym_instance": (_C.PART, _SS),
    "meronym_member": (_C.PART, _SS),
    "meronym_substance": (_C.PART, _SS),
    "inverse_predicate": (_C.PART, ((NodeKind.WORD, NodeKind.SYNSET),)),
    "hyponym": (_C.INSTANCE, _SS),
    "instance_hyponym": (_C.INSTANCE, _SS),
    "attribute": (_C.OTHER, _SS),
    "also_see": (_C.OTHER, _SS),
    "domain_of_synset_topic": (_C.OTHER, _SS),
    "domain_of_synset_region": (_C.OTHER, _SS),
    "domain_of_synset_usage": (_C.OTHER, _SS),
    "member_of_this_domain_topic": (_C.OTHER, _SS),
    "member_of_this_domain_region": (_C.OTHER, _SS),
    "member_of_this_domain_usage": (_C.OTHER, _SS),
}

Node = namedtuple("Node", "kind label")
Edge = namedtuple("Edge", "src dst relation_label")


def normalize_label(label):
    return label.strip().lower()


def normalize_relation(name):
    return "_".join(name.strip().lower().split())


def _relation_key(name):
    # predicates may carry the predicate text as a suffix: predicate:propel_by
    return normalize_relation(name).split(":", 1)[0]


def relation_category(relation_name, extra_relations=None):
    """Map a relation name to its category.

    ``extra_relations`` maps additional (normalized) names to categories and
    takes precedence over the built-in table.
    """
    key = _relation_key(relation_name)
    if extra_relations and key in extra_relations:
        return extra_relations[key]
    try:
        return RELATIONS[key][0]
    except KeyError:
        raise UnknownRelation(relation_name) from None


class SemanticNetwork:
    """Directed multigraph with category-weighted edges.

    Node ids are dense integers in insertion order. Once built, the network is
    only read, so queries may run concurrently.
    """

    def __init__(self, weights=None, extra_relations=None):
        self.weights = {c: c.weight for c in RelationCategory}
        if weights:
            for cat, w in weights.items():
                if not isinstance(w, int) or w <= 0:
                    raise ValueError(f"weight for {cat.title} must be a positive integer")
                self.weights[cat] = w
        self.extra_relations = dict(extra_relations or {})
        self.nodes = []
        self.out_adjacency = []
        self.word_index = {}
        self.synset_index = {}
        self._edges = []  # canonical edges, sense mirrors omitted
        self._sense_pairs = set()
        self._edge_count = 0

    def __len__(self):
        return len(self.nodes)

    @property
    def node_count(self):
        return len(self.nodes)

    @property
    def edge_count(self):
        """Number of directed edges, sense mirrors included."""
        return self._edge_count

    def _index(self, kind):
        return self.word_index if kind is NodeKind.WORD else self.synset_index

    def add_node(self, kind, label):
        kind = NodeKind(kind)
        label = normalize_label(label)
        if not label:
            raise InvalidLabel("node label must be non-empty")
        index = self._index(kind)
        node_id = index.get(label)
        if node_id is None:
            node_id = len(self.nodes)
            self.nodes.append(Node(kind, label))
            self.out_adjacency.append([])
            index[label] = node_id
        return node_id

    def node(self, node_id):
        self._check(node_id)
        return self.nodes[node_id]

    def _check(self, node_id):
        if not isinstance(node_id, int) or not 0 <= node_id < len(self.nodes):
            raise InvalidNode(f"no node with id {node_id!r}")

    def find(self, kind, label):
        """Return the id of ``(kind, label)`` or None."""
        return self._index(NodeKind(kind)).get(normalize_label(label))

    def category_of(self, relation_name):
        return relation_category(relation_name, self.extra_relations)

    def add_edge(self, src, dst, relation_name):
        self._check(src)
        self._check(dst)
        label = normalize_relation(relation_name)
        category = self.category_of(label)
        if src == dst:
            raise SelfLoop(f"self-loop on {self.nodes[src].label!r} via {label!r}")
        key = _relation_key(label)
        allowed = None if key in self.extra_relations else RELATIONS[key][1]
        kinds = (self.nodes[src].kind, self.nodes[dst].kind)
        if allowed is not None and kinds not in allowed:
            raise EndpointKindMismatch(
                f"{label!r} cannot link {kinds[0].value} to {kinds[1].value}"
            )
        weight = self.weights[category]
        if category is RelationCategory.SENSE and key == SENSE_RELATION:
            pair = frozenset((src, dst))
            if pair in self._sense_pairs:
                return
            self._sense_pairs.add(pair)
            if kinds[0] is NodeKind.SYNSET:
                src, dst = dst, src
            self._edges.append(Edge(src, dst, label))
            self.out_adjacency[src].append((dst, weight, label))
            self.out_adjacency[dst].append((src, weight, label))
            self._edge_count += 2
            return
        self._edges.append(Edge(src, dst, label))
        self.out_adjacency[src].append((dst, weight, label))
        self._edge_count += 1

    def neighbors(self, node_id):
        """Out-edges of ``node_id`` as ``(neighbor, weight, relation_label)``."""
        self._check(node_id)
        return tuple(self.out_adjacency[node_id])

    def edges(self):
        """Canonical edges as written to an edge file (one per sense pair)."""
        return list(self._edges)

    def directed_edges(self):
        for src, adj in enumerate(self.out_adjacency):
            for dst, weight, label in adj:
                yield src, dst, weight, label

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("# src_kind\tsrc_label\trelation\tdst_kind\tdst_label\n")
            for e in self._edges:
                s, d = self.nodes[e.src], self.nodes[e.dst]
                fh.write(f"{s.kind.value}\t{s.label}\t{e.relation_label}\t{d.kind.value}\t{d.label}\n")


def parse_edge_line(line, lineno):
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) != 5:
        raise ParseError(f"expected 5 tab-separated fields, got {len(fields)}", lineno)
    src_kind, src_label, relation, dst_kind, dst_label = (f.strip() for f in fields)
    try:
        src_kind, dst_kind = NodeKind(src_kind.upper()), NodeKind(dst_kind.upper())
    except ValueError:
        raise ParseError("node kind must be W or S", lineno) from None
    if not src_label or not dst_label or not relation:
        raise ParseError("empty field", lineno)
    return src_kind, src_label, relation, dst_kind, dst_label


def load_network(path, weights=None, extra_relations=None):
    """Build a network from an edge file.

    Raises ParseError or UnknownRelation carrying the 1-based line number.
    """
    net = SemanticNetwork(weights=weights, extra_relations=extra_relations)
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            src_kind, src_label, relation, dst_kind, dst_label = parse_edge_line(line, lineno)
            try:
                net.category_of(relation)
            except UnknownRelation as exc:
                raise UnknownRelation(exc.name, lineno) from None
            src = net.add_node(src_kind, src_label)
            dst = net.add_node(dst_kind, dst_label)
            try:
                net.add_edge(src, dst, relation)
            except (SelfLoop, EndpointKindMismatch) as exc:
                raise ParseError(str(exc), lineno) from None
    logger.info("loaded %s: %d nodes, %d edges", path, net.node_count, net.edge_count)
    return net


def _read_pairs(path):
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError("expected 2 tab-separated fields", lineno)
        yield lineno, fields[0].strip(), fields[1].strip()


def load_weights(path):
    """Read ``Category<TAB>weight`` overrides."""
    weights = {}
    for lineno, name, value in _read_pairs(path):
        try:
            cat = RelationCategory.parse(name)
            w = int(value)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if w <= 0:
            raise ParseError("weights must be positive integers", lineno)
        weights[cat] = w
    return weights


def load_relation_overrides(path):
    """Read ``relation_name<TAB>Category`` lines extending the relation table."""
    extra = {}
    for lineno, name, value in _read_pairs(path):
        try:
            extra[_relation_key(name)] = RelationCategory.parse(value)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    return extra
