"""Capped shortest paths and word-phrase relatedness over a SemanticNetwork."""

import heapq
from dataclasses import dataclass, field

from .errors import EmptyPhrase, WordNotInNetwork
from .netstore import NodeKind, RelationCategory


@dataclass(frozen=True)
class RelatednessParams:
    """Scoring constants.

    ``max_path_cost`` is the cost beyond which two words count as unrelated
    (two hops over the heaviest category); ``min_path_cost`` is the cost of
    going from a word to itself through one of its synsets.
    """

    max_path_cost: int = 24
    min_path_cost: int = 8
    max_edge_weight: int = 12
    sense_weight: int = 4

    def __post_init__(self):
        if not self.max_path_cost > self.min_path_cost > 0:
            raise ValueError("need max_path_cost > min_path_cost > 0")

    @classmethod
    def from_weights(cls, weights):
        """Derive the constants from a category -> weight table."""
        top = max(weights.values())
        sense = weights[RelationCategory.SENSE]
        return cls(2 * top, 2 * sense, top, sense)


DEFAULT_PARAMS = RelatednessParams()


@dataclass(frozen=True)
class PathResult:
    cost: int
    hops: tuple = ()  # (node_id, relation used to arrive); first relation is None
    capped: bool = False


@dataclass(frozen=True)
class RelatednessScore:
    value: float
    per_word_costs: tuple = field(default_factory=tuple)


def _word_id(net, label):
    node_id = net.find(NodeKind.WORD, label)
    if node_id is None:
        raise WordNotInNetwork(label)
    return node_id


def _dijkstra(net, source, target, bound):
    """Least-cost path from source to target, ignoring paths costlier than bound.

    Heap keys are (cost, hop count, node labels along the path) so equal-cost
    paths resolve to the fewest hops, then the lexicographically smallest
    label sequence. Extending two paths by the same edge preserves their key
    order, which keeps the settle-once argument of Dijkstra valid.
    """
    labels = [n.label for n in net.nodes]
    start = (0, 0, (labels[source],), source, ((source, None),))
    heap = [start]
    settled = set()
    while heap:
        cost, nhops, path_labels, node, hops = heapq.heappop(heap)
        if node in settled:
            continue
        if node == target:
            return cost, hops
        settled.add(node)
        for nxt, weight, relation in net.out_adjacency[node]:
            if nxt in settled:
                continue
            new_cost = cost + weight
            if new_cost > bound:
                continue
            heapq.heappush(
                heap,
                (new_cost, nhops + 1, path_labels + (labels[nxt],), nxt, hops + ((nxt, relation),)),
            )
    return None


def shortest_path_cost(net, source_word, target_word, params=DEFAULT_PARAMS):
    """Capped least-cost path between two words.

    The same word costs ``min_path_cost``. When nothing reaches the target
    within ``max_path_cost`` the result is ``max_path_cost`` with
    ``capped=True``.
    """
    src = _word_id(net, source_word)
    dst = _word_id(net, target_word)
    if src == dst:
        return PathResult(params.min_path_cost)
    found = _dijkstra(net, src, dst, params.max_path_cost)
    if found is None:
        return PathResult(params.max_path_cost, capped=True)
    cost, hops = found
    return PathResult(cost, hops)


def _as_tokens(phrase):
    if isinstance(phrase, str):
        phrase = phrase.split()
    return list(phrase)


def relatedness_value(per_word_costs, params=DEFAULT_PARAMS):
    n = len(per_word_costs)
    top = params.max_path_cost * n
    value = (top - (sum(per_word_costs) - params.min_path_cost * n)) / top
    return min(1.0, max(0.0, value))


def word_phrase_relatedness(net, word, phrase, params=DEFAULT_PARAMS):
    """Relatedness of ``word`` to a multiword ``phrase``, in [0, 1].

    Each phrase word contributes its capped path cost from ``word``; the sum is
    normalized against ``max_path_cost`` per phrase word. Costs below
    ``min_path_cost`` (possible only through cheap word-to-word links) are
    raised to it.
    """
    tokens = _as_tokens(phrase)
    if not tokens:
        raise EmptyPhrase("phrase must contain at least one word")
    _word_id(net, word)
    costs = tuple(
        max(params.min_path_cost, shortest_path_cost(net, word, t, params).cost)
        for t in tokens
    )
    return RelatednessScore(relatedness_value(costs, params), costs)


def explain(net, result):
    """Render a path as ``label --relation(weight)--> label`` lines."""
    lines = []
    hops = result.hops
    for (prev, _), (node, relation) in zip(hops, hops[1:]):
        weight = next(w for d, w, r in net.out_adjacency[prev] if d == node and r == relation)
        lines.append(f"{net.nodes[prev].label} --{relation}({weight})--> {net.nodes[node].label}")
    return lines
