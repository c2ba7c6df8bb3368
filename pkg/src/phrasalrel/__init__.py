"""Word-phrase semantic relatedness from a weighted lexical network and PMI
collocation vectors, with threshold-rule classifiers on top."""

from .netstore import SemanticNetwork, RelationCategory, NodeKind, load_network, relation_category
from .pathrel import RelatednessParams, shortest_path_cost, word_phrase_relatedness
from .distsim import CollocationCounts, PmiVector, count_collocations, pmi_vector, compose, cosine, word_phrase_similarity
from .ruleset import RuleSet, Rule, Condition, FeatureVector, Metrics, learn_threshold_rules, evaluate

__version__ = "0.1.0"
