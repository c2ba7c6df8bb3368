"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 word missing from the network
(single-pair ``relate`` only), 4 missing resource, 5 degenerate training data.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_EVEN, Decimal

from . import contextcomp, distsim, netstore, pathrel, ruleset
from .errors import (
    DegenerateTraining,
    EmptyDataset,
    ParseError,
    UnknownRelation,
    WordNotInNetwork,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VOCAB = 3
EXIT_RESOURCE = 4
EXIT_DEGENERATE = 5

MODES = ("run1", "run2", "run3", "learned")

logger = logging.getLogger("phrasalrel")


class MissingResource(Exception):
    pass


@dataclass
class LoadReport:
    node_count: int = 0
    edge_count: int = 0
    token_count: int = 0
    warnings: list = field(default_factory=list)


def fmt4(x):
    """Four decimals, round-half-even; empty string for None."""
    if x is None:
        return ""
    return str(Decimal(repr(float(x))).quantize(Decimal("0.0001"), rounding=ROUND_HALF_EVEN))


def _num(x):
    return None if x is None else float(fmt4(x))


# -- resource loading ---------------------------------------------------------


def _open_check(path, what):
    if path is None:
        raise MissingResource(f"{what} is required for this command")
    try:
        with open(path, encoding="utf-8"):
            pass
    except OSError as exc:
        raise MissingResource(f"cannot read {what} {path!r}: {exc.strerror}") from None


def _weights(args):
    return netstore.load_weights(args.weights) if args.weights else None


def _params(args):
    weights = _weights(args)
    params = pathrel.DEFAULT_PARAMS
    if weights:
        table = {c: c.weight for c in netstore.RelationCategory}
        table.update(weights)
        params = pathrel.RelatednessParams.from_weights(table)
    if args.params:
        with open(args.params, encoding="utf-8") as fh:
            overrides = json.load(fh)
        unknown = set(overrides) - {"max_path_cost", "min_path_cost"}
        if unknown:
            raise ParseError(f"unknown params {sorted(unknown)}")
        params = replace(params, **{k: int(v) for k, v in overrides.items()})
    return params


def _load_net(args, required=True):
    if args.net is None and not required:
        return None
    _open_check(args.net, "network file")
    extra = netstore.load_relation_overrides(args.relations) if args.relations else None
    return netstore.load_network(args.net, weights=_weights(args), extra_relations=extra)


def _load_counts(args, required=True):
    if args.counts:
        _open_check(args.counts, "count file")
        return distsim.CollocationCounts.load(args.counts)
    if getattr(args, "corpus", None):
        _open_check(args.corpus, "corpus")
        return distsim.count_collocations(distsim.read_corpus(args.corpus), args.window)
    if required:
        raise MissingResource("--counts or --corpus is required for this command")
    return None


def _emit(args, rows, columns, trailer=None):
    """Print rows as TSV (header + lines + '#' trailer) or as one JSON object."""
    out = sys.stdout
    if args.format == "json":
        payload = {"rows": rows}
        if trailer is not None:
            payload["summary"] = trailer
        out.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")
        return
    out.write("\t".join(columns) + "\n")
    for row in rows:
        out.write("\t".join("" if row[c] is None else _cell(row[c]) for c in columns) + "\n")
    if trailer:
        for key, value in trailer.items():
            out.write(f"# {key}\t{_cell(value)}\n")


def _cell(value):
    if isinstance(value, float):
        return fmt4(value)
    return str(value)


# -- commands -----------------------------------------------------------------


def cmd_build_net(args):
    _open_check(args.edge_file, "edge file")
    extra = netstore.load_relation_overrides(args.relations) if args.relations else None
    net = netstore.load_network(args.edge_file, weights=_weights(args), extra_relations=extra)
    report = LoadReport(net.node_count, net.edge_count)
    if net.node_count == 0:
        report.warnings.append("empty network")
    if args.output:
        net.save(args.output)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.format == "json":
        print(json.dumps({"node_count": report.node_count, "edge_count": report.edge_count}))
    else:
        print(f"node_count\t{report.node_count}\nedge_count\t{report.edge_count}")
    return EXIT_OK


def cmd_relate(args):
    net = _load_net(args)
    params = _params(args)
    phrase = args.phrase.split()
    try:
        score = pathrel.word_phrase_relatedness(net, args.word, phrase, params)
    except WordNotInNetwork as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VOCAB
    if args.explain:
        for target, cost in zip(phrase, score.per_word_costs):
            result = pathrel.shortest_path_cost(net, args.word, target, params)
            note = " (capped)" if result.capped else ""
            print(f"# {args.word.lower()} -> {target.lower()}: cost {cost}{note}")
            for line in pathrel.explain(net, result):
                print(line)
        print(f"# sum {sum(score.per_word_costs)}")
    print(fmt4(score.value))
    return EXIT_OK


def cmd_dist_build(args):
    _open_check(args.corpus, "corpus")
    counts = distsim.count_collocations(distsim.read_corpus(args.corpus), args.window)
    counts.save(args.output)
    if counts.token_count == 0:
        print("warning: empty corpus", file=sys.stderr)
    print(f"token_count\t{counts.token_count}\npair_total\t{counts.grand_total}")
    return EXIT_OK


def cmd_dist_sim(args):
    counts = _load_counts(args)
    phrase = args.phrase.split()
    if args.dump:
        vectors = [distsim.pmi_vector(counts, args.word.lower(), args.topk)]
        vectors.append(distsim.compose([distsim.pmi_vector(counts, w.lower(), args.topk) for w in phrase]))
        for v in vectors:
            for line in v.dump_lines():
                print(line)
    print(fmt4(distsim.word_phrase_similarity(counts, args.word, phrase, args.topk)))
    return EXIT_OK


def _classifier(args):
    if args.mode == "run1":
        return ruleset.run1_rules().apply
    if args.mode == "run2":
        return ruleset.run2_classify
    if args.mode == "run3":
        return ruleset.run3_rules().apply
    _open_check(args.rules, "rules file")
    return ruleset.RuleSet.load(args.rules).apply


def cmd_classify(args):
    _open_check(args.dataset, "dataset")
    data = ruleset.read_dataset(args.dataset)
    classify = _classifier(args)
    net = _load_net(args)
    counts = _load_counts(args, required=args.mode != "run1")
    params = _params(args)
    rows, predicted, gold = [], [], []
    for inst in data:
        fv = ruleset.assemble_features(net, counts, inst.word, inst.phrase, params, args.topk)
        label = classify(fv)
        rows.append({
            "word": inst.word,
            "phrase": " ".join(inst.phrase),
            "sn": _num(fv.sn),
            "ds": _num(fv.ds),
            "prediction": label,
            "gold": inst.label,
        })
        predicted.append(label)
        gold.append(inst.label)
    trailer = None
    if data and all(g is not None for g in gold):
        m = ruleset.confusion(predicted, gold)
        trailer = {k: (_num(v) if isinstance(v, float) else v) for k, v in m.as_dict().items()}
    _emit(args, rows, ["word", "phrase", "sn", "ds", "prediction", "gold"], trailer)
    return EXIT_OK


def cmd_train(args):
    _open_check(args.features, "feature table")
    data = ruleset.read_feature_table(args.features)
    rs = ruleset.learn_threshold_rules(data, max_rules=args.max_rules)
    rs.save(args.output)
    m = ruleset.evaluate(rs, data)
    sys.stdout.write(rs.dumps())
    print(f"# training_accuracy\t{fmt4(m.accuracy)}")
    return EXIT_OK


def cmd_eval(args):
    _open_check(args.features, "feature table")
    data = ruleset.read_feature_table(args.features)
    if not data:
        raise EmptyDataset("feature table is empty")
    m = ruleset.evaluate(_classifier(args), data)
    summary = {k: (_num(v) if isinstance(v, float) else v) for k, v in m.as_dict().items()}
    summary["accuracy"] = _num(m.accuracy)
    if args.format == "json":
        print(json.dumps(summary, sort_keys=True))
    else:
        for k, v in summary.items():
            print(f"{k}\t{_cell(v)}")
    return EXIT_OK


def cmd_context(args):
    _open_check(args.dataset, "dataset")
    instances = contextcomp.read_context_dataset(args.dataset)
    if not instances:
        raise EmptyDataset("context dataset is empty")
    net = _load_net(args, required=False)
    if args.collocations:
        _open_check(args.collocations, "collocation file")
        csets = contextcomp.read_collocation_sets(args.collocations)
    elif args.corpus:
        _open_check(args.corpus, "corpus")
        sentences = distsim.read_corpus(args.corpus)
        phrases = sorted({" ".join(i.phrase).lower() for i in instances})
        csets = {p: contextcomp.build_collocation_set(sentences, p, args.topk) for p in phrases}
    else:
        csets = {}
    pipeline = contextcomp.ContextPipeline(net=net, collocations=csets, params=_params(args))
    if args.stopwords:
        pipeline.stopwords = contextcomp.load_stopwords(args.stopwords)
    if args.rules:
        _open_check(args.rules, "rules file")
        pipeline.rules = ruleset.RuleSet.load(args.rules)
    rows = []
    for inst in instances:
        feats = pipeline.features(inst)
        rows.append({
            "phrase": " ".join(inst.phrase),
            "start": inst.span[0],
            "end": inst.span[1],
            "fc": feats.fc,
            "srb": _num(feats.srb),
            "sra": _num(feats.sra),
            "prediction": pipeline.rules.apply(feats),
            "gold": inst.label,
        })
    trailer = None
    if any(i.label is not None for i in instances):
        trailer = {"accuracy": _num(contextcomp.evaluate_accuracy(instances, pipeline))}
    _emit(args, rows, ["phrase", "start", "end", "fc", "srb", "sra", "prediction", "gold"], trailer)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", help="JSON file overriding max_path_cost / min_path_cost")
    common.add_argument("--weights", help="TSV of Category<TAB>weight overrides")
    common.add_argument("--relations", help="TSV of relation<TAB>Category additions")
    common.add_argument("--window", type=int, default=distsim.DEFAULT_WINDOW)
    common.add_argument("--topk", type=int, default=distsim.DEFAULT_TOP_K)
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="phrasalrel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-net", parents=[common], help="validate and save an edge file")
    p.add_argument("edge_file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build_net)

    p = sub.add_parser("relate", parents=[common], help="network relatedness of a word and a phrase")
    p.add_argument("--net", required=False)
    p.add_argument("word")
    p.add_argument("phrase")
    p.add_argument("--explain", action="store_true")
    p.set_defaults(func=cmd_relate)

    p = sub.add_parser("dist-build", parents=[common], help="count collocations in a corpus")
    p.add_argument("corpus")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_dist_build)

    p = sub.add_parser("dist-sim", parents=[common], help="distributional word-phrase cosine")
    p.add_argument("--counts")
    p.add_argument("--corpus")
    p.add_argument("word")
    p.add_argument("phrase")
    p.add_argument("--dump", action="store_true", help="print the PMI vectors first")
    p.set_defaults(func=cmd_dist_sim)

    p = sub.add_parser("classify", parents=[common], help="label word-phrase pairs")
    p.add_argument("dataset")
    p.add_argument("--mode", choices=MODES, default="run3")
    p.add_argument("--net")
    p.add_argument("--counts")
    p.add_argument("--corpus")
    p.add_argument("--rules")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("train", parents=[common], help="learn threshold rules from a feature table")
    p.add_argument("features")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--max-rules", type=int, default=10)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", parents=[common], help="precision/recall/F of rules on a feature table")
    p.add_argument("features")
    p.add_argument("--mode", choices=MODES, default="run3")
    p.add_argument("--rules")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("context", parents=[common], help="literal/figurative labels in context")
    p.add_argument("dataset")
    p.add_argument("--net")
    p.add_argument("--corpus")
    p.add_argument("--collocations")
    p.add_argument("--rules")
    p.add_argument("--stopwords")
    p.set_defaults(func=cmd_context)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except MissingResource as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, UnknownRelation, EmptyDataset, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegenerateTraining as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
