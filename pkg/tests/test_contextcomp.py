import itertools

import pytest
from hypothesis import given, strategies as st

from phrasalrel.contextcomp import (
    FIGURATIVE,
    LITERAL,
    CollocationSet,
    ContextInstance,
    ContextPipeline,
    build_collocation_set,
    content_word,
    context_features,
    count_phrase_contexts,
    default_stopwords,
    evaluate_accuracy,
    fc_feature,
    context_rules,
    read_collocation_sets,
    read_context_dataset,
    write_collocation_sets,
)
from phrasalrel.distsim import read_corpus
from phrasalrel.errors import EmptyDataset, ParseError
from phrasalrel.pathrel import word_phrase_relatedness
from phrasalrel.ruleset import RuleSet

STOP = default_stopwords()


def sent(text):
    return text.split()


class TestInstance:
    def test_locate(self):
        inst = ContextInstance.locate("big picture", "Click here for a bigger picture of the big picture")
        assert inst.span == (8, 10)

    def test_span_must_match(self):
        with pytest.raises(ValueError):
            ContextInstance(("old", "school"), tuple(sent("the old school")), (0, 2))

    def test_span_bounds(self):
        with pytest.raises(ValueError):
            ContextInstance(("x",), ("x",), (1, 1))

    def test_case_insensitive(self):
        ContextInstance(("old", "school"), tuple(sent("The Old School")), (1, 3))


class TestCollocationSet:
    def test_look_at_the(self):
        corpus = [sent("look at the big picture")] * 3
        cset = build_collocation_set(corpus, "big picture")
        assert "look at the" in cset.before
        assert set(cset.before) == {"the", "at the", "look at the"}
        assert cset.after == {}

    def test_unattested(self):
        cset = build_collocation_set([sent("nothing to see here")], "big picture")
        assert (cset.before, cset.after) == ({}, {})

    def test_k1_tie(self):
        corpus = [sent("look at the big picture")]
        cset = build_collocation_set(corpus, "big picture", k=1)
        assert list(cset.before) == ["at the"]

    def test_counts_order(self, fixtures):
        cset = build_collocation_set(read_corpus(fixtures / "context_corpus.txt"), "big picture")
        assert list(cset.before)[:2] == ["the", "at the"]
        assert cset.before["the"] == 3
        assert set(cset.after) == {"first", "now"}

    def test_expressions_are_short(self, fixtures):
        cset = build_collocation_set(read_corpus(fixtures / "context_corpus.txt"), "old school")
        assert all(1 <= len(e.split()) <= 3 for e in itertools.chain(cset.before, cset.after))

    def test_shard_merge(self, fixtures):
        corpus = read_corpus(fixtures / "context_corpus.txt")
        b1, a1 = count_phrase_contexts(corpus[:2], "big picture")
        b2, a2 = count_phrase_contexts(corpus[2:], "big picture")
        b, a = count_phrase_contexts(corpus, "big picture")
        assert (b1 + b2, a1 + a2) == (b, a)

    def test_file_roundtrip(self, fixtures, tmp_path):
        corpus = read_corpus(fixtures / "context_corpus.txt")
        sets = [build_collocation_set(corpus, p) for p in ("big picture", "old school")]
        path = tmp_path / "c.tsv"
        write_collocation_sets(path, sets)
        loaded = read_collocation_sets(path)
        assert loaded == {s.phrase: s for s in sets}

    def test_file_errors(self, tmp_path):
        path = tmp_path / "c.tsv"
        path.write_text("before\tthe\t3\n")
        with pytest.raises(ParseError):
            read_collocation_sets(path)


class TestFc:
    CSET = CollocationSet("big picture", {"look at the": 3}, {"now": 1})

    def test_before_match(self):
        inst = ContextInstance.locate("big picture", "you should look at the big picture")
        assert fc_feature(inst, self.CSET) == 1

    def test_after_match(self):
        inst = ContextInstance.locate("big picture", "a big picture now")
        assert fc_feature(inst, self.CSET) == 1

    def test_no_overlap(self):
        inst = ContextInstance.locate("big picture", "click here for a big picture")
        assert fc_feature(inst, self.CSET) == 0

    def test_partial_expression_does_not_match(self):
        inst = ContextInstance.locate("big picture", "at the big picture")
        assert fc_feature(inst, self.CSET) == 0

    def test_span_at_start(self):
        inst = ContextInstance.locate("big picture", "big picture frames")
        assert fc_feature(inst, CollocationSet("big picture", {"look at the": 3})) == 0

    @given(st.lists(st.sampled_from(["the", "at the", "see the", "now", "first", "frame", "a"]), max_size=4),
           st.lists(st.sampled_from(["the", "at the", "see the", "now", "first", "frame", "a"]), max_size=4),
           st.sampled_from(["look at the big picture now", "a big picture frame", "see the big picture"]))
    def test_monotone(self, small, extra, text):
        inst = ContextInstance.locate("big picture", text)
        base = CollocationSet("big picture", dict.fromkeys(small, 1), dict.fromkeys(small, 1))
        bigger = CollocationSet("big picture", dict.fromkeys(small + extra, 1), dict.fromkeys(small + extra, 1))
        assert fc_feature(inst, bigger) >= fc_feature(inst, base)


class TestContentWord:
    def test_hall(self):
        s = sent("the hall of the old school")
        assert content_word(s, (4, 6), "before", STOP) == "hall"

    def test_one(self):
        s = sent("he is one of the old school")
        assert content_word(s, (5, 7), "before", STOP) == "one"

    def test_end_of_sentence(self):
        s = sent("he is one of the old school")
        assert content_word(s, (5, 7), "after", STOP) is None

    def test_skips_punctuation_and_numbers(self):
        s = sent("walls , 42 the old school")
        assert content_word(s, (4, 6), "before", STOP) == "walls"

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            content_word(["a"], (0, 1), "sideways", STOP)

    @given(st.lists(st.sampled_from(["the", "of", "hall", "old", "school", "2", ",", "one"]), min_size=1, max_size=10),
           st.data())
    def test_never_inside_span_or_stopword(self, tokens, data):
        start = data.draw(st.integers(min_value=0, max_value=len(tokens) - 1))
        end = data.draw(st.integers(min_value=start + 1, max_value=len(tokens)))
        for direction in ("before", "after"):
            w = content_word(tokens, (start, end), direction, STOP)
            if w is not None:
                assert w not in STOP
                outside = tokens[:start] if direction == "before" else tokens[end:]
                assert w in outside


class TestFeatures:
    def test_sentinels(self, context_net):
        inst = ContextInstance.locate("old school", "the old school")
        f = context_features(inst, CollocationSet("old school", {"the": 1}), context_net, stopwords=STOP)
        assert (f.fc, f.srb, f.sra) == (1, 1.0, 1.0)

    def test_srb_matches_pathrel(self, context_net):
        inst = ContextInstance.locate("old school", "the hall of an old school")
        f = context_features(inst, CollocationSet("old school"), context_net, stopwords=STOP)
        assert f.srb == word_phrase_relatedness(context_net, "hall", ["old", "school"]).value
        assert f.srb == pytest.approx(0.625)

    def test_unknown_context_word_is_sentinel(self, context_net):
        inst = ContextInstance.locate("old school", "he is one of the old school")
        f = context_features(inst, CollocationSet("old school"), context_net, stopwords=STOP)
        assert f.srb == 1.0

    def test_fc1_still_computes_relatedness(self, context_net):
        inst = ContextInstance.locate("old school", "the hall of the old school")
        f = context_features(inst, CollocationSet("old school", {"the": 1}), context_net, stopwords=STOP)
        assert f.fc == 1
        assert f.srb == pytest.approx(0.625)


class TestRules:
    @pytest.mark.parametrize("fc, srb, sra, expected", [
        (0, 0.5, 0.9, LITERAL),
        (0, 0.9, 0.5, LITERAL),
        (1, 0.1, 0.1, FIGURATIVE),
        (0, 0.8, 0.8, FIGURATIVE),
        (0, 0.75, 0.75, FIGURATIVE),
    ])
    def test_examples(self, fc, srb, sra, expected):
        assert context_rules().apply({"fc": fc, "srb": srb, "sra": sra}) == expected

    def test_fc1_always_figurative(self):
        rs = context_rules()
        values = [i / 20 for i in range(21)]
        for srb, sra in itertools.product(values, values):
            assert rs.apply({"fc": 1, "srb": srb, "sra": sra}) == FIGURATIVE

    def test_serialization_shared_with_ruleset(self):
        rs = context_rules()
        text = rs.dumps()
        assert text.splitlines()[0] == "IF fc=0 AND srb<0.75 THEN literal"
        assert RuleSet.loads(text) == rs


class TestEvaluation:
    def test_fixture_accuracy(self, fixtures, context_net):
        instances = read_context_dataset(fixtures / "context.tsv")
        corpus = read_corpus(fixtures / "context_corpus.txt")
        csets = {p: build_collocation_set(corpus, p) for p in ("old school", "big picture")}
        pipeline = ContextPipeline(net=context_net, collocations=csets)
        assert evaluate_accuracy(instances, pipeline) == 1.0

    def test_balanced_constant_rule(self):
        lit = [ContextInstance.locate("old school", "an old school", LITERAL) for _ in range(10)]
        fig = [ContextInstance.locate("old school", "the old school", FIGURATIVE) for _ in range(10)]
        pipeline = ContextPipeline(rules=RuleSet([], LITERAL))
        assert evaluate_accuracy(lit + fig, pipeline) == 0.5

    def test_empty(self):
        with pytest.raises(EmptyDataset):
            evaluate_accuracy([], ContextPipeline())

    def test_dataset_errors(self, tmp_path):
        p = tmp_path / "c.tsv"
        p.write_text("old school\t0\t2\tliteral\tthe old school\n")
        with pytest.raises(ParseError):
            read_context_dataset(p)
