import random
from fractions import Fraction as F

import pytest

from entrench.engine import (
    Placement,
    Session,
    commit,
    contract_extract,
    integrate,
    is_reason_for,
    placement_degree,
    revise,
    undo,
    what_if,
)
from entrench.errors import ContradictoryInput, StaleOutcome
from entrench.formula import parse, print_formula
from entrench.prover import Consistency, Verdict, entails, is_consistent
from entrench.ranking import EVAPORATION_FLOOR, Ranking, normalize
from entrench.strategies import Strategy, StrategyConfig

from oracle import tt_consistent, tt_entails
from randgen import random_contingent_formula, random_ranking


def rk(*pairs):
    return Ranking([(parse(s), F(n, d)) for s, (n, d) in pairs])


def beliefs(r):
    return {print_formula(f) for f in r.formulas()}


TWEETY = rk(
    ("Bird(tweety)", (8, 10)),
    ("*X(Bird(X)->Flies(X))", (6, 10)),
    ("*X(Penguin(X)->-Flies(X))", (9, 10)),
)


class TestRevise:
    def test_tweety(self):
        out = revise(TWEETY, parse("Penguin(tweety)"), F(7, 10),
                     StrategyConfig(strategy=Strategy.MAXI))
        assert [print_formula(f) for f, _ in out.removed] == ["*X(Bird(X)->Flies(X))"]
        assert is_consistent(list(out.after.formulas())) is Consistency.CONSISTENT
        assert entails(list(out.after.formulas()), parse("Penguin(tweety)")) is Verdict.YES
        assert entails(list(out.after.formulas()), parse("-Flies(tweety)")) is Verdict.YES

    def test_vacuous_when_already_entailed(self):
        r = rk(("a", (8, 10)), ("a->b", (6, 10)))
        out = revise(r, parse("b"), F(5, 10))
        assert out.removed == ()
        assert out.after == normalize(r.with_belief(parse("b"), F(5, 10)))

    def test_standard_collapse(self):
        out = revise(rk(("p", (5, 10))), parse("-p"), F(7, 10),
                     StrategyConfig(strategy=Strategy.STANDARD))
        assert beliefs(out.after) == {"-p"}
        assert [print_formula(f) for f, _ in out.removed] == ["p"]

    def test_self_contradictory_input_rejected(self):
        with pytest.raises(ContradictoryInput):
            revise(rk(("a", (5, 10))), parse("p&-p"))

    def test_duplicate_insert_takes_max_degree(self):
        r = rk(("p", (5, 10)))
        out = revise(r, parse("p"), F(3, 10))
        assert out.after.degree_of(parse("p")) == F(5, 10)

    def test_decay_applies_after_normalization(self):
        cfg = StrategyConfig(half_life=F(1, 2))
        plain = revise(rk(("a", (8, 10))), parse("b"), F(4, 10))
        decayed = revise(rk(("a", (8, 10))), parse("b"), F(4, 10), cfg)
        assert decayed.decay_applied == F(1, 2)
        for f, d in plain.after:
            assert decayed.after.degree_of(f) == d / 2

    def test_recovery_merges_weakened_beliefs(self):
        cfg = StrategyConfig(strategy=Strategy.MAXI, recovery=True)
        out = revise(rk(("p&q", (5, 10))), parse("-q"), F(7, 10), cfg)
        assert [print_formula(f) for f, _ in out.removed] == ["p&q"]
        assert parse("p&q|-q") in out.after


class TestPlacement:
    def test_empty_ranking(self):
        assert placement_degree(Ranking(), Placement.TOP) == F(1, 2)
        assert placement_degree(Ranking(), Placement.BOTTOM) == F(1, 2)

    def test_top_and_bottom(self):
        r = rk(("a", (8, 10)), ("b", (2, 10)))
        assert placement_degree(r, Placement.TOP) == F(9, 10)
        assert placement_degree(r, Placement.BOTTOM) == (EVAPORATION_FLOOR + F(2, 10)) / 2

    def test_revise_uses_placement(self):
        r = rk(("a", (8, 10)))
        out = revise(r, parse("b"), None, placement=Placement.TOP)
        assert out.after.degree_of(parse("b")) == F(9, 10)


class TestContractExtract:
    def test_maxi(self):
        after, _ = contract_extract(rk(("p", (8, 10)), ("-p", (6, 10))))
        assert beliefs(after) == {"p"}

    def test_consistent_input_unchanged(self):
        r = rk(("a", (8, 10)), ("b", (6, 10)))
        after, _ = contract_extract(r)
        assert after == r

    def test_linear_whole_rank(self):
        after, _ = contract_extract(
            rk(("p", (5, 10)), ("-p", (5, 10))),
            StrategyConfig(strategy=Strategy.LINEAR))
        assert len(after) == 0


class TestIntegrate:
    def test_conflicting_pair(self):
        after, _ = integrate([rk(("p", (8, 10))), rk(("-p", (6, 10)))])
        assert beliefs(after) == {"p"}

    def test_identical_rankings(self):
        r = rk(("a", (8, 10)), ("a->b", (6, 10)))
        after, _ = integrate([r, r])
        assert after == normalize(r)

    def test_disjoint_union(self):
        after, _ = integrate([rk(("a", (8, 10))), rk(("b", (6, 10)))])
        assert beliefs(after) == {"a", "b"}

    def test_order_independent(self):
        r1, r2 = rk(("p", (8, 10)), ("q", (4, 10))), rk(("-p", (6, 10)))
        a, _ = integrate([r1, r2])
        b, _ = integrate([r2, r1])
        assert a == b


class TestIsReasonFor:
    def test_positive_reason(self):
        r = rk(("a->b", (7, 10)))
        assert is_reason_for(r, parse("a"), parse("b")) is Verdict.YES

    def test_empty_base_symmetry(self):
        assert is_reason_for(Ranking(), parse("a"), parse("b")) is Verdict.NO

    def test_irrelevant_antecedent(self):
        r = rk(("b", (5, 10)))
        assert is_reason_for(r, parse("a"), parse("b")) is Verdict.NO

    def test_requires_contingent_antecedent(self):
        with pytest.raises(ContradictoryInput):
            is_reason_for(Ranking(), parse("p&-p"), parse("b"))
        with pytest.raises(ContradictoryInput):
            is_reason_for(Ranking(), parse("p|-p"), parse("b"))


class TestSession:
    def test_what_if_is_pure(self):
        s = Session.create(rk(("p", (5, 10))))
        before = s.current
        what_if(s, parse("-p"))
        assert s.current == before
        assert s.history == ()

    def test_what_if_equals_revise(self):
        s = Session.create(rk(("p", (5, 10))))
        a = what_if(s, parse("-p"), F(7, 10))
        b = revise(s.current, parse("-p"), F(7, 10), s.config, s.placement)
        assert a.after == b.after

    def test_two_what_ifs_see_same_base(self):
        s = Session.create(rk(("p", (5, 10))))
        a = what_if(s, parse("q"), F(7, 10))
        b = what_if(s, parse("q"), F(7, 10))
        assert a.after == b.after

    def test_commit_and_replay(self):
        s = Session.create(rk(("p", (5, 10))))
        out1 = what_if(s, parse("q"), F(7, 10))
        s = commit(s, out1)
        out2 = what_if(s, parse("-p"), F(6, 10))
        s = commit(s, out2)
        assert s.current == out2.after
        # replaying the chain from the initial ranking reproduces current
        state = s.initial
        for out in s.history:
            assert out.before == state
            state = out.after
        assert state == s.current

    def test_stale_commit_rejected(self):
        s = Session.create(rk(("p", (5, 10))))
        out = what_if(s, parse("q"), F(7, 10))
        s2 = commit(s, out)
        with pytest.raises(StaleOutcome):
            commit(s2, out)

    def test_undo(self):
        s = Session.create(rk(("p", (5, 10))))
        out = what_if(s, parse("q"), F(7, 10))
        s2 = commit(s, out)
        s3 = undo(s2)
        assert s3.current == s.current
        with pytest.raises(StaleOutcome):
            undo(s3)


class TestPostulates:
    def test_success_consistency_inclusion_vacuity(self):
        rng = random.Random(71)
        for _ in range(15):
            r = random_ranking(rng, max_beliefs=8, max_ranks=4, n_atoms=5)
            a = random_contingent_formula(rng, ["p1", "p2", "p3", "p4"])
            for strategy in Strategy:
                cfg = StrategyConfig(strategy=strategy)
                out = revise(r, a, F(11, 12), cfg)
                after = list(out.after.formulas())
                assert tt_consistent(after)
                assert tt_entails(after, a)
                assert beliefs(out.after) <= beliefs(r) | {print_formula(a)}
                if tt_consistent(list(r.formulas()) + [a]):
                    assert out.removed == ()

    def test_iterated_revision_closure(self):
        rng = random.Random(73)
        r = random_ranking(rng, max_beliefs=6, max_ranks=3, n_atoms=4)
        for _ in range(5):
            a = random_contingent_formula(rng, ["p1", "p2", "p3"])
            out = revise(r, a, None, StrategyConfig(), Placement.BOTTOM)
            r = out.after
            assert tt_consistent(list(r.formulas()))
