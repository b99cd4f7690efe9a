import random

import pytest

from entrench.errors import NotHorn
from entrench.formula import Negation, parse, print_formula
from entrench.prover import (
    Consistency,
    ProofBudget,
    Verdict,
    clausify,
    clause_str,
    entails,
    entails_horn,
    is_consistent,
    is_tautology,
    minimal_inconsistent_subsets,
    refutation_steps,
    subsumed_by,
)

from oracle import tt_consistent, tt_entails, tt_minimal_inconsistent_subsets
from randgen import random_formula


def lits(clause):
    return sorted(str(l) for l in clause)


class TestClausify:
    def test_single_proposition(self):
        clauses = clausify([parse("p")])
        assert len(clauses) == 1
        assert lits(clauses[0]) == ["p"]

    def test_skolem_constant(self):
        clauses = clausify([parse("!Z(EatsChocolate(Z)->Happy(Z))")])
        assert len(clauses) == 1
        assert lits(clauses[0]) == ["-EatsChocolate(sk__1)", "Happy(sk__1)"]

    def test_complementary_units(self):
        clauses = clausify([parse("a"), parse("-a")])
        assert [lits(c) for c in clauses] == [["a"], ["-a"]]

    def test_renamed_variables_carry_tag(self):
        clauses = clausify([parse("*X(Bird(X)->Flies(X))")])
        text = clause_str(clauses[0])
        assert "X__" in text

    def test_skolem_function_under_universal(self):
        clauses = clausify([parse("*X(!Y(Mother(X,Y)))")])
        text = clause_str(clauses[0])
        assert "sk__1(" in text

    def test_system_symbols_never_collide(self):
        fs = [parse("*X(!Y(M(X,Y)))"), parse("!Z(P(Z))"), parse("p|q&-r")]
        for clause in clausify(fs):
            for lit in clause:
                # user symbols never contain "__"; introduced ones always do
                assert "__" not in lit.name or lit.name.startswith("sk__")

    def test_cnf_blowup_budget(self):
        from entrench.errors import BudgetExceeded
        # (a1&b1)|(a2&b2)|... distributes exponentially
        text = "|".join(f"(a{i}&b{i})" for i in range(12))
        with pytest.raises(BudgetExceeded):
            clausify([parse(text)], ProofBudget(max_clauses=100))


class TestConsistency:
    def test_direct_contradiction(self):
        assert is_consistent([parse("p"), parse("-p")]) is Consistency.INCONSISTENT

    def test_tweety_base_inconsistent(self):
        base = [
            parse("Bird(tweety)"),
            parse("*X(Bird(X)->Flies(X))"),
            parse("Penguin(tweety)"),
            parse("*X(Penguin(X)->-Flies(X))"),
        ]
        assert is_consistent(base) is Consistency.INCONSISTENT

    def test_single_conjunction(self):
        assert is_consistent([parse("hopes&dreams")]) is Consistency.CONSISTENT

    def test_empty_set(self):
        assert is_consistent([]) is Consistency.CONSISTENT

    def test_quantified_consistent(self):
        base = [parse("*X(Bird(X)->Flies(X))"), parse("Bird(tweety)")]
        assert is_consistent(base) is Consistency.CONSISTENT


class TestEntails:
    def test_modus_ponens(self):
        assert entails([parse("p"), parse("p->q")], parse("q")) is Verdict.YES

    def test_tautology_from_nothing(self):
        assert entails([], parse("p|-p")) is Verdict.YES

    def test_independent_atoms(self):
        assert entails([parse("p")], parse("q")) is Verdict.NO

    def test_first_order_instantiation(self):
        premises = [parse("*X(Penguin(X)->-Flies(X))"), parse("Penguin(tweety)")]
        assert entails(premises, parse("-Flies(tweety)")) is Verdict.YES

    def test_existential_goal(self):
        assert entails([parse("P(a)")], parse("!X(P(X))")) is Verdict.YES


class TestHorn:
    def test_chain(self):
        fs = [parse("a"), parse("a->b"), parse("b->c")]
        assert entails_horn(fs, parse("c")) is Verdict.YES

    def test_missing_antecedent(self):
        assert entails_horn([parse("a->b")], parse("b")) is Verdict.NO

    def test_not_horn(self):
        with pytest.raises(NotHorn):
            entails_horn([parse("a|b")], parse("a"))

    def test_non_ground_not_horn(self):
        with pytest.raises(NotHorn):
            entails_horn([parse("*X(P(X)->Q(X))"), parse("P(a)")], parse("Q(a)"))

    def test_long_chain_agrees_with_general_prover(self):
        n = 200
        fs = [parse("a0")] + [parse(f"a{i}->a{i + 1}") for i in range(n)]
        goal = parse(f"a{n}")
        assert entails_horn(fs, goal) is Verdict.YES
        assert entails(fs, goal) is Verdict.YES

    def test_horn_with_negative_constraint(self):
        fs = [parse("a"), parse("a->b"), parse("-b|-a")]
        # {a, a->b, -b|-a} is inconsistent, so it entails anything
        assert entails_horn(fs, parse("z")) is Verdict.YES

    def test_agreement_on_random_horn_instances(self):
        rng = random.Random(7)
        atoms = [f"h{i}" for i in range(6)]
        for _ in range(60):
            fs = []
            for _ in range(rng.randint(1, 8)):
                kind = rng.random()
                if kind < 0.4:
                    fs.append(parse(rng.choice(atoms)))
                elif kind < 0.8:
                    fs.append(parse(f"{rng.choice(atoms)}->{rng.choice(atoms)}"))
                else:
                    fs.append(parse(f"-{rng.choice(atoms)}|-{rng.choice(atoms)}"))
            goal = parse(rng.choice(atoms))
            assert entails_horn(fs, goal).value == entails(fs, goal).value


class TestSubsumption:
    def test_disjunction_weakening(self):
        assert subsumed_by(parse("p|q"), parse("p")) is Verdict.YES

    def test_identity(self):
        assert subsumed_by(parse("p"), parse("p")) is Verdict.YES

    def test_unrelated(self):
        assert subsumed_by(parse("p"), parse("q")) is Verdict.NO


class TestMinimalInconsistentSubsets:
    def test_spec_example(self):
        mis = minimal_inconsistent_subsets(
            [parse("a->b"), parse("c")], [parse("a"), parse("-b")]
        )
        assert mis == [frozenset({parse("a->b")})]

    def test_complementary_pair(self):
        mis = minimal_inconsistent_subsets([parse("p"), parse("-p")], [])
        assert mis == [frozenset({parse("p"), parse("-p")})]

    def test_nothing_inconsistent(self):
        assert minimal_inconsistent_subsets([parse("c")], [parse("a")]) == []

    def test_against_brute_force(self):
        rng = random.Random(11)
        atoms = [f"m{i}" for i in range(5)]
        for _ in range(40):
            candidates = []
            seen = set()
            for _ in range(rng.randint(1, 7)):
                f = random_formula(rng, atoms)
                if f not in seen:
                    seen.add(f)
                    candidates.append(f)
            context = [random_formula(rng, atoms)]
            if not tt_consistent(context):
                continue
            got = minimal_inconsistent_subsets(candidates, context)
            want = tt_minimal_inconsistent_subsets(candidates, context)
            assert sorted(map(sorted_names, got)) == sorted(map(sorted_names, want))

    def test_every_result_minimal_and_inconsistent(self):
        rng = random.Random(13)
        atoms = [f"m{i}" for i in range(4)]
        for _ in range(25):
            candidates = list({random_formula(rng, atoms) for _ in range(5)})
            mis = minimal_inconsistent_subsets(candidates, [])
            for s in mis:
                assert is_consistent(list(s)) is Consistency.INCONSISTENT
                for f in s:
                    rest = [g for g in s if g != f]
                    assert is_consistent(rest) is not Consistency.INCONSISTENT


def sorted_names(subset):
    return sorted(print_formula(f) for f in subset)


class TestGroundOracleAgreement:
    def test_random_sets_agree_with_truth_tables(self):
        rng = random.Random(3)
        atoms = [f"q{i}" for i in range(6)]
        for _ in range(150):
            fs = [random_formula(rng, atoms) for _ in range(rng.randint(1, 5))]
            goal = random_formula(rng, atoms)
            assert (is_consistent(fs) is Consistency.CONSISTENT) == tt_consistent(fs)
            assert (entails(fs, goal) is Verdict.YES) == tt_entails(fs, goal)

    def test_large_atom_count_uses_dpll(self):
        # 20 atoms forces the DPLL route; verdicts must still be exact
        fs = [parse(f"x{i}->x{i + 1}") for i in range(20)] + [parse("x0")]
        assert is_consistent(fs) is Consistency.CONSISTENT
        assert entails(fs, parse("x20")) is Verdict.YES
        assert entails(fs, parse("-x20")) is Verdict.NO


class TestRefutationTraces:
    def check_steps(self, steps):
        from entrench.prover import _factors, _resolvents
        by_index = {s.index: s for s in steps}
        for s in steps:
            if s.rule == "input":
                continue
            if s.rule == "factor":
                (p,) = s.parents
                assert s.clause in map(canonical, _factors(by_index[p].clause))
            else:
                p1, p2 = s.parents
                options = _resolvents(by_index[p1].clause, by_index[p2].clause)
                assert s.clause in map(canonical, options)
        assert steps[-1].clause == frozenset()

    def test_ground_refutation_checkable(self):
        steps = refutation_steps([parse("p"), parse("p->q"), parse("-q")])
        assert steps is not None
        self.check_steps(steps)

    def test_first_order_refutation_checkable(self):
        steps = refutation_steps([
            parse("Bird(tweety)"),
            parse("*X(Bird(X)->Flies(X))"),
            parse("-Flies(tweety)"),
        ])
        assert steps is not None
        self.check_steps(steps)

    def test_no_refutation_for_consistent_set(self):
        assert refutation_steps([parse("p"), parse("q")]) is None


def canonical(clause):
    from entrench.prover import _canonical
    return _canonical(clause)


class TestFirstOrderDepth:
    def test_syllogism_chain_with_functions(self):
        premises = [
            parse("*X(Human(X)->Mortal(X))"),
            parse("*X(Mortal(X)->Mortal(parent(X)))"),
            parse("Human(sokrates)"),
        ]
        assert entails(premises, parse("Mortal(parent(sokrates))")) is Verdict.YES
        assert entails(premises, parse("Mortal(parent(parent(sokrates)))")) is Verdict.YES

    def test_existential_witness_via_universal(self):
        premises = [parse("*X(!Y(Mother(X,Y)))")]
        assert entails(premises, parse("!Y(Mother(ben,Y))")) is Verdict.YES

    def test_runaway_theory_reports_unknown_within_budget(self):
        import time
        # successor-style generator: saturation cannot finish, budget must
        premises = [parse("P(zero)"), parse("*X(P(X)->P(s(X)))")]
        budget = ProofBudget(max_depth=6, max_clauses=2000, max_seconds=2.0)
        t0 = time.monotonic()
        verdict = is_consistent(premises, budget)
        assert time.monotonic() - t0 < 10.0
        assert verdict in (Consistency.UNKNOWN, Consistency.CONSISTENT)

    def test_unsatisfiable_fol_with_skolem_interplay(self):
        premises = [
            parse("*X(!Y(Loves(X,Y)))"),
            parse("*X(*Y(-Loves(X,Y)))"),
        ]
        assert is_consistent(premises) is Consistency.INCONSISTENT
