"""Bounded entailment and consistency decisions over finite formula sets.

Three decision routes share one contract:

* ground sets over at most ``MASK_ATOM_LIMIT`` atoms are decided exactly by
  truth-table bitmasks (one big-integer per formula, one bit per assignment);
* larger ground sets are decided by DPLL over the clausified input;
* anything with quantifiers or variables goes to budget-bounded binary
  resolution with factoring, which may answer Unknown.

The resolution route is the only one that can time out on the logic itself;
the ground routes are decision procedures and answer Unknown only if the
wall-clock budget expires first.  System-generated symbols (skolem functions,
renamed variables) always carry a double underscore, which user input may
not contain, so they can never collide.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import BudgetExceeded, FreeVariableError, NotHorn
from .formula import (
    Conjunction,
    Constant,
    Disjunction,
    Existential,
    Formula,
    FunctionTerm,
    Implication,
    Negation,
    Predicate,
    Proposition,
    Term,
    Universal,
    Variable,
    free_variables,
    print_formula,
    print_term,
)

__all__ = [
    "ProofBudget", "DEFAULT_BUDGET", "Verdict", "Consistency",
    "Literal", "Clause", "clausify",
    "is_consistent", "entails", "entails_horn", "subsumed_by", "is_tautology",
    "minimal_inconsistent_subsets", "refutation_steps", "ConsistencyOracle",
]

MASK_ATOM_LIMIT = 16


class Verdict(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class Consistency(Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ProofBudget:
    """Resource bounds for a single query; all fields strictly positive."""

    max_depth: int = 12
    max_clauses: int = 50_000
    max_seconds: float = 5.0

    def __post_init__(self):
        if self.max_depth <= 0 or self.max_clauses <= 0 or self.max_seconds <= 0:
            raise ValueError("proof budget fields must be strictly positive")


DEFAULT_BUDGET = ProofBudget()


@dataclass(frozen=True)
class Literal:
    positive: bool
    name: str
    args: tuple[Term, ...] = ()

    def negated(self) -> "Literal":
        return Literal(not self.positive, self.name, self.args)

    def __str__(self) -> str:
        sign = "" if self.positive else "-"
        if not self.args:
            return sign + self.name
        return f"{sign}{self.name}({','.join(print_term(a) for a in self.args)})"


Clause = frozenset  # frozenset[Literal]; the empty clause is a contradiction


def _lit_key(lit: Literal) -> tuple:
    return (lit.name, not lit.positive, tuple(print_term(a) for a in lit.args))


def clause_str(clause: Clause) -> str:
    if not clause:
        return "[]"
    return "{" + ",".join(str(l) for l in sorted(clause, key=_lit_key)) + "}"


# --- clausification ----------------------------------------------------------

def _elim_implications(f: Formula) -> Formula:
    if isinstance(f, (Proposition, Predicate)):
        return f
    if isinstance(f, Negation):
        return Negation(_elim_implications(f.body))
    if isinstance(f, Conjunction):
        return Conjunction(_elim_implications(f.left), _elim_implications(f.right))
    if isinstance(f, Disjunction):
        return Disjunction(_elim_implications(f.left), _elim_implications(f.right))
    if isinstance(f, Implication):
        return Disjunction(Negation(_elim_implications(f.left)), _elim_implications(f.right))
    if isinstance(f, Universal):
        return Universal(f.var, _elim_implications(f.body))
    if isinstance(f, Existential):
        return Existential(f.var, _elim_implications(f.body))
    raise TypeError(f"not a formula: {f!r}")


def _nnf(f: Formula) -> Formula:
    if isinstance(f, (Proposition, Predicate)):
        return f
    if isinstance(f, Conjunction):
        return Conjunction(_nnf(f.left), _nnf(f.right))
    if isinstance(f, Disjunction):
        return Disjunction(_nnf(f.left), _nnf(f.right))
    if isinstance(f, Universal):
        return Universal(f.var, _nnf(f.body))
    if isinstance(f, Existential):
        return Existential(f.var, _nnf(f.body))
    if isinstance(f, Negation):
        g = f.body
        if isinstance(g, (Proposition, Predicate)):
            return f
        if isinstance(g, Negation):
            return _nnf(g.body)
        if isinstance(g, Conjunction):
            return Disjunction(_nnf(Negation(g.left)), _nnf(Negation(g.right)))
        if isinstance(g, Disjunction):
            return Conjunction(_nnf(Negation(g.left)), _nnf(Negation(g.right)))
        if isinstance(g, Universal):
            return Existential(g.var, _nnf(Negation(g.body)))
        if isinstance(g, Existential):
            return Universal(g.var, _nnf(Negation(g.body)))
    raise TypeError(f"not in implication-free form: {f!r}")


def _subst_term(t: Term, sub: dict[str, Term]) -> Term:
    if isinstance(t, Variable):
        return sub.get(t.name, t)
    if isinstance(t, FunctionTerm):
        return FunctionTerm(t.name, tuple(_subst_term(a, sub) for a in t.args))
    return t


class _Clausifier:
    """One clausification run; owns the fresh-symbol counters."""

    def __init__(self, budget: ProofBudget):
        self.budget = budget
        self.var_counter = 0
        self.sk_counter = 0

    def fresh_var(self, base: str) -> Variable:
        self.var_counter += 1
        return Variable(f"{base}__{self.var_counter}")

    def fresh_skolem(self, scope: list[Variable]) -> Term:
        self.sk_counter += 1
        name = f"sk__{self.sk_counter}"
        if scope:
            return FunctionTerm(name, tuple(scope))
        return Constant(name)

    def transform(self, f: Formula, sub: dict[str, Term], scope: list[Variable]) -> Formula:
        """Rename bound variables apart and skolemize existentials.

        Input is in NNF; the result is quantifier-free (universal variables
        left free, carrying their fresh tagged names).
        """
        if isinstance(f, (Proposition, Predicate)):
            if isinstance(f, Predicate):
                return Predicate(f.name, tuple(_subst_term(a, sub) for a in f.args))
            return f
        if isinstance(f, Negation):  # NNF: body is atomic
            return Negation(self.transform(f.body, sub, scope))
        if isinstance(f, Conjunction):
            return Conjunction(self.transform(f.left, sub, scope),
                               self.transform(f.right, sub, scope))
        if isinstance(f, Disjunction):
            return Disjunction(self.transform(f.left, sub, scope),
                               self.transform(f.right, sub, scope))
        if isinstance(f, Universal):
            fresh = self.fresh_var(f.var)
            return self.transform(f.body, {**sub, f.var: fresh}, scope + [fresh])
        if isinstance(f, Existential):
            sk = self.fresh_skolem(scope)
            return self.transform(f.body, {**sub, f.var: sk}, scope)
        raise TypeError(f"unexpected node during skolemization: {f!r}")

    def to_clauses(self, f: Formula) -> list[list[Literal]]:
        if isinstance(f, Conjunction):
            return self.to_clauses(f.left) + self.to_clauses(f.right)
        if isinstance(f, Disjunction):
            left = self.to_clauses(f.left)
            right = self.to_clauses(f.right)
            if len(left) * len(right) > self.budget.max_clauses:
                raise BudgetExceeded("CNF distribution exceeds the clause budget")
            return [a + b for a in left for b in right]
        if isinstance(f, (Proposition, Predicate)):
            return [[_atom_literal(f, True)]]
        if isinstance(f, Negation):
            return [[_atom_literal(f.body, False)]]
        raise TypeError(f"unexpected node during CNF distribution: {f!r}")


def _atom_literal(f: Formula, positive: bool) -> Literal:
    if isinstance(f, Proposition):
        return Literal(positive, f.name)
    if isinstance(f, Predicate):
        return Literal(positive, f.name, f.args)
    raise TypeError(f"not atomic: {f!r}")


def clausify_each(formulas: Sequence[Formula],
                  budget: ProofBudget = DEFAULT_BUDGET) -> list[list[Clause]]:
    """Clause lists per input formula, skolemized and standardized apart."""
    runner = _Clausifier(budget)
    out: list[list[Clause]] = []
    total = 0
    for f in formulas:
        if free_variables(f):
            raise FreeVariableError(
                f"cannot clausify open formula {print_formula(f)!r}"
            )
        g = runner.transform(_nnf(_elim_implications(f)), {}, [])
        clauses = []
        for lits in runner.to_clauses(g):
            clause = frozenset(lits)
            if _is_tautologous_clause(clause):
                continue
            clauses.append(clause)
        total += len(clauses)
        if total > budget.max_clauses:
            raise BudgetExceeded("clause budget exceeded during clausification")
        out.append(clauses)
    return out


def clausify(formulas: Sequence[Formula],
             budget: ProofBudget = DEFAULT_BUDGET) -> list[Clause]:
    """Equisatisfiable CNF of the conjunction of ``formulas``."""
    flat: list[Clause] = []
    for group in clausify_each(formulas, budget):
        flat.extend(group)
    return flat


def _is_tautologous_clause(clause: Clause) -> bool:
    return any(lit.negated() in clause for lit in clause)


# --- ground detection and truth-table masks ---------------------------------

def _term_is_ground(t: Term) -> bool:
    if isinstance(t, Variable):
        return False
    if isinstance(t, FunctionTerm):
        return all(_term_is_ground(a) for a in t.args)
    return True


def is_ground(f: Formula) -> bool:
    """No quantifiers and no variables anywhere."""
    if isinstance(f, Proposition):
        return True
    if isinstance(f, Predicate):
        return all(_term_is_ground(a) for a in f.args)
    if isinstance(f, Negation):
        return is_ground(f.body)
    if isinstance(f, (Conjunction, Disjunction, Implication)):
        return is_ground(f.left) and is_ground(f.right)
    return False


def _ground_atoms(f: Formula, out: set[str]) -> None:
    if isinstance(f, (Proposition, Predicate)):
        out.add(print_formula(f))
    elif isinstance(f, Negation):
        _ground_atoms(f.body, out)
    elif isinstance(f, (Conjunction, Disjunction, Implication)):
        _ground_atoms(f.left, out)
        _ground_atoms(f.right, out)


@lru_cache(maxsize=64)
def _assignment_masks(n: int) -> tuple[int, ...]:
    """For each of n atoms, the bitmask of assignments making it true.

    Bit i of mask j is set iff assignment i (read as an n-bit number)
    assigns true to atom j.
    """
    size = 1 << n
    masks = []
    for j in range(n):
        half = 1 << j
        piece = ((1 << half) - 1) << half
        span = half * 2
        while span < size:
            piece |= piece << span
            span *= 2
        masks.append(piece)
    return tuple(masks)


def _formula_mask(f: Formula, bits: dict[str, int], atom_masks: tuple[int, ...],
                  full: int) -> int:
    if isinstance(f, (Proposition, Predicate)):
        return atom_masks[bits[print_formula(f)]]
    if isinstance(f, Negation):
        return full ^ _formula_mask(f.body, bits, atom_masks, full)
    if isinstance(f, Conjunction):
        return (_formula_mask(f.left, bits, atom_masks, full)
                & _formula_mask(f.right, bits, atom_masks, full))
    if isinstance(f, Disjunction):
        return (_formula_mask(f.left, bits, atom_masks, full)
                | _formula_mask(f.right, bits, atom_masks, full))
    if isinstance(f, Implication):
        return ((full ^ _formula_mask(f.left, bits, atom_masks, full))
                | _formula_mask(f.right, bits, atom_masks, full))
    raise TypeError(f"not a ground formula: {f!r}")


# --- DPLL over ground clauses ------------------------------------------------

def _dpll(clauses: list[frozenset[int]], deadline: float) -> bool | None:
    """Satisfiability of ground integer clauses; None when out of time."""
    if time.monotonic() > deadline:
        return None
    # unit propagation
    assignment: set[int] = set()
    work = list(clauses)
    while True:
        unit = None
        for c in work:
            if len(c) == 0:
                return False
            if len(c) == 1:
                unit = next(iter(c))
                break
        if unit is None:
            break
        if -unit in assignment:
            return False
        assignment.add(unit)
        reduced = []
        for c in work:
            if unit in c:
                continue
            if -unit in c:
                c = c - {-unit}
            reduced.append(c)
        work = reduced
    if not work:
        return True
    # branch on the most frequent atom
    counts: dict[int, int] = {}
    for c in work:
        for lit in c:
            counts[abs(lit)] = counts.get(abs(lit), 0) + 1
    atom = max(counts, key=lambda a: (counts[a], -a))
    for choice in (atom, -atom):
        branch = [frozenset([choice])] + work
        result = _dpll(branch, deadline)
        if result is None:
            return None
        if result:
            return True
    return False


def _clauses_to_ints(clauses: Iterable[Clause]) -> list[frozenset[int]]:
    atom_ids: dict[tuple[str, tuple], int] = {}
    out = []
    for clause in clauses:
        ints = set()
        for lit in clause:
            key = (lit.name, tuple(print_term(a) for a in lit.args))
            idx = atom_ids.setdefault(key, len(atom_ids) + 1)
            ints.add(idx if lit.positive else -idx)
        out.append(frozenset(ints))
    return out


# --- unification and resolution ----------------------------------------------

def _unify_terms(t1: Term, t2: Term, sub: dict[str, Term]) -> dict[str, Term] | None:
    t1 = _walk(t1, sub)
    t2 = _walk(t2, sub)
    if t1 == t2:
        return sub
    if isinstance(t1, Variable):
        if _occurs(t1.name, t2, sub):
            return None
        new = dict(sub)
        new[t1.name] = t2
        return new
    if isinstance(t2, Variable):
        if _occurs(t2.name, t1, sub):
            return None
        new = dict(sub)
        new[t2.name] = t1
        return new
    if isinstance(t1, FunctionTerm) and isinstance(t2, FunctionTerm):
        if t1.name != t2.name or len(t1.args) != len(t2.args):
            return None
        for a1, a2 in zip(t1.args, t2.args):
            result = _unify_terms(a1, a2, sub)
            if result is None:
                return None
            sub = result
        return sub
    return None


def _walk(t: Term, sub: dict[str, Term]) -> Term:
    while isinstance(t, Variable) and t.name in sub:
        t = sub[t.name]
    return t


def _occurs(var: str, t: Term, sub: dict[str, Term]) -> bool:
    t = _walk(t, sub)
    if isinstance(t, Variable):
        return t.name == var
    if isinstance(t, FunctionTerm):
        return any(_occurs(var, a, sub) for a in t.args)
    return False


def _resolve_term(t: Term, sub: dict[str, Term]) -> Term:
    t = _walk(t, sub)
    if isinstance(t, FunctionTerm):
        return FunctionTerm(t.name, tuple(_resolve_term(a, sub) for a in t.args))
    return t


def _unify_args(a1: tuple[Term, ...], a2: tuple[Term, ...]) -> dict[str, Term] | None:
    if len(a1) != len(a2):
        return None
    sub: dict[str, Term] | None = {}
    for t1, t2 in zip(a1, a2):
        sub = _unify_terms(t1, t2, sub)
        if sub is None:
            return None
    return sub


def _apply_sub(clause: Iterable[Literal], sub: dict[str, Term]) -> Clause:
    return frozenset(
        Literal(l.positive, l.name, tuple(_resolve_term(a, sub) for a in l.args))
        for l in clause
    )


def _clause_vars(clause: Clause) -> list[str]:
    seen: list[str] = []

    def term(t: Term) -> None:
        if isinstance(t, Variable):
            if t.name not in seen:
                seen.append(t.name)
        elif isinstance(t, FunctionTerm):
            for a in t.args:
                term(a)

    for lit in sorted(clause, key=_lit_key):
        for a in lit.args:
            term(a)
    return seen


def _canonical(clause: Clause) -> Clause:
    """Rename variables to V__1.. in first-appearance order for dedup."""
    names = _clause_vars(clause)
    if not names:
        return clause
    sub = {n: Variable(f"V__{i + 1}") for i, n in enumerate(names)}
    return _apply_sub(clause, sub)


def _rename_apart(clause: Clause, taken: set[str]) -> Clause:
    names = [n for n in _clause_vars(clause) if n in taken]
    if not names:
        return clause
    fresh = {}
    k = 0
    for n in names:
        k += 1
        while f"W__{k}" in taken:
            k += 1
        fresh[n] = Variable(f"W__{k}")
    return _apply_sub(clause, fresh)


def _resolvents(c1: Clause, c2: Clause) -> list[Clause]:
    taken = set(_clause_vars(c1))
    c2 = _rename_apart(c2, taken)
    out = []
    for l1 in sorted(c1, key=_lit_key):
        for l2 in sorted(c2, key=_lit_key):
            if l1.positive == l2.positive or l1.name != l2.name:
                continue
            sub = _unify_args(l1.args, l2.args)
            if sub is None:
                continue
            rest = (c1 - {l1}) | (c2 - {l2})
            out.append(_apply_sub(rest, sub))
    return out


def _factors(clause: Clause) -> list[Clause]:
    out = []
    lits = sorted(clause, key=_lit_key)
    for i, l1 in enumerate(lits):
        for l2 in lits[i + 1:]:
            if l1.positive != l2.positive or l1.name != l2.name:
                continue
            sub = _unify_args(l1.args, l2.args)
            if sub is None:
                continue
            out.append(_apply_sub(clause - {l2}, sub))
    return out


@dataclass
class Step:
    """One derivation step in a resolution trace."""

    index: int
    clause: Clause
    rule: str  # "input" | "resolve" | "factor"
    parents: tuple[int, ...]
    depth: int = 0

    def render(self) -> str:
        origin = self.rule
        if self.parents:
            origin += "(" + ",".join(str(p) for p in self.parents) + ")"
        return f"{self.index}. {clause_str(self.clause)}  [{origin}]"


def _saturate(groups: list[list[Clause]], sos_from: int,
              budget: ProofBudget) -> tuple[str, list[Step]]:
    """Resolution saturation with factoring.

    ``groups`` is the per-formula clause partition; clauses from groups at
    index >= ``sos_from`` are set-of-support seeds (preferred in the queue).
    Returns ("unsat", steps-to-empty-clause), ("sat", []) on clean
    saturation, or ("unknown", []) when the budget cut the search.
    """
    deadline = time.monotonic() + budget.max_seconds
    steps: list[Step] = []
    seen: dict[Clause, int] = {}
    queue: list[tuple[tuple, int]] = []
    processed: list[int] = []
    cutoff = False
    seq = 0

    def trace_to(idx: int) -> list[Step]:
        keep = set()
        stack = [idx]
        while stack:
            i = stack.pop()
            if i in keep:
                continue
            keep.add(i)
            stack.extend(steps[i].parents)
        return [steps[i] for i in sorted(keep)]

    def add(clause: Clause, rule: str, parents: tuple[int, ...],
            depth: int, sos: bool) -> int | None:
        nonlocal seq, cutoff
        clause = _canonical(clause)
        if _is_tautologous_clause(clause):
            return None
        if clause in seen:
            return None
        if len(steps) >= budget.max_clauses:
            cutoff = True
            return None
        idx = len(steps)
        steps.append(Step(idx, clause, rule, parents, depth))
        seen[clause] = idx
        seq += 1
        priority = (len(clause) * 2 + depth, 0 if sos else 1, seq)
        heapq.heappush(queue, (priority, idx))
        return idx

    sos_ids: set[int] = set()
    for gi, group in enumerate(groups):
        for clause in group:
            idx = add(clause, "input", (), 0, gi >= sos_from)
            if idx is not None and gi >= sos_from:
                sos_ids.add(idx)

    while queue:
        if time.monotonic() > deadline:
            return "unknown", []
        _, given = heapq.heappop(queue)
        given_clause = steps[given].clause
        if not given_clause:
            return "unsat", trace_to(given)
        if any(steps[p].clause < given_clause for p in processed):
            continue  # strictly subsumed by an earlier clause
        given_depth = steps[given].depth
        given_sos = given in sos_ids

        new: list[tuple[Clause, str, tuple[int, ...], int]] = []
        for f in _factors(given_clause):
            new.append((f, "factor", (given,), given_depth))
        for p in processed:
            depth = max(given_depth, steps[p].depth) + 1
            if depth > budget.max_depth:
                cutoff = True
                continue
            for r in _resolvents(given_clause, steps[p].clause):
                new.append((r, "resolve", (given, p), depth))

        for clause, rule, parents, depth in new:
            idx = add(clause, rule, parents, depth,
                      given_sos or any(q in sos_ids for q in parents))
            if idx is None:
                if cutoff and len(steps) >= budget.max_clauses:
                    return "unknown", []
                continue
            if given_sos or any(q in sos_ids for q in parents):
                sos_ids.add(idx)
            if not clause:
                return "unsat", trace_to(idx)
        processed.append(given)

    return ("unknown", []) if cutoff else ("sat", [])


# --- routing -----------------------------------------------------------------

def _ground_universe(formulas: Sequence[Formula]) -> list[str] | None:
    atoms: set[str] = set()
    for f in formulas:
        if not is_ground(f):
            return None
        _ground_atoms(f, atoms)
    return sorted(atoms)


def _mask_consistent(formulas: Sequence[Formula], atoms: list[str]) -> bool:
    bits = {a: i for i, a in enumerate(atoms)}
    atom_masks = _assignment_masks(len(atoms))
    full = (1 << (1 << len(atoms))) - 1
    acc = full
    for f in formulas:
        acc &= _formula_mask(f, bits, atom_masks, full)
        if not acc:
            return False
    return bool(acc)


def _decide_ground(formulas: Sequence[Formula], atoms: list[str],
                   budget: ProofBudget) -> Consistency:
    if len(atoms) <= MASK_ATOM_LIMIT:
        sat = _mask_consistent(formulas, atoms)
        return Consistency.CONSISTENT if sat else Consistency.INCONSISTENT
    try:
        clauses = clausify(formulas, budget)
    except BudgetExceeded:
        return Consistency.UNKNOWN
    deadline = time.monotonic() + budget.max_seconds
    sat = _dpll(_clauses_to_ints(clauses), deadline)
    if sat is None:
        return Consistency.UNKNOWN
    return Consistency.CONSISTENT if sat else Consistency.INCONSISTENT


def is_consistent(formulas: Sequence[Formula],
                  budget: ProofBudget = DEFAULT_BUDGET) -> Consistency:
    """Bounded satisfiability of a finite formula set."""
    formulas = list(formulas)
    if not formulas:
        return Consistency.CONSISTENT
    atoms = _ground_universe(formulas)
    if atoms is not None:
        return _decide_ground(formulas, atoms, budget)
    try:
        groups = clausify_each(formulas, budget)
    except BudgetExceeded:
        return Consistency.UNKNOWN
    outcome, _ = _saturate(groups, sos_from=len(groups), budget=budget)
    if outcome == "unsat":
        return Consistency.INCONSISTENT
    if outcome == "sat":
        return Consistency.CONSISTENT
    return Consistency.UNKNOWN


def entails(premises: Sequence[Formula], goal: Formula,
            budget: ProofBudget = DEFAULT_BUDGET) -> Verdict:
    """Yes iff premises together with the negated goal are refutable."""
    premises = list(premises)
    combined = premises + [Negation(goal)]
    atoms = _ground_universe(combined)
    if atoms is not None:
        verdict = _decide_ground(combined, atoms, budget)
        if verdict is Consistency.INCONSISTENT:
            return Verdict.YES
        if verdict is Consistency.CONSISTENT:
            return Verdict.NO
        return Verdict.UNKNOWN
    try:
        groups = clausify_each(combined, budget)
    except BudgetExceeded:
        return Verdict.UNKNOWN
    outcome, _ = _saturate(groups, sos_from=len(groups) - 1, budget=budget)
    if outcome == "unsat":
        return Verdict.YES
    if outcome == "sat":
        return Verdict.NO
    return Verdict.UNKNOWN


def refutation_steps(formulas: Sequence[Formula],
                     budget: ProofBudget = DEFAULT_BUDGET) -> list[Step] | None:
    """Resolution refutation of ``formulas``, or None if none was found.

    Always runs the resolution engine (even on ground input) so the trace
    can be audited step by step.
    """
    try:
        groups = clausify_each(list(formulas), budget)
    except BudgetExceeded:
        return None
    outcome, steps = _saturate(groups, sos_from=len(groups), budget=budget)
    if outcome == "unsat":
        return steps
    return None


def is_tautology(f: Formula, budget: ProofBudget = DEFAULT_BUDGET) -> Verdict:
    return entails([], f, budget)


def subsumed_by(b: Formula, a: Formula,
                budget: ProofBudget = DEFAULT_BUDGET) -> Verdict:
    """Yes iff ``a`` alone entails ``b``."""
    return entails([a], b, budget)


# --- Horn fast path ----------------------------------------------------------

def _atomic(f: Formula) -> bool:
    return isinstance(f, (Proposition, Predicate))


def entails_horn(premises: Sequence[Formula], goal: Formula,
                 budget: ProofBudget = DEFAULT_BUDGET) -> Verdict:
    """Linear-time entailment for ground Horn clause sets.

    Unit propagation over the clausified premises plus the negated goal;
    the verdict matches the general prover.  Raises NotHorn when the input
    clauses are not ground Horn or the goal is not a ground atom.
    """
    if not _atomic(goal) or not is_ground(goal):
        raise NotHorn("goal must be a ground atom")
    clauses = clausify(list(premises), budget)
    for clause in clauses:
        if sum(1 for lit in clause if lit.positive) > 1:
            raise NotHorn(f"clause {clause_str(clause)} has two positive literals")
    goal_lit = _atom_literal(goal, False)
    clauses = clauses + [frozenset([goal_lit])]
    for clause in clauses:
        for lit in clause:
            if lit.args and not all(_term_is_ground(a) for a in lit.args):
                raise NotHorn("linear descent requires ground clauses")
    return Verdict.YES if _horn_unsat(clauses) else Verdict.NO


def _horn_unsat(clauses: list[Clause]) -> bool:
    atom_ids: dict[tuple[str, tuple], int] = {}

    def atom_of(lit: Literal) -> int:
        key = (lit.name, tuple(print_term(a) for a in lit.args))
        return atom_ids.setdefault(key, len(atom_ids))

    negs: list[list[int]] = []
    pos: list[int | None] = []
    for clause in clauses:
        n = sorted({atom_of(l) for l in clause if not l.positive})
        p = [atom_of(l) for l in clause if l.positive]
        negs.append(n)
        pos.append(p[0] if p else None)

    watch: dict[int, list[int]] = {}
    remaining = []
    derived: list[bool] = [False] * len(atom_ids)
    queue: list[int] = []

    def derive(a: int) -> None:
        if not derived[a]:
            derived[a] = True
            queue.append(a)

    for ci, n in enumerate(negs):
        remaining.append(len(n))
        if not n:
            if pos[ci] is None:
                return True  # empty clause
            derive(pos[ci])
        for a in n:
            watch.setdefault(a, []).append(ci)

    while queue:
        a = queue.pop()
        for ci in watch.get(a, ()):  # each (clause, atom) pair fires once
            remaining[ci] -= 1
            if remaining[ci] == 0:
                p = pos[ci]
                if p is None:
                    return True  # all-negative clause contradicted
                derive(p)
    return False


# --- consistency oracle over a fixed universe ---------------------------------

class ConsistencyOracle:
    """Caches consistency/entailment queries over a fixed formula universe.

    When every universe formula is ground over few atoms, queries reduce to
    big-integer AND operations; otherwise they fall through to the full
    prover with per-query memoization.
    """

    def __init__(self, universe: Iterable[Formula],
                 budget: ProofBudget = DEFAULT_BUDGET):
        self.budget = budget
        self.universe = list(dict.fromkeys(universe))
        self._memo_consistent: dict[frozenset, Consistency] = {}
        self._memo_entails: dict[tuple, Verdict] = {}
        atoms = _ground_universe(self.universe)
        if atoms is not None and len(atoms) <= MASK_ATOM_LIMIT:
            self._bits = {a: i for i, a in enumerate(atoms)}
            self._atom_masks = _assignment_masks(len(atoms))
            self._full = (1 << (1 << len(atoms))) - 1
            self._masks = {
                f: _formula_mask(f, self._bits, self._atom_masks, self._full)
                for f in self.universe
            }
        else:
            self._masks = None

    def _mask_of(self, f: Formula) -> int | None:
        """Truth-table mask of f over the fixed universe, or None if f
        falls outside it (new atoms, variables, quantifiers)."""
        if self._masks is None:
            return None
        mask = self._masks.get(f)
        if mask is not None:
            return mask
        if not is_ground(f):
            return None
        atoms: set[str] = set()
        _ground_atoms(f, atoms)
        if not atoms <= self._bits.keys():
            return None
        mask = _formula_mask(f, self._bits, self._atom_masks, self._full)
        self._masks[f] = mask
        return mask

    def consistent(self, formulas: Iterable[Formula]) -> Consistency:
        formulas = list(formulas)
        if self._masks is not None:
            acc = self._full
            for f in formulas:
                mask = self._mask_of(f)
                if mask is None:
                    break
                acc &= mask
                if not acc:
                    return Consistency.INCONSISTENT
            else:
                return Consistency.CONSISTENT
        key = frozenset(formulas)
        if key not in self._memo_consistent:
            self._memo_consistent[key] = is_consistent(formulas, self.budget)
        return self._memo_consistent[key]

    def entails(self, premises: Iterable[Formula], goal: Formula) -> Verdict:
        premises = list(premises)
        goal_mask = self._mask_of(goal)
        if goal_mask is not None:
            acc = self._full
            ok = True
            for f in premises:
                mask = self._mask_of(f)
                if mask is None:
                    ok = False
                    break
                acc &= mask
            if ok:
                return Verdict.YES if acc & ~goal_mask & self._full == 0 \
                    else Verdict.NO
        key = (frozenset(premises), goal)
        if key not in self._memo_entails:
            self._memo_entails[key] = entails(premises, goal, self.budget)
        return self._memo_entails[key]


# --- minimal inconsistent subsets ---------------------------------------------

def minimal_inconsistent_subsets(
    candidates: Sequence[Formula],
    context: Sequence[Formula] = (),
    budget: ProofBudget = DEFAULT_BUDGET,
    on_unknown: Callable[[frozenset], None] | None = None,
    oracle: ConsistencyOracle | None = None,
) -> list[frozenset]:
    """Subset-minimal candidate sets inconsistent with the context.

    Enumerates subsets in increasing size, skipping supersets of conflicts
    already found, so every reported set is minimal.  Subsets whose
    consistency test comes back Unknown are treated as consistent and
    reported through ``on_unknown``.
    """
    candidates = list(candidates)
    context = list(context)
    if oracle is None:
        oracle = ConsistencyOracle(candidates + context, budget)

    def test(subset: tuple[int, ...]) -> Consistency:
        return oracle.consistent([candidates[i] for i in subset] + context)

    n = len(candidates)
    whole = test(tuple(range(n)))
    if whole is Consistency.CONSISTENT:
        return []
    found: list[frozenset[int]] = []
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            combo_set = frozenset(combo)
            if any(f <= combo_set for f in found):
                continue
            verdict = test(combo)
            if verdict is Consistency.INCONSISTENT:
                found.append(combo_set)
            elif verdict is Consistency.UNKNOWN and on_unknown is not None:
                on_unknown(frozenset(candidates[i] for i in combo))
    return [frozenset(candidates[i] for i in f) for f in found]
