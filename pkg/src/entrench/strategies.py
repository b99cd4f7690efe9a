"""Theory extraction: the six adjustment strategies and their option
transforms.

Every strategy takes a (possibly inconsistent) ranking plus an optional
protected belief and returns a consistent ranking that keeps the protected
belief at its degree.  They differ in how they pick what to drop:

* standard  - keep the largest cut consistent with the protected belief;
* maxi      - walk ranks top-down, removing the union of the subset-minimal
              conflicts at each rank;
* hybrid    - standard core first, then a greedy pass over the discarded
              beliefs in rank order, regathering every one that still fits;
* global    - ignore ranks when computing minimal conflicts, repeatedly
              dropping their least entrenched members;
* linear    - drop an entire rank whenever it conflicts with what stands
              above it;
* quick     - scan each rank left to right, removing one randomly chosen
              culprit at a time until the rank fits.

A consistency test that exhausts its budget is treated as "no conflict
proven" and logged as a warning; beliefs are only removed on a found proof.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ConfigError, ProtectedInconsistent
from .formula import Disjunction, Formula, Negation, print_formula
from .prover import (
    DEFAULT_BUDGET,
    Consistency,
    ConsistencyOracle,
    ProofBudget,
    Verdict,
    is_consistent,
    is_tautology,
    minimal_inconsistent_subsets,
    subsumed_by,
)
from .ranking import Ranking

__all__ = [
    "Strategy", "StrategyConfig", "RankRecord", "ExtractionTrace",
    "extract", "extract_standard", "extract_maxi", "extract_hybrid",
    "extract_global", "extract_linear", "extract_quick",
    "apply_subsumption_removal", "apply_recovery",
]


class Strategy(Enum):
    STANDARD = "standard"
    MAXI = "maxi"
    HYBRID = "hybrid"
    GLOBAL = "global"
    LINEAR = "linear"
    QUICK = "quick"


@dataclass(frozen=True)
class StrategyConfig:
    strategy: Strategy = Strategy.MAXI
    subsumption_removal: bool = False
    recovery: bool = False
    half_life: Fraction | None = None
    random_seed: int = 0
    budget: ProofBudget = DEFAULT_BUDGET
    hybrid_literal_scan: bool = False

    def __post_init__(self):
        if self.subsumption_removal and self.strategy is Strategy.STANDARD:
            raise ConfigError(
                "subsumption removal cannot be combined with standard adjustment"
            )
        if self.half_life is not None:
            hl = Fraction(self.half_life)
            if not 0 < hl < 1:
                raise ConfigError(f"half-life {hl} outside (0,1)")
            object.__setattr__(self, "half_life", hl)


@dataclass
class RankRecord:
    """What happened at one rank (or one global iteration)."""

    threshold: Fraction | None
    candidates: tuple[Formula, ...]
    conflicts: tuple[frozenset, ...] = ()
    removed: tuple[Formula, ...] = ()
    regathered: tuple[Formula, ...] = ()
    warnings: tuple[str, ...] = ()
    phase: str = ""

    def to_dict(self) -> dict:
        return {
            "threshold": str(self.threshold) if self.threshold is not None else None,
            "candidates": [print_formula(f) for f in self.candidates],
            "conflicts": [sorted(print_formula(f) for f in c) for c in self.conflicts],
            "removed": [print_formula(f) for f in self.removed],
            "regathered": [print_formula(f) for f in self.regathered],
            "warnings": list(self.warnings),
            "phase": self.phase,
        }


@dataclass
class ExtractionTrace:
    strategy: str
    protected: Formula | None
    records: list[RankRecord] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    final: str = "consistent"

    def to_dict(self) -> dict:
        return {
            "strategy": self.strategy,
            "protected": print_formula(self.protected) if self.protected else None,
            "ranks": [rec.to_dict() for rec in self.records],
            "warnings": list(self.warnings),
            "final": self.final,
        }

    def render(self) -> str:
        lines = [f"strategy: {self.strategy}"]
        if self.protected is not None:
            lines.append(f"protected: {print_formula(self.protected)}")
        for rec in self.records:
            where = f"rank {rec.threshold}" if rec.threshold is not None else "pool"
            if rec.phase:
                where += f" ({rec.phase})"
            lines.append(f"{where}: candidates "
                         f"[{', '.join(print_formula(f) for f in rec.candidates)}]")
            for c in rec.conflicts:
                lines.append("  conflict {" +
                             ", ".join(sorted(print_formula(f) for f in c)) + "}")
            if rec.removed:
                lines.append("  removed " +
                             ", ".join(print_formula(f) for f in rec.removed))
            if rec.regathered:
                lines.append("  regathered " +
                             ", ".join(print_formula(f) for f in rec.regathered))
            for w in rec.warnings:
                lines.append(f"  warning: {w}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        lines.append(f"result: {self.final}")
        return "\n".join(lines)


class _Run:
    """Working state shared by the strategy implementations."""

    def __init__(self, r: Ranking, protected: tuple[Formula, Fraction] | None,
                 cfg: StrategyConfig):
        self.r = r
        self.protected = protected
        self.cfg = cfg
        universe = list(r.formulas())
        if protected is not None:
            universe.append(protected[0])
        self.oracle = ConsistencyOracle(universe, cfg.budget)
        self.trace = ExtractionTrace(
            strategy=cfg.strategy.value,
            protected=protected[0] if protected else None,
        )
        self.rng = random.Random(cfg.random_seed)

    @property
    def protected_formula(self) -> Formula | None:
        return self.protected[0] if self.protected else None

    def base_context(self) -> list[Formula]:
        return [self.protected[0]] if self.protected else []

    def ranks(self) -> list[tuple[Fraction, list[Formula]]]:
        """Degrees descending; candidates in insertion order, protected
        formula excluded."""
        prot = self.protected_formula
        out = []
        for d in self.r.distinct_degrees():
            cands = [f for f, e in self.r if e == d and f != prot]
            if cands:
                out.append((d, cands))
        return out

    def ok(self, formulas: Iterable[Formula], note: str = "") -> bool:
        """True unless the set is provably inconsistent; budget exhaustion
        counts as consistent and is logged."""
        verdict = self.oracle.consistent(formulas)
        if verdict is Consistency.UNKNOWN:
            self.trace.warnings.append(
                f"budget exhausted{': ' + note if note else ''}; treated as consistent"
            )
        return verdict is not Consistency.INCONSISTENT

    def subsumed(self, candidates: Iterable[Formula]) -> set[Formula]:
        """Candidates entailed by the protected belief alone."""
        if self.protected is None:
            return set()
        incoming = self.protected[0]
        out = set()
        for b in candidates:
            verdict = self.oracle.entails([incoming], b)
            if verdict is Verdict.YES:
                out.add(b)
            elif verdict is Verdict.UNKNOWN:
                self.trace.warnings.append(
                    f"subsumption test for {print_formula(b)} exhausted its budget"
                )
        return out

    def minimal_conflicts(self, candidates: Sequence[Formula],
                          context: Sequence[Formula]) -> list[frozenset]:
        notes: list[str] = []

        def warn(subset: frozenset) -> None:
            notes.append(
                "conflict test for {"
                + ", ".join(sorted(print_formula(f) for f in subset))
                + "} exhausted its budget; treated as consistent"
            )

        mises = minimal_inconsistent_subsets(
            candidates, context, self.cfg.budget, on_unknown=warn,
            oracle=self.oracle,
        )
        self.trace.warnings.extend(notes)
        return mises

    def finish(self, retained: Iterable[Formula]) -> tuple[Ranking, ExtractionTrace]:
        keep = set(retained)
        entries = [(f, d) for f, d in self.r if f in keep]
        if self.protected is not None:
            prot, d = self.protected
            stored = self.r.degree_of(prot)
            if stored is not None:
                d = max(d, stored)
            entries = [(f, e) for f, e in entries if f != prot]
            entries.append((prot, d))
        result = Ranking(entries)
        verdict = self.oracle.consistent(result.formulas())
        self.trace.final = verdict.value
        return result, self.trace


# --- option transforms -------------------------------------------------------

def apply_subsumption_removal(
    candidates: Iterable[Formula], incoming: Formula, cfg: StrategyConfig,
) -> tuple[set[Formula], set[Formula]]:
    """Partition removal candidates into (subsumed-by-incoming, rest).

    The subsumed ones go first; the calling strategy re-checks consistency
    and only falls back to its own removal logic if the conflict persists.
    """
    if cfg.strategy is Strategy.STANDARD:
        raise ConfigError("subsumption removal is unavailable under standard adjustment")
    removed_first = set()
    remaining = set()
    for b in candidates:
        if subsumed_by(b, incoming, cfg.budget) is Verdict.YES:
            removed_first.add(b)
        else:
            remaining.add(b)
    return removed_first, remaining


def apply_recovery(
    removed: Sequence[tuple[Formula, Fraction]], incoming: Formula,
    budget: ProofBudget = DEFAULT_BUDGET,
) -> list[tuple[Formula, Fraction]]:
    """Weaken each removed belief b to b|a at b's old degree.

    Disjunctions that are tautologies carry no information and are dropped.
    """
    out = []
    for b, d in removed:
        weakened = Disjunction(b, incoming)
        if is_tautology(weakened, budget) is Verdict.YES:
            continue
        out.append((weakened, d))
    return out


# --- strategies ----------------------------------------------------------------

def _removal_with_subsumption(run: _Run, candidates: list[Formula],
                              context: list[Formula], removal: set[Formula],
                              rerun) -> set[Formula]:
    """Common subsumption-removal refinement of a computed removal set.

    ``rerun(remaining)`` recomputes the strategy's removal set on what is
    left after the subsumed first wave.
    """
    if not (run.cfg.subsumption_removal and run.protected and removal):
        return removal
    first = run.subsumed(removal)
    if not first:
        return removal
    remaining = [f for f in candidates if f not in first]
    if run.ok(remaining + context, "post-subsumption recheck"):
        return first
    return first | rerun(remaining)


def _standard(run: _Run) -> list[Formula]:
    kept: list[Formula] = []
    context = run.base_context()
    failed = False
    for d, cands in run.ranks():
        if failed:
            run.trace.records.append(RankRecord(d, tuple(cands),
                                                removed=tuple(cands)))
            continue
        if run.ok(kept + cands + context, f"cut at {d}"):
            kept.extend(cands)
            run.trace.records.append(RankRecord(d, tuple(cands)))
        else:
            failed = True
            run.trace.records.append(RankRecord(d, tuple(cands),
                                                removed=tuple(cands)))
    return kept


def _maxi_rank(run: _Run, d: Fraction | None, cands: list[Formula],
               context: list[Formula], phase: str = "") -> list[Formula]:
    """One maxi step: drop the union of the minimal conflicts at a rank."""
    def removal_of(pool: list[Formula]) -> set[Formula]:
        mises = run.minimal_conflicts(pool, context)
        return set().union(*mises) if mises else set()

    mises = run.minimal_conflicts(cands, context)
    removal = set().union(*mises) if mises else set()
    removal = _removal_with_subsumption(run, cands, context, removal, removal_of)
    kept = [f for f in cands if f not in removal]
    run.trace.records.append(RankRecord(
        d, tuple(cands), conflicts=tuple(mises),
        removed=tuple(f for f in cands if f in removal),
        regathered=tuple(kept) if phase == "regather" else (),
        phase=phase,
    ))
    return kept


def _maxi(run: _Run) -> list[Formula]:
    kept: list[Formula] = []
    for d, cands in run.ranks():
        kept.extend(_maxi_rank(run, d, cands, run.base_context() + kept))
    return kept


def _linear(run: _Run) -> list[Formula]:
    kept: list[Formula] = []
    for d, cands in run.ranks():
        context = run.base_context() + kept
        if run.ok(cands + context, f"rank {d}"):
            run.trace.records.append(RankRecord(d, tuple(cands)))
            kept.extend(cands)
            continue
        removal = set(cands)
        removal = _removal_with_subsumption(run, cands, context, removal,
                                            lambda remaining: set(remaining))
        run.trace.records.append(RankRecord(
            d, tuple(cands), removed=tuple(f for f in cands if f in removal)))
        kept.extend(f for f in cands if f not in removal)
    return kept


def _global(run: _Run) -> list[Formula]:
    prot = run.protected_formula
    pool = [f for f, _ in run.r if f != prot]
    context = run.base_context()
    while not run.ok(pool + context, "global pool"):
        mises = run.minimal_conflicts(pool, context)
        if not mises:
            run.trace.warnings.append(
                "pool provably inconsistent but no minimal conflict localized")
            break
        removal: set[Formula] = set()
        for mis in mises:
            lowest = min(run.r.degree_of(f) for f in mis)
            removal |= {f for f in mis if run.r.degree_of(f) == lowest}
        if run.cfg.subsumption_removal and run.protected:
            first = run.subsumed(removal)
            if first:
                removal = first
        run.trace.records.append(RankRecord(
            None, tuple(pool), conflicts=tuple(mises), removed=tuple(removal)))
        pool = [f for f in pool if f not in removal]
    return pool


def _quick(run: _Run) -> list[Formula]:
    kept: list[Formula] = []
    for d, cands in run.ranks():
        context = run.base_context() + kept
        survivors = list(cands)
        removed: list[Formula] = []
        while True:
            if run.ok(survivors + context, f"rank {d}"):
                break
            prefix: list[Formula] | None = None
            acc: list[Formula] = []
            for b in survivors:
                acc.append(b)
                if run.oracle.consistent(acc + context) is Consistency.INCONSISTENT:
                    prefix = list(acc)
                    break
            if prefix is None:
                run.trace.warnings.append(
                    f"rank {d} inconsistent but scan could not localize a conflict")
                break
            culprits = [
                b for b in prefix
                if run.ok([x for x in prefix if x != b] + context)
            ]
            if run.cfg.subsumption_removal and run.protected:
                sub = run.subsumed(culprits)
                preferred = [b for b in culprits if b in sub]
                if preferred:
                    culprits = preferred
            victim = run.rng.choice(culprits)
            survivors.remove(victim)
            removed.append(victim)
        run.trace.records.append(RankRecord(
            d, tuple(cands), removed=tuple(removed)))
        kept.extend(survivors)
    return kept


def _hybrid(run: _Run) -> list[Formula]:
    if run.cfg.hybrid_literal_scan:
        core = _hybrid_literal_core(run)
    else:
        core = _standard_core(run)
    core_set = set(core)
    kept = list(core)
    for d, cands in run.ranks():
        discarded = [f for f in cands if f not in core_set]
        if not discarded:
            continue
        # regather greedily in original order: a discarded belief returns
        # whenever it fits with the core and everything regathered so far
        back: list[Formula] = []
        skipped: list[Formula] = []
        pool = discarded
        if run.cfg.subsumption_removal and run.protected:
            sub = run.subsumed(discarded)
            pool = [f for f in discarded if f not in sub] + \
                   [f for f in discarded if f in sub]
        for b in pool:
            if run.ok(kept + back + [b] + run.base_context(), f"regather at {d}"):
                back.append(b)
            else:
                skipped.append(b)
        run.trace.records.append(RankRecord(
            d, tuple(discarded), removed=tuple(skipped),
            regathered=tuple(back), phase="regather"))
        kept.extend(back)
    return kept


def _standard_core(run: _Run) -> list[Formula]:
    kept: list[Formula] = []
    context = run.base_context()
    for d, cands in run.ranks():
        if not run.ok(kept + cands + context, f"core cut at {d}"):
            break
        kept.extend(cands)
        run.trace.records.append(RankRecord(d, tuple(cands), phase="core"))
    return kept


def _hybrid_literal_core(run: _Run) -> list[Formula]:
    """Keep every b whose explicit weakening -a|b sits at -a's rank.

    Requires the negation of the incoming belief to be in the base; when it
    is absent this phase keeps nothing and the whole run degenerates to a
    plain maxi-adjustment.  The core is still maxi-filtered against the
    protected belief so the output consistency guarantee survives.
    """
    if run.protected is None:
        return []
    a = run.protected[0]
    neg_forms = [Negation(a)]
    if isinstance(a, Negation):
        neg_forms.append(a.body)
    anchor = next((g for g in neg_forms if run.r.degree_of(g) is not None), None)
    if anchor is None:
        return []
    rho = run.r.degree_of(anchor)
    beliefs = set(run.r.formulas())
    supported = set()
    for g, d in run.r:
        if d != rho or not isinstance(g, Disjunction):
            continue
        for left, right in ((g.left, g.right), (g.right, g.left)):
            if left in neg_forms and right in beliefs:
                supported.add(right)
    candidates = [f for f, d in run.r
                  if f != run.protected_formula and (d > rho or f in supported)]
    kept: list[Formula] = []
    for d in run.r.distinct_degrees():
        level = [f for f in candidates if run.r.degree_of(f) == d]
        if level:
            kept.extend(_maxi_rank(run, d, level, run.base_context() + kept,
                                   phase="core"))
    return kept


_IMPLS = {
    Strategy.STANDARD: _standard,
    Strategy.MAXI: _maxi,
    Strategy.HYBRID: _hybrid,
    Strategy.GLOBAL: _global,
    Strategy.LINEAR: _linear,
    Strategy.QUICK: _quick,
}


def extract(r: Ranking, protected: tuple[Formula, Fraction] | None,
            cfg: StrategyConfig) -> tuple[Ranking, ExtractionTrace]:
    """Run the configured strategy; the result keeps the protected belief
    at its degree and is consistent whenever every removal decision could
    be proven within budget."""
    if protected is not None:
        formula = protected[0]
        if is_consistent([formula], cfg.budget) is Consistency.INCONSISTENT:
            raise ProtectedInconsistent(
                f"protected belief {print_formula(formula)!r} is self-contradictory"
            )
    run = _Run(r, protected, cfg)
    retained = _IMPLS[cfg.strategy](run)
    return run.finish(retained)


def extract_standard(r, protected, cfg=None):
    return extract(r, protected, _with(cfg, Strategy.STANDARD))


def extract_maxi(r, protected, cfg=None):
    return extract(r, protected, _with(cfg, Strategy.MAXI))


def extract_hybrid(r, protected, cfg=None):
    return extract(r, protected, _with(cfg, Strategy.HYBRID))


def extract_global(r, protected, cfg=None):
    return extract(r, protected, _with(cfg, Strategy.GLOBAL))


def extract_linear(r, protected, cfg=None):
    return extract(r, protected, _with(cfg, Strategy.LINEAR))


def extract_quick(r, protected, cfg=None):
    return extract(r, protected, _with(cfg, Strategy.QUICK))


def _with(cfg: StrategyConfig | None, strategy: Strategy) -> StrategyConfig:
    if cfg is None:
        return StrategyConfig(strategy=strategy)
    if cfg.strategy is strategy:
        return cfg
    return replace(cfg, strategy=strategy)
