"""The revision pipeline and session state.

A revision inserts the incoming belief at its rank, extracts a consistent
ranking with the incoming belief protected, optionally weakens the removed
beliefs (recovery), normalizes, and finally applies nuclear decay when a
half-life is configured.  Standalone extraction and ranking integration
reuse the same extraction machinery without a protected belief.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import ContradictoryInput, DomainError, ProverUnknown, StaleOutcome
from .formula import Formula, Negation, print_formula
from .prover import Consistency, Verdict, is_consistent
from .ranking import EVAPORATION_FLOOR, Ranking, decay, degree, normalize
from .strategies import ExtractionTrace, StrategyConfig, apply_recovery, extract

__all__ = [
    "Placement", "RevisionOutcome", "Session",
    "revise", "contract_extract", "integrate", "is_reason_for",
    "what_if", "commit", "undo", "extraction_outcome", "integration_outcome",
]


class Placement(Enum):
    TOP = "top"
    BOTTOM = "bottom"


@dataclass(frozen=True)
class RevisionOutcome:
    """Everything one mutating operation did to a ranking."""

    before: Ranking
    after: Ranking
    incoming: tuple[Formula, Fraction] | None
    removed: tuple[tuple[Formula, Fraction], ...]
    recovered: tuple[tuple[Formula, Fraction], ...]
    trace: ExtractionTrace
    decay_applied: Fraction | None = None
    kind: str = "revise"


@dataclass(frozen=True)
class Session:
    """A current ranking plus the replayable history that produced it."""

    id: str
    initial: Ranking
    current: Ranking
    history: tuple[RevisionOutcome, ...] = ()
    config: StrategyConfig = field(default_factory=StrategyConfig)
    placement: Placement = Placement.BOTTOM

    @classmethod
    def create(cls, ranking: Ranking, config: StrategyConfig | None = None,
               placement: Placement = Placement.BOTTOM,
               session_id: str | None = None) -> "Session":
        return cls(
            id=session_id or uuid.uuid4().hex,
            initial=ranking,
            current=ranking,
            config=config or StrategyConfig(),
            placement=placement,
        )


def placement_degree(r: Ranking, placement: Placement,
                     floor: Fraction = EVAPORATION_FLOOR) -> Fraction:
    """Degree for unranked incoming information.

    Top sits halfway between the current maximum and 1, bottom halfway
    between the evaporation floor and the current minimum; an empty ranking
    puts the first belief at 1/2.
    """
    if len(r) == 0:
        return Fraction(1, 2)
    if placement is Placement.TOP:
        return (1 + r.max_degree()) / 2
    return (floor + r.min_degree()) / 2


def revise(r: Ranking, a: Formula, d: Fraction | None = None,
           cfg: StrategyConfig | None = None,
           placement: Placement = Placement.BOTTOM) -> RevisionOutcome:
    """Revise the ranking by the belief ``a`` at degree ``d``.

    The result entails ``a`` and is consistent whenever ``a`` itself is.
    When ``d`` is omitted the belief is placed per ``placement``.
    """
    cfg = cfg or StrategyConfig()
    if is_consistent([a], cfg.budget) is Consistency.INCONSISTENT:
        raise ContradictoryInput(
            f"incoming belief {print_formula(a)!r} is self-contradictory"
        )
    if d is None:
        d = placement_degree(r, placement)
    else:
        d = Fraction(d)
        if not 0 < d < 1:
            raise DomainError(f"revision degree {d} outside (0,1)")

    base = r.with_belief(a, d)
    extracted, trace = extract(base, (a, d), cfg)
    removed = tuple(
        (f, e) for f, e in base if f != a and f not in extracted
    )

    merged = extracted
    recovered: tuple[tuple[Formula, Fraction], ...] = ()
    if cfg.recovery and removed:
        additions = apply_recovery(removed, a, cfg.budget)
        fresh = []
        for g, e in additions:
            if merged.degree_of(g) is None or merged.degree_of(g) < e:
                fresh.append((g, e))
            merged = merged.with_belief(g, e)
        recovered = tuple(fresh)

    after = normalize(merged, cfg.budget)
    decay_applied = None
    if cfg.half_life is not None:
        after = decay(after, cfg.half_life)
        decay_applied = cfg.half_life

    return RevisionOutcome(
        before=r, after=after, incoming=(a, d), removed=removed,
        recovered=recovered, trace=trace, decay_applied=decay_applied,
        kind="revise",
    )


def contract_extract(r: Ranking,
                     cfg: StrategyConfig | None = None) -> tuple[Ranking, ExtractionTrace]:
    """Standalone theory extraction: recover a consistent ranking, then
    normalize it.  The input may be inconsistent."""
    cfg = cfg or StrategyConfig()
    extracted, trace = extract(r, None, cfg)
    return normalize(extracted, cfg.budget), trace


def extraction_outcome(r: Ranking,
                       cfg: StrategyConfig | None = None) -> RevisionOutcome:
    """contract_extract wrapped as a session-committable outcome (applies
    nuclear decay, when configured, like any other mutating operation)."""
    cfg = cfg or StrategyConfig()
    after, trace = contract_extract(r, cfg)
    removed = tuple((f, e) for f, e in r if f not in after)
    decay_applied = None
    if cfg.half_life is not None:
        after = decay(after, cfg.half_life)
        decay_applied = cfg.half_life
    return RevisionOutcome(
        before=r, after=after, incoming=None, removed=removed, recovered=(),
        trace=trace, decay_applied=decay_applied, kind="extract",
    )


def merge_rankings(rs: Sequence[Ranking]) -> Ranking:
    """Union of rankings; a belief present in several takes its maximum
    degree, so the merge is order-independent."""
    merged = Ranking()
    for r in rs:
        for f, d in r:
            merged = merged.with_belief(f, d)
    return merged


def integrate(rs: Sequence[Ranking],
              cfg: StrategyConfig | None = None) -> tuple[Ranking, ExtractionTrace]:
    """Fuse commensurate rankings into one consistent ranking."""
    return contract_extract(merge_rankings(rs), cfg)


def integration_outcome(rs: Sequence[Ranking],
                        cfg: StrategyConfig | None = None,
                        before: Ranking | None = None) -> RevisionOutcome:
    cfg = cfg or StrategyConfig()
    merged = merge_rankings(rs)
    after, trace = contract_extract(merged, cfg)
    removed = tuple((f, e) for f, e in merged if f not in after)
    decay_applied = None
    if cfg.half_life is not None:
        after = decay(after, cfg.half_life)
        decay_applied = cfg.half_life
    return RevisionOutcome(
        before=before if before is not None else merged, after=after,
        incoming=None, removed=removed, recovered=(), trace=trace,
        decay_applied=decay_applied, kind="integrate",
    )


def is_reason_for(r: Ranking, a: Formula, b: Formula,
                  cfg: StrategyConfig | None = None,
                  placement: Placement = Placement.BOTTOM) -> Verdict:
    """Does accepting ``a`` raise the degree of ``b`` above what accepting
    its negation would?  Both revisions are hypothetical."""
    cfg = cfg or StrategyConfig()
    not_a = Negation(a)
    for side in (a, not_a):
        if is_consistent([side], cfg.budget) is Consistency.INCONSISTENT:
            raise ContradictoryInput(
                f"{print_formula(side)!r} is self-contradictory; "
                "reason queries need a contingent antecedent"
            )
    try:
        with_a = revise(r, a, None, cfg, placement)
        with_not_a = revise(r, not_a, None, cfg, placement)
        degree_with = degree(with_a.after, b, cfg.budget)
        degree_without = degree(with_not_a.after, b, cfg.budget)
    except ProverUnknown:
        return Verdict.UNKNOWN
    return Verdict.YES if degree_with > degree_without else Verdict.NO


def what_if(s: Session, a: Formula, d: Fraction | None = None) -> RevisionOutcome:
    """The revision the session would perform, without committing it."""
    return revise(s.current, a, d, s.config, s.placement)


def commit(s: Session, outcome: RevisionOutcome) -> Session:
    """Adopt an outcome computed against the session's current ranking."""
    if outcome.before != s.current:
        raise StaleOutcome(
            "outcome was computed against a ranking that is no longer current"
        )
    return replace(s, current=outcome.after, history=s.history + (outcome,))


def undo(s: Session) -> Session:
    """Drop the most recent committed operation."""
    if not s.history:
        raise StaleOutcome("nothing to undo")
    return replace(s, current=s.history[-1].before, history=s.history[:-1])
