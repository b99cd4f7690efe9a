"""Finite partial entrenchment rankings.

A ranking maps finitely many explicit beliefs to exact rational degrees in
the open interval (0,1).  Tautologies sit implicitly at 1 and nonbeliefs at
0; neither is ever stored.  Rankings are immutable values: every operation
returns a new ranking, and insertion order is preserved because one of the
extraction strategies is sensitive to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import DomainError, DuplicateBelief, InconsistentInput, ProverUnknown
from .formula import Formula, print_formula
from .prover import (
    DEFAULT_BUDGET,
    Consistency,
    ConsistencyOracle,
    ProofBudget,
    Verdict,
)

__all__ = [
    "Ranking", "OrdinalRanking", "Cut", "EVAPORATION_FLOOR",
    "cut", "degree", "normalize", "to_ordinal", "from_ordinal", "decay",
]

EVAPORATION_FLOOR = Fraction(1, 1_000_000)

ONE = Fraction(1)
ZERO = Fraction(0)


def _check_degree(d: Fraction) -> Fraction:
    d = Fraction(d)
    if not ZERO < d < ONE:
        raise DomainError(f"degree {d} outside the open interval (0,1)")
    return d


class Ranking:
    """Insertion-ordered map from beliefs to degrees in (0,1)."""

    __slots__ = ("_entries", "_index")

    def __init__(self, entries: Iterable[tuple[Formula, Fraction]] = ()):
        pairs = []
        index: dict[Formula, Fraction] = {}
        for f, d in entries:
            d = _check_degree(d)
            if f in index:
                raise DuplicateBelief(f"duplicate belief {print_formula(f)!r}")
            index[f] = d
            pairs.append((f, d))
        self._entries: tuple[tuple[Formula, Fraction], ...] = tuple(pairs)
        self._index = index

    # -- value semantics: equal iff same belief->degree mapping
    def __eq__(self, other) -> bool:
        if not isinstance(other, Ranking):
            return NotImplemented
        return self._index == other._index

    def __hash__(self) -> int:
        return hash(frozenset(self._index.items()))

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[tuple[Formula, Fraction]]:
        return iter(self._entries)

    def __contains__(self, f: Formula) -> bool:
        return f in self._index

    def __repr__(self) -> str:
        inner = ", ".join(f"{print_formula(f)}:{d}" for f, d in self._entries)
        return f"Ranking({{{inner}}})"

    @property
    def entries(self) -> tuple[tuple[Formula, Fraction], ...]:
        return self._entries

    def formulas(self) -> tuple[Formula, ...]:
        return tuple(f for f, _ in self._entries)

    def degree_of(self, f: Formula) -> Fraction | None:
        """Stored degree of an explicit belief, or None."""
        return self._index.get(f)

    def distinct_degrees(self) -> list[Fraction]:
        """Explicit degrees, descending."""
        return sorted(set(self._index.values()), reverse=True)

    def max_degree(self) -> Fraction | None:
        return max(self._index.values()) if self._index else None

    def min_degree(self) -> Fraction | None:
        return min(self._index.values()) if self._index else None

    def with_belief(self, f: Formula, d: Fraction) -> "Ranking":
        """Add a belief; an existing entry keeps the higher of the degrees."""
        d = _check_degree(d)
        old = self._index.get(f)
        if old is None:
            return Ranking(self._entries + ((f, d),))
        if old >= d:
            return self
        return Ranking((g, d if g == f else e) for g, e in self._entries)

    def without(self, formulas: Iterable[Formula]) -> "Ranking":
        drop = set(formulas)
        return Ranking((f, d) for f, d in self._entries if f not in drop)

    def restricted_to(self, formulas: Iterable[Formula]) -> "Ranking":
        keep = set(formulas)
        return Ranking((f, d) for f, d in self._entries if f in keep)


@dataclass(frozen=True)
class Cut:
    """All explicit beliefs at or above a degree threshold."""

    threshold: Fraction
    content: frozenset


@dataclass(frozen=True)
class OrdinalRanking:
    """Beliefs grouped into ranks; rank 1 holds the most entrenched."""

    ranks: tuple[frozenset, ...]

    def __post_init__(self):
        seen: set[Formula] = set()
        for rank in self.ranks:
            if not rank:
                raise DomainError("ordinal ranks must be non-empty")
            for f in rank:
                if f in seen:
                    raise DuplicateBelief(
                        f"belief {print_formula(f)!r} appears in two ranks"
                    )
                seen.add(f)

    def __len__(self) -> int:
        return len(self.ranks)


def cut(r: Ranking, d: Fraction) -> Cut:
    """Beliefs with degree >= d; monotone in d."""
    d = Fraction(d)
    if not ZERO < d <= ONE:
        raise DomainError(f"cut threshold {d} outside (0,1]")
    return Cut(d, frozenset(f for f, e in r if e >= d))


def degree(r: Ranking, phi: Formula,
           budget: ProofBudget = DEFAULT_BUDGET,
           oracle: ConsistencyOracle | None = None) -> Fraction:
    """Entailment degree of an arbitrary formula in the ranking.

    1 for tautologies, otherwise the largest explicit degree whose cut
    entails the formula, otherwise 0.  The search only needs to visit the
    finitely many explicit degrees because the cut content is constant
    between them.
    """
    if oracle is None:
        oracle = ConsistencyOracle(list(r.formulas()) + [phi], budget)
    undecided = 0
    tested = 0
    tested += 1
    taut = oracle.entails([], phi)
    if taut is Verdict.YES:
        return ONE
    if taut is Verdict.UNKNOWN:
        undecided += 1
    for d in r.distinct_degrees():
        content = [f for f, e in r if e >= d]
        verdict = oracle.entails(content, phi)
        tested += 1
        if verdict is Verdict.YES:
            return d
        if verdict is Verdict.UNKNOWN:
            undecided += 1
    if undecided and undecided == tested:
        raise ProverUnknown(
            f"every entailment test for {print_formula(phi)!r} exhausted its budget"
        )
    return ZERO


def normalize(r: Ranking, budget: ProofBudget = DEFAULT_BUDGET) -> Ranking:
    """Recompute each explicit belief's degree as its entailment degree.

    Idempotent on consistent rankings; explicit tautologies reach degree 1
    and are dropped (they are implicit in every ranking).
    """
    oracle = ConsistencyOracle(r.formulas(), budget)
    if oracle.consistent(r.formulas()) is Consistency.INCONSISTENT:
        raise InconsistentInput("cannot normalize an inconsistent ranking")
    out = []
    for f, _ in r:
        d = degree(r, f, budget, oracle)
        if d == ONE:
            continue
        out.append((f, d))
    return Ranking(out)


def to_ordinal(r: Ranking) -> OrdinalRanking:
    """Group beliefs by equal degree, most entrenched first."""
    ranks = []
    for d in r.distinct_degrees():
        ranks.append(frozenset(f for f, e in r if e == d))
    return OrdinalRanking(tuple(ranks))


def from_ordinal(o: OrdinalRanking) -> Ranking:
    """Embed rank k of n at degree (n-k+1)/(n+1), strictly inside (0,1)."""
    n = len(o.ranks)
    entries = []
    for k, rank in enumerate(o.ranks, start=1):
        d = Fraction(n - k + 1, n + 1)
        for f in sorted(rank, key=print_formula):
            entries.append((f, d))
    return Ranking(entries)


def decay(r: Ranking, half_life: Fraction,
          floor: Fraction = EVAPORATION_FLOOR) -> Ranking:
    """Scale every degree by the half-life factor; beliefs that fall below
    the evaporation floor are dropped."""
    half_life = Fraction(half_life)
    if not ZERO < half_life < ONE:
        raise DomainError(f"half-life {half_life} outside (0,1)")
    entries = []
    for f, d in r:
        scaled = d * half_life
        if scaled < floor:
            continue
        entries.append((f, scaled))
    return Ranking(entries)
