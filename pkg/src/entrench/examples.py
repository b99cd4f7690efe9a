"""Bundled example library.

Three categories: propositional bases, predicate (quantified) bases, and a
strategy-contrast base on which all six strategies disagree.  Every entry
carries its expected per-strategy outcome, so the library doubles as a
regression suite: `verify_example` replays the scripted revision under each
strategy and compares belief sets.

The contrast base (nine beliefs, four ranks) was found by randomized search
over small propositional bases; `tools/find_contrast.py` reproduces it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .engine import RevisionOutcome, revise
from .formula import Formula, parse, print_formula
from .ranking import Ranking
from .strategies import Strategy, StrategyConfig

__all__ = ["ExampleEntry", "all_examples", "get_example", "run_example",
           "verify_example"]

PROPOSITIONAL = "propositional"
PREDICATE = "predicate"
CONTRAST = "strategy-contrast"


@dataclass(frozen=True)
class ExampleEntry:
    name: str
    category: str
    description: str
    base: tuple[tuple[str, Fraction], ...]     # (formula text, degree)
    incoming: str
    degree: Fraction
    quick_seed: int
    expected: Mapping[str, frozenset]          # strategy -> belief texts

    def ranking(self) -> Ranking:
        return Ranking([(parse(text), d) for text, d in self.base])

    def incoming_formula(self) -> Formula:
        return parse(self.incoming)


def _f(n: int, d: int) -> Fraction:
    return Fraction(n, d)


_EXAMPLES = [
    ExampleEntry(
        name="ladder",
        category=PROPOSITIONAL,
        description=(
            "Three beliefs, two ranks. Revising by -b forces a->b out; the "
            "strategies split over the innocent bystander c."
        ),
        base=(("a", _f(9, 10)), ("a->b", _f(7, 10)), ("c", _f(7, 10))),
        incoming="-b",
        degree=_f(8, 10),
        quick_seed=0,
        expected={
            "standard": frozenset({"-b", "a"}),
            "maxi": frozenset({"-b", "a", "c"}),
            "hybrid": frozenset({"-b", "a", "c"}),
            "global": frozenset({"-b", "a", "c"}),
            "linear": frozenset({"-b", "a"}),
            "quick": frozenset({"-b", "a", "c"}),
        },
    ),
    ExampleEntry(
        name="square",
        category=PROPOSITIONAL,
        description=(
            "Two interchangeable culprits p and -p on one rank below a "
            "supported belief; skeptical strategies drop both, credulous "
            "ones keep one."
        ),
        base=(("q", _f(8, 10)), ("q->s", _f(8, 10)), ("p", _f(4, 10)),
              ("-p", _f(4, 10))),
        incoming="s",
        degree=_f(6, 10),
        quick_seed=0,
        expected={
            "standard": frozenset({"q", "q->s", "s"}),
            "maxi": frozenset({"q", "q->s", "s"}),
            "hybrid": frozenset({"q", "q->s", "s", "p"}),
            "global": frozenset({"q", "q->s", "s"}),
            "linear": frozenset({"q", "q->s", "s"}),
            "quick": frozenset({"q", "q->s", "s", "p"}),
        },
    ),
    ExampleEntry(
        name="tweety",
        category=PREDICATE,
        description=(
            "The flightless-bird base: learning Penguin(tweety) costs the "
            "flight rule under every strategy."
        ),
        base=(("Bird(tweety)", _f(8, 10)),
              ("*X(Bird(X)->Flies(X))", _f(6, 10)),
              ("*X(Penguin(X)->-Flies(X))", _f(9, 10))),
        incoming="Penguin(tweety)",
        degree=_f(7, 10),
        quick_seed=0,
        expected={
            s.value: frozenset({
                "*X(Penguin(X)->-Flies(X))", "Bird(tweety)", "Penguin(tweety)",
            })
            for s in Strategy
        },
    ),
    ExampleEntry(
        name="loan",
        category=PREDICATE,
        description=(
            "A quantified integrity constraint outranks a contingent fact: "
            "learning -Income(mary) retracts Loan(mary)."
        ),
        base=(("*X(Loan(X)->Income(X))", _f(8, 10)),
              ("Loan(mary)", _f(6, 10))),
        incoming="-Income(mary)",
        degree=_f(7, 10),
        quick_seed=0,
        expected={
            s.value: frozenset({"*X(Loan(X)->Income(X))", "-Income(mary)"})
            for s in Strategy
        },
    ),
    ExampleEntry(
        name="contrast-nine",
        category=CONTRAST,
        description=(
            "Nine beliefs on four ranks; revising by -d yields six pairwise "
            "distinct belief sets (found by randomized search, reproducible "
            "via tools/find_contrast.py, search seed 0, trial 1128)."
        ),
        base=(("a->d", _f(4, 5)),
              ("e->-c", _f(3, 5)), ("e->c", _f(3, 5)), ("-a->e", _f(3, 5)),
              ("a->c", _f(3, 5)), ("a", _f(3, 5)),
              ("b|-e", _f(2, 5)), ("-e|-b", _f(2, 5)),
              ("b&a", _f(1, 5))),
        incoming="-d",
        degree=_f(3, 10),
        quick_seed=0,
        expected={
            "standard": frozenset({"-d", "a->d"}),
            "maxi": frozenset({"-d", "-e|-b", "a->c", "a->d", "b|-e"}),
            "hybrid": frozenset({"-d", "-e|-b", "a->c", "a->d", "b|-e",
                                 "e->-c", "e->c"}),
            "global": frozenset({"-d", "a->c", "a->d"}),
            "linear": frozenset({"-d", "-e|-b", "a->d", "b|-e"}),
            "quick": frozenset({"-a->e", "-d", "-e|-b", "a->c", "a->d",
                                "e->-c"}),
        },
    ),
]

_BY_NAME = {e.name: e for e in _EXAMPLES}


def all_examples() -> list[ExampleEntry]:
    return list(_EXAMPLES)


def get_example(name: str) -> ExampleEntry:
    if name not in _BY_NAME:
        known = ", ".join(sorted(_BY_NAME))
        raise KeyError(f"unknown example {name!r} (have: {known})")
    return _BY_NAME[name]


def run_example(name: str,
                strategy: Strategy | None = None) -> dict[str, RevisionOutcome]:
    """Replay an example's scripted revision under one or all strategies."""
    entry = get_example(name)
    strategies = [strategy] if strategy else list(Strategy)
    out = {}
    for s in strategies:
        cfg = StrategyConfig(strategy=s, random_seed=entry.quick_seed)
        out[s.value] = revise(entry.ranking(), entry.incoming_formula(),
                              entry.degree, cfg)
    return out


def verify_example(name: str) -> dict[str, bool]:
    """Compare each strategy's replayed belief set to the stored one."""
    entry = get_example(name)
    results = run_example(name)
    checks = {}
    for s, outcome in results.items():
        got = frozenset(print_formula(f) for f in outcome.after.formulas())
        checks[s] = got == frozenset(entry.expected[s])
    return checks
