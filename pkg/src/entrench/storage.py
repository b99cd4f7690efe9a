"""Ranking persistence.

Degree files are UTF-8 lines ``degree<TAB>formula`` where the degree is a
decimal or a ``p/q`` rational; ordinal files use ``rank<TAB>formula`` with
positive integers.  ``#`` starts a comment line.  Saving always writes
exact ``p/q`` rationals so load(save(r)) is the identity.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import DuplicateBelief, FormulaError, RankingParseError
from .formula import parse, print_formula
from .ranking import OrdinalRanking, Ranking, from_ordinal, to_ordinal

__all__ = [
    "load_ranking", "save_ranking", "loads_ranking", "dumps_ranking",
    "load_ordinal", "save_ordinal", "dumps_ordinal",
]


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _split(lineno: int, line: str) -> tuple[str, str]:
    if "\t" in line:
        head, _, tail = line.partition("\t")
    else:
        head, _, tail = line.partition(" ")
    head, tail = head.strip(), tail.strip()
    if not head or not tail:
        raise RankingParseError("expected 'degree<TAB>formula'", lineno)
    return head, tail


def _is_rank_number(text: str) -> bool:
    return text.isdigit()


def loads_ranking(text: str) -> Ranking:
    """Parse ranking text; ordinal files are detected and embedded."""
    rows: list[tuple[int, str, str]] = []
    for lineno, line in _data_lines(text):
        head, tail = _split(lineno, line)
        rows.append((lineno, head, tail))
    if rows and all(_is_rank_number(head) for _, head, _ in rows):
        return from_ordinal(_ordinal_from_rows(rows))
    entries = []
    seen = set()
    for lineno, head, tail in rows:
        try:
            d = Fraction(head)
        except (ValueError, ZeroDivisionError):
            raise RankingParseError(f"bad degree {head!r}", lineno) from None
        try:
            f = parse(tail)
        except FormulaError as exc:
            raise RankingParseError(f"bad formula {tail!r}: {exc.message}", lineno) from None
        if f in seen:
            raise DuplicateBelief(f"duplicate belief {print_formula(f)!r} at line {lineno}")
        seen.add(f)
        if not 0 < d < 1:
            raise RankingParseError(f"degree {d} outside (0,1)", lineno)
        entries.append((f, d))
    return Ranking(entries)


def _ordinal_from_rows(rows) -> OrdinalRanking:
    by_rank: dict[int, set] = {}
    seen = set()
    for lineno, head, tail in rows:
        rank = int(head)
        if rank < 1:
            raise RankingParseError(f"rank {rank} must be positive", lineno)
        try:
            f = parse(tail)
        except FormulaError as exc:
            raise RankingParseError(f"bad formula {tail!r}: {exc.message}", lineno) from None
        if f in seen:
            raise DuplicateBelief(f"duplicate belief {print_formula(f)!r} at line {lineno}")
        seen.add(f)
        by_rank.setdefault(rank, set()).add(f)
    ranks = [frozenset(by_rank[k]) for k in sorted(by_rank)]
    return OrdinalRanking(tuple(ranks))


def load_ordinal(path: str | Path) -> OrdinalRanking:
    rows = []
    for lineno, line in _data_lines(Path(path).read_text(encoding="utf-8")):
        head, tail = _split(lineno, line)
        if not _is_rank_number(head):
            raise RankingParseError(f"bad rank {head!r}", lineno)
        rows.append((lineno, head, tail))
    return _ordinal_from_rows(rows)


def dumps_ranking(r: Ranking) -> str:
    lines = [
        f"{d}\t{print_formula(f)}"
        for f, d in sorted(r, key=lambda fd: (-fd[1], print_formula(fd[0])))
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def dumps_ordinal(o: OrdinalRanking) -> str:
    lines = []
    for k, rank in enumerate(o.ranks, start=1):
        for f in sorted(rank, key=print_formula):
            lines.append(f"{k}\t{print_formula(f)}")
    return "\n".join(lines) + ("\n" if lines else "")


def load_ranking(path: str | Path) -> Ranking:
    return loads_ranking(Path(path).read_text(encoding="utf-8"))


def save_ranking(r: Ranking, path: str | Path) -> None:
    Path(path).write_text(dumps_ranking(r), encoding="utf-8")


def save_ordinal(o: OrdinalRanking, path: str | Path) -> None:
    Path(path).write_text(dumps_ordinal(o), encoding="utf-8")
