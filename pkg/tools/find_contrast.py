"""Search for a contrast base: nine propositional beliefs on four ranks
where the six strategies give pairwise-distinct revision results.

Run from the repo root:  python3 tools/find_contrast.py [--seed N] [--tries N]
Prints the first base found, its revision input, and the six outcomes.
"""

import argparse
import random
import sys
from fractions import Fraction as F

from entrench.engine import revise
from entrench.formula import parse, print_formula
from entrench.ranking import Ranking
from entrench.strategies import Strategy, StrategyConfig

ATOMS = ["a", "b", "c", "d", "e"]
DEGREES = [F(8, 10), F(6, 10), F(4, 10), F(2, 10)]
QUICK_SEED = 0


def formula_pool(rng):
    kinds = []
    x, y = rng.sample(ATOMS, 2)
    neg = lambda s: s if rng.random() < 0.5 else "-" + s
    kinds.append(neg(x))
    kinds.append(f"{neg(x)}|{neg(y)}")
    kinds.append(f"{neg(x)}&{neg(y)}")
    kinds.append(f"{x}->{neg(y)}")
    kinds.append(f"{neg(x)}->{neg(y)}")
    return rng.choice(kinds)


def random_instance(rng):
    seen = set()
    entries = []
    # four ranks, nine beliefs: sizes sum to 9, each >= 1
    sizes = [1, 1, 1, 1]
    for _ in range(5):
        sizes[rng.randrange(4)] += 1
    for d, size in zip(DEGREES, sizes):
        for _ in range(size):
            while True:
                f = parse(formula_pool(rng))
                if f not in seen:
                    break
            seen.add(f)
            entries.append((f, d))
    incoming = parse(formula_pool(rng))
    degree = rng.choice([F(9, 10), F(7, 10), F(5, 10), F(3, 10)])
    return Ranking(entries), incoming, degree


def outcomes(base, incoming, degree):
    result = {}
    for strategy in Strategy:
        cfg = StrategyConfig(strategy=strategy, random_seed=QUICK_SEED)
        try:
            out = revise(base, incoming, degree, cfg)
        except Exception:
            return None
        result[strategy.value] = frozenset(
            print_formula(f) for f in out.after.formulas()
        )
    return result


def search(seed, tries):
    from entrench.prover import Consistency, is_consistent
    rng = random.Random(seed)
    for i in range(tries):
        base, incoming, degree = random_instance(rng)
        if incoming in base:
            continue
        # the base must stand on its own; the incoming belief makes trouble
        if is_consistent(list(base.formulas())) is not Consistency.CONSISTENT:
            continue
        if is_consistent(list(base.formulas()) + [incoming]) is Consistency.CONSISTENT:
            continue
        got = outcomes(base, incoming, degree)
        if got is None:
            continue
        sets = list(got.values())
        if len(set(sets)) == 6:
            return i, base, incoming, degree, got
    return None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tries", type=int, default=200000)
    args = ap.parse_args()
    found = search(args.seed, args.tries)
    if not found:
        print("no instance found", file=sys.stderr)
        return 1
    i, base, incoming, degree, got = found
    print(f"# found at trial {i} (search seed {args.seed}, quick seed {QUICK_SEED})")
    print("base:")
    for f, d in base:
        print(f"  {d}\t{print_formula(f)}")
    print(f"revise by: {print_formula(incoming)} at {degree}")
    for name, s in sorted(got.items()):
        print(f"  {name:9s} -> {sorted(s)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
