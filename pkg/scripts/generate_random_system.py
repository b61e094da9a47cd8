"""
Generate a random equation file for trying out the reducer.

Half of the equations (rounded down) are built as reducible partners of the
others, so a reduction run on the output usually has work to do.

Usage:
    python scripts/generate_random_system.py random.eqs --equations 6 --terms 12 --seed 7
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from algebra.parser import format_system  # noqa: E402
from toolkit.random_polys import random_poly, random_table, reducible_pair  # noqa: E402

import numpy as np  # noqa: E402


def generate_random_system(equations: int, terms: int, n_vars: int, degree: int,
                           unknowns: int, seed: int) -> str:
    """Equation file text with the requested number of random equations."""
    rng = np.random.default_rng(seed)
    system = []
    while len(system) < equations:
        if len(system) + 1 < equations:
            base, partner = reducible_pair(rng, terms, n_vars, degree, unknowns)
            system.extend([base, partner])
        else:
            system.append(random_poly(rng, terms, n_vars, degree, unknowns))
    table = random_table(n_vars, unknowns)
    header = (f"random system: {equations} equations, {terms} terms, {n_vars} variables, "
              f"degree {degree}, {unknowns} unknowns, seed {seed}")
    return format_system(table, system, header=header)


def main():
    parser = argparse.ArgumentParser(description="Write a random equation file")
    parser.add_argument("output", help="destination .eqs file")
    parser.add_argument("--equations", type=int, default=6)
    parser.add_argument("--terms", type=int, default=12)
    parser.add_argument("--vars", type=int, default=3)
    parser.add_argument("--degree", type=int, default=4)
    parser.add_argument("--unknowns", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    text = generate_random_system(args.equations, args.terms, args.vars, args.degree,
                                  args.unknowns, args.seed)
    Path(args.output).write_text(text, encoding="utf-8")
    print(f"Wrote {args.equations} equations to {args.output}")


if __name__ == "__main__":
    main()
