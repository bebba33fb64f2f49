#!/usr/bin/env python3
# Copyright (c) termi-arith contributors.
# SPDX-License-Identifier: Apache-2.0
"""Counts the cells of the extended domain of mod/3 by brute force.

The base comparisons are arg1 >= arg2 and arg2 > 0. Every permutation of
the three integer positions is applied, and a cell is a satisfiable choice
of each atom or its negation. The atoms are homogeneous, so integer points
of a small grid reach every cell.
"""
import argparse
import itertools
import sys

BASE = [("ge", 0, 1), ("gt0", 1)]


def permuted_atoms():
    atoms = []
    for perm in itertools.permutations(range(3)):
        for a in BASE:
            if a[0] == "ge":
                atom = ("ge", perm[a[1]], perm[a[2]])
            else:
                atom = ("gt0", perm[a[1]])
            if atom not in atoms:
                atoms.append(atom)
    return atoms


def holds(atom, point):
    if atom[0] == "ge":
        return point[atom[1]] >= point[atom[2]]
    return point[atom[1]] > 0


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--expect", type=int)
    parser.add_argument("--radius", type=int, default=5)
    args = parser.parse_args()
    atoms = permuted_atoms()
    r = range(-args.radius, args.radius + 1)
    cells = {tuple(holds(a, p) for a in atoms) for p in itertools.product(r, r, r)}
    print(f"atoms={len(atoms)} cells={len(cells)}")
    if args.expect is not None and args.expect != len(cells):
        print(f"expected {args.expect}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
