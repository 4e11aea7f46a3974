"""Randomized agreement sweep over the rank-one membership oracles.

For each requested normal form the script draws random rank-one points,
runs both membership strategies on them, and evaluates the closed-form
predicate where one is stored. Disagreements are printed as they are
found; an orbit line with no preceding mismatch lines means every point
agreed. Exit status is nonzero when any mismatch appeared.
"""

import argparse
import random
import sys
import time

from tensorloci.errors import UnsupportedOrbit
from tensorloci.locus import (
    FORBIDDEN,
    GENERIC,
    SPECIALIZED,
    closed_form_predicate,
    locus_membership,
)
from tensorloci.orbits import normal_form, pencil_shape
from tensorloci.tensorcore import RankOneTensor

SPARSE_POOL = (0, 0, 0, 1, -1, 2, -2, 3)
DENSE_POOL = (1, -1, 2, -2, 3, -3)


def random_point(rnd, shape, sparse):
    pool = SPARSE_POOL if sparse else DENSE_POOL
    factors = []
    for d in shape:
        vec = [rnd.choice(pool) for _ in range(d)]
        while not any(vec):
            vec = [rnd.choice(pool) for _ in range(d)]
        factors.append(vec)
    return RankOneTensor(factors)


def describe(point):
    return [[str(x) for x in f] for f in point.factors]


def sweep_orbit(orbit, points, rnd, skip_generic=False):
    T = normal_form(orbit)
    shape = pencil_shape(orbit)
    mismatches = 0
    start = time.time()
    for k in range(points):
        P = random_point(rnd, shape, sparse=(k % 2 == 0))
        spec = locus_membership(T, P, SPECIALIZED)
        if not skip_generic:
            gen = locus_membership(T, P, GENERIC)
            if spec.status != gen.status:
                mismatches += 1
                print(
                    "STRATEGY MISMATCH orbit %d %r spec: %r gen: %r"
                    % (orbit, describe(P), spec, gen)
                )
        try:
            cf = closed_form_predicate(orbit, P)
        except UnsupportedOrbit:
            cf = None
        if cf is not None and cf != (spec.status == FORBIDDEN):
            mismatches += 1
            print(
                "CLOSED-FORM MISMATCH orbit %d %r cf: %r alg: %r"
                % (orbit, describe(P), cf, spec)
            )
    print(
        "orbit %2d: %d points, %.2fs" % (orbit, points, time.time() - start)
    )
    sys.stdout.flush()
    return mismatches


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--orbits",
        default="5-26",
        help="orbit range like 5-26 or a comma list like 13,16,17",
    )
    parser.add_argument("--points", type=int, default=14)
    parser.add_argument("--seed", type=int, default=20260822)
    parser.add_argument(
        "--skip-generic",
        action="store_true",
        help="only run the specialized strategy against the closed forms",
    )
    args = parser.parse_args(argv)
    if "-" in args.orbits:
        lo, hi = args.orbits.split("-")
        orbits = list(range(int(lo), int(hi) + 1))
    else:
        orbits = [int(x) for x in args.orbits.split(",")]
    rnd = random.Random(args.seed)
    total = 0
    for orbit in orbits:
        total += sweep_orbit(orbit, args.points, rnd, args.skip_generic)
    if total:
        print("%d mismatches" % total)
        return 1
    print("all oracles agree")
    return 0


if __name__ == "__main__":
    sys.exit(main())
