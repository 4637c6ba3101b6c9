"""Search for three hypotheses whose pairwise NP tests reject in a cycle, and save the fixture.

    python scripts/find_cycle.py --alpha 0.05 --seed 0 --attempts 100000 \
        --out fixtures/cycle_alpha05.json
"""
import argparse
import sys

from trustinfer.harness import CYCLE_PATTERN, find_cyclic_rejection
from trustinfer.io import hypothesis_set_to_json
from trustinfer.testing import pairwise_np_matrix


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--alpha", type=float, default=0.05)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--attempts", type=int, default=10**5)
    ap.add_argument("--out")
    args = ap.parse_args()

    found = find_cyclic_rejection(args.alpha, args.seed, args.attempts)
    if found is None:
        print(f"no cycle in {args.attempts} attempts", file=sys.stderr)
        return 1
    hset, x = found
    matrix = pairwise_np_matrix(hset, args.alpha, x)
    for i, row in enumerate(matrix):
        cells = ["  -   " if d is None else d.verdict.value for d in row]
        print(f"null {i}: {cells}  {hset[i].profile.as_dict()}")
    print(f"event {x!r}; pattern {CYCLE_PATTERN} rejects")
    text = hypothesis_set_to_json(hset, event=x, alpha=args.alpha, seed=args.seed)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
