"""How often does two-part MDL recover the generating grid profile?

    python scripts/mdl_recovery.py --k 8 --seeds 100 --n 100 1000 10000
"""
import argparse
import time

from trustinfer.harness import mdl_recovery_experiment
from trustinfer.io import parse_profile, profile_to_json, read_text
from trustinfer.mdl import QuantizedFamily, round_to_grid


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--profile", default="fixtures/table_p0.json")
    ap.add_argument("--k", type=int, default=8)
    ap.add_argument("--seeds", type=int, default=100)
    ap.add_argument("--n", type=int, nargs="+", default=[100, 1000, 10000])
    ap.add_argument("--save-generator", help="write the rounded generator as a profile file")
    args = ap.parse_args()

    generator = round_to_grid(parse_profile(read_text(args.profile)), args.k)
    family = QuantizedFamily(generator.alphabet, args.k)
    print(f"generator on the 2^-{args.k} grid: {family.numerators(generator)}, |family| = {len(family)}")
    if args.save_generator:
        with open(args.save_generator, "w") as fh:
            fh.write(profile_to_json(generator) + "\n")
    for n in args.n:
        t = time.time()
        rate = mdl_recovery_experiment(generator, family, n, range(args.seeds))
        print(f"n={n:>7}: recovered {rate:.2f} of {args.seeds} seeds ({time.time() - t:.1f}s)")


if __name__ == "__main__":
    main()
