"""Print the coefficients a_{i,n} of the projectors pi_i = sum_n a_{i,n} Gamma_[n].

    python3 scripts/projector_table.py --g 2 --d 1
"""
import argparse

from itertools import groupby

from intfourier.beauville import projector_table


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--g", type=int, default=2)
    ap.add_argument("--d", type=int, default=0)
    args = ap.parse_args()
    for i, rows in groupby(projector_table(args.g, args.d), key=lambda r: r["i"]):
        print(f"pi_{i}: " + "  ".join(f"[{r['n']}]:{r['a']}" for r in rows))


if __name__ == "__main__":
    main()
