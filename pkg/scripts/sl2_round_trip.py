"""Build seeded random sl2 modules, scramble them and decompose them again.

    python3 scripts/sl2_round_trip.py --g 3 --seeds 20
"""
import argparse

from intfourier.sl2 import RandomModuleConfig, random_module, round_trip


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--g", type=int, default=2)
    ap.add_argument("--seeds", type=int, default=10)
    args = ap.parse_args()
    bad = 0
    for seed in range(args.seeds):
        cfg = RandomModuleConfig(args.g, seed)
        _, mult = random_module(cfg)
        rep = round_trip(cfg)
        bad += not rep.passed
        parts = ", ".join(f"Sym^{n}:{t}" for n, t in sorted(mult.items()) if not t.is_zero())
        print(f"seed {seed:3d} {'ok  ' if rep.passed else 'FAIL'} {parts}")
    return int(bad > 0)


if __name__ == "__main__":
    raise SystemExit(main())
