"""Run the full verification suite and print one line per report.

    python3 scripts/run_suite.py [--seeds N] [--json out.json]
"""
import argparse
import json
import logging

from intfourier.suite import SuiteConfig, full_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=100, help="random sl2 modules per genus")
    ap.add_argument("--json", help="also write all reports to this file")
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)

    reports = full_suite(SuiteConfig(sl2_seeds=args.seeds))
    for r in reports:
        params = ", ".join(f"{k}={v}" for k, v in sorted(r.parameters.items()))
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.identity_name}({params})  {r.elapsed:.2f}s")
        for f in r.failures[:3]:
            print(f"      {f}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json(timings=True) for r in reports], fh, indent=2, sort_keys=True)
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} reports pass")
    return int(failed > 0)


if __name__ == "__main__":
    raise SystemExit(main())
