"""Run the bundled example corpus and print one line per entry.

Usage: python3 scripts/run_corpus.py [--only NAME ...] [--json]
"""

import argparse
import json
import sys

from univalens.corpus import run_corpus


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", nargs="*", help="entry names to run (default: all)")
    ap.add_argument("--json", action="store_true", help="emit the full results as JSON")
    args = ap.parse_args(argv)
    results = run_corpus(args.only)
    if args.json:
        print(json.dumps([r.to_json() for r in results], indent=2, default=str))
    else:
        for r in results:
            print(f"{'ok  ' if r.passed else 'FAIL'} {r.name:<28} {r.seconds:7.3f}s  {'; '.join(r.mismatches)}")
        print(f"{sum(r.passed for r in results)}/{len(results)} entries passed")
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
