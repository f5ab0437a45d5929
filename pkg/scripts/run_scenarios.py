"""Run every named scenario and write the reports as JSON.

    python3 scripts/run_scenarios.py [--out reports.json] [--only d8q8,wiegold]
"""

import argparse
import json
import sys

from vcg import scenarios


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", help="write the JSON reports here (default: stdout)")
    p.add_argument("--only", help="comma-separated scenario names")
    args = p.parse_args()
    names = args.only.split(",") if args.only else list(scenarios.SCENARIOS)
    unknown = [n for n in names if n not in scenarios.SCENARIOS]
    if unknown:
        p.error(f"unknown scenarios: {', '.join(unknown)}")
    reports = []
    for name in names:
        rep = scenarios.run(name)
        print(f"{name:28s} {rep.verdict:20s} {rep.timing:7.2f}s", file=sys.stderr)
        reports.append(rep.as_dict())
    text = json.dumps({"reports": reports, "passed": all(r["passed"] for r in reports)}, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if all(r["passed"] for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
