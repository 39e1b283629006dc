"""Print the invariants of the standard well-partial-orders as a table."""

import argparse

from ordinv.cli import main

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    raise SystemExit(main((["--json"] if args.json else []) + ["table"]))
