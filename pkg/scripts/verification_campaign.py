"""Compare the symbolic engine with the finite oracle on a random corpus.

Also checks truncations of a few infinite expressions: every truncation is a
substructure, so its ranks must stay below the symbolic upper bounds.
"""

import argparse
import time

from ordinv.cli import verify_expr
from ordinv.corpus import CorpusConfig, finitary_corpus
from ordinv.expr import parse_expr
from ordinv.oracle import Bounds

INFINITE = ["w x w", "w x w x w", "M(A2)", "M(2)", "Seq(A2)", "Rado", "Rado x A2", "A2 . w", "w ++ A3", "M(A2) x w"]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-n", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-size", type=int, default=200)
    parser.add_argument("--omega-cut", type=int, default=4)
    parser.add_argument("--bag-cut", type=int, default=2)
    args = parser.parse_args()

    start = time.perf_counter()
    corpus = finitary_corpus(args.n, args.seed, CorpusConfig(max_size=args.max_size))
    reports = [verify_expr(e, Bounds()) for e in corpus]
    bad = [r for r in reports if not r.ok]
    print(f"finitary corpus: {len(reports) - len(bad)}/{len(reports)} agree ({time.perf_counter() - start:.1f}s)")
    for r in bad:
        print("\n".join(r.lines()))

    bounds = Bounds(args.omega_cut, args.bag_cut)
    for text in INFINITE:
        r = verify_expr(parse_expr(text), bounds)
        print(f"{'ok  ' if r.ok else 'FAIL'} {text}: symbolic {r.symbolic}, truncation {r.oracle}")
        bad += [r] if not r.ok else []
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
