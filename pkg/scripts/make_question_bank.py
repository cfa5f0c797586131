#!/usr/bin/env python3
"""Emit a line-delimited question bank file for `learnplace seed-questions`.

Each line: {"section": ..., "prompt": ..., "options": [4], "correct_option": 0..3}.
"""

import argparse
import json
import random

SECTIONS = ["english", "mathematical_reasoning", "computer", "intelligence_quotient"]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", help="output path (.jsonl)")
    parser.add_argument("--per-section", type=int, default=12)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        for section in SECTIONS:
            for i in range(args.per_section):
                record = {
                    "section": section,
                    "prompt": f"{section} bank item {i + 1}: pick the keyed choice",
                    "options": [f"{section} item {i + 1} choice {c}" for c in "ABCD"],
                    "correct_option": rng.randrange(4),
                }
                fh.write(json.dumps(record) + "\n")
    print(f"wrote {len(SECTIONS) * args.per_section} questions to {args.out}")


if __name__ == "__main__":
    main()
