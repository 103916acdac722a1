#!/usr/bin/env python3
"""Dump the bundled corpus to a directory of .fol and .ndproof files.

The resulting directory can be served back via `natded serve --corpus-dir`
or checked file by file with `natded check`.
"""

import argparse
from pathlib import Path

from natded.corpus import corpus
from natded.formats import save_formula_file, save_proof_file


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", type=Path, help="output directory")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for entry in corpus():
        save_formula_file(args.out / f"{entry.name}.fol", entry.goal)
        if entry.proof is not None:
            save_proof_file(args.out / f"{entry.name}.ndproof", entry.proof)
        print(f"wrote {entry.name}" + (" (+proof)" if entry.proof else ""))


if __name__ == "__main__":
    main()
