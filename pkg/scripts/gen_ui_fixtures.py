#!/usr/bin/env python3
"""Dump real service responses as fixtures for the explorer UI tests."""

import json
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from plabica.service import Session, response_graph, response_mutate, response_reset
from plabica.subsets import KSubset

OUT = Path(__file__).resolve().parents[1] / "frontend" / "tests" / "fixtures"


def dump(name, payload):
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / f"{name}.json").write_text(json.dumps(payload, sort_keys=True, indent=1))
    print(f"wrote {name}.json")


def main():
    session = Session(tempfile.mktemp(suffix=".json"))

    # the checkboard (3,6) view and the worked three-click sequence
    dump("ch36_initial", response_reset(session, "ch", 3, 6))
    sequence = [[1, 3, 4], [1, 4, 5], [1, 2, 4]]
    for idx, label in enumerate(sequence, start=1):
        dump(f"ch36_seq_{idx}", response_mutate(session, KSubset(6, label)))

    # double mutation of every mutable face restores the initial view
    initial = response_reset(session, "ch", 3, 6)
    mutable = [f["label"] for f in initial["faces"] if f["mutable"]]
    dump("ch36_mutable", {"labels": mutable})
    for label in mutable:
        key = "".join(map(str, label))
        first = response_mutate(session, KSubset(6, label))
        dump(f"ch36_twice_{key}_1", first)
        dump(f"ch36_twice_{key}_2", response_mutate(session, KSubset(6, first["changed"]["added"])))
        response_reset(session, "ch", 3, 6)

    # an error response shape for the toast path
    dump("error_409", {"error": "label {1,2,3} is frozen", "code": "frozen"})


if __name__ == "__main__":
    main()
