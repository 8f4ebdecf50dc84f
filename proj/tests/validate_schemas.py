#!/usr/bin/env python3
"""Runs every subcommand once in JSON mode and validates the output against schemas/."""
import json
import subprocess
import sys
from pathlib import Path

import jsonschema

CASES = {
    "construct": ["--schedule", "const:2/zero-one/adj:1", "--bins", "8"],
    "decompose": ["--schedule", "const:1/zero-one/adj:1", "--bins", "20", "--x", "2019"],
    "enumerate": ["--schedule", "const:4/set:0,1,2,4/adj:0", "--bins", "2", "--x", "11"],
    "classify": ["--schedule", "const:4/set:0,1,2,4/adj:0", "--bins", "4"],
    "verify-unique": ["--schedule", "const:4/set:0,1,2,4/adj:0", "--bins", "4", "--bound", "300"],
    "divisibility": ["--schedule", "affine:1,1/zero-one/adj:0", "--bins", "5", "--n", "3"],
    "moments": ["--schedule", "affine:1,0/full/adj:0", "--delta", "2", "--max-n", "6"],
    "lyapunov": ["--schedule", "const:1/zero-one/adj:0", "--delta", "2", "--max-n", "10"],
    "model-dist": ["--schedule", "const:2/zero-one/adj:0", "--n", "3", "--include-top-bin"],
    "empirical-dist": ["--schedule", "const:2/zero-one/adj:0", "--n", "3"],
    "ks": ["--schedule", "const:1/zero-one/adj:0", "--n", "11", "--include-top-bin"],
    "thm35": ["--delta", "2", "--max-n", "20"],
    "gnary": ["--b", "3", "--g", "2", "--bins", "4"],
    "gnary-report": ["--b", "3", "--g", "2", "--bins", "4", "--method", "gap-formula"],
    "tree": ["--levels", "5"],
    "tree-check": ["--levels", "6"],
}
ERROR_CASE = ["construct", "--schedule", "const:2/zero-two/adj:1", "--bins", "3"]


def main() -> int:
    exe, schema_dir = sys.argv[1], Path(sys.argv[2])
    failures = 0

    def check(name, argv, expected_status):
        nonlocal failures
        proc = subprocess.run([exe, *argv, "--format", "json"], capture_output=True, text=True)
        schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
        try:
            if proc.returncode != expected_status:
                raise AssertionError(f"exit status {proc.returncode}: {proc.stderr.strip()}")
            jsonschema.validate(json.loads(proc.stdout), schema)
            print(f"ok    {name}")
        except Exception as exc:  # noqa: BLE001
            failures += 1
            print(f"FAIL  {name}: {exc}")

    for command, argv in CASES.items():
        check(command, [command, *argv], 0)
    check("error", ERROR_CASE, 1)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
