"""Validate ohno_cli JSON output of every command against the shipped schema."""

import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["eval", "--index", "1,2", "--s", "0.5"],
    ["eval", "--index", "2,3", "--s", "0.25", "--method", "integral", "--qmc", "--qmc-points", "4096"],
    ["eval", "--a", "2", "--T", "1", "--s", "0"],
    ["dual", "--index", "2,3"],
    ["region", "--index", "1,2,2"],
    ["verify", "--relation", "ohno", "--index", "1,2", "--s", "0.5"],
    ["verify", "--relation", "hypothesis", "--index", "2,3", "--l", "2"],
    ["verify", "--relation", "zero", "--index", "2,3", "--n", "-2"],
    ["suite", "linear"],
    ["suite", "zeros"],
    ["lemma-check", "--t", "0.1,0.4,0.5,0.8"],
]


def main() -> int:
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in RUNS:
        proc = subprocess.run([cli, *args], capture_output=True, text=True, check=False)
        if proc.returncode not in (0, 3):
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        for err in errors:
            print(f"FAIL {' '.join(args)}: {err.message} at {list(err.absolute_path)}")
        failures += bool(errors)
        if not errors:
            print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
