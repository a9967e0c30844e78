"""Runs `mirror_cert verify --all --json` and validates the output against the shipped schema."""

import json
import subprocess
import sys

import jsonschema


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    proc = subprocess.run([binary, "verify", "--all", "--json", "--threads", "1"], capture_output=True, text=True)
    if proc.returncode != 0:
        print(proc.stderr, file=sys.stderr)
        print(f"verify exited {proc.returncode}", file=sys.stderr)
        return 1
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    reports = json.loads(proc.stdout)
    jsonschema.validate(reports, schema, cls=jsonschema.Draft202012Validator)
    print(f"{len(reports)} reports valid against schema {schema_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
