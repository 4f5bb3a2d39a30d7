#!/usr/bin/env python3
"""Validate run configs against the versioned JSON schema."""
import json
import sys
from pathlib import Path

import jsonschema


def main(argv):
    if len(argv) < 3:
        print(f"usage: {argv[0]} SCHEMA CONFIG...", file=sys.stderr)
        return 1
    schema = json.loads(Path(argv[1]).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    for name in argv[2:]:
        errors = sorted(validator.iter_errors(json.loads(Path(name).read_text())), key=str)
        for e in errors:
            print(f"{name}: {'/'.join(map(str, e.path))}: {e.message}")
        bad += bool(errors)
        if not errors:
            print(f"{name}: ok")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
