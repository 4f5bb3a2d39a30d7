#!/usr/bin/env python3
"""Run bzt on the shipped configs and validate each JSON output envelope."""
import json
import subprocess
import sys
from pathlib import Path

import jsonschema

RUNS = [
    ["analyze", "section4_stirred.json"],
    ["analyze", "section4_interval_z2.json"],
    ["transition", "section4_stirred.json"],
    ["transition", "section4_interval_z2.json"],
    ["sweep", "section4_sweep.json"],
    ["simulate", "section4_stirred_sim.json"],
    ["paper-check", None],
]


def main(argv):
    if len(argv) != 4:
        print(f"usage: {argv[0]} BZT SCHEMA CONFIG_DIR", file=sys.stderr)
        return 1
    bzt, schema, configs = argv[1], json.loads(Path(argv[2]).read_text()), Path(argv[3])
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    for cmd, cfg in RUNS:
        args = [bzt, cmd, "--format", "json"]
        if cfg:
            args += ["--config", str(configs / cfg)]
        proc = subprocess.run(args, capture_output=True, text=True)
        label = " ".join([cmd] + ([cfg] if cfg else []))
        if proc.returncode != 0:
            print(f"{label}: exit {proc.returncode}: {proc.stderr.strip()}")
            bad += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        for e in errors:
            print(f"{label}: {'/'.join(map(str, e.path))}: {e.message}")
        bad += bool(errors)
        if not errors:
            print(f"{label}: ok")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
