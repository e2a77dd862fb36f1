"""Validate the shipped instances and live CLI output against the JSON schemas."""
import json
import pathlib
import subprocess
import sys

import jsonschema

root = pathlib.Path(sys.argv[1])
cli = sys.argv[2]
instance_schema = json.loads((root / "schemas/instance.schema.json").read_text())
verdict_schema = json.loads((root / "schemas/verdict.schema.json").read_text())

failures = 0
for path in sorted((root / "examples_instances").glob("*.json")):
    try:
        jsonschema.validate(json.loads(path.read_text()), instance_schema)
    except jsonschema.ValidationError as e:
        print(f"FAIL {path.name}: {e.message}")
        failures += 1

for name in ["cos_minus_two", "two_freq_bounded", "non_simple_two_freq"]:
    args = [cli, "decide-unbounded", "--instance", str(root / "examples_instances" / f"{name}.json"), "--json"]
    first = subprocess.run(args, capture_output=True, text=True)
    second = subprocess.run(args, capture_output=True, text=True)
    if first.stdout != second.stdout:
        print(f"FAIL {name}: output differs between identical runs")
        failures += 1
    try:
        jsonschema.validate(json.loads(first.stdout), verdict_schema)
    except (jsonschema.ValidationError, json.JSONDecodeError) as e:
        print(f"FAIL {name}: {e}")
        failures += 1

print("schemas ok" if failures == 0 else f"{failures} failures")
sys.exit(1 if failures else 0)
