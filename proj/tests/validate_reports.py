import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
schema = json.loads(Path(schema_path).read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

runs = [
    ["verify", "sections", "--pair", "polytope", "--samples", "5"],
    ["verify", "lemma1", "--pair", "smooth", "--samples", "50"],
    ["verify", "certify", "--pair", "polytope"],
    ["verify", "all", "--samples", "3"],
]

failed = False
with tempfile.TemporaryDirectory() as tmp:
    for j, args in enumerate(runs):
        out = Path(tmp) / str(j)
        proc = subprocess.run([cli, *args, "--out", str(out)], capture_output=True, text=True)
        if proc.returncode != 0:
            print(" ".join(args), "exited with", proc.returncode, proc.stderr)
            failed = True
            continue
        report = json.loads((out / "report.json").read_text())
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        for e in errors[:5]:
            print(" ".join(args), list(e.path), e.message)
        failed |= bool(errors)
        rows = (out / "samples.csv").read_text().count("\n") - 1
        expected = sum(len(r["samples"]) for r in report.get("experiments", [report]))
        if rows != expected:
            print(" ".join(args), "csv rows", rows, "expected", expected)
            failed = True
        print("ok" if not errors else "invalid", " ".join(args))

sys.exit(1 if failed else 0)
