"""Runs every CLI command once on a bundled fixture and validates its JSON report."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    tool, schema_path, fixture = sys.argv[1:4]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        t = pathlib.Path(tmp)
        (t / "ga.json").write_text('{"generations": 3, "population_size": 4}')
        runs = [
            ["embed", "--cover", fixture, "--text", "schema check", "--key", "k", "--out", str(t / "s.ppm")],
            ["extract", "--stego", str(t / "s.ppm"), "--key", "k", "--out", str(t / "m.bin")],
            ["analyze", "--image", str(t / "s.ppm")],
            ["harden", "--cover", fixture, "--stego", str(t / "s.ppm"), "--key", "k", "--out", str(t / "h.ppm"),
             "--config", str(t / "ga.json")],
            ["metrics", "--cover", fixture, "--stego", str(t / "h.ppm")],
            ["metrics", "--cover", fixture, "--stego", fixture],
        ]
        failed = 0
        for args in runs:
            proc = subprocess.run([tool, *args], capture_output=True, text=True)
            if proc.returncode not in (0, 5):
                print(f"FAIL {args[0]}: exit {proc.returncode}: {proc.stderr.strip()}")
                failed += 1
                continue
            report = json.loads(proc.stdout)
            errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            if proc.stdout.strip() != json.dumps(report, indent=2, sort_keys=True):
                errors.append("keys not sorted")
            for e in errors:
                print(f"FAIL {args[0]}: {getattr(e, 'message', e)}")
            failed += bool(errors)
            if not errors:
                print(f"ok   {args[0]}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
