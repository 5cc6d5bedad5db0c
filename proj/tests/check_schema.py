"""Validates every command's JSON report against the published schema."""
import json
import subprocess
import sys

import jsonschema

RUNS = [
    ["verify", "--suite", "all"],
    ["verify", "--family", "laguerre", "--gamma", "0.5", "--suite", "recovery"],
    ["verify", "--suite", "kernels", "--tol", "1e-30"],
    ["eval", "--family", "jacobi", "--gamma", "0.3", "--delta", "0.7", "--points", "0.1,0.5"],
    ["eval", "--family", "laguerre", "--gamma", "0.5", "--n-max", "0", "--points", "3.0"],
    ["kernel", "--shift", "2"],
    ["recover", "--family", "laguerre", "--gamma", "0.5"],
    ["ratio", "--shift", "1", "--n-max", "20"],
    ["ratio", "--family", "laguerre", "--gamma", "0.5"],
    ["chain", "--n-max", "50"],
    ["chain", "--l", "0.3", "--n-max", "10"],
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    for args in RUNS:
        proc = subprocess.run([binary, *args], capture_output=True, text=True)
        if proc.returncode not in (0, 1):
            print(f"{' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            bad += 1
            continue
        report = json.loads(proc.stdout)
        errors = list(validator.iter_errors(report))
        if report["overall"] != all(c["pass"] for c in report["cases"]):
            errors.append("overall is not the conjunction of case passes")
        if (proc.returncode == 0) != report["overall"]:
            errors.append("exit code disagrees with overall")
        for e in errors:
            print(f"{' '.join(args)}: {getattr(e, 'message', e)}")
        bad += bool(errors)
        print(f"{'ok  ' if not errors else 'FAIL'} {' '.join(args)}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
