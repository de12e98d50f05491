#!/usr/bin/env python3
"""Run every rank-lab verb with --json and validate the output against the schema.

usage: validate_schema.py <rank-lab> <schema.json> <work-dir>
"""
import json
import pathlib
import shutil
import subprocess
import sys


def load_jsonschema():
    try:
        import jsonschema
    except ImportError:
        subprocess.run([sys.executable, "-m", "pip", "install", "--quiet", "jsonschema"], check=True)
        import jsonschema
    return jsonschema


def main():
    if len(sys.argv) != 4:
        print(__doc__, file=sys.stderr)
        return 2
    exe, schema_path, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    jsonschema = load_jsonschema()
    schema = json.loads(schema_path.read_text())
    validator = jsonschema.Draft202012Validator(schema)
    validator.check_schema(schema)

    shutil.rmtree(work, ignore_errors=True)
    work.mkdir(parents=True)
    fx = work / "fixtures" / "v1"
    sub = str(fx / "subspaces" / "pseudoregulus_r2_n4_h1_q2.json")
    gab = str(fx / "codes" / "gabidulin_N4_k2_s1_q2.json")
    cug = str(fx / "codes" / "cug_pseudoregulus_r2_n4_h1_q2.json")

    # (args, expected exit code)
    runs = [
        (["fixtures", "--dir", str(work / "fixtures")], 0),
        (["field-info", "--n", "4", "--t", "2"], 0),
        (["field-info", "--q", "9", "--n", "2"], 0),
        (["scattered-check", "--subspace", sub], 0),
        (["scattered-check", "--pseudoregulus", "3,3,2"], 0),
        (["dualize", "--subspace", sub, "--delsarte"], 0),
        (["dualize", "--pseudoregulus", "2,4,1", "--ordinary", "--out", str(work / "od.json")], 0),
        (["mrd-check", "--code", gab], 0),
        (["rank-dist", "--code", cug], 0),
        (["idealiser", "--code", gab, "--right"], 0),
        (["idealiser", "--gabidulin", "4,2,1", "--left"], 0),
        (["dualize-code", "--code", gab], 0),
        (["puncture", "--code", gab, "--rows", "3", "--seed", "4"], 0),
        (["certify-inequivalent", "--code", gab, "--other", cug], 0),
        (["exclusion", "--invariants", "9,6,18,5,2,6", "--r", "3", "--n", "6", "--h", "1"], 0),
        (["exclusion", "--invariants", "9,6,18,5,2,3", "--r", "3", "--n", "6", "--h", "1"], 0),
        (["exclusion", "--invariants", "6,4,12,3,2,4", "--r", "3", "--n", "4", "--h", "1"], 2),
        (["gabidulin", "--N", "4", "--k", "2", "--mrd-check"], 0),
        (["gabidulin", "--N", "4", "--k", "2", "--s", "2"], 2),
        (["twisted-gabidulin", "--N", "4", "--k", "2", "--q", "3", "--mrd-check"], 0),
        (["cug", "--subspace", sub, "--mrd-check"], 0),
        (["extract-subspace", "--code", cug], 0),
        (["search-scattered", "--r", "2", "--n", "4", "--h", "1", "--k", "4", "--seed", "1"], 0),
        (["search-scattered", "--r", "2", "--n", "4", "--h", "1", "--k", "4"], 1),
        (["linset-points", "--subspace", sub], 0),
        (["hyperplane-spectrum", "--pseudoregulus", "3,3,2"], 0),
        (["projsys-code", "--subspace", sub, "--enumerator"], 0),
        (["projsys-code", "--subspace", sub, "--enumerator", "--codeword-count"], 0),
        (["qsystem-code", "--subspace", sub, "--h", "1"], 0),
        (["rank-dist", "--gabidulin", "4,2,1", "--budget", "10"], 3),
    ]

    failures = 0
    seen = set()
    for args, expected in runs:
        proc = subprocess.run([exe, *args, "--json"], capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode != expected:
            print(f"FAIL {label}: exit {proc.returncode}, expected {expected}\n{proc.stderr}")
            failures += 1
            continue
        if not proc.stdout.strip():
            # CLI11 parse errors never reach the JSON layer
            if expected == 1:
                print(f"ok   {label} (usage error, no document)")
                continue
            print(f"FAIL {label}: empty stdout")
            failures += 1
            continue
        try:
            doc = json.loads(proc.stdout)
        except json.JSONDecodeError as e:
            print(f"FAIL {label}: invalid JSON: {e}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        if errors:
            print(f"FAIL {label}:")
            for e in errors[:5]:
                e = jsonschema.exceptions.best_match([e, *(e.context or [])])
                print(f"     {'/'.join(map(str, e.absolute_path))}: {e.message[:200]}")
            failures += 1
            continue
        if expected != 0 and "error" not in doc:
            print(f"FAIL {label}: expected an error document")
            failures += 1
            continue
        seen.add(args[0])
        print(f"ok   {label}")

    help_text = subprocess.run([exe, "--help"], capture_output=True, text=True).stdout
    verbs = {line.split()[0] for line in help_text.split("Subcommands:")[1].splitlines() if line.strip()}
    missing = verbs - seen
    if missing:
        print("FAIL verbs without a validated document:", ", ".join(sorted(missing)))
        failures += 1

    print(f"{len(runs) - failures}/{len(runs)} documents valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
