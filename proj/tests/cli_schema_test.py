#!/usr/bin/env python3
"""Run the CLI, validate every JSON output against its schema, check exit
codes and byte-identical reruns."""

import json
import os
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

BIN = sys.argv[1]
SCHEMA_DIR = pathlib.Path(sys.argv[2])


def load_registry():
    resources = []
    for path in SCHEMA_DIR.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


REGISTRY = load_registry()
failures = []


def run(args, env=None):
    full_env = {k: v for k, v in os.environ.items() if not k.startswith("MALLE_")}
    full_env.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, env=full_env, timeout=600)


def validate(doc, schema_name):
    schema = json.loads((SCHEMA_DIR / f"{schema_name}.schema.json").read_text())
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


def case(label, args, schema_name, expect=0, env=None, check=None):
    first = run(args, env)
    if first.returncode != expect:
        failures.append(f"{label}: exit {first.returncode}, expected {expect}: {first.stderr.decode()}")
        return
    second = run(args, env)
    if first.stdout != second.stdout:
        failures.append(f"{label}: output differs between identical runs")
        return
    if schema_name is None:
        return
    doc = json.loads(first.stdout)
    try:
        validate(doc, schema_name)
    except jsonschema.ValidationError as e:
        failures.append(f"{label}: schema {schema_name}: {e.message}")
        return
    if first.stdout.decode() != json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n":
        failures.append(f"{label}: keys not sorted or not canonical indentation")
    if check is not None and not check(doc):
        failures.append(f"{label}: content check failed: {first.stdout.decode()[:400]}")


case("invariants kluners split",
     ["invariants", "--group", "kluners", "--action", "kluners-split"], "invariants",
     check=lambda d: d["a"] == 2 and d["b"] == 2 and d["b_malle"] == 1 and d["turkelli_B"] == 2)
case("invariants kluners nonsplit",
     ["invariants", "--group", "kluners", "--action", "kluners-nonsplit"], "invariants",
     check=lambda d: d["a"] == 2 and d["b"] == 1)
case("invariants C2", ["invariants", "--group", "C2"], "invariants",
     check=lambda d: d["a"] == 1 and d["b"] == 1)
case("invariants V4", ["invariants", "--group", "V4-regular", "--action", "trivial-pi-over-Q"], "invariants",
     check=lambda d: d["a"] == 2 and d["b"] == 3)
case("invariants cyclotomic", ["invariants", "--group", "C4", "--action", "cyclotomic",
                               "--field-modulus", "4", "--field-gen", "3"], "invariants",
     check=lambda d: d["turkelli_B_unverified"] is False)
case("invariants restricted image", ["invariants", "--group", "C3", "--action", "cyclotomic",
                                     "--field-modulus", "3", "--field-gen", "1"], "invariants",
     check=lambda d: d["turkelli_B_unverified"] is True and d["b"] == 2)
case("local-factor", ["local-factor", "--group", "C3", "--conjugator", "()", "--unit", "2"], "local-factor",
     check=lambda d: d["factor"]["text"] == "1")
case("local-factor ramified", ["local-factor", "--group", "kluners", "--conjugator", "(1 4)(2 5)(3 6)",
                               "--unit", "2", "--ramified", "--valuation", "2",
                               "--valuation", "4"], "local-factor",
     check=lambda d: d["caps"] == {"lower_exponent": 2, "upper_exponent": 4})
case("local-factor ramified without valuations", ["local-factor", "--group", "kluners", "--ramified"], None,
     expect=3)
case("euler C2", ["euler", "--group", "C2", "--prime-bound", "1e4", "--coeff-bound", "1e4", "--s", "2"], "euler",
     check=lambda d: d["pole"] == {"a": 1, "b": "1"})
case("euler C2 at small s", ["euler", "--group", "C2", "--prime-bound", "1e3", "--coeff-bound", "1e3",
                             "--s", "0.9"], "euler",
     check=lambda d: "zeta_factor_skipped" in d["at_s"])
case("euler C3 residues", ["euler", "--group", "C3", "--by-residue", "--ordering", "ram",
                           "--coeff-bound", "1e3", "--prime-bound", "1e3"], "euler",
     check=lambda d: "3" in d["overrides"])
case("count C2", ["count", "--group", "C2", "--X", "1e5"], "count",
     check=lambda d: d["fit"] is not None and abs(d["fit"]["a_hat"] - 1) < 0.05)
case("count C2 X=1", ["count", "--group", "C2", "--X", "1"], "count",
     check=lambda d: d["grid"] == [1] and d["counts"] == [0] and d["fit"] is None)
case("count V4 fields", ["count", "--group", "V4-regular", "--X", "1e4", "--surjective", "--fields"], "count")
case("mobius", ["mobius", "--shape", "2,6"], "mobius", check=lambda d: d["oracle_agrees"])
case("wiles-eval", ["wiles-eval", "--local", "4/2", "--local", "3/1", "--h0-tstar", "2"], "wiles-eval",
     check=lambda d: d["rhs"] == "3")
case("verify empty filter", ["verify", "mobius", "--filter", "no-such-case"], None)

# exit codes
case("unknown group", ["invariants", "--group", "nope"], None, expect=2)
case("unknown suite", ["verify", "nope"], None, expect=2)
case("nonabelian count", ["count", "--group", "S3"], None, expect=3)
case("bad bound", ["count", "--group", "C2", "--X", "abc"], None, expect=3)
case("bad flag", ["count", "--group", "C2", "--nope"], None, expect=3)
case("cap", ["count", "--group", "C2", "--X", "1e9", "--prime-cap", "1e6"], None, expect=4)
case("help", ["--help"], None, expect=0)

# verify suites through --json
with tempfile.TemporaryDirectory() as tmp:
    for suite in ["mblocal", "burnside", "mobius", "sieve"]:
        out = pathlib.Path(tmp) / f"{suite}.json"
        r = run(["--json", str(out), "verify", suite])
        if r.returncode != 0:
            failures.append(f"verify {suite}: exit {r.returncode}\n{r.stdout.decode()}")
            continue
        doc = json.loads(out.read_text())
        try:
            validate(doc, "verify")
        except jsonschema.ValidationError as e:
            failures.append(f"verify {suite}: {e.message}")
        if doc["failed"] != 0 or doc["passed"] == 0:
            failures.append(f"verify {suite}: {doc['passed']} passed, {doc['failed']} failed")

    # config file and environment mirror the flags
    direct = run(["count", "--group", "C3", "--ordering", "ram", "--X", "5000"])
    conf = pathlib.Path(tmp) / "malle.conf"
    conf.write_text("[count]\ngroup = C3\nordering = ram\nX = 5000\n")
    from_conf = run(["--config", str(conf), "count"])
    from_env = run(["count"], env={"MALLE_GROUP": "C3", "MALLE_ORDERING": "ram", "MALLE_X": "5000"})
    for label, r in [("config", from_conf), ("env", from_env)]:
        if r.returncode != 0 or r.stdout != direct.stdout:
            failures.append(f"{label}: output differs from the equivalent flags")

    json_copy = pathlib.Path(tmp) / "copy.json"
    r = run(["--json", str(json_copy), "invariants", "--group", "C2"])
    if r.returncode != 0 or json_copy.read_bytes() != r.stdout:
        failures.append("--json: file differs from stdout")

    svg = pathlib.Path(tmp) / "plot.svg"
    r = run(["count", "--group", "C2", "--X", "1e5", "--svg", str(svg)])
    if r.returncode != 0 or not svg.read_text().startswith("<svg"):
        failures.append("--svg: no plot written")

for f in failures:
    print("FAIL", f)
print(f"{'ok' if not failures else 'failed'}: {len(failures)} failures")
sys.exit(1 if failures else 0)
