"""Runs the CLI on a set of manifests, validates every JSON report against the
shipped schema, checks exit codes, byte-identical reruns and golden files."""

import json
import pathlib
import subprocess
import sys

import jsonschema

cli, schema_path, golden_dir = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
data = schema_path.parent.parent / "data"
schema = json.loads(schema_path.read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

# (name, arguments, expected exit code)
MANIFESTS = [
    ("coh_rp2_singular", ["cohomology", "--space", "rp2"], 0),
    ("coh_rp2_decalage", ["cohomology", "--space", "rp2", "--model", "decalage"], 0),
    ("coh_s1_omega_p3", ["cohomology", "--space", "sphere:1", "--model", "omega", "--prime", "3"], 0),
    ("coh_s2_omega", ["cohomology", "--space", "sphere:2", "--model", "omega"], 3),
    ("coh_s1_vomega", ["cohomology", "--space", "sphere:1", "--model", "v_tensor_omega", "--weight", "2"], 0),
    ("coh_torus", ["cohomology", "--space", "torus", "--prime", "3"], 0),
    ("massey_zero", ["massey", "--space", "rp2", "--a", "0@1", "--b", "0@1", "--c", "0@1"], 0),
    ("massey_fixture", ["massey", "--fixture", str(data / "fixtures" / "obstructed_f2.json"), "--a", "a", "--b", "b",
                        "--obstruction"], 0),
    ("massey_scaling", ["massey", "--space", "klein", "--model", "decalage", "--a", "1:0", "--b", "1:1", "--c", "1:0",
                        "--precision", "5", "--scale", "1", "1", "1", "--seed", "7"], 0),
    ("verify_all", ["verify", "all"], 0),
    ("verify_poincare_p3", ["verify", "poincare", "--prime", "3", "--weight", "5"], 0),
    ("space_load", ["space", "load", str(data / "spaces" / "klein.sset")], 0),
]

ERRORS = [
    (["cohomology", "--space", "rp2", "--prime", "4"], 2),
    (["cohomology", "--space", "rp2", "--model", "bogus"], 2),
    (["cohomology", "--space", "no_such_space"], 2),
    (["massey", "--space", "rp2", "--a", "1:0", "--b", "1:0", "--obstruction"], 2),
    (["massey", "--space", "torus", "--a", "1:0", "--b", "1:1"], 2),
    (["massey", "--space", "rp2", "--a", "9:0", "--b", "1:0"], 2),
    (["verify", "nonsense"], 2),
]

failures = []


def run(args):
    return subprocess.run([cli, *args], capture_output=True)


for name, args, code in MANIFESTS:
    first, second = run(args), run(args)
    if first.returncode != code:
        failures.append(f"{name}: exit {first.returncode}, expected {code}: {first.stderr.decode()}")
        continue
    if first.stdout != second.stdout:
        failures.append(f"{name}: output differs between identical runs")
    report = json.loads(first.stdout)
    errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
    for e in errors[:3]:
        failures.append(f"{name}: schema: {list(e.path)}: {e.message}")
    golden = golden_dir / f"{name}.json"
    if golden.exists():
        if golden.read_bytes().replace(b"__DATA__", str(data).encode()) != first.stdout:
            failures.append(f"{name}: differs from golden file")
    elif "--update" in sys.argv:
        golden.write_bytes(first.stdout.replace(str(data).encode(), b"__DATA__"))


def invariants(report):
    return [(d["free_rank"], d["torsion"]) for d in report["cohomology"]["degrees"]]


def check(name, cond, what):
    if not cond:
        failures.append(f"{name}: {what}")


reports = {name: json.loads(run(args).stdout) for name, args, _ in MANIFESTS}
check("coh_rp2_singular", invariants(reports["coh_rp2_singular"]) == [(1, []), (0, []), (0, ["2"])], "RP^2 invariants")
check("coh_rp2_decalage", invariants(reports["coh_rp2_decalage"]) == invariants(reports["coh_rp2_singular"]),
      "decalage differs from singular")
s1 = reports["coh_s1_omega_p3"]["cohomology"]["degrees"]
check("coh_s1_omega_p3", invariants(reports["coh_s1_omega_p3"]) == [(1, []), (1, [])] and
      s1[1]["generators"][0]["label"] == "dx_0", "S^1 omega answer")
check("coh_s1_vomega", invariants(reports["coh_s1_vomega"]) == [(1, []), (1, [])], "(V⊗Ω)(S^1)")
check("massey_zero", reports["massey_zero"]["massey"]["vanishes"], "zero classes must give a vanishing coset")
check("massey_fixture", reports["massey_fixture"]["obstruction"]["verdict"] == "obstructed", "fixture verdict")
check("massey_scaling", reports["massey_scaling"]["scaling"]["holds"], "scaling")
check("verify_all", reports["verify_all"]["passed"], "verify all")

for args, code in ERRORS:
    r = run(args)
    if r.returncode != code:
        failures.append(f"{' '.join(args)}: exit {r.returncode}, expected {code}")

for f in failures:
    print("FAIL", f)
print(f"{len(MANIFESTS)} manifests, {len(ERRORS)} error cases, {len(failures)} failures")
sys.exit(1 if failures else 0)
