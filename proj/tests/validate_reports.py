"""Validate shipped inputs, suite configs and CLI test reports against schemas/."""

import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource

INPUT_VERBS = {
    "std_r2_g.json": "matrix-file",
    "std_r2_J.json": "matrix-file",
    "std_r2_omega.json": "matrix-file",
    "std_r2_minus_J.json": "matrix-file",
    "siegel_act_identity.json": "siegel-act",
    "grunsky_mobius.json": "grunsky",
    "torus_square.json": "torus-period",
    "chart_transition.json": "chart-transition",
    "fock_n4.json": "fock-car",
    "polarize_eigensplit.json": "polarize",
    "siegel_member_disk.json": "siegel-member",
    "siegel_member_lower_half.json": "siegel-member",
    "chart_find_swap.json": "chart-find",
}


def main() -> int:
    schemas = pathlib.Path(sys.argv[1])
    reports = pathlib.Path(sys.argv[2])
    root = schemas.parent
    docs = {p.name: json.loads(p.read_text()) for p in schemas.glob("*.schema.json")}
    registry = Registry().with_resources(
        (d["$id"], Resource.from_contents(d)) for d in docs.values()
    )

    def validator(name: str, pointer: str = "") -> jsonschema.Draft202012Validator:
        schema = {"$ref": docs[name]["$id"] + pointer} if pointer else docs[name]
        jsonschema.Draft202012Validator.check_schema(docs[name])
        return jsonschema.Draft202012Validator(schema, registry=registry)

    checks = []
    for path in sorted((root / "configs" / "inputs").glob("*.json")):
        verb = INPUT_VERBS.get(path.name)
        if verb is None:
            print(f"no schema mapping for {path}")
            return 1
        checks.append((path, validator("inputs.v1.schema.json", f"#/$defs/{verb}")))
    for path in sorted((root / "configs").glob("*.json")):
        checks.append((path, validator("suite-config.v1.schema.json")))
    report_paths = sorted(reports.glob("cli_*.json")) + sorted(reports.glob("suite_*.json"))
    if not report_paths:
        print(f"no reports under {reports}")
        return 1
    for path in report_paths:
        checks.append((path, validator("report.v1.schema.json")))

    failures = 0
    for path, v in checks:
        errors = list(v.iter_errors(json.loads(path.read_text())))
        for e in errors:
            print(f"{path}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
        failures += bool(errors)
    print(f"{len(checks) - failures} of {len(checks)} documents valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
