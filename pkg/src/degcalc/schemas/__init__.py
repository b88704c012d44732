"""JSON schemas for the tables and reports written by the CLI."""

import json
from importlib import resources

SCHEMAS = {
    "pairing-table": "pairing_table.v1.json",
    "degrees-table": "degrees_table.v1.json",
    "verify-report": "verify_report.v1.json",
    "calibration-report": "calibration_report.v1.json",
}


def load_schema(name: str) -> dict:
    try:
        filename = SCHEMAS[name]
    except KeyError:
        raise ValueError(f"unknown schema {name!r}; expected one of {sorted(SCHEMAS)}") from None
    return json.loads(resources.files(__name__).joinpath(filename).read_text())
