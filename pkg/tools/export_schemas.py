#!/usr/bin/env python3
"""
Export JSON schemas of the result documents written by the command-line tools.
"""

import json
import sys
from pathlib import Path

from src.commands import FitReport
from src.randstates.monte_carlo import MCResult
from src.recurrences.recurrence import RecurrenceRecord
from src.sepformulas.types import SepValueRecord

MODELS = {
    "sep_value": SepValueRecord,
    "mc_result": MCResult,
    "fit_report": FitReport,
    "recurrence_record": RecurrenceRecord,
}


def export_schemas(output_dir: str = "schemas") -> list:
    """Write one <name>.schema.json per result model."""
    target = Path(output_dir)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name, model in MODELS.items():
        path = target / f"{name}.schema.json"
        path.write_text(json.dumps(model.model_json_schema(), indent=2), encoding="utf-8")
        written.append(path)
        print(f"Schema saved to {path}")
    return written

if __name__ == "__main__":
    export_schemas(*sys.argv[1:2])
