"""CSV output of trajectories, basis scans, events, classifications and surveys."""

import csv
import os
from enum import Enum
from typing import Any, Iterable

SCHEMAS = {
    "evolve": [
        "nu",
        "discord",
        "classical",
        "mutual_info",
        "theta_star",
        "basis_label",
    ],
    "scan": ["nu", "theta", "objective"],
    "events": [
        "nu_lo",
        "nu_hi",
        "kind",
        "theta_jump",
        "refinement_depth",
        "slope_left",
        "slope_right",
        "sudden_capable",
    ],
    "classify": [
        "nu",
        "label",
        "sigma_z_lhs",
        "sigma_z_rhs",
        "sigma_x_lhs",
        "sigma_x_rhs",
        "flipped",
        "sudden_capable",
    ],
    "survey": [
        "seed",
        "n",
        "n_sudden_capable",
        "n_sigma_z",
        "n_sigma_x",
        "n_both",
        "n_neither",
    ],
    "histogram": ["log10_gap_lo", "log10_gap_hi", "count"],
}


def label_text(label: Enum) -> str:
    """SIGMA_Z_OPTIMAL -> SigmaZOptimal."""
    return "".join(part.capitalize() for part in label.name.split("_"))


def format_value(value: Any) -> str:
    """Locale-free text: floats with 17 significant digits, booleans as true/false."""
    if value is None:
        return ""
    if isinstance(value, Enum):
        return label_text(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    if hasattr(value, "item"):
        return format_value(value.item())
    return str(value)


def sibling_path(filename: str, suffix: str) -> str:
    """results/run.csv, "events" -> results/run.events.csv."""
    stem, ext = os.path.splitext(filename)
    return f"{stem}.{suffix}{ext or '.csv'}"


class RecordFile:
    """One CSV file written with a fixed schema."""

    def __init__(self, filename: str, schema: str):
        if schema not in SCHEMAS:
            raise ValueError(f"Invalid record schema: {schema!r}")
        self.filename = filename
        self.schema = schema
        self.fields = SCHEMAS[schema]

    def save(self, rows: Iterable[dict]) -> int:
        """Write the header and all rows, replacing the file. Returns the row count."""
        directory = os.path.dirname(self.filename)
        if directory and not os.path.exists(directory):
            os.makedirs(directory)
        count = 0
        with open(self.filename, mode="w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=self.fields, lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({fn: format_value(row[fn]) for fn in self.fields})
                count += 1
        return count

    def load(self) -> list[dict]:
        """Read the rows back as strings, checking the header against the schema."""
        with open(self.filename, mode="r", newline="", encoding="utf-8") as f:
            reader = csv.DictReader(f)
            if reader.fieldnames != self.fields:
                raise ValueError(
                    f"{self.filename!r} does not match the {self.schema!r} schema: "
                    f"{reader.fieldnames}"
                )
            return [dict(r) for r in reader]
