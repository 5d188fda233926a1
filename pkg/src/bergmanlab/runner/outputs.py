"""Write result tables and the run manifest."""

import json
import logging
import platform
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd
import scipy

import bergmanlab
from bergmanlab._core.errors import OutputError

# Decimal format giving round-trippable doubles
FLOAT_FORMAT = "%.17g"
MANIFEST_NAME = "manifest.json"


@dataclass
class RunManifest:
    """Record of one experiment run.

    Args:
        config (dict): echo of the validated config
        versions (dict): versions of the numerical stack
        wall_times (dict): seconds spent per stage
        warnings (list of str): diagnostics worth a look
        files (list of dict): written files, each {"name", "non_empty"}

    """

    config: dict = field(default_factory=dict)
    versions: dict = field(default_factory=dict)
    wall_times: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    files: list = field(default_factory=list)

    def warn(self, message):
        """Store a warning and send it to the log."""
        self.warnings.append(message)
        logging.warning(message)

    def to_dict(self):
        """Return the manifest as JSON-compatible values."""
        return asdict(self)


def package_versions():
    """Return the versions of bergmanlab and its numerical dependencies."""
    return {
        "bergmanlab": bergmanlab.__version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pd.__version__,
    }


def _write_json(contents, fp):
    with open(fp, "w", encoding="utf-8") as f:
        json.dump(contents, f, indent=2, sort_keys=True)
        f.write("\n")


def write_outputs(tables, output_dir, manifest=None):
    """Write result tables and the manifest to a directory.

    Args:
        tables (dict): file name -> DataFrame (written as CSV) or dict / object
        with to_dict() (written as JSON)
        output_dir (str or Path): target directory, created if needed
        manifest (RunManifest): [optional] manifest to complete; a new one is
        created if omitted

    Returns:
        RunManifest: the manifest listing every written file

    """
    output_dir = Path(output_dir)
    manifest = manifest or RunManifest(versions=package_versions())
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
        for name, table in tables.items():
            fp = output_dir / name
            if isinstance(table, pd.DataFrame):
                table.to_csv(fp, index=False, float_format=FLOAT_FORMAT)
                non_empty = len(table) > 0
                if not non_empty:
                    manifest.warn("Table {0} is empty; header only".format(name))
            else:
                contents = table.to_dict() if hasattr(table, "to_dict") else table
                _write_json(contents, fp)
                non_empty = len(contents) > 0
            manifest.files.append({"name": name, "non_empty": non_empty})
            logging.info("Wrote {0}".format(fp))
        manifest.files.append({"name": MANIFEST_NAME, "non_empty": True})
        _write_json(manifest.to_dict(), output_dir / MANIFEST_NAME)
    except OSError as err:
        raise OutputError(
            "Cannot write results to {0}: {1}".format(output_dir, err)
        ) from err
    return manifest
