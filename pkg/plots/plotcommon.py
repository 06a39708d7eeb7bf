"""Shared CSV loading and error handling for the plot scripts.

The scripts never recompute physics: they transform the CLI's CSV datasets
into figures, nothing else.  Exit codes mirror the CLI (2 for schema
problems, 4 for I/O).
"""

import csv
import sys

EXIT_SCHEMA = 2
EXIT_IO = 4


class SchemaError(ValueError):
    pass


def load_rows(path, required):
    """Read a CSV into a list of dicts, insisting on the required columns."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = sorted(set(required) - set(header))
        if missing:
            raise SchemaError(f"{path}: missing columns {', '.join(missing)}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def save_figure(fig, path, dpi=150):
    """Write PNG (default, 150 dpi) or SVG depending on the extension."""
    fig.savefig(path, dpi=dpi)


def run_script(worker, argv=None):
    """Run a script main body with the shared exit-code policy."""
    try:
        return worker(argv)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
