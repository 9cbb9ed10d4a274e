"""CSV helpers: case-insensitive column lookup and quoting-aware row output."""

import csv
import io
import os

from lexsum.errors import MissingFile, ParseError


def normalize_header(name: str) -> str:
    return name.lower().strip().replace(' ', '_').replace('-', '_')


def find_column(fieldnames, candidates, required: bool = True, path=None):
    """Return the actual header matching the first of ``candidates``.

    Headers are compared case-insensitively with spaces and dashes treated as
    underscores.
    """
    headers = {normalize_header(h): h for h in fieldnames or []}
    column = next((headers[normalize_header(k)] for k in candidates if normalize_header(k) in headers), None)
    if column is None and required:
        raise ParseError(f"CSV must contain a '{candidates[0]}' column. (found: {fieldnames})",
                         path=path)
    return column


def read_rows(path) -> tuple[list[str], list[dict]]:
    """Read a CSV file with a header row; returns (fieldnames, rows)."""
    if not os.path.exists(path):
        raise MissingFile(f'CSV file not found: {path}')
    with open(path, 'r', encoding='utf-8', newline='') as f:
        reader = csv.DictReader(f)
        if not reader.fieldnames:
            raise ParseError('CSV file has no header row', path=path)
        return list(reader.fieldnames), list(reader)


def parse_float(value, path=None, line=None, column='value') -> float:
    try:
        return float(str(value).strip())
    except (TypeError, ValueError):
        raise ParseError(f'invalid number {value!r} in column {column}', path=path, line=line) from None


def rows_to_csv(rows) -> str:
    """Render rows as CSV text, quoting fields that contain commas, quotes or newlines."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    for row in rows:
        writer.writerow(['' if field is None else field for field in row])
    return buffer.getvalue()


def write_csv(path, rows) -> None:
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(rows_to_csv(rows))
