"""
Trace CSV: a header of variable names, then one row of 0/1 per cycle.
"""
import csv
import io
from typing import Sequence

from errors import ParseError
from validate.models import Trace


def read_trace_csv(text: str, inputs: Sequence[str], outputs: Sequence[str] = ()) -> Trace:
    """
    Parse a trace; columns are matched by name against the declared variables.

    Raises:
        ParseError: unknown or missing columns, or cells other than 0/1
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise ParseError("empty trace file") from None
    unknown = [h for h in header if h not in inputs and h not in outputs]
    if unknown:
        raise ParseError(f"unknown columns {', '.join(unknown)}", 1, 1)
    missing = [n for n in inputs if n not in header]
    if missing:
        raise ParseError(f"missing input columns {', '.join(missing)}", 1, 1)
    present = tuple(n for n in outputs if n in header)
    if present and len(present) != len(outputs):
        raise ParseError("a joint trace must carry every output", 1, 1)
    rows = []
    for number, record in enumerate(reader, start=2):
        if not record:
            continue
        if len(record) != len(header):
            raise ParseError(f"expected {len(header)} cells, found {len(record)}", number, 1)
        row = {}
        for column, (name, cell) in enumerate(zip(header, record), start=1):
            cell = cell.strip()
            if cell not in ('0', '1'):
                raise ParseError(f"cell {cell!r} is not 0 or 1", number, column)
            row[name] = cell == '1'
        rows.append(row)
    return Trace(tuple(inputs), present, rows)


def write_trace_csv(trace: Trace) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(trace.names)
    for row in trace.rows:
        writer.writerow([int(row[n]) for n in trace.names])
    return buffer.getvalue()
