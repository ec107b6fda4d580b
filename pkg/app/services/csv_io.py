"""
CSV serialization of result records
"""
import csv
import math
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union

PathLike = Union[str, Path]


def format_value(value) -> str:
    """Shortest round-trip rendering of a number; integral floats drop the '.0'"""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float) or hasattr(value, "dtype"):
        value = float(value)
        if math.isfinite(value) and value.is_integer() and abs(value) < 1e16:
            return str(int(value))
        return repr(value)
    return str(value)


def write_csv(
    path: PathLike,
    header: Sequence[str],
    rows: Iterable[Sequence],
    comments: Sequence[str] = (),
) -> Path:
    """
    Write a header line, then one line per record, each terminated by a
    single newline. Trailing comment lines start with '#'.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ValueError(f"row {row!r} does not match columns {list(header)}")
            writer.writerow([format_value(v) for v in row])
        for comment in comments:
            handle.write(f"# {comment}\n")
    return path


def read_csv(path: PathLike) -> Tuple[List[str], List[List[float]]]:
    """Read a file written by write_csv; comment lines are skipped"""
    with Path(path).open(newline="") as handle:
        lines = [line for line in handle if not line.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader, [])
    rows = [[float(v) for v in row] for row in reader if row]
    return header, rows
