import csv
import json
import math
import struct
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np
from burgers_series import constants
from burgers_series.config.settings import Config
from burgers_series.exceptions import ValidationError
from burgers_series.models.grid import GridField

_HEADER = struct.Struct("<4sIIId")


class FileManager:
    """
    Reads and writes every file the command line produces or consumes.

    All writers are deterministic: identical inputs give byte-identical files.
    Floats are written with ``repr`` so CSV and JSON round-trip exactly.
    """

    @staticmethod
    def ensure_output_dir(directory: Optional[Path] = None) -> Path:
        """
        Creates the output directory (and parents) when missing.

        :param directory: Target directory; defaults to ``Config.OUTPUT_DIR``.
        :return: The existing directory.
        :rtype: Path
        """
        directory = Path(directory or Config.OUTPUT_DIR)
        directory.mkdir(parents=True, exist_ok=True)
        return directory

    @staticmethod
    def field_rows(field: GridField) -> List[Dict]:
        """Flattens a field to ``x, t, re, im`` rows, time-major."""
        return [
            {"x": float(x), "t": float(t), "re": float(v.real), "im": float(v.imag)}
            for t, row in zip(field.ts, field.values)
            for x, v in zip(field.xs, row)
        ]

    @staticmethod
    def write_records(path: Path, columns: Sequence[str], rows: Sequence[Dict], fmt: str = "csv") -> Path:
        """
        Writes table rows as CSV (header first) or as a JSON list of objects.

        :param path: Output file; its suffix is replaced by ``fmt``.
        :param columns: Column names, also the JSON keys.
        :param rows: Mappings holding at least ``columns``.
        :param fmt: ``"csv"`` or ``"json"``.
        :return: Path of the written file.
        """
        path = Path(path).with_suffix(f".{fmt}")
        if fmt == "json":
            payload = [{c: row[c] for c in columns} for row in rows]
            with open(path, "w", encoding="utf-8") as f:
                json.dump(payload, f, indent=2)
                f.write("\n")
        elif fmt == "csv":
            with open(path, "w", encoding="utf-8", newline="") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(columns)
                for row in rows:
                    writer.writerow([_cell(row[c]) for c in columns])
        else:
            raise ValidationError(f"unknown output format {fmt!r}")
        return path

    @staticmethod
    def write_field(path: Path, field: GridField, fmt: str = "csv") -> Path:
        return FileManager.write_records(path, constants.FIELD_COLUMNS, FileManager.field_rows(field), fmt)

    @staticmethod
    def write_binary(path: Path, field: GridField) -> Path:
        """
        Binary dump: magic, version, nx, nt, period (NaN if none), then xs, ts
        and the values as interleaved re/im pairs, all little-endian.
        """
        nt, nx = field.shape
        period = math.nan if field.period is None else float(field.period)
        path = Path(path)
        with open(path, "wb") as f:
            f.write(_HEADER.pack(constants.BINARY_MAGIC, constants.BINARY_VERSION, nx, nt, period))
            f.write(field.xs.astype("<f8").tobytes())
            f.write(field.ts.astype("<f8").tobytes())
            f.write(field.values.astype("<c16").tobytes())
        return path

    @staticmethod
    def read_binary(path: Path) -> GridField:
        """
        Reads a dump written by :meth:`write_binary`.

        :raises ValidationError: On a wrong magic, version or size.
        """
        data = Path(path).read_bytes()
        if len(data) < _HEADER.size:
            raise ValidationError(f"{path} is too short for a field dump")
        magic, version, nx, nt, period = _HEADER.unpack_from(data)
        if magic != constants.BINARY_MAGIC or version != constants.BINARY_VERSION:
            raise ValidationError(f"{path} is not a version {constants.BINARY_VERSION} field dump")
        expected = _HEADER.size + 8 * (nx + nt) + 16 * nx * nt
        if len(data) != expected:
            raise ValidationError(f"{path} has {len(data)} bytes, expected {expected}")
        offset = _HEADER.size
        xs = np.frombuffer(data, "<f8", nx, offset)
        ts = np.frombuffer(data, "<f8", nt, offset + 8 * nx)
        values = np.frombuffer(data, "<c16", nx * nt, offset + 8 * (nx + nt)).reshape(nt, nx)
        return GridField(xs.copy(), ts.copy(), values.copy(), None if math.isnan(period) else period)

    @staticmethod
    def read_tabulated_ic(path: Path) -> Tuple[np.ndarray, np.ndarray]:
        """
        Reads an initial condition given as ``x,re[,im]`` rows.

        A header line is allowed. The x column must be uniformly spaced; the
        samples are taken as one period starting at the first x.

        :return: ``(xs, values)`` with complex values.
        :raises ValidationError: On malformed rows or non-uniform x.
        """
        xs, values = [], []
        with open(path, "r", encoding="utf-8") as f:
            for number, row in enumerate(csv.reader(f), 1):
                if not row or not "".join(row).strip():
                    continue
                try:
                    numbers = [float(cell) for cell in row]
                except ValueError:
                    if number == 1:
                        continue
                    raise ValidationError(f"{path}:{number}: not a number in {row}")
                if len(numbers) not in (2, 3):
                    raise ValidationError(f"{path}:{number}: expected x,re[,im]")
                xs.append(numbers[0])
                values.append(complex(numbers[1], numbers[2] if len(numbers) == 3 else 0.0))
        if len(xs) < 4:
            raise ValidationError(f"{path}: at least four samples are needed")
        xs = np.array(xs)
        steps = np.diff(xs)
        if np.any(steps <= 0) or not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
            raise ValidationError(f"{path}: x must be increasing and uniformly spaced")
        return xs, np.array(values)


def _cell(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return repr(float(value))
    return str(value)
