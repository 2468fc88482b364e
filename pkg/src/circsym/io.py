"""Angle file input and output.

Three layouts: ``plain`` (one angle per line), ``csv`` (one angle per row
in a chosen column), and ``grouped`` (angle,count pairs expanded to
individual observations). Files may carry ``# key: value`` header
directives (unit, format, zero, sense) which take precedence over caller
flags; the fallback unit is radians. Every angle is mapped to canonical
form wrap(zero + sense * raw) with sense -1 for clockwise files.
"""

import numpy as np

from .angles import wrap

FORMATS = ("plain", "csv", "grouped")
UNITS = ("radians", "degrees")

_DEG = np.pi / 180.0


class AngleFileError(ValueError):
    """Malformed angle file contents."""


def _parse_direction(text, unit):
    """Angle literal with optional deg/rad suffix, else the ambient unit."""
    text = text.strip().lower()
    for suffix, factor in (("deg", _DEG), ("rad", 1.0)):
        if text.endswith(suffix):
            return float(text[: -len(suffix)]) * factor
    return float(text) * (_DEG if unit == "degrees" else 1.0)


def _check_unit(value, where):
    value = value.strip().lower()
    if value not in UNITS:
        raise AngleFileError(f"{where}: unit must be radians or degrees, got {value!r}")
    return value


def _check_format(value, where):
    value = value.strip().lower()
    if value not in FORMATS:
        raise AngleFileError(f"{where}: format must be one of {FORMATS}, got {value!r}")
    return value


def read_angles(path, unit=None, fmt=None, column=0, zero=None, sense=None):
    """Read an angle file into canonical wrapped radians.

    Caller arguments fill in whatever the header does not specify. ``zero``
    is a string like ``"90deg"`` or a float in the file's unit; ``sense``
    is ``ccw`` (mathematical, default) or ``cw``.
    """
    header = {}
    rows = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                key, sep, value = body.partition(":")
                if sep and key.strip().lower() in ("unit", "format", "zero", "sense"):
                    header[key.strip().lower()] = value.strip()
                continue
            rows.append((lineno, line))
    if not rows:
        raise AngleFileError(f"{path}: no data lines")

    unit = _check_unit(header.get("unit", unit or "radians"), path)
    if "format" in header:
        fmt = _check_format(header["format"], path)
    elif fmt is not None:
        fmt = _check_format(fmt, path)
    else:
        fmt = "plain" if len(rows[0][1].split(",")) == 1 else None
        if fmt is None:
            raise AngleFileError(
                f"{path}: multi-column data needs an explicit format "
                "(csv or grouped), via header or flag"
            )
    sense = (header.get("sense", sense or "ccw")).strip().lower()
    if sense not in ("ccw", "cw"):
        raise AngleFileError(f"{path}: sense must be ccw or cw, got {sense!r}")
    zero_raw = header.get("zero", zero)
    if zero_raw is None:
        zero_angle = 0.0
    elif isinstance(zero_raw, str):
        zero_angle = _parse_direction(zero_raw, unit)
    else:
        zero_angle = float(zero_raw) * (_DEG if unit == "degrees" else 1.0)

    values = []
    counts = []
    for lineno, line in rows:
        fields = [f.strip() for f in line.split(",")] if "," in line else line.split()
        try:
            if fmt == "plain":
                if len(fields) != 1:
                    raise ValueError("expected exactly one angle")
                values.append(float(fields[0]))
            elif fmt == "csv":
                values.append(float(fields[column]))
            else:
                if len(fields) != 2:
                    raise ValueError("expected angle,count")
                values.append(float(fields[0]))
                count = int(fields[1])
                if count <= 0:
                    raise ValueError(f"count must be a positive integer, got {fields[1]}")
                counts.append(count)
        except (ValueError, IndexError) as exc:
            raise AngleFileError(f"{path}:{lineno}: {exc}") from None

    angles = np.asarray(values, dtype=float)
    if unit == "degrees":
        angles = angles * _DEG
    if fmt == "grouped":
        angles = np.repeat(angles, counts)
    orientation = -1.0 if sense == "cw" else 1.0
    return wrap(zero_angle + orientation * angles)


def write_angles(path, angles, unit="radians"):
    """Write angles one per line with a unit header; round-trips float64."""
    unit = _check_unit(unit, path)
    angles = np.asarray(angles, dtype=float)
    scale = 1.0 / _DEG if unit == "degrees" else 1.0
    lines = [f"# unit: {unit}", "# format: plain"]
    lines.extend(f"{value * scale:.17g}" for value in angles)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")
