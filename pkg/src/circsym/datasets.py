"""Bundled example datasets.

The ant-orientation dataset (730 release directions recorded to the
nearest 10 degrees, experimental target at 180 degrees) is validation
input that must be transcribed from its published source; this package
does not invent the per-bin counts. ``load_ant_data`` reads the grouped
file if present and otherwise raises with transcription instructions.
"""

from importlib import resources

from .io import read_angles

ANT_DATA_FILENAME = "ants.grouped"
ANT_TARGET_DEGREES = 180.0
ANT_SAMPLE_SIZE = 730

_INSTRUCTIONS = (
    "the ant dataset is not bundled; transcribe the published grouped "
    f"counts into src/circsym/data/{ANT_DATA_FILENAME} (format: '# unit: "
    "degrees', '# format: grouped', then one 'angle,count' line per 10-degree "
    f"bin, counts summing to {ANT_SAMPLE_SIZE}) or pass an explicit path"
)


def ant_data_path():
    """Path to the bundled grouped file, or None when not transcribed."""
    candidate = resources.files("circsym").joinpath("data", ANT_DATA_FILENAME)
    try:
        with resources.as_file(candidate) as path:
            if path.is_file():
                return path
    except FileNotFoundError:
        pass
    return None


def load_ant_data(path=None):
    """Ant release directions, expanded to one wrapped radian per ant.

    Raises FileNotFoundError with transcription instructions when the
    grouped file is neither bundled nor supplied.
    """
    if path is None:
        path = ant_data_path()
        if path is None:
            raise FileNotFoundError(_INSTRUCTIONS)
    angles = read_angles(path, unit="degrees", fmt="grouped")
    if angles.size != ANT_SAMPLE_SIZE:
        raise ValueError(
            f"expected {ANT_SAMPLE_SIZE} observations in {path}, got {angles.size}"
        )
    return angles
