"""Bundled demonstration datasets at desk scale.

``toy_*``: the 7-solution two-objective set with its precomputed similarity
matrix.  ``tsalbp13``: 13 assembly-line task assignments.  ``ensemble15``:
15 classifier-pool bit strings whose chain structure keeps all pairwise
similarities inside a narrow band.  ``queries26``: 26 token queries with
three objectives.
"""

from importlib import resources
from pathlib import Path


def fixture_path(name: str) -> Path:
    """Absolute path of a bundled dataset file."""
    return Path(str(resources.files(__package__).joinpath(name)))
