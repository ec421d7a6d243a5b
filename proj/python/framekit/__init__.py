"""Frame-semantic information extraction toolkit.

Learns human-readable token-classification rule sets, parses featurized text
into frame instances, links fillers against a gazetteer, stores facts in a
day-indexed temporal knowledge base and verbalizes them back into parseable
controlled-language sentences.
"""

from pathlib import Path

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _doc


def default_registry_path() -> str:
    """Path of the bundled 26-frame registry."""
    here = Path(__file__).resolve().parent
    for candidate in (
        here / "data" / "registry.json",  # installed wheel
        here.parent.parent / "data" / "registry.json",  # source checkout
    ):
        if candidate.exists():
            return str(candidate)
    raise FileNotFoundError("bundled registry.json not found")


def sample_gazetteer_path() -> str:
    """Path of the bundled sample gazetteer."""
    here = Path(__file__).resolve().parent
    for candidate in (
        here / "data" / "sample_gazetteer.tsv",
        here.parent.parent / "data" / "sample_gazetteer.tsv",
    ):
        if candidate.exists():
            return str(candidate)
    raise FileNotFoundError("bundled sample_gazetteer.tsv not found")
