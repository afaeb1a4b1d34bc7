"""Polynomial fixtures shipped with the package.

``load(name)`` reads ``name.poly`` from this directory, or from the
directory given to ``use_directory`` (the CLI uses this for negative
controls and for checking edited fixtures).
"""

from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..algebra.mpoly import read_fixtures

_override = [None]


class FixtureError(FileNotFoundError):
    pass


def use_directory(path=None):
    _override[0] = Path(path) if path is not None else None
    _load.cache_clear()


@lru_cache(maxsize=None)
def _load(name, where):
    if where is None:
        src = resources.files(__name__).joinpath(name + ".poly")
    else:
        src = where / (name + ".poly")
    try:
        text = src.read_text()
    except (FileNotFoundError, OSError) as exc:
        raise FixtureError(f"missing fixture {name}.poly") from exc
    return read_fixtures(text)


def load(name):
    return _load(name, _override[0])
