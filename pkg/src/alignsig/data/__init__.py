"""Bundled discordant-count fixtures for the OAEI 2016 anatomy track."""

from importlib import resources
from pathlib import Path

FIXTURES = {
    "anatomy-ifp": "anatomy_ifp.tsv",
    "anatomy-cfp": "anatomy_cfp.tsv",
    "anatomy-string-ifp": "anatomy_string_ifp.tsv",
}


def fixture_bytes(name: str) -> bytes:
    try:
        filename = FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}")
    return resources.files(__package__).joinpath(filename).read_bytes()


def fixture_path(name: str) -> Path:
    filename = FIXTURES[name]
    return Path(str(resources.files(__package__).joinpath(filename)))
