"""Shipped presentation documents."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

SUFFIX = ".alg.json"


def names():
    files = resources.files(__name__)
    return sorted(f.name[:-len(SUFFIX)] for f in files.iterdir() if f.name.endswith(SUFFIX))


def text(name):
    res = resources.files(__name__) / f"{name}{SUFFIX}"
    if not res.is_file():
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(names())}")
    return res.read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load(name):
    from ..dsl import parse_presentation
    return parse_presentation(text(name), name)
