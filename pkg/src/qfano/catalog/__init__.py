"""Every stored polynomial, matrix, substitution and class record, built once."""

from __future__ import annotations

from functools import lru_cache

from .actions import GL2Action
from .actions import gl2_action as _gl2_action
from .h13 import HSystem
from .h13 import build_h as _build_h
from .isom import IsomData, build_isom
from .pi import PiSystem
from .pi import build_pi as _build_pi
from .universe import UNIVERSE

__all__ = [
    "UNIVERSE", "PiSystem", "HSystem", "GL2Action", "IsomData",
    "build_pi", "build_h", "gl2_action", "isom_data", "fano_class", "CLASS_NUMBERS",
]


@lru_cache(maxsize=None)
def build_pi() -> PiSystem:
    return _build_pi()


@lru_cache(maxsize=None)
def build_h() -> HSystem:
    return _build_h()


@lru_cache(maxsize=None)
def gl2_action(target: str) -> GL2Action:
    return _gl2_action(target)


@lru_cache(maxsize=None)
def isom_data() -> IsomData:
    return build_isom()


def fano_class(number: int):
    from .classes import fano_class as _fano_class

    return _fano_class(number)


def __getattr__(name):
    if name == "CLASS_NUMBERS":
        from .classes import CLASS_NUMBERS

        return CLASS_NUMBERS
    raise AttributeError(name)
