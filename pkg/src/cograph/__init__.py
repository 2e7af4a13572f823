"""Cographs: complete graphs whose edges are grouped into classes, studied up to relabeling."""

from .core import Cograph, CographError, ParseError, canonical_form, from_key, parse, serialize

__all__ = ["Cograph", "CographError", "ParseError", "canonical_form", "from_key", "parse", "serialize"]
__version__ = "0.1.0"
