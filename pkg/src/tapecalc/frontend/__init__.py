"""Textual surface language, CLI and SVG rendering."""

from .parser import parse_module, parse_object_expr
from .surface import SourceModule, print_module

__all__ = ["parse_module", "parse_object_expr", "SourceModule", "print_module"]
