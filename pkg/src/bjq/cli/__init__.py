"""Command-line front end."""

from bjq.cli.commands import dispatch
from bjq.cli.parser import build_parser

__all__ = ["build_parser", "dispatch"]
