"""
Mumford Tools - exact arithmetic for automorphism groups of Mumford curves
Bruhat-Tits trees over F_q((pi)), trees of finite groups, the normalizer case
catalog, the bound F(g) and discreteness checks.
"""

from .framework import (
    CatalogError,
    Command,
    CommandRegistry,
    ContractionError,
    ErrorCode,
    GenusError,
    IndeterminateError,
    InvalidInputError,
    MumfordError,
    Report,
    TableMismatchError,
    TreeStructureError,
    command,
    setup_logging
)

__version__ = "1.0.0"
__author__ = "Mumford Tools Team"
__description__ = "Automorphism bounds for Mumford curves in positive characteristic"

__all__ = [
    "CatalogError",
    "Command",
    "CommandRegistry",
    "ContractionError",
    "ErrorCode",
    "GenusError",
    "IndeterminateError",
    "InvalidInputError",
    "MumfordError",
    "Report",
    "TableMismatchError",
    "TreeStructureError",
    "command",
    "setup_logging"
]
