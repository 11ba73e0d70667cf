"""
.. include:: README.md
"""

__all__ = (
    "cli",
    "common",
    "evaluation",
    "management",
    "pipeline",
)
