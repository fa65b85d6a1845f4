"""Combined TOPSIS-VIKOR compromise ranking with AISM hierarchy extraction."""

__version__ = "0.1.0"
