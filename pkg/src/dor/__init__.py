"""Curation pipeline and audit server for crowdsourced reuse graphs."""

__version__ = "0.1.0"
