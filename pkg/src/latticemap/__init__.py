"""Exact finite-size checks of spin/vertex model equivalences and
Yang-Baxter integrability structures."""

__version__ = "0.1.0"
REPORT_SCHEMA = "1"
