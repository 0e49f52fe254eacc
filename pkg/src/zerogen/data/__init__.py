"""Bundled reference data (JSON); access via zerogen.reference."""
