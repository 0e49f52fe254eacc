"""Bundled certificate fixtures (JSON); access via zerogen.reference."""
