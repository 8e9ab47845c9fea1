"""Numeric evaluation, reports and the command line."""
