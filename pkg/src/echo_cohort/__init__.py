"""Cohort retrieval over synthetic echocardiography-style reports."""

__version__ = "0.1.0"
