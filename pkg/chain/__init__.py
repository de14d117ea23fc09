"""Periodic chain module initialization."""
