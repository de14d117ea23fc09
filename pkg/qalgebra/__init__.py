"""Quantum algebra module initialization."""
