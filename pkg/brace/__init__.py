"""Finite rings, braces and ideals module initialization."""
