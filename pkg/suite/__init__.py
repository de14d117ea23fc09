"""Corpus and acceptance suite module initialization."""
