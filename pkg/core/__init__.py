"""Core utilities: exceptions, shared report schemas and the command router."""
