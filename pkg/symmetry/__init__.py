"""Transfer-matrix symmetries module initialization."""
