"""R-matrix module initialization."""
