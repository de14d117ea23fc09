"""Set-theoretic solutions module initialization."""
