# Exact arithmetic layer: polynomials, leg matrices, grid verification
