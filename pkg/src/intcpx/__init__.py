"""Integer complexity, defects, low-defect polynomials and truncation."""
