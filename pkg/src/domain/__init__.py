"""Word types, generators, local rules and theorem checks."""
