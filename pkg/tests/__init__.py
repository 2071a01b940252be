"""mackeycalc test suite."""
