"""Testing functions."""
