"""Sparse geometry of numbers in exact arithmetic."""
