"""Exact stationary probabilities of the two-species TASEP."""
