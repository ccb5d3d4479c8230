"""Configuration, logging and union-find helpers."""
