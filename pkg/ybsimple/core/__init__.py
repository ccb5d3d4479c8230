"""Algebra engine: groups, solutions, braces and their constructions."""
