"""Quantum codes from nearly self-orthogonal quasi-twisted codes."""
