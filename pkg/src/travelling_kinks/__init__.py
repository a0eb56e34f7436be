"""Travelling kinks in discrete Klein-Gordon lattices near the (c, h) = (1, 0) point."""
