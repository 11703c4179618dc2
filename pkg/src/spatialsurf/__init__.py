"""Invariants of spatial surfaces from diagrams of spatial trivalent graphs."""
