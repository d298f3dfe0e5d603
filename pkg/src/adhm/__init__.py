"""Framed quiver data on the blown-up plane, in exact arithmetic."""
