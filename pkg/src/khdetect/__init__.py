"""Khovanov homology over F2 from planar diagram codes."""
