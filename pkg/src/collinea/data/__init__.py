"""Bundled order-9 plane fixtures; see collinea.fixtures for the accessor."""
