"""Regular polytopes, root systems and root-aligned cross-sections."""
