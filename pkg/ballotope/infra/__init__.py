"""Infrastructure layer (settings and file storage)."""
