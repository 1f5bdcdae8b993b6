"""Core domain layer (models, counting, geometry, vertices, linear algebra, usecases)."""
