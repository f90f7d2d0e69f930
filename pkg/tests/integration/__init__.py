# Integration Tests - Require external services (Qdrant, Redis, etc.)
