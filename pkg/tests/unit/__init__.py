# Unit Tests - Fast, no external dependencies
