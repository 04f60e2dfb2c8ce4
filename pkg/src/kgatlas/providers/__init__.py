"""Provider adapters: deterministic mocks for tests, thin HTTP adapters for live use."""
