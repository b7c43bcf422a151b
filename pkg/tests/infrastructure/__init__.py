"""Infrastructure tests."""

