"""Adapter tests."""

