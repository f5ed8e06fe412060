"""Unit tests for sweep-hand."""
