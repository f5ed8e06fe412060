"""Test suite for sweep-hand."""
