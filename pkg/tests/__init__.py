"""Test suite for the equidecomposition toolkit."""
