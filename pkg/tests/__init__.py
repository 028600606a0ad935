"""Tests for isoruled."""
