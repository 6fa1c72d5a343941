"""Tests for the poscomm CLI and search package."""
