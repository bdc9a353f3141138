"""Unit test package for utils-Colombeau."""
