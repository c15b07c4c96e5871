"""Exact workbench for one-point extension algebras and tau-tilting theory."""
